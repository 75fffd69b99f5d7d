#include <doctest.h>

#include <set>

#include "waccess/rules.hpp"

using namespace waccess;

namespace {

std::string page(std::string_view body, std::string_view css = {}) {
  std::string out = "<!DOCTYPE html>\n<html lang=\"en\"><head><title>t</title>";
  if (!css.empty()) out += "<style>" + std::string(css) + "</style>";
  out += "</head><body><h1>T</h1>" + std::string(body) + "</body></html>";
  return out;
}

int count(const PageReport& r, std::string_view id) {
  int n = 0;
  for (const auto& v : r.violations) n += v.rule_id == id;
  return n;
}

int count(std::string_view body, std::string_view id, std::string_view css = {}) {
  return count(audit_html(page(body, css)), id);
}

}  // namespace

TEST_CASE("registry shape") {
  const auto& reg = registry();
  REQUIRE(reg.size() == 29);
  std::set<std::string> ids;
  for (const auto& r : reg) {
    ids.insert(r.id);
    CHECK(find_rule(r.id) == &r);
    CHECK(!r.title.empty());
    CHECK(!r.fix_template.empty());
  }
  CHECK(ids.size() == 29);
  for (std::size_t i = 1; i < reg.size(); ++i) {
    bool ordered = reg[i - 1].version < reg[i].version ||
                   (reg[i - 1].version == reg[i].version && rule_id_less(reg[i - 1].id, reg[i].id));
    CHECK(ordered);
  }
  CHECK(find_rule("9.9.9") == nullptr);
  CHECK(rule_id_less("1.4.3", "1.4.11"));
  CHECK_FALSE(rule_id_less("1.4.11", "1.4.3"));
}

TEST_CASE("rule classes partition the registry") {
  std::map<RuleClass, int> per_class;
  for (const auto& r : registry()) ++per_class[r.rule_class];
  int total = 0;
  for (auto& [c, n] : per_class) total += n;
  CHECK(total == 29);
  CHECK(per_class.size() == 4);
}

TEST_CASE("rule filter parsing") {
  auto set = parse_rule_filter(" 3.1.1 , 2.4.6 ");
  CHECK(set.size() == 2);
  CHECK(set.contains("3.1.1"));
  CHECK_THROWS_AS(parse_rule_filter("3.1.1,bogus"), std::invalid_argument);
  CHECK(parse_version("2.1") == WcagVersion::V2_1);
  CHECK_FALSE(parse_version("3.0").has_value());
}

TEST_CASE("engine filters, sorts and totals") {
  std::string html = page(R"~(<img src="a"><b>x</b><img src="b">)~");
  PageReport all = audit_html(html, "https://x.test/");
  CHECK(all.url == "https://x.test/");
  CHECK(all.total() == 3);
  CHECK(all.totals_by_rule.at("1.1.1") == 2);
  CHECK(all.totals_by_level.at(Level::A) == 2);
  CHECK(all.totals_by_level.at(Level::AA) == 1);
  CHECK(all.totals_by_level.at(Level::AAA) == 0);
  CHECK(all.totals_by_version.at(WcagVersion::V2_0) == 3);
  CHECK(all.violations[0].rule_id == "1.1.1");
  CHECK(all.violations[0].offset < all.violations[1].offset);
  CHECK(all.violations[2].rule_id == "1.4.4");
  CHECK(!all.fetched_at.empty());

  PageReport only = audit_html(html, "", RuleSet{"1.4.4"});
  CHECK(only.total() == 1);
  CHECK(only.skipped_rules.empty());
}

TEST_CASE("rules without style input are reported as not assessed") {
  PageReport r = audit_html(page("<p>x</p>"));
  std::set<std::string> skipped;
  for (const auto& s : r.skipped_rules) skipped.insert(s.rule_id);
  CHECK(skipped == std::set<std::string>{"1.4.13", "2.3.3"});
  PageReport styled = audit_html(page("<p>x</p>", "p{color:#000}"));
  CHECK(styled.skipped_rules.empty());
}

TEST_CASE("target sizes without layout information are skipped") {
  PageReport r = audit_html(page("<button>OK</button>"), "", RuleSet{"2.5.5", "2.5.8"});
  CHECK(r.total() == 0);
  CHECK(r.skipped_rules.size() == 2);
  CHECK(r.skipped_elements.at("2.5.5") == 1);
}

TEST_CASE("violation carries snippet, fix and locator") {
  PageReport r = audit_html(page(R"~(<img src="cat.png" class="pic">)~"));
  REQUIRE(r.total() == 1);
  const Violation& v = r.violations[0];
  CHECK(v.snippet == R"~(<img src="cat.png" class="pic">)~");
  CHECK(v.fix.find("alt") != std::string::npos);
  CHECK(v.locator.find("img@") != std::string::npos);
  CHECK(v.severity_level == Level::A);
}

TEST_CASE("contrast rules") {
  CHECK(count(R"~(<p style="color:#777;background:#fff">x</p>)~", "1.4.3") == 1);
  CHECK(count(R"~(<p style="color:#767676;background:#fff">x</p>)~", "1.4.3") == 0);
  CHECK(count(R"~(<h1 style="color:#949494;background:#fff">x</h1>)~", "1.4.3") == 0);
  CHECK(count(R"~(<p style="color:#767676">x</p>)~", "1.4.6") == 1);
  CHECK(count(R"~(<p style="color:#000">x</p>)~", "1.4.6") == 0);
  CHECK(count(R"~(<p style="font-size:19px;font-weight:bold;color:#949494">x</p>)~", "1.4.6") == 1);
  // hidden, disabled and image-backed text is not judged
  CHECK(count(R"~(<p style="color:#eee;display:none">x</p>)~", "1.4.3") == 0);
  CHECK(count(R"~(<button disabled style="color:#ddd">x</button>)~", "1.4.3") == 0);
  CHECK(count(R"~(<div style="background:url(a.png)"><p style="color:#eee">x</p></div>)~", "1.4.3") == 0);
}

TEST_CASE("non-text contrast") {
  CHECK(count(R"~(<button style="background:#eee">x</button>)~", "1.4.11") == 1);
  CHECK(count(R"~(<button style="background:#767676;color:#fff">x</button>)~", "1.4.11") == 0);
  CHECK(count(R"~(<button style="background:#fff;border:none">x</button>)~", "1.4.11") == 1);
  CHECK(count(R"~(<button style="background:#fff;border:1px solid #000">x</button>)~", "1.4.11") == 0);
}

TEST_CASE("focus appearance") {
  std::string links;
  for (int i = 0; i < 5; ++i) links += "<p><a href=\"/" + std::to_string(i) + "\">l</a></p>";
  CHECK(count(links, "2.4.11", ":focus{outline:none}") == 5);
  CHECK(count(links, "2.4.12", ":focus{outline:none}") == 5);
  CHECK(count(links, "2.4.11", "*:focus{outline:0}") == 5);
  CHECK(count(links, "2.4.11", "a:focus{outline:2px solid #767676}") == 0);
  CHECK(count(links, "2.4.12", "a:focus{outline:2px solid #767676}") == 0);
  CHECK(count(links, "2.4.12", "a:focus{outline:2px solid #777777}") == 5);
  CHECK(count(links, "2.4.11", "a:focus{outline:2px solid #777777}") == 0);
  CHECK(count(links, "2.4.11") == 0);
  CHECK(count(links, "2.4.11", "a:focus{outline:none;border:2px solid #000}") == 0);
  CHECK(count(R"~(<div tabindex="0">x</div><div tabindex="-1">y</div>)~", "2.4.11", ":focus{outline:none}") == 1);
}

TEST_CASE("use of color") {
  CHECK(count(R"~(<p>See <a href="/t">terms</a> now.</p>)~", "1.4.1", "a{text-decoration:none}") == 1);
  CHECK(count(R"~(<p>See <a href="/t">terms</a> now.</p>)~", "1.4.1") == 0);
  CHECK(count(R"~(<nav><a href="/t">terms</a></nav>)~", "1.4.1", "a{text-decoration:none}") == 0);
  CHECK(count(R"~(<p>See <a href="/t" style="font-weight:bold">terms</a> now.</p>)~", "1.4.1",
              "a{text-decoration:none}") == 0);
}

TEST_CASE("non-text content") {
  CHECK(count(R"~(<img src=x>)~", "1.1.1") == 1);
  CHECK(count(R"~(<img src=x alt="">)~", "1.1.1") == 0);
  CHECK(count(R"~(<img src=a><img src=b><img src=c><img src=d alt="d">)~", "1.1.1") == 3);
  CHECK(count(R"~(<map name="m"><area href="/a"></map><input type="image" src="go.png" alt="Go">)~", "1.1.1") == 1);
  CHECK(count(R"~(<object data="x.swf"></object><object data="y.swf">Chart of sales</object>)~", "1.1.1") == 1);
}

TEST_CASE("info and relationships") {
  std::string tds = "<table><tr><td>a</td><td>b</td><td>c</td></tr><tr><td>1</td><td>2</td><td>3</td></tr>"
                    "<tr><td>4</td><td>5</td><td>6</td></tr></table>";
  CHECK(count(tds, "1.3.1") == 1);
  CHECK(count("<table><tr><th>a</th><th>b</th></tr><tr><td>1</td><td>2</td></tr></table>", "1.3.1") == 0);
  CHECK(count("<table><tr><td scope=\"row\">a</td><td>b</td></tr><tr><td>1</td><td>2</td></tr></table>", "1.3.1") == 0);
  CHECK(count("<table><tr><td>only</td><td>row</td></tr></table>", "1.3.1") == 0);
  CHECK(count("<fieldset><input aria-label=\"x\"></fieldset>", "1.3.1") == 1);
}

TEST_CASE("resize text flags presentational tags") {
  CHECK(count("<b>hi</b><i>x</i>", "1.4.4") == 2);
  CHECK(count("<strong>hi</strong>", "1.4.4") == 0);
  CHECK(count("<font size=2>x</font>", "1.4.4") == 1);
}

TEST_CASE("link purpose") {
  CHECK(count(R"~(<a href="x"><img src="i"></a>)~", "2.4.4") == 1);
  CHECK(count(R"~(<a href="/a">Read more</a><a href="/b">read  MORE</a>)~", "2.4.4") == 1);
  CHECK(count(R"~(<a href="/a">Read more</a><a href="/b">Read more</a><a href="/c">Read more</a>)~", "2.4.4") == 2);
  CHECK(count(R"~(<a href="x">Contact us</a>)~", "2.4.4") == 0);
  CHECK(count(R"~(<a>no href</a>)~", "2.4.4") == 0);
  // same target after resolution is not ambiguous
  PageReport r = audit_html(page(R"~(<a href="/a">Go</a><a href="https://s.test/a">Go</a>)~"), "https://s.test/x");
  CHECK(count(r, "2.4.4") == 0);
}

TEST_CASE("headings order is capped at one per page") {
  CHECK(count("<h3>a</h3>", "2.4.6") == 1);
  CHECK(count("<h3>a</h3><h5>b</h5><h2>c</h2><h6>d</h6>", "2.4.6") == 1);
  CHECK(count("<h2>a</h2><h2>b</h2><h3>c</h3>", "2.4.6") == 0);
  CHECK(count(audit_html("<html lang=\"en\"><body><h2>x</h2></body></html>"), "2.4.6") == 1);
  CHECK(count(audit_html("<html lang=\"en\"><body><p>no headings</p></body></html>"), "2.4.6") == 1);
}

TEST_CASE("language of page") {
  auto lang = [](std::string_view attr) {
    return count(audit_html("<html" + std::string(attr) + "><body><h1>x</h1></body></html>"), "3.1.1");
  };
  CHECK(lang("") == 1);
  CHECK(lang(" lang") == 1);
  CHECK(lang(" lang=\"\"") == 1);
  CHECK(lang(" lang=\"english\"") == 1);
  CHECK(lang(" lang=\"e\"") == 1);
  CHECK(lang(" lang=\"en\"") == 0);
  CHECK(lang(" lang=\"en-IN\"") == 0);
  CHECK(lang(" lang=\"es-419\"") == 0);
  CHECK(lang(" lang=\"zh-Hant-TW\"") == 0);
  CHECK(lang(" lang=\"e1\"") == 1);
  CHECK(count(audit_html("<p>no html tag</p>"), "3.1.1") == 1);
}

TEST_CASE("labels or instructions") {
  CHECK(count(R"~(<input type=text name=q>)~", "3.3.2") == 1);
  CHECK(count(R"~(<label>Name <input></label>)~", "3.3.2") == 0);
  CHECK(count(R"~(<input type=hidden>)~", "3.3.2") == 0);
  CHECK(count(R"~(<label for="e">E</label><input id="e">)~", "3.3.2") == 0);
  CHECK(count(R"~(<input aria-labelledby="x"><span id="x">Q</span>)~", "3.3.2") == 0);
  CHECK(count(R"~(<input type=submit><input type=reset><input type=button value=b><select></select>)~", "3.3.2") == 1);
}

TEST_CASE("parsing rule") {
  CHECK(count("<div><p>x</div>", "4.1.1") == 1);
  CHECK(count("<i id=\"main\">a</i><b id=\"main\">b</b>", "4.1.1") == 1);
  CHECK(count("<i id=\"m\">a</i><b id=\"m\">b</b><u id=\"m\">c</u>", "4.1.1") == 2);
  CHECK(count("<div><p>x</p></div><br><img src=a alt=''>", "4.1.1") == 0);
  CHECK(count("<p>x</p></span>", "4.1.1") == 1);
  PageReport r = audit_html(page("<p>x</p></span>"));
  bool stray = false;
  for (const auto& v : r.violations) stray |= v.rule_id == "4.1.1" && v.locator.starts_with("</span>@");
  CHECK(stray);
}

TEST_CASE("page break navigation") {
  CHECK(count(R"~(<span role="doc-pagebreak"></span>)~", "2.4.13") == 1);
  CHECK(count(R"~(<span role="doc-pagebreak" id="p4"></span>)~", "2.4.13") == 0);
  CHECK(count(R"~(<span epub:type="pagebreak"></span>)~", "2.4.13") == 1);
  CHECK(count(R"~(<div style="page-break-before:always">x</div>)~", "2.4.13") == 1);
  CHECK(count(R"~(<div style="break-after:page">x</div>)~", "2.4.13") == 1);
  CHECK(count(R"~(<div class="pb">x</div>)~", "2.4.13", ".pb{page-break-after:always}") == 1);
}

TEST_CASE("identify input purpose") {
  CHECK(count(R"~(<input type=email name=email aria-label=e>)~", "1.3.5") == 1);
  CHECK(count(R"~(<input type=email autocomplete=email aria-label=e>)~", "1.3.5") == 0);
  CHECK(count(R"~(<input type=text name=q aria-label=q>)~", "1.3.5") == 0);
  CHECK(count(R"~(<input name=zip aria-label=z><input id=city aria-label=c>)~", "1.3.5") == 2);
  CHECK(count(R"~(<input type=checkbox name=email aria-label=c>)~", "1.3.5") == 0);
}

TEST_CASE("identify purpose") {
  CHECK(count(R"~(<iframe src=x></iframe>)~", "1.3.6") == 1);
  CHECK(count(R"~(<iframe src=x title="Map"></iframe>)~", "1.3.6") == 0);
  CHECK(count(R"~(<nav>a</nav><nav>b</nav>)~", "1.3.6") == 1);
  CHECK(count(R"~(<nav>a</nav>)~", "1.3.6") == 0);
  CHECK(count(R"~(<nav>a</nav><div role="navigation">b</div><nav>c</nav>)~", "1.3.6") == 2);
  CHECK(count(R"~(<nav aria-label="x">a</nav><nav>b</nav>)~", "1.3.6") == 0);
}

TEST_CASE("label in name") {
  CHECK(count(R"~(<button aria-label="send">Submit</button>)~", "2.5.3") == 1);
  CHECK(count(R"~(<button aria-label="Submit form">Submit</button>)~", "2.5.3") == 0);
  CHECK(count(R"~(<button>Submit</button>)~", "2.5.3") == 0);
  CHECK(count(R"~(<a href="/" aria-label="home page">Home</a>)~", "2.5.3") == 0);
}

TEST_CASE("accessible authentication") {
  std::string form = R"~(<form><input type=password aria-label=p autocomplete=off></form>)~";
  CHECK(count(form, "3.3.7") == 1);
  CHECK(count(form + form, "3.3.7") == 2);
  CHECK(count(form + R"~(<a href="/r">Forgot password?</a>)~", "3.3.7") == 0);
  CHECK(count(form + R"~(<button>Reset your password</button>)~", "3.3.7") == 0);
  CHECK(count(R"~(<form><input type=password aria-label=p autocomplete="current-password"></form>)~", "3.3.7") == 0);
}

TEST_CASE("status messages") {
  CHECK(count(R"~(<div class="alert alert-danger">x</div>)~", "4.1.3") == 1);
  CHECK(count(R"~(<div class="alert" role="alert">x</div>)~", "4.1.3") == 0);
  CHECK(count(R"~(<div class="massage">x</div>)~", "4.1.3") == 0);
  CHECK(count(R"~(<div id="toast" aria-live="polite">x</div>)~", "4.1.3") == 0);
  CHECK(count(R"~(<div id="StatusBar">x</div>)~", "4.1.3") == 1);
}

TEST_CASE("keyboard") {
  CHECK(count(R"~(<div onclick="go()">x</div>)~", "2.1.1") == 1);
  CHECK(count(R"~(<div onclick="go()" tabindex=0 onkeydown="go()">x</div>)~", "2.1.1") == 0);
  CHECK(count(R"~(<button onclick="go()">x</button>)~", "2.1.1") == 0);
  CHECK(count(R"~(<span onmousedown="go()">x</span>)~", "2.1.1") == 1);
}

TEST_CASE("character key shortcuts") {
  CHECK(count(R"~(<a href="/" accesskey="s">x</a>)~", "2.1.4") == 1);
  CHECK(count(R"~(<a href="/">x</a>)~", "2.1.4") == 0);
  CHECK(count(R"~(<a href="/" accesskey="s">x</a><button accesskey="b">b</button>)~", "2.1.4") == 2);
}

TEST_CASE("pause stop hide") {
  CHECK(count("<marquee>news</marquee>", "2.2.2") == 1);
  CHECK(count("<video autoplay controls></video>", "2.2.2") == 0);
  CHECK(count("<video autoplay></video>", "2.2.2") == 1);
  CHECK(count("<blink>x</blink><audio autoplay></audio>", "2.2.2") == 2);
  CHECK(count("<p class=s>x</p>", "2.2.2", ".s{animation:spin 1s infinite}") == 1);
  CHECK(count("<p class=s>x</p>", "2.2.2", ".s{animation:spin 1s 3}") == 0);
  CHECK(count("<div class=s></div>", "2.2.2", ".s{animation-iteration-count:infinite}") == 0);
}

TEST_CASE("animation from interactions") {
  CHECK(count("<a href=x>a</a>", "2.3.3", "a:hover{transition:all 2s}") == 1);
  CHECK(count("<a href=x>a</a>", "2.3.3",
              "a:hover{transition:all 2s} @media (prefers-reduced-motion: reduce){a{transition:none}}") == 0);
  CHECK(count("<a href=x>a</a>", "2.3.3", "a:hover{transition:color .2s}") == 0);
  CHECK(count("<a href=x>a</a>", "2.3.3", "a:focus{animation:pulse 1s}") == 1);
}

TEST_CASE("target size") {
  CHECK(count(R"~(<button style="width:30px;height:30px">x</button>)~", "2.5.5") == 1);
  CHECK(count(R"~(<button style="width:30px;height:30px">x</button>)~", "2.5.8") == 0);
  CHECK(count(R"~(<button style="width:44px;height:44px">x</button>)~", "2.5.5") == 0);
  CHECK(count(R"~(<a href=x style="display:inline-block;width:20px;height:20px">x</a>)~", "2.5.8") == 1);
  CHECK(count(R"~(<button>OK</button>)~", "2.5.5") == 0);
  CHECK(count(R"~(<button style="width:100px;height:10px">x</button>)~", "2.5.8") == 1);
}

TEST_CASE("dragging movements") {
  CHECK(count(R"~(<div draggable="true">card</div>)~", "2.5.7") == 1);
  CHECK(count(R"~(<div><div draggable="true">card</div><button>Move up</button></div>)~", "2.5.7") == 0);
  CHECK(count(R"~(<div ondragstart="f()" onclick="g()">x</div>)~", "2.5.7") == 0);
  CHECK(count(R"~(<div ondrop="f()">x</div>)~", "2.5.7") == 1);
  CHECK(count(R"~(<img src=a alt="" draggable="false">)~", "2.5.7") == 0);
}

TEST_CASE("visible controls") {
  std::string menu = R"~(<div class="menu">Menu <button>A</button><button>B</button></div>)~";
  CHECK(count(menu, "3.2.7", ".menu button{display:none} .menu:hover button{display:block}") == 2);
  CHECK(count(menu, "3.2.7", ".menu button{display:none}") == 0);
  CHECK(count(menu, "3.2.7") == 0);
  CHECK(count(menu, "3.2.7", ".menu button{opacity:0} .menu:hover button{opacity:1}") == 2);
}

TEST_CASE("content on hover or focus") {
  std::string tip = R"~(<div class="tip">i <span class="pop">more</span></div>)~";
  CHECK(count(tip, "1.4.13", ".pop{display:none} .tip:hover .pop{display:block}") == 1);
  CHECK(count(tip, "1.4.13", ".pop{display:none} .tip:hover .pop{display:block} .tip:focus-within .pop{display:block}") == 0);
  CHECK(count(tip, "1.4.13", ".tip:hover{color:red}") == 0);
  CHECK(count(tip, "1.4.13", ".pop{visibility:hidden} .tip:hover .pop{visibility:visible}") == 1);
}

TEST_CASE("a throwing rule becomes a skipped rule, not a crash") {
  // Every rule must tolerate pathological but parseable input.
  std::string deep;
  for (int i = 0; i < 3000; ++i) deep += "<div>";
  PageReport r = audit_html(deep);
  for (const auto& s : r.skipped_rules) CHECK(s.reason != "");
}
