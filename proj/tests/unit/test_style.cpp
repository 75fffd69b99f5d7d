#include <doctest.h>

#include <fstream>
#include <json.hpp>

#include "waccess/style.hpp"

using namespace waccess;

namespace {

nlohmann::json contrast_goldens() {
  std::ifstream in(std::string(WACCESS_SOURCE_DIR) + "/tests/oracles/contrast_goldens.json");
  REQUIRE(in);
  return nlohmann::json::parse(in);
}

const ComputedStyleApprox& style_of(const StyleResolver& r, const DocumentModel& doc, std::string_view id) {
  NodeId n = doc.element_by_id(id);
  REQUIRE(n != kNoNode);
  return r.style(n);
}

}  // namespace

TEST_CASE("color parsing forms") {
  CHECK(parse_color("#fff") == Color::white());
  CHECK(parse_color("#000000") == Color::black());
  CHECK(parse_color("#7F7f7F") == Color::rgb(127, 127, 127));
  CHECK(parse_color("rgb(1, 2, 3)") == Color::rgb(1, 2, 3));
  CHECK(parse_color("rgb(100%, 0%, 0%)") == Color::rgb(255, 0, 0));
  CHECK(parse_color("RED") == Color::rgb(255, 0, 0));
  CHECK(parse_color("rebeccapurple") == Color::rgb(102, 51, 153));
  CHECK(parse_color("hsl(120, 100%, 25%)") == Color::rgb(0, 128, 0));
  Color half = parse_color("rgba(0, 0, 0, 0.5)");
  CHECK(half.alpha == doctest::Approx(0.5));
  CHECK(parse_color("#0000ff80").alpha == doctest::Approx(128.0 / 255.0));
  CHECK(parse_color("transparent").alpha == 0.0);
  CHECK_THROWS_AS(parse_color("#ggg"), ColorParseError);
  CHECK_THROWS_AS(parse_color("notacolor"), ColorParseError);
  CHECK_FALSE(try_parse_color("rgb(1,2)").has_value());
  CHECK(Color::rgb(1, 2, 255).hex() == "#0102ff");
}

TEST_CASE("luminance and contrast match the independent oracle") {
  auto g = contrast_goldens();
  for (const auto& [hex, lum] : g["luminance"].items())
    CHECK(relative_luminance(parse_color(hex)) == doctest::Approx(lum.get<double>()).epsilon(1e-12));
  for (const auto& p : g["pairs"]) {
    double expected = p["ratio"].get<double>();
    CHECK(contrast_ratio(parse_color(p["fg"].get<std::string>()), parse_color(p["bg"].get<std::string>())) ==
          doctest::Approx(expected).epsilon(1e-12));
  }
}

TEST_CASE("contrast is symmetric and bounded") {
  Color a = Color::rgb(12, 200, 90);
  Color b = Color::rgb(240, 20, 30);
  CHECK(contrast_ratio(a, b) == doctest::Approx(contrast_ratio(b, a)));
  CHECK(contrast_ratio(a, a) == doctest::Approx(1.0));
  CHECK(contrast_ratio(Color::black(), Color::white()) == doctest::Approx(21.0).epsilon(1e-12));
}

TEST_CASE("alpha compositing") {
  Color c = composite(parse_color("rgba(0,0,0,0.5)"), Color::white());
  CHECK(c.opaque());
  CHECK(c.r == 128);
  CHECK(composite(Color::black(), Color::white()) == Color::black());
}

TEST_CASE("large text boundary") {
  CHECK(is_large_text(24.0, 400));
  CHECK_FALSE(is_large_text(23.9, 400));
  CHECK(is_large_text(18.67, 700));
  CHECK_FALSE(is_large_text(18.0, 700));
}

TEST_CASE("css parser subset") {
  auto r = parse_css_subset(R"~(
    /* comment */
    @import url(x.css);
    p, .note { color: #333; background: #fff !important }
    a:hover { text-decoration: underline }
    @media screen { h1 { color: red } }
    @media (prefers-reduced-motion: reduce) { * { animation: none } }
    @font-face { font-family: x }
    div ~ p { color: red }
  )~");
  CHECK(r.has_reduced_motion_block);
  CHECK(r.skipped_constructs >= 2);
  REQUIRE(r.declarations.size() >= 4);
  const auto& p = r.declarations[0];
  CHECK(p.selector.text() == "p");
  REQUIRE(p.find("background") != nullptr);
  CHECK(p.find("background")->important);
  CHECK(r.declarations[1].selector.text() == ".note");
  CHECK(r.declarations[1].specificity == Specificity{0, 1, 0});
  CHECK(r.declarations[0].source_order < r.declarations[1].source_order);
  bool saw_hover = false;
  for (const auto& d : r.declarations) saw_hover |= d.pseudo == PseudoClass::Hover;
  CHECK(saw_hover);
}

TEST_CASE("css parser survives garbage") {
  CHECK_NOTHROW(parse_css_subset("}}}{{{ a { color: ; } b { : red } @media {"));
  CHECK_NOTHROW(parse_css_subset("a { color: red"));
}

TEST_CASE("cascade: specificity, order, importance, inline") {
  auto doc = parse_html(R"~(<html><head><style>
    p { color: #111 }
    #x { color: #222 }
    .c { color: #333 }
    p { color: #444 !important }
    #y { color: #555 }
  </style></head><body>
    <p id="x" class="c">a</p>
    <p id="y" style="color:#666">b</p>
    <p id="z" class="c" style="color:#777 !important">c</p>
  </body></html>)~");
  StyleSet styles = collect_styles(doc);
  StyleResolver r(doc, styles);
  CHECK(style_of(r, doc, "x").color == parse_color("#444"));
  CHECK(style_of(r, doc, "y").color == parse_color("#444"));
  CHECK(style_of(r, doc, "z").color == parse_color("#777"));
}

TEST_CASE("inheritance and UA defaults") {
  auto doc = parse_html(R"~(<body style="color:#123456;font-size:20px">
    <div><span id="s">t</span></div>
    <h1 id="h">Head</h1>
    <a id="a" href="/x">link</a>
    <b id="b">bold</b>
    <p id="em" style="font-size:2em">big</p>
  </body>)~");
  StyleSet styles = collect_styles(doc);
  StyleResolver r(doc, styles);
  CHECK(style_of(r, doc, "s").color == parse_color("#123456"));
  CHECK(style_of(r, doc, "s").font_size_px == doctest::Approx(20));
  CHECK(style_of(r, doc, "h").font_size_px == doctest::Approx(40));
  CHECK(style_of(r, doc, "h").font_weight == 700);
  CHECK(style_of(r, doc, "h").is_large_text);
  CHECK(style_of(r, doc, "a").color == parse_color("#0000ee"));
  CHECK((style_of(r, doc, "a").text_decoration & decoration::kUnderline) != 0);
  CHECK(style_of(r, doc, "b").font_weight == 700);
  CHECK(style_of(r, doc, "em").font_size_px == doctest::Approx(40));
}

TEST_CASE("background compositing over ancestors") {
  auto doc = parse_html(R"x(<body style="background:#000">
    <div id="d" style="background-color:rgba(255,255,255,0.5)"><p id="p">x</p></div>
    <div id="img" style="background:url(a.png)"><p id="q">y</p></div>
  </body>)x");
  StyleSet styles = collect_styles(doc);
  StyleResolver r(doc, styles);
  CHECK(style_of(r, doc, "p").background == Color::rgb(128, 128, 128));
  CHECK(style_of(r, doc, "d").own_background);
  CHECK_FALSE(style_of(r, doc, "p").own_background);
  CHECK(style_of(r, doc, "q").background_image);
}

TEST_CASE("visibility, display and hidden_by") {
  auto doc = parse_html(R"~(<div id="outer" style="display:none"><span id="in">x</span></div>
    <p id="v" style="visibility:hidden">v</p><p id="o" style="opacity:0.05">o</p><p id="ok">ok</p>)~");
  StyleSet styles = collect_styles(doc);
  StyleResolver r(doc, styles);
  CHECK(style_of(r, doc, "in").invisible());
  CHECK(style_of(r, doc, "in").hidden_by == doc.element_by_id("outer"));
  CHECK(style_of(r, doc, "v").invisible());
  CHECK(style_of(r, doc, "o").invisible());
  CHECK_FALSE(style_of(r, doc, "ok").invisible());
}

TEST_CASE("focus styles") {
  auto doc = parse_html(R"~(<head><style>
    .none:focus { outline: none }
    .alt:focus { outline: none; box-shadow: 0 0 0 3px #000 }
    .grey:focus { outline: 2px solid #777777 }
  </style></head><body>
    <a id="n" class="none" href="#">n</a><a id="a" class="alt" href="#">a</a>
    <a id="g" class="grey" href="#">g</a><a id="d" href="#">d</a></body>)~");
  StyleSet styles = collect_styles(doc);
  StyleResolver r(doc, styles);
  CHECK(style_of(r, doc, "n").outline_suppressed_on_focus);
  CHECK_FALSE(style_of(r, doc, "a").outline_suppressed_on_focus);
  REQUIRE(style_of(r, doc, "g").focus_indicator_color.has_value());
  CHECK(*style_of(r, doc, "g").focus_indicator_color == parse_color("#777777"));
  CHECK_FALSE(style_of(r, doc, "d").outline_suppressed_on_focus);
  CHECK_FALSE(style_of(r, doc, "d").focus_indicator_color.has_value());
}

TEST_CASE("box size from CSS and attributes") {
  auto doc = parse_html(R"~(<button id="b" style="width:30px;height:2em;font-size:10px">x</button>
    <img id="i" src="a" alt="" width="50" height="60"><button id="u">u</button>
    <button id="p" style="width:20px;height:20px;padding:2px">p</button>)~");
  StyleSet styles = collect_styles(doc);
  StyleResolver r(doc, styles);
  REQUIRE(style_of(r, doc, "b").box_size_px.has_value());
  CHECK(style_of(r, doc, "b").box_size_px->width == doctest::Approx(30));
  CHECK(style_of(r, doc, "b").box_size_px->height == doctest::Approx(20));
  REQUIRE(style_of(r, doc, "i").box_size_px.has_value());
  CHECK(style_of(r, doc, "i").box_size_px->height == doctest::Approx(60));
  CHECK_FALSE(style_of(r, doc, "u").box_size_px.has_value());
  CHECK(style_of(r, doc, "p").box_size_px->width == doctest::Approx(24));
}

TEST_CASE("style media filter and external sheets") {
  auto doc = parse_html(R"~(<head><style media="print">p{color:#f00}</style>
    <link rel="stylesheet" href="/s.css"></head><body><p id="p">x</p></body>)~",
                        "https://example.test/page");
  StyleSet without = collect_styles(doc);
  CHECK(without.declarations.empty());
  StyleSet with = collect_styles(doc, {ExternalSheet{"https://example.test/s.css", "p { color: #00f }"}});
  REQUIRE(with.declarations.size() == 1);
  CHECK(with.locator(with.declarations[0]) == "https://example.test/s.css@0");
  StyleResolver r(doc, with);
  CHECK(style_of(r, doc, "p").color == parse_color("#00f"));
}

TEST_CASE("length and duration helpers") {
  CHECK(parse_length_px("12px", 16).value() == doctest::Approx(12));
  CHECK(parse_length_px("1.5em", 16).value() == doctest::Approx(24));
  CHECK(parse_length_px("2rem", 10).value() == doctest::Approx(32));
  CHECK(parse_length_px("0", 16).value() == doctest::Approx(0));
  CHECK_FALSE(parse_length_px("auto", 16).has_value());
  CHECK_FALSE(parse_length_px("50%", 16).has_value());
  CHECK(max_duration_seconds("color .2s, all 2s", false) == doctest::Approx(2.0));
  CHECK(max_duration_seconds("opacity 300ms ease 1s", false) == doctest::Approx(0.3));
  CHECK(max_duration_seconds("spin 1.5s infinite", true) == doctest::Approx(1.5));
}
