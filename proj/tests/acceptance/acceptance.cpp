// Acceptance checks: prints one PASS/FAIL line per criterion and exits
// non-zero when any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <json.hpp>
#include <random>
#include <regex>
#include <set>
#include <sstream>

#include "fixture_server.hpp"
#include "waccess/cli.hpp"
#include "waccess/crawler.hpp"
#include "waccess/report.hpp"
#include "waccess/rules.hpp"
#include "waccess/style.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace waccess;

namespace {

const fs::path kSource = WACCESS_SOURCE_DIR;
const fs::path kFixtures = kSource / "tests" / "fixtures" / "rules";
constexpr const char* kFixedTime = "2000-01-01T00:00:00Z";

struct Outcome {
  bool pass = true;
  std::string detail;
  std::vector<std::string> problems;

  void fail(std::string why) {
    pass = false;
    if (problems.size() < 8) problems.push_back(std::move(why));
  }
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::string fmt(double v, int digits = 2) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

// Hand-counted expectations: fixture file -> {rule id -> count}.
std::map<std::string, std::map<std::string, int>> expected_counts() {
  json j = json::parse(slurp(kFixtures / "expected.json"));
  std::map<std::string, std::map<std::string, int>> out;
  for (const auto& [file, rules] : j.items()) {
    auto& m = out[file];
    for (const auto& [id, n] : rules.items()) m[id] = n.get<int>();
  }
  return out;
}

std::map<std::string, int> counts_of(const PageReport& r) {
  std::map<std::string, int> m;
  for (const auto& v : r.violations) ++m[v.rule_id];
  return m;
}

std::string describe(const std::map<std::string, int>& m) {
  std::string s = "{";
  for (const auto& [k, v] : m) s += (s.size() > 1 ? ", " : "") + k + ":" + std::to_string(v);
  return s + "}";
}

// Independent WCAG formula, kept separate from the library on purpose.
double oracle_channel(int v) {
  double c = v / 255.0;
  return c <= 0.03928 ? c / 12.92 : std::pow((c + 0.055) / 1.055, 2.4);
}
double oracle_luminance(int r, int g, int b) {
  return 0.2126 * oracle_channel(r) + 0.7152 * oracle_channel(g) + 0.0722 * oracle_channel(b);
}
double oracle_ratio(std::array<int, 3> a, std::array<int, 3> b) {
  double la = oracle_luminance(a[0], a[1], a[2]);
  double lb = oracle_luminance(b[0], b[1], b[2]);
  if (la < lb) std::swap(la, lb);
  return (la + 0.05) / (lb + 0.05);
}
std::string hex(std::array<int, 3> c) {
  char buf[8];
  std::snprintf(buf, sizeof buf, "#%02x%02x%02x", c[0], c[1], c[2]);
  return buf;
}

std::string page(std::string_view body, std::string_view css = {}, std::string_view lang_attr = " lang=\"en\"",
                 bool h1 = true) {
  std::string out = "<!DOCTYPE html>\n<html" + std::string(lang_attr) + "><head><title>t</title>";
  if (!css.empty()) out += "<style>" + std::string(css) + "</style>";
  out += "</head><body>";
  if (h1) out += "<h1>Top</h1>";
  return out + std::string(body) + "</body></html>";
}

// ---------------------------------------------------------------------------

Outcome criterion_1() {
  Outcome o;
  auto expected = expected_counts();
  auto start = std::chrono::steady_clock::now();
  int mismatches = 0;
  std::map<std::string, std::pair<int, int>> coverage;  // rule -> (violating, passing)
  for (const auto& [file, want] : expected) {
    PageReport r = audit_html(slurp(kFixtures / file), file);
    auto got = counts_of(r);
    if (got != want) {
      ++mismatches;
      o.fail(file + ": expected " + describe(want) + " got " + describe(got));
    }
    for (const auto& rule : registry()) {
      auto it = want.find(rule.id);
      if (it != want.end() && it->second > 0) ++coverage[rule.id].first;
      else ++coverage[rule.id].second;
    }
  }
  double elapsed = seconds_since(start);
  // A passing fixture for a rule must be one aimed at it, so count named pairs.
  int rules_with_pair = 0;
  for (const auto& rule : registry()) {
    std::string stem = rule.id;
    std::replace(stem.begin(), stem.end(), '.', '_');
    bool fail_fixture = false, pass_fixture = false;
    for (const auto& [file, want] : expected) {
      if (!file.starts_with(stem + "_")) continue;
      auto it = want.find(rule.id);
      int n = it == want.end() ? 0 : it->second;
      if (file.find("_fail") != std::string::npos && n > 0) fail_fixture = true;
      if (file.find("_pass") != std::string::npos && n == 0) pass_fixture = true;
    }
    if (fail_fixture && pass_fixture) ++rules_with_pair;
    else o.fail("rule " + rule.id + " lacks a dedicated violating/passing fixture pair");
  }
  if (expected.size() < 58) o.fail("only " + std::to_string(expected.size()) + " fixtures");
  if (elapsed >= 5.0) o.fail("suite took " + fmt(elapsed) + " s");
  o.detail = std::to_string(expected.size()) + " fixtures, " + std::to_string(rules_with_pair) +
             "/29 rules with fail+pass fixtures, " + std::to_string(mismatches) + " count mismatches, " +
             fmt(elapsed, 3) + " s";
  return o;
}

Outcome criterion_2() {
  Outcome o;
  json g = json::parse(slurp(kSource / "tests" / "oracles" / "contrast_goldens.json"));
  auto ratio = [](std::string_view a, std::string_view b) { return contrast_ratio(parse_color(a), parse_color(b)); };
  double bw = ratio("#000000", "#ffffff");
  if (std::abs(bw - 21.0) > 1e-9) o.fail("black/white = " + fmt(bw, 12));
  for (const char* c : {"#000000", "#ffffff", "#767676", "#3a7bd5"})
    if (std::abs(ratio(c, c) - 1.0) > 1e-12) o.fail(std::string("(c,c) for ") + c);
  double a = ratio("#767676", "#ffffff");
  double b = ratio("#777777", "#ffffff");
  if (std::abs(a - 4.54) > 0.01) o.fail("#767676 = " + fmt(a, 6));
  if (std::abs(b - 4.48) > 0.01) o.fail("#777777 = " + fmt(b, 6));
  int pairs = 0;
  for (const auto& p : g["pairs"]) {
    ++pairs;
    double want = p["ratio"].get<double>();
    double got = ratio(p["fg"].get<std::string>(), p["bg"].get<std::string>());
    if (std::abs(got - want) > 1e-9)
      o.fail(p["fg"].get<std::string>() + " vs " + p["bg"].get<std::string>() + ": " + fmt(got, 12));
  }
  o.detail = "black/white " + fmt(bw, 9) + ", #767676 " + fmt(a, 4) + ", #777777 " + fmt(b, 4) + ", " +
             std::to_string(pairs) + " oracle pairs within 1e-9";
  return o;
}

Outcome criterion_3() {
  Outcome o;
  struct Row {
    const char* id;
    const char* version;
    const char* level;
    const char* principle;
    const char* title;
  };
  // Transcribed from the published guideline tables.
  static const Row kTable[] = {
      {"2.4.11", "2.2", "AA", "Operable", "Focus Appearance (Minimum)"},
      {"2.4.12", "2.2", "AAA", "Operable", "Focus Appearance (Enhanced)"},
      {"2.4.13", "2.2", "A", "Operable", "Page Break Navigation"},
      {"2.5.7", "2.2", "AA", "Operable", "Dragging Movements"},
      {"2.5.8", "2.2", "AA", "Operable", "Target Size (Minimum)"},
      {"3.2.7", "2.2", "A", "Understandable", "Visible Controls"},
      {"3.3.7", "2.2", "A", "Understandable", "Accessible Authentication"},
      {"1.3.5", "2.1", "AA", "Perceivable", "Identify Input Purpose"},
      {"1.3.6", "2.1", "AAA", "Perceivable", "Identify Purpose"},
      {"1.4.11", "2.1", "AA", "Perceivable", "Non-text Contrast"},
      {"1.4.13", "2.1", "AA", "Perceivable", "Content on Hover or Focus"},
      {"2.1.4", "2.1", "A", "Operable", "Character Key Shortcuts"},
      {"2.3.3", "2.1", "AAA", "Operable", "Animation from Interactions"},
      {"2.5.3", "2.1", "A", "Operable", "Label in Name"},
      {"2.5.5", "2.1", "AAA", "Operable", "Target Size"},
      {"4.1.3", "2.1", "AA", "Robust", "Status Messages"},
      {"1.1.1", "2.0", "A", "Perceivable", "Non-text Content"},
      {"1.3.1", "2.0", "A", "Perceivable", "Info and Relationships"},
      {"1.4.1", "2.0", "A", "Perceivable", "Use of Color"},
      {"1.4.3", "2.0", "AA", "Perceivable", "Contrast (Minimum)"},
      {"1.4.4", "2.0", "AA", "Perceivable", "Resize text"},
      {"1.4.6", "2.0", "AAA", "Perceivable", "Contrast (Enhanced)"},
      {"2.1.1", "2.0", "A", "Operable", "Keyboard"},
      {"2.2.2", "2.0", "A", "Operable", "Pause, Stop, Hide"},
      {"2.4.4", "2.0", "A", "Operable", "Link Purpose (In Context)"},
      {"2.4.6", "2.0", "AA", "Operable", "Headings and Labels"},
      {"3.1.1", "2.0", "A", "Understandable", "Language of Page"},
      {"3.3.2", "2.0", "A", "Understandable", "Labels or Instructions"},
      {"4.1.1", "2.0", "A", "Robust", "Parsing"},
  };
  std::map<std::string, int> versions, levels;
  for (const auto& r : registry()) {
    ++versions[std::string(to_string(r.version))];
    ++levels[std::string(to_string(r.level))];
  }
  if (versions != std::map<std::string, int>{{"2.0", 13}, {"2.1", 9}, {"2.2", 7}}) o.fail("version counts " + describe(versions));
  if (levels != std::map<std::string, int>{{"A", 14}, {"AA", 10}, {"AAA", 5}}) o.fail("level counts " + describe(levels));
  if (registry().size() != 29) o.fail("registry has " + std::to_string(registry().size()) + " rows");
  int checked = 0;
  for (const Row& row : kTable) {
    const RuleDescriptor* d = find_rule(row.id);
    if (!d) {
      o.fail(std::string("missing ") + row.id);
      continue;
    }
    ++checked;
    if (to_string(d->version) != row.version) o.fail(std::string(row.id) + " version");
    if (to_string(d->level) != row.level) o.fail(std::string(row.id) + " level");
    if (to_string(d->principle) != row.principle) o.fail(std::string(row.id) + " principle");
    if (d->title != row.title) o.fail(std::string(row.id) + " title '" + d->title + "'");
  }
  o.detail = "versions " + describe(versions) + ", levels " + describe(levels) + ", " + std::to_string(checked) +
             "/29 rows match id/version/level/principle/title";
  return o;
}

Outcome criterion_4() {
  Outcome o;
  std::mt19937 rng(20240401);
  const std::vector<std::string> langs = {"",      " lang=\"\"",      " lang=\"en\"",   " lang=\"en-IN\"", " lang=\"english\"",
                                          " lang=\"e\"", " lang=\"hi\"", " lang=\"zh-Hant\"", " lang=\"123\"", " lang=\"fra\"",
                                          " lang=\"en_US\"", " lang=\"x-\"", " lang"};
  const std::regex valid_lang("[A-Za-z]{2,3}(-[A-Za-z0-9]{1,8})*");
  int max_311 = 0, max_246 = 0, agree = 0;
  for (int i = 0; i < 200; ++i) {
    std::string lang = langs[rng() % langs.size()];
    int n = static_cast<int>(rng() % 12);
    std::vector<int> levels;
    std::string body;
    for (int k = 0; k < n; ++k) {
      int level = 1 + static_cast<int>(rng() % 6);
      levels.push_back(level);
      body += "<h" + std::to_string(level) + ">H" + std::to_string(k) + "</h" + std::to_string(level) + ">";
      if (rng() % 3 == 0) body += "<p>text</p>";
    }
    PageReport r = audit_html(page(body, {}, lang, false));
    auto c = counts_of(r);
    max_311 = std::max(max_311, c["3.1.1"]);
    max_246 = std::max(max_246, c["2.4.6"]);
    if (c["3.1.1"] > 1 || c["2.4.6"] > 1) o.fail("case " + std::to_string(i) + " exceeded the per-page cap");
    // Oracle: lang attribute value must look like a language tag.
    std::smatch m;
    std::string value;
    static const std::regex attr("lang=\"([^\"]*)\"");
    if (std::regex_search(lang, m, attr)) value = m[1];
    bool lang_bad = !std::regex_match(value, valid_lang);
    bool heading_bad = levels.empty() || levels[0] != 1;
    for (std::size_t k = 1; k < levels.size(); ++k) heading_bad |= levels[k] > levels[k - 1] + 1;
    if ((c["3.1.1"] == 1) == lang_bad && (c["2.4.6"] == 1) == heading_bad) ++agree;
    else o.fail("case " + std::to_string(i) + " disagrees with oracle (lang '" + value + "')");
  }
  o.detail = "200 random pages, max 3.1.1 = " + std::to_string(max_311) + ", max 2.4.6 = " + std::to_string(max_246) +
             ", " + std::to_string(agree) + "/200 agree with oracle";
  return o;
}

Outcome criterion_5() {
  Outcome o;
  std::mt19937 rng(777);
  auto rand_color = [&] {
    return std::array<int, 3>{static_cast<int>(rng() % 256), static_cast<int>(rng() % 256),
                              static_cast<int>(rng() % 256)};
  };
  const int sizes[] = {12, 14, 16, 18, 19, 20, 24, 28};
  long pairs[3] = {0, 0, 0};  // 1.4.3, 2.5.8, 2.4.11 violations seen
  int oracle_checks = 0;
  for (int i = 0; i < 500; ++i) {
    std::string body, css;
    std::map<std::string, std::pair<bool, bool>> text_oracle;  // id -> (fails AA, fails AAA)
    std::map<std::string, std::pair<bool, bool>> focus_oracle;
    int n = 1 + static_cast<int>(rng() % 4);
    for (int k = 0; k < n; ++k) {
      auto fg = rand_color();
      auto bg = rand_color();
      int size = sizes[rng() % 8];
      int weight = rng() % 2 ? 700 : 400;
      std::string id = "t" + std::to_string(k);
      body += "<p id=\"" + id + "\" style=\"color:" + hex(fg) + ";background:" + hex(bg) + ";font-size:" +
              std::to_string(size) + "px;font-weight:" + std::to_string(weight) + "\">Sample</p>";
      bool large = size >= 24 || (size >= 19 && weight >= 700);
      double ratio = oracle_ratio(fg, bg);
      text_oracle[id] = {ratio < (large ? 3.0 : 4.5), ratio < (large ? 4.5 : 7.0)};

      int w = 10 + static_cast<int>(rng() % 50);
      int h = 10 + static_cast<int>(rng() % 50);
      body += "<button style=\"width:" + std::to_string(w) + "px;height:" + std::to_string(h) +
              "px;background:#000;color:#fff\">B</button>";

      auto ring = rand_color();
      std::string cls = "f" + std::to_string(k);
      css += "." + cls + ":focus{outline:2px solid " + hex(ring) + "}";
      body += "<p><a class=\"" + cls + "\" id=\"" + cls + "\" href=\"/" + cls + "\">link " + cls + "</a></p>";
      double fr = oracle_ratio(ring, {255, 255, 255});
      focus_oracle[cls] = {fr < 3.0, fr < 4.5};
    }
    PageReport r = audit_html(page(body, css));
    std::map<std::string, std::set<std::string>> by_rule;
    for (const auto& v : r.violations) by_rule[v.rule_id].insert(v.locator);
    auto subset = [&](const char* narrow, const char* wide) {
      for (const auto& loc : by_rule[narrow])
        if (!by_rule[wide].contains(loc)) o.fail(std::string(narrow) + " without " + wide + " at " + loc);
    };
    subset("1.4.3", "1.4.6");
    subset("2.5.8", "2.5.5");
    subset("2.4.11", "2.4.12");
    pairs[0] += static_cast<long>(by_rule["1.4.3"].size());
    pairs[1] += static_cast<long>(by_rule["2.5.8"].size());
    pairs[2] += static_cast<long>(by_rule["2.4.11"].size());
    // The generated colors must also be judged exactly as the formula says.
    auto flagged = [&](const char* rule, const std::string& id) {
      for (const auto& v : r.violations)
        if (v.rule_id == rule && v.snippet.find("id=\"" + id + "\"") != std::string::npos) return true;
      return false;
    };
    for (const auto& [id, want] : text_oracle) {
      ++oracle_checks;
      if (flagged("1.4.3", id) != want.first || flagged("1.4.6", id) != want.second)
        o.fail("case " + std::to_string(i) + " text " + id + " disagrees with the contrast oracle");
    }
    for (const auto& [id, want] : focus_oracle) {
      ++oracle_checks;
      if (flagged("2.4.11", id) != want.first || flagged("2.4.12", id) != want.second)
        o.fail("case " + std::to_string(i) + " focus " + id + " disagrees with the contrast oracle");
    }
  }
  o.detail = "500 random pages; implications held with " + std::to_string(pairs[0]) + " 1.4.3, " +
             std::to_string(pairs[1]) + " 2.5.8 and " + std::to_string(pairs[2]) + " 2.4.11 violations; " +
             std::to_string(oracle_checks) + " oracle comparisons";
  return o;
}

// Independent fold of hand-counted expectations into the aggregate CSV.
std::string oracle_csv(const std::vector<std::map<std::string, int>>& sites) {
  std::string out = "rule_id,wcag_version,level,principle,title,total_violations,websites_violating\n";
  for (const auto& rule : registry()) {
    long total = 0;
    int websites = 0;
    for (const auto& site : sites) {
      auto it = site.find(rule.id);
      int n = it == site.end() ? 0 : it->second;
      total += n;
      websites += n > 0;
    }
    std::string title = rule.title.find(',') != std::string::npos ? "\"" + rule.title + "\"" : rule.title;
    out += rule.id + "," + std::string(to_string(rule.version)) + "," + std::string(to_string(rule.level)) + "," +
           std::string(to_string(rule.principle)) + "," + title + "," + std::to_string(total) + "," +
           std::to_string(websites) + "\n";
  }
  return out;
}

std::string oracle_histogram(const std::vector<std::map<std::string, int>>& sites) {
  auto bucket = [](int n) {
    if (n == 0) return 0;
    if (n <= 10) return 1;
    if (n <= 30) return 2;
    if (n <= 60) return 3;
    if (n <= 500) return 4;
    if (n <= 1000) return 5;
    return 6;
  };
  const char* names[] = {"0", "1-10", "11-30", "31-60", "61-500", "501-1000", ">1000"};
  std::string out = "rule_id,bucket,site_count\n";
  for (const auto& rule : registry()) {
    int counts[7] = {};
    for (const auto& site : sites) {
      auto it = site.find(rule.id);
      ++counts[bucket(it == site.end() ? 0 : it->second)];
    }
    for (int b = 0; b < 7; ++b) out += rule.id + "," + names[b] + "," + std::to_string(counts[b]) + "\n";
  }
  return out;
}

Outcome criterion_6() {
  Outcome o;
  auto start = std::chrono::steady_clock::now();
  auto expected = expected_counts();
  testing::FixtureServer server;
  std::vector<std::string> urls;
  std::vector<std::map<std::string, int>> live_expectations;
  for (const auto& [file, counts] : expected) {
    if (urls.size() == 45) break;
    server.add("/site/" + file, slurp(kFixtures / file));
    urls.push_back(server.url("/site/" + file));
    live_expectations.push_back(counts);
  }
  urls.push_back(server.url("/status/404"));
  urls.push_back(server.url("/loop/0"));
  urls.push_back(server.url("/empty"));
  urls.push_back("http://127.0.0.1:1/closed");
  urls.push_back("http://dead-site.invalid/");
  std::mt19937 rng(50);
  std::shuffle(urls.begin(), urls.end(), rng);

  fs::path dir = fs::temp_directory_path() / "waccess_acceptance_batch";
  fs::remove_all(dir);
  fs::create_directories(dir);
  {
    std::ofstream list(dir / "urls.txt");
    for (const auto& u : urls) list << u << "\n";
  }
  std::ostringstream out, err;
  std::string list_path = (dir / "urls.txt").string();
  std::string out_path = (dir / "out").string();
  const char* argv[] = {"waccess", "batch", list_path.c_str(), "--out", out_path.c_str(), "--concurrency", "4",
                        "--timeout", "2000"};
  int code = run_cli(9, argv, out, err);
  if (code != 0) o.fail("batch exit code " + std::to_string(code));
  json summary = json::parse(slurp(dir / "out" / "summary.json"));
  int live = summary["live_count"], dead = summary["dead_count"];
  if (live != 45 || dead != 5) o.fail("live/dead " + std::to_string(live) + "/" + std::to_string(dead));
  std::string csv = slurp(dir / "out" / "aggregate.csv");
  if (csv != oracle_csv(live_expectations)) o.fail("aggregate.csv differs from the hand fold");
  if (slurp(dir / "out" / "histogram.csv") != oracle_histogram(live_expectations))
    o.fail("histogram.csv differs from the hand fold");
  int reports = 0;
  for (const auto& entry : fs::directory_iterator(dir / "out"))
    reports += entry.path().extension() == ".json" && entry.path().filename() != "summary.json" &&
               entry.path().filename() != "index.json";
  if (reports != 45) o.fail(std::to_string(reports) + " per-site reports written");

  // Permutations must reproduce the same aggregate.
  std::optional<CorpusAggregate> first;
  for (int round = 0; round < 3; ++round) {
    std::shuffle(urls.begin(), urls.end(), rng);
    BatchPlan plan = BatchPlan::from_inputs(urls);
    plan.concurrency = 1 + round * 3;
    plan.timeout_ms = 2000;
    Aggregator agg;
    run_batch(plan, [&](const FetchResult&, const PageReport& r) { agg.add(r); });
    CorpusAggregate result = agg.result();
    if (emit_aggregate_csv(result) != csv) o.fail("permutation " + std::to_string(round) + " changed the CSV");
    if (!first) first = result;
    else if (!(*first == result)) o.fail("permutation " + std::to_string(round) + " changed the aggregate");
  }
  fs::remove_all(dir);
  double elapsed = seconds_since(start);
  if (elapsed >= 30.0) o.fail("took " + fmt(elapsed) + " s");
  std::string reasons;
  for (const auto& [k, v] : summary["per_reason"].items()) reasons += (reasons.empty() ? "" : ", ") + k + "=" + v.dump();
  o.detail = "live " + std::to_string(live) + ", dead " + std::to_string(dead) + " (" + reasons +
             "); CSV equals hand fold; 3 permutations identical; " + fmt(elapsed) + " s";
  return o;
}

// Structural validation against the published report schema.
bool valid_report_json(const json& j, std::string& why) {
  auto keys_are = [&](const json& obj, std::set<std::string> want, const std::string& where) {
    if (!obj.is_object()) {
      why = where + " is not an object";
      return false;
    }
    std::set<std::string> got;
    for (const auto& [k, v] : obj.items()) got.insert(k);
    if (got != want) {
      why = where + " has unexpected keys";
      return false;
    }
    return true;
  };
  if (!keys_are(j, {"url", "fetched_at", "skipped_rules", "rules", "totals"}, "report")) return false;
  if (!j["url"].is_string() || !j["fetched_at"].is_string()) return why = "url/fetched_at type", false;
  if (!j["skipped_rules"].is_array()) return why = "skipped_rules type", false;
  for (const auto& s : j["skipped_rules"]) {
    if (!keys_are(s, {"rule_id", "reason"}, "skipped rule")) return false;
    if (!s["rule_id"].is_string() || !s["reason"].is_string()) return why = "skipped rule types", false;
  }
  if (!j["rules"].is_array()) return why = "rules type", false;
  long total = 0;
  for (const auto& r : j["rules"]) {
    if (!keys_are(r, {"id", "version", "level", "principle", "title", "violations"}, "rule")) return false;
    for (const char* k : {"id", "version", "level", "principle", "title"})
      if (!r[k].is_string()) return why = std::string("rule.") + k + " type", false;
    if (!r["violations"].is_array() || r["violations"].empty()) return why = "rule.violations", false;
    for (const auto& v : r["violations"]) {
      if (!keys_are(v, {"locator", "snippet", "message", "fix"}, "violation")) return false;
      for (const char* k : {"locator", "snippet", "message", "fix"})
        if (!v[k].is_string()) return why = std::string("violation.") + k + " type", false;
      ++total;
    }
  }
  if (!keys_are(j["totals"], {"total", "by_level", "by_version"}, "totals")) return false;
  if (!keys_are(j["totals"]["by_level"], {"A", "AA", "AAA"}, "by_level")) return false;
  if (!keys_are(j["totals"]["by_version"], {"2.0", "2.1", "2.2"}, "by_version")) return false;
  if (!j["totals"]["total"].is_number_integer() || j["totals"]["total"] != total) return why = "total mismatch", false;
  long levels = 0, versions = 0;
  for (const auto& [k, v] : j["totals"]["by_level"].items()) levels += v.get<long>();
  for (const auto& [k, v] : j["totals"]["by_version"].items()) versions += v.get<long>();
  if (levels != total || versions != total) return why = "level/version totals", false;
  return true;
}

Outcome criterion_7() {
  Outcome o;
  auto expected = expected_counts();
  int blocks = 0, files = 0;
  for (const auto& [file, want] : expected) {
    ++files;
    std::string html = slurp(kFixtures / file);
    PageReport r = audit_html(html, file);
    r.fetched_at = kFixedTime;
    std::string console = render_console(r);
    for (const auto& v : r.violations) {
      const RuleDescriptor* d = find_rule(v.rule_id);
      std::string header = "WCAG " + d->id + " (" + std::string(to_string(d->level)) + ", " +
                           std::string(to_string(d->version)) + ") — " + d->title + ": ";
      std::string body = "] " + v.message + "\n      Snippet: " + v.snippet + "\n      Fix: " + v.fix +
                         "\n      Location: " + v.locator + "\n";
      if (console.find(header) == std::string::npos) o.fail(file + ": missing header for " + d->id);
      if (v.snippet.size() <= kConsoleSnippetBytes && console.find(body) == std::string::npos)
        o.fail(file + ": incomplete block for " + d->id);
      if (v.message.empty() || v.fix.empty() || v.snippet.empty()) o.fail(file + ": empty field in " + d->id);
      if (html.find(v.snippet) == std::string::npos && !v.locator.starts_with("style"))
        o.fail(file + ": snippet not verbatim for " + d->id);
      ++blocks;
    }
    std::string console_total = "Total: " + std::to_string(r.total()) + " violation(s)\n";
    if (console.find(console_total) == std::string::npos) o.fail(file + ": console total");

    std::string a = emit_json(r);
    PageReport again = audit_html(html, file);
    again.fetched_at = kFixedTime;
    if (a != emit_json(again)) o.fail(file + ": JSON not byte-deterministic");
    std::string why;
    json j = json::parse(a);
    if (!valid_report_json(j, why)) o.fail(file + ": schema: " + why);
    CorpusAggregate agg = aggregate({r});
    if (j["totals"]["total"].get<long>() != agg.grand_total()) o.fail(file + ": JSON and CSV totals differ");
  }
  o.detail = std::to_string(files) + " fixtures, " + std::to_string(blocks) +
             " violation blocks with id/message/snippet/fix; schema valid; JSON byte-identical across runs";
  return o;
}

std::string mutate(const std::string& seed, std::mt19937& rng) {
  static const std::vector<std::string> tokens = {
      "<", ">", "</", "/>", "<div>", "</div>", "<p>", "</p>", "<table><tr><td>", "</td></tr></table>", "<img",
      " alt=", "\"", "'", "=", "<!--", "-->", "<![CDATA[", "]]>", "<script>", "</script>", "<style>", "</style>",
      "{", "}", ":hover", ":focus", "outline:none;", "color:#777;", "display:none;", "<a href=", "&amp;", "&#",
      "&#x110000;", "&", "\xFF", "\xC3", "\xE2\x82", "\0", "<!DOCTYPE", "<html lang=", "<input type=password>",
      "<form>", "<h7>", "<h0>", "<svg><g>", "<math>", "<template>", "<button aria-label=", "id=dup", "tabindex=99999999999"};
  std::string s = seed;
  int ops = 1 + static_cast<int>(rng() % 6);
  for (int k = 0; k < ops; ++k) {
    std::size_t pos = s.empty() ? 0 : rng() % (s.size() + 1);
    switch (rng() % 7) {
      case 0: s.resize(pos); break;
      case 1: s.insert(pos, tokens[rng() % tokens.size()]); break;
      case 2: {
        std::size_t len = rng() % 64;
        s.erase(pos, len);
        break;
      }
      case 3: {
        std::size_t len = rng() % 200;
        s.insert(pos, s.substr(pos, len));
        break;
      }
      case 4: {
        std::string junk(rng() % 32, '\0');
        for (char& c : junk) c = static_cast<char>(rng() % 256);
        s.insert(pos, junk);
        break;
      }
      case 5: {
        std::string deep;
        int n = static_cast<int>(rng() % 400);
        for (int d = 0; d < n; ++d) deep += rng() % 2 ? "<div>" : "<span style=\"color:#777\">";
        s.insert(pos, deep);
        break;
      }
      default:
        if (!s.empty()) s[pos % s.size()] = static_cast<char>(rng() % 256);
    }
  }
  return s;
}

Outcome criterion_8() {
  Outcome o;
  auto start = std::chrono::steady_clock::now();
  std::vector<std::string> seeds;
  for (const auto& [file, _] : expected_counts()) seeds.push_back(slurp(kFixtures / file));
  seeds.push_back("");
  seeds.push_back("<");
  seeds.push_back(std::string(5000, '<'));
  std::mt19937 rng(8);
  int parse_errors = 0, rule_errors = 0;
  for (int i = 0; i < 10000; ++i) {
    std::string input = mutate(seeds[rng() % seeds.size()], rng);
    try {
      PageReport r = audit_html(input, "https://fuzz.test/");
      for (const auto& s : r.skipped_rules) rule_errors += s.reason.starts_with("rule error");
      std::string j = emit_json(r);
      if (!json::accept(j)) o.fail("case " + std::to_string(i) + ": invalid JSON output");
      (void)render_console(r);
    } catch (const ParseError&) {
      ++parse_errors;
      if (!input.empty()) o.fail("case " + std::to_string(i) + ": ParseError on non-empty input");
    } catch (const std::exception& e) {
      o.fail("case " + std::to_string(i) + ": exception " + e.what());
    }
  }
  double elapsed = seconds_since(start);
  o.detail = "10000 mutated inputs, no aborts; " + std::to_string(parse_errors) + " empty-input ParseErrors; " +
             std::to_string(rule_errors) + " rule errors surfaced as skipped_rules; " + fmt(elapsed) + " s";
  return o;
}

Outcome criterion_9() {
  Outcome o;
  auto start = std::chrono::steady_clock::now();
  const std::string html = page("<p>load test</p>");
  std::string detail;
  for (int limit : {1, 4, 8}) {
    // A fresh server per limit keeps the peak counter meaningful.
    testing::FixtureServer fresh("0.0.0.0", 40);
    std::vector<std::string> fresh_urls;
    for (int i = 0; i < 100; ++i) {
      std::string path = "/p" + std::to_string(i);
      fresh.add(path, html);
      fresh_urls.push_back(fresh.url(path, "127.0.0." + std::to_string(1 + i % 25)));
    }
    BatchPlan plan = BatchPlan::from_inputs(fresh_urls);
    plan.concurrency = limit;
    plan.timeout_ms = 5000;
    BatchSummary summary = run_batch(plan, [](const FetchResult&, const PageReport&) {});
    if (summary.live_count != 100) o.fail("limit " + std::to_string(limit) + ": live " + std::to_string(summary.live_count));
    if (fresh.peak() > limit) o.fail("limit " + std::to_string(limit) + ": peak " + std::to_string(fresh.peak()));
    if (limit > 1 && fresh.peak() < 2) o.fail("limit " + std::to_string(limit) + ": no parallelism observed");
    detail += (detail.empty() ? "" : ", ") + std::string("limit ") + std::to_string(limit) + " -> peak " +
              std::to_string(fresh.peak());
  }
  double elapsed = seconds_since(start);
  o.detail = "100 URLs over 25 loopback hosts: " + detail + "; " + fmt(elapsed) + " s";
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    int number;
    const char* name;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {1, "Rule-fixture suite", criterion_1},
      {2, "Contrast math goldens", criterion_2},
      {3, "Registry conformance", criterion_3},
      {4, "Per-page caps", criterion_4},
      {5, "Monotone thresholds", criterion_5},
      {6, "Aggregation oracle", criterion_6},
      {7, "Report fidelity", criterion_7},
      {8, "Robustness", criterion_8},
      {9, "Concurrency bound", criterion_9},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("threw: ") + e.what();
    }
    failed += !o.pass;
    std::cout << "criterion " << c.number << " [" << (o.pass ? "PASS" : "FAIL") << "] " << c.name << ": " << o.detail
              << "\n";
    for (const auto& p : o.problems) std::cout << "    " << p << "\n";
    std::cout.flush();
  }
  std::cout << (failed == 0 ? "all criteria passed\n" : std::to_string(failed) + " criteria failed\n");
  return failed == 0 ? 0 : 1;
}
