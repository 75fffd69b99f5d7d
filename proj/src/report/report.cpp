#include "waccess/report.hpp"

#include <algorithm>
#include <json.hpp>
#include <sstream>

#include "text_util.hpp"

namespace waccess {
namespace {

bool enabled(const std::optional<RuleSet>& rules, const std::string& id) {
  return !rules || rules->empty() || rules->contains(id);
}

// Violated rule ids in numeric id order, with their violations.
std::vector<std::pair<const RuleDescriptor*, std::vector<const Violation*>>> grouped(const PageReport& report) {
  std::map<std::string, std::vector<const Violation*>> by_rule;
  for (const auto& v : report.violations) by_rule[v.rule_id].push_back(&v);
  std::vector<std::pair<const RuleDescriptor*, std::vector<const Violation*>>> out;
  for (auto& [id, list] : by_rule)
    if (const RuleDescriptor* d = find_rule(id)) out.emplace_back(d, std::move(list));
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return rule_id_less(a.first->id, b.first->id); });
  return out;
}

}  // namespace

std::string render_console(const PageReport& report) {
  std::ostringstream os;
  os << "Accessibility report for " << (report.url.empty() ? "(document)" : report.url);
  if (!report.fetched_at.empty()) os << " at " << report.fetched_at;
  os << "\n";
  for (const auto& [rule, list] : grouped(report)) {
    os << "\nWCAG " << rule->id << " (" << to_string(rule->level) << ", " << to_string(rule->version) << ") — "
       << rule->title << ": " << list.size() << " violation(s)\n";
    int n = 0;
    for (const Violation* v : list) {
      std::string_view snippet = text::utf8_prefix(v->snippet, kConsoleSnippetBytes);
      os << "  [" << ++n << "] " << v->message << "\n";
      os << "      Snippet: " << snippet << (snippet.size() < v->snippet.size() ? " [...]" : "") << "\n";
      os << "      Fix: " << v->fix << "\n";
      os << "      Location: " << v->locator << "\n";
    }
  }
  if (!report.skipped_rules.empty()) {
    os << "\nNot assessed:";
    for (const auto& s : report.skipped_rules) os << "\n  " << s.rule_id << ": " << s.reason;
    os << "\n";
  }
  auto level = [&](Level l) {
    auto it = report.totals_by_level.find(l);
    return it == report.totals_by_level.end() ? 0 : it->second;
  };
  os << "\nTotal: " << report.total() << " violation(s)\n";
  os << "A: " << level(Level::A) << ", AA: " << level(Level::AA) << ", AAA: " << level(Level::AAA) << "\n";
  return os.str();
}

std::string emit_json(const PageReport& report) {
  using nlohmann::json;
  json doc;
  doc["url"] = report.url;
  doc["fetched_at"] = report.fetched_at;
  json skipped = json::array();
  for (const auto& s : report.skipped_rules) skipped.push_back({{"rule_id", s.rule_id}, {"reason", s.reason}});
  doc["skipped_rules"] = skipped;
  json rules = json::array();
  for (const auto& [rule, list] : grouped(report)) {
    json violations = json::array();
    for (const Violation* v : list)
      violations.push_back({{"locator", v->locator}, {"snippet", v->snippet}, {"message", v->message}, {"fix", v->fix}});
    rules.push_back({{"id", rule->id},
                     {"version", to_string(rule->version)},
                     {"level", to_string(rule->level)},
                     {"principle", to_string(rule->principle)},
                     {"title", rule->title},
                     {"violations", violations}});
  }
  doc["rules"] = rules;
  json by_level = json::object();
  for (Level l : {Level::A, Level::AA, Level::AAA}) {
    auto it = report.totals_by_level.find(l);
    by_level[std::string(to_string(l))] = it == report.totals_by_level.end() ? 0 : it->second;
  }
  json by_version = json::object();
  for (WcagVersion v : {WcagVersion::V2_0, WcagVersion::V2_1, WcagVersion::V2_2}) {
    auto it = report.totals_by_version.find(v);
    by_version[std::string(to_string(v))] = it == report.totals_by_version.end() ? 0 : it->second;
  }
  doc["totals"] = {{"total", report.total()}, {"by_level", by_level}, {"by_version", by_version}};
  return doc.dump(2, ' ', false, json::error_handler_t::replace) + "\n";
}

std::size_t histogram_bucket(int v) {
  if (v <= 0) return 0;
  if (v <= 10) return 1;
  if (v <= 30) return 2;
  if (v <= 60) return 3;
  if (v <= 500) return 4;
  if (v <= 1000) return 5;
  return 6;
}

CorpusAggregate::CorpusAggregate() {
  for (const auto& r : registry()) {
    per_rule[r.id];
    histogram[r.id].fill(0);
  }
  for (Level l : {Level::A, Level::AA, Level::AAA}) per_level[l] = 0;
  for (WcagVersion v : {WcagVersion::V2_0, WcagVersion::V2_1, WcagVersion::V2_2}) per_version[v] = 0;
}

long CorpusAggregate::grand_total() const {
  long total = 0;
  for (const auto& [id, r] : per_rule) total += r.total_violations;
  return total;
}

std::map<Level, double> CorpusAggregate::level_percentages() const {
  std::map<Level, double> out;
  long total = grand_total();
  for (const auto& [level, count] : per_level) out[level] = total > 0 ? 100.0 * static_cast<double>(count) / total : 0.0;
  return out;
}

void Aggregator::add(const PageReport& report) {
  std::lock_guard lock(mutex_);
  ++agg_.sites;
  SiteTotals site;
  site.total = report.total();
  site.by_rule = report.totals_by_rule;
  site.by_level = report.totals_by_level;
  site.by_version = report.totals_by_version;
  for (auto& [id, rule] : agg_.per_rule) {
    auto it = report.totals_by_rule.find(id);
    int count = it == report.totals_by_rule.end() ? 0 : it->second;
    rule.total_violations += count;
    if (count > 0) ++rule.websites_violating;
    ++agg_.histogram[id][histogram_bucket(count)];
  }
  for (const auto& [level, count] : report.totals_by_level) agg_.per_level[level] += count;
  for (const auto& [version, count] : report.totals_by_version) agg_.per_version[version] += count;
  agg_.per_site[report.url] = std::move(site);
}

CorpusAggregate Aggregator::result() const {
  std::lock_guard lock(mutex_);
  return agg_;
}

CorpusAggregate aggregate(const std::vector<PageReport>& reports) {
  Aggregator a;
  for (const auto& r : reports) a.add(r);
  return a.result();
}

std::string csv_field(std::string_view value) {
  if (value.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(value);
  std::string out = "\"";
  for (char c : value) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string emit_aggregate_csv(const CorpusAggregate& agg, const std::optional<RuleSet>& rules) {
  std::string out = "rule_id,wcag_version,level,principle,title,total_violations,websites_violating\n";
  for (const auto& r : registry()) {
    if (!enabled(rules, r.id)) continue;
    const RuleAggregate& a = agg.per_rule.at(r.id);
    out += csv_field(r.id) + "," + std::string(to_string(r.version)) + "," + std::string(to_string(r.level)) + "," +
           std::string(to_string(r.principle)) + "," + csv_field(r.title) + "," + std::to_string(a.total_violations) +
           "," + std::to_string(a.websites_violating) + "\n";
  }
  return out;
}

std::string emit_histogram_csv(const CorpusAggregate& agg, const std::optional<RuleSet>& rules) {
  std::string out = "rule_id,bucket,site_count\n";
  for (const auto& r : registry()) {
    if (!enabled(rules, r.id)) continue;
    const auto& counts = agg.histogram.at(r.id);
    for (std::size_t b = 0; b < kHistogramBuckets.size(); ++b)
      out += csv_field(r.id) + "," + csv_field(kHistogramBuckets[b]) + "," + std::to_string(counts[b]) + "\n";
  }
  return out;
}

}  // namespace waccess
