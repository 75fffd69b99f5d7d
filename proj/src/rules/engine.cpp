#include <algorithm>
#include <chrono>
#include <ctime>
#include <exception>
#include <unordered_set>

#include "rules/catalog.hpp"
#include "waccess/rules.hpp"

namespace waccess {

namespace checks {

CheckFn check_for(std::string_view rule_id) {
  static const std::pair<std::string_view, CheckFn> kTable[] = {
      {"1.1.1", check_1_1_1},   {"1.3.1", check_1_3_1},   {"1.4.1", check_1_4_1},   {"1.4.3", check_1_4_3},
      {"1.4.4", check_1_4_4},   {"1.4.6", check_1_4_6},   {"2.1.1", check_2_1_1},   {"2.2.2", check_2_2_2},
      {"2.4.4", check_2_4_4},   {"2.4.6", check_2_4_6},   {"3.1.1", check_3_1_1},   {"3.3.2", check_3_3_2},
      {"4.1.1", check_4_1_1},   {"1.3.5", check_1_3_5},   {"1.3.6", check_1_3_6},   {"1.4.11", check_1_4_11},
      {"1.4.13", check_1_4_13}, {"2.1.4", check_2_1_4},   {"2.3.3", check_2_3_3},   {"2.5.3", check_2_5_3},
      {"2.5.5", check_2_5_5},   {"4.1.3", check_4_1_3},   {"2.4.11", check_2_4_11}, {"2.4.12", check_2_4_12},
      {"2.4.13", check_2_4_13}, {"2.5.7", check_2_5_7},   {"2.5.8", check_2_5_8},   {"3.2.7", check_3_2_7},
      {"3.3.7", check_3_3_7},
  };
  for (const auto& [id, fn] : kTable)
    if (id == rule_id) return fn;
  return nullptr;
}

}  // namespace checks

std::string utc_timestamp_now() {
  std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void recompute_totals(PageReport& report) {
  report.totals_by_rule.clear();
  report.totals_by_level = {{Level::A, 0}, {Level::AA, 0}, {Level::AAA, 0}};
  report.totals_by_version = {{WcagVersion::V2_0, 0}, {WcagVersion::V2_1, 0}, {WcagVersion::V2_2, 0}};
  for (const auto& v : report.violations) {
    ++report.totals_by_rule[v.rule_id];
    const RuleDescriptor* d = find_rule(v.rule_id);
    ++report.totals_by_level[d ? d->level : v.severity_level];
    if (d) ++report.totals_by_version[d->version];
  }
}

PageReport evaluate_page(const DocumentModel& doc, const StyleSet& styles, const std::optional<RuleSet>& enabled) {
  PageReport report;
  report.url = doc.url();
  report.fetched_at = utc_timestamp_now();
  std::optional<AuditContext> ctx;
  std::string context_error;
  try {
    ctx.emplace(doc, styles);
  } catch (const std::exception& e) {
    context_error = e.what();
  }
  for (const auto& rule : registry()) {
    if (enabled && !enabled->empty() && !enabled->contains(rule.id)) continue;
    if (!ctx) {
      report.skipped_rules.push_back({rule.id, "rule error"});
      continue;
    }
    checks::CheckFn fn = checks::check_for(rule.id);
    RuleOutcome outcome;
    try {
      outcome = fn(*ctx);
    } catch (...) {
      report.skipped_rules.push_back({rule.id, "rule error"});
      continue;
    }
    if (outcome.skip_reason) report.skipped_rules.push_back({rule.id, *outcome.skip_reason});
    if (outcome.skipped_elements > 0) report.skipped_elements[rule.id] = outcome.skipped_elements;
    std::unordered_set<std::string> seen;
    for (auto& v : outcome.violations) {
      if (!seen.insert(v.locator).second) continue;
      v.rule_id = rule.id;
      v.severity_level = rule.level;
      report.violations.push_back(std::move(v));
    }
  }
  std::stable_sort(report.violations.begin(), report.violations.end(), [](const Violation& a, const Violation& b) {
    if (a.rule_id != b.rule_id) return rule_id_less(a.rule_id, b.rule_id);
    return a.offset < b.offset;
  });
  recompute_totals(report);
  return report;
}

PageReport audit_html(std::string_view html, std::string_view url, const std::optional<RuleSet>& enabled,
                      const std::vector<ExternalSheet>& external) {
  DocumentModel doc = parse_html(html, url);
  StyleSet styles = collect_styles(doc, external);
  return evaluate_page(doc, styles, enabled);
}

}  // namespace waccess
