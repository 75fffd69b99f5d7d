#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "waccess/dom.hpp"
#include "waccess/style.hpp"

namespace waccess {

enum class WcagVersion : std::uint8_t { V2_0, V2_1, V2_2 };
enum class Level : std::uint8_t { A, AA, AAA };
enum class Principle : std::uint8_t { Perceivable, Operable, Understandable, Robust };
enum class RuleClass : std::uint8_t { Aria, ColorContrast, HtmlCheck, Interaction };

std::string_view to_string(WcagVersion v);  // "2.0"
std::string_view to_string(Level l);        // "AA"
std::string_view to_string(Principle p);    // "Perceivable"
std::string_view to_string(RuleClass c);    // "color_contrast"
std::optional<WcagVersion> parse_version(std::string_view text);

struct RuleDescriptor {
  std::string id;
  WcagVersion version;
  Level level;
  Principle principle;
  RuleClass rule_class;
  std::string title;
  std::string fix_template;  // "{tag}"-style placeholders
};

// The 29 supported success criteria, ordered by (version, numeric id).
const std::vector<RuleDescriptor>& registry();
const RuleDescriptor* find_rule(std::string_view id);
// Numeric comparison of dotted ids ("1.4.3" < "1.4.11").
bool rule_id_less(std::string_view a, std::string_view b);

struct Violation {
  std::string rule_id;
  std::string message;
  std::string snippet;  // verbatim opening tag or CSS rule
  std::string fix;
  std::string locator;  // "<path>@<byte offset>"
  Level severity_level = Level::A;
  std::size_t offset = 0;  // byte offset the locator ends with
};

struct SkippedRule {
  std::string rule_id;
  std::string reason;

  friend bool operator==(const SkippedRule&, const SkippedRule&) = default;
};

struct PageReport {
  std::string url;
  std::string fetched_at;  // ISO-8601 UTC
  std::vector<Violation> violations;
  std::map<std::string, int> totals_by_rule;
  std::map<Level, int> totals_by_level;
  std::map<WcagVersion, int> totals_by_version;
  std::vector<SkippedRule> skipped_rules;
  std::map<std::string, int> skipped_elements;  // rule id -> elements not assessable

  [[nodiscard]] int total() const { return static_cast<int>(violations.size()); }
};

// Rebuilds every totals map from `violations`.
void recompute_totals(PageReport& report);

std::string utc_timestamp_now();

// Decision thresholds shared by the checks.
namespace thresholds {
inline constexpr double kContrastAA = 4.5;
inline constexpr double kContrastAALarge = 3.0;
inline constexpr double kContrastAAA = 7.0;
inline constexpr double kContrastAAALarge = 4.5;
inline constexpr double kNonTextContrast = 3.0;
inline constexpr double kFocusContrastAA = 3.0;
inline constexpr double kFocusContrastAAA = 4.5;
inline constexpr double kTargetMinimumPx = 24.0;
inline constexpr double kTargetEnhancedPx = 44.0;
inline constexpr double kAnimationSeconds = 0.5;
}  // namespace thresholds

// Everything a check may read. Immutable once built.
class AuditContext {
 public:
  AuditContext(const DocumentModel& doc, const StyleSet& styles) : doc_(doc), styles_(styles), resolver_(doc, styles) {}

  [[nodiscard]] const DocumentModel& doc() const { return doc_; }
  [[nodiscard]] const StyleSet& styles() const { return styles_; }
  [[nodiscard]] const StyleResolver& resolver() const { return resolver_; }
  [[nodiscard]] const ComputedStyleApprox& style(NodeId id) const { return resolver_.style(id); }

 private:
  const DocumentModel& doc_;
  const StyleSet& styles_;
  StyleResolver resolver_;
};

struct RuleOutcome {
  std::vector<Violation> violations;
  int skipped_elements = 0;
  std::optional<std::string> skip_reason;  // set when the rule could not assess the page
};

using RuleSet = std::set<std::string, std::less<>>;

// Runs every enabled rule (all when `enabled` is empty). Violations are
// deduplicated per (rule, locator) and sorted by (rule id, byte offset).
PageReport evaluate_page(const DocumentModel& doc, const StyleSet& styles,
                         const std::optional<RuleSet>& enabled = std::nullopt);

// Parse, collect styles and evaluate in one call.
PageReport audit_html(std::string_view html, std::string_view url = {},
                      const std::optional<RuleSet>& enabled = std::nullopt,
                      const std::vector<ExternalSheet>& external = {});

// Throws std::invalid_argument naming the first unknown id.
RuleSet parse_rule_filter(std::string_view comma_separated);

}  // namespace waccess
