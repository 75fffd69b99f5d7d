#pragma once

#include <array>
#include <cstddef>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "waccess/rules.hpp"

namespace waccess {

// Snippets longer than this are cut (on a UTF-8 boundary) in console output.
inline constexpr std::size_t kConsoleSnippetBytes = 500;

// One block per violated guideline plus a "A: x, AA: y, AAA: z" footer.
std::string render_console(const PageReport& report);

// Stable JSON document with sorted keys, two-space indent, trailing newline.
std::string emit_json(const PageReport& report);

inline constexpr std::array<std::string_view, 7> kHistogramBuckets = {"0",      "1-10",     "11-30", "31-60",
                                                                      "61-500", "501-1000", ">1000"};
std::size_t histogram_bucket(int violations);

struct RuleAggregate {
  long total_violations = 0;
  int websites_violating = 0;

  friend bool operator==(const RuleAggregate&, const RuleAggregate&) = default;
};

struct SiteTotals {
  int total = 0;
  std::map<std::string, int> by_rule;
  std::map<Level, int> by_level;
  std::map<WcagVersion, int> by_version;

  friend bool operator==(const SiteTotals&, const SiteTotals&) = default;
};

struct CorpusAggregate {
  int sites = 0;
  std::map<std::string, RuleAggregate> per_rule;  // every registry rule
  std::map<Level, long> per_level;
  std::map<WcagVersion, long> per_version;
  std::map<std::string, SiteTotals> per_site;  // keyed by page URL
  std::map<std::string, std::array<int, kHistogramBuckets.size()>> histogram;

  CorpusAggregate();
  [[nodiscard]] long grand_total() const;
  // Share of violations per level in percent; all zero when there are none.
  [[nodiscard]] std::map<Level, double> level_percentages() const;

  friend bool operator==(const CorpusAggregate&, const CorpusAggregate&) = default;
};

// Incremental, order-insensitive fold; add() may be called from any thread.
class Aggregator {
 public:
  void add(const PageReport& report);
  [[nodiscard]] CorpusAggregate result() const;

 private:
  mutable std::mutex mutex_;
  CorpusAggregate agg_;
};

CorpusAggregate aggregate(const std::vector<PageReport>& reports);

// `rules` restricts the rows to the given ids (registry order is kept).
std::string emit_aggregate_csv(const CorpusAggregate& agg, const std::optional<RuleSet>& rules = std::nullopt);
std::string emit_histogram_csv(const CorpusAggregate& agg, const std::optional<RuleSet>& rules = std::nullopt);

// RFC 4180 field quoting.
std::string csv_field(std::string_view value);

}  // namespace waccess
