#pragma once

#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "waccess/rules.hpp"
#include "waccess/style.hpp"

namespace waccess {

inline constexpr std::string_view kVersion = "1.0.0";
inline constexpr int kMaxRedirects = 5;
inline constexpr int kDefaultTimeoutMs = 20000;
inline constexpr std::size_t kMaxBodyBytes = 16u << 20;

// "waccess-kit-audit/<version>", or $WACCESS_USER_AGENT when set.
std::string default_user_agent();

enum class DeadReason : std::uint8_t { None, Dns, Connect, Timeout, HttpError, TooManyRedirects, EmptyBody };

struct FetchResult {
  std::string url;        // as requested
  std::string final_url;  // after redirects
  bool live = false;
  int http_status = 0;
  std::string body;
  std::string content_type;
  DeadReason reason = DeadReason::None;
  long elapsed_ms = 0;
  std::string fetched_at;
  std::vector<ExternalSheet> stylesheets;

  // "dns", "connect", "timeout", "http_error(404)", "too_many_redirects",
  // "empty_body"; empty when live.
  [[nodiscard]] std::string reason_text() const;
};

struct FetchOptions {
  int timeout_ms = kDefaultTimeoutMs;  // per connect and per read
  bool fetch_css = false;
  std::string user_agent = default_user_agent();
};

// Adds "https://" when the scheme is missing; drops the fragment. Returns
// nullopt for non-http(s) or malformed URLs.
std::optional<std::string> normalize_url(std::string_view raw);

// One URL per line; blank lines and '#' comments skipped. Throws
// std::runtime_error when the file cannot be read.
std::vector<std::string> read_url_list(const std::filesystem::path& path);

// Never throws; every failure is folded into a dead result.
FetchResult fetch_one(std::string_view url, const FetchOptions& options);

struct BatchPlan {
  std::vector<std::string> urls;  // normalized, deduplicated, in input order
  std::vector<std::string> invalid;  // inputs that could not be normalized
  std::vector<bool> scheme_added;    // parallel to urls: retry over http on failure
  int concurrency = 4;
  int timeout_ms = kDefaultTimeoutMs;
  bool fetch_css = false;
  int per_host_delay_ms = 0;
  std::optional<RuleSet> rules;
  std::string user_agent = default_user_agent();

  static BatchPlan from_inputs(const std::vector<std::string>& raw_urls);
};

struct BatchSummary {
  int live_count = 0;
  int dead_count = 0;
  std::map<std::string, int> per_reason;
  std::vector<std::pair<std::string, std::string>> dead;  // (url, reason), input order

  friend bool operator==(const BatchSummary&, const BatchSummary&) = default;
};

// Called once per live page, never concurrently.
using PageSink = std::function<void(const FetchResult&, const PageReport&)>;

// Fetches, audits and delivers every live URL with at most
// `plan.concurrency` requests in flight and one at a time per host.
BatchSummary run_batch(const BatchPlan& plan, const PageSink& sink);

// Audits fetched bytes the same way run_batch does.
PageReport audit_fetched(const FetchResult& fetched, const std::optional<RuleSet>& rules);

}  // namespace waccess
