#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

#include "waccess/crawler.hpp"
#include "waccess/rules.hpp"

namespace waccess {

enum class Command : std::uint8_t { Check, Batch, Rules };
enum class OutputFormat : std::uint8_t { Console, Json };

inline constexpr int kExitOk = 0;
inline constexpr int kExitViolations = 1;
inline constexpr int kExitFailure = 2;

struct CliConfig {
  Command command = Command::Check;
  std::string input;  // URL, local HTML file, or URL-list file
  std::filesystem::path output_dir;
  OutputFormat format = OutputFormat::Console;
  std::optional<RuleSet> rules_filter;
  std::optional<WcagVersion> version_filter;  // rules command only
  bool fetch_css = false;
  int concurrency = 4;
  int timeout_ms = kDefaultTimeoutMs;
  int per_host_delay_ms = 0;
  bool fail_on_violations = false;

  // Throws std::invalid_argument when an invariant is broken.
  void validate() const;
};

int cmd_check(const CliConfig& config, std::ostream& out, std::ostream& err);
int cmd_batch(const CliConfig& config, std::ostream& out, std::ostream& err);
int cmd_rules(const CliConfig& config, std::ostream& out, std::ostream& err);

// Parses argv and dispatches; returns the process exit code.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

// File name for one site's JSON report: sanitized host plus a URL hash.
std::string report_file_name(std::string_view url);

}  // namespace waccess
