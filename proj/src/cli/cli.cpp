#include "waccess/cli.hpp"

#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <json.hpp>
#include <sstream>

#include "text_util.hpp"
#include "waccess/report.hpp"
#include "waccess/url.hpp"

namespace waccess {
namespace {

namespace fs = std::filesystem;

bool read_file(const fs::path& path, std::string& out) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return false;
  std::ostringstream ss;
  ss << in.rdbuf();
  out = ss.str();
  return !in.bad();
}

bool write_file(const fs::path& path, std::string_view data) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  f.write(data.data(), static_cast<std::streamsize>(data.size()));
  return static_cast<bool>(f);
}

bool has_scheme(std::string_view s) {
  std::size_t colon = s.find("://");
  return colon != std::string_view::npos && colon > 0;
}

// Relative stylesheets next to a local file; remote ones are refused.
std::vector<ExternalSheet> local_stylesheets(const DocumentModel& doc, const fs::path& html_path, std::ostream& err) {
  std::vector<ExternalSheet> sheets;
  for (NodeId id : doc.elements_by_tag("link")) {
    const Node& n = doc.node(id);
    if (!text::contains_token(text::lower(n.attributes.get("rel")), "stylesheet")) continue;
    std::string href(text::trim(n.attributes.get("href")));
    if (href.empty()) continue;
    if (has_scheme(href) || href.starts_with("//")) {
      err << "warning: not fetching remote stylesheet " << href << " for a local file\n";
      continue;
    }
    std::string path_part = href.substr(0, href.find_first_of("?#"));
    fs::path sheet_path = html_path.parent_path() / path_part;
    std::string text;
    if (!read_file(sheet_path, text)) {
      err << "warning: cannot read stylesheet " << sheet_path.string() << "\n";
      continue;
    }
    sheets.push_back(ExternalSheet{resolve_url(doc.url(), href), std::move(text)});
  }
  return sheets;
}

void emit(const CliConfig& config, const PageReport& report, std::ostream& out) {
  if (config.format == OutputFormat::Json) out << emit_json(report);
  else out << render_console(report);
}

}  // namespace

void CliConfig::validate() const {
  if (concurrency < 1) throw std::invalid_argument("concurrency must be at least 1");
  if (timeout_ms < 1000) throw std::invalid_argument("timeout must be at least 1000 ms");
  if (per_host_delay_ms < 0) throw std::invalid_argument("per-host delay must not be negative");
  if (rules_filter)
    for (const auto& id : *rules_filter)
      if (!find_rule(id)) throw std::invalid_argument("unknown rule id '" + id + "'");
  if (command != Command::Rules && input.empty()) throw std::invalid_argument("an input is required");
  if (command == Command::Batch && output_dir.empty()) throw std::invalid_argument("batch needs --out DIR");
}

std::string report_file_name(std::string_view url) {
  std::string host = "site";
  if (auto parsed = Url::parse(url); parsed && !parsed->host.empty()) host = parsed->host;
  for (char& c : host)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '.' && c != '-') c = '_';
  std::uint64_t hash = 1469598103934665603ull;  // FNV-1a 64
  for (unsigned char c : url) {
    hash ^= c;
    hash *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(hash));
  return host + "-" + buf + ".json";
}

int cmd_check(const CliConfig& config, std::ostream& out, std::ostream& err) {
  try {
    config.validate();
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  PageReport report;
  fs::path local(config.input);
  std::error_code ec;
  bool is_file = !has_scheme(config.input) && fs::is_regular_file(local, ec);
  if (is_file) {
    std::string bytes;
    if (!read_file(local, bytes)) {
      err << "error: cannot read " << config.input << "\n";
      return kExitFailure;
    }
    try {
      std::string base = "file://" + fs::absolute(local).lexically_normal().string();
      DocumentModel doc = parse_html(bytes, base);
      std::vector<ExternalSheet> sheets;
      if (config.fetch_css) sheets = local_stylesheets(doc, local, err);
      StyleSet styles = collect_styles(doc, sheets);
      report = evaluate_page(doc, styles, config.rules_filter);
      report.url = config.input;
    } catch (const ParseError& e) {
      err << "error: cannot parse " << config.input << ": " << e.what() << "\n";
      return kExitFailure;
    }
  } else {
    auto url = normalize_url(config.input);
    if (!url) {
      err << "error: '" << config.input << "' is neither a readable file nor a valid http(s) URL\n";
      return kExitFailure;
    }
    FetchOptions options;
    options.timeout_ms = config.timeout_ms;
    options.fetch_css = config.fetch_css;
    FetchResult fetched = fetch_one(*url, options);
    if (!fetched.live) {
      err << "error: " << *url << " is unreachable: " << fetched.reason_text() << "\n";
      return kExitFailure;
    }
    try {
      report = audit_fetched(fetched, config.rules_filter);
    } catch (const ParseError& e) {
      err << "error: cannot parse " << *url << ": " << e.what() << "\n";
      return kExitFailure;
    }
  }
  if (!config.output_dir.empty()) {
    fs::path target = config.output_dir;
    if (fs::is_directory(target, ec)) target /= report_file_name(report.url);
    std::ostringstream rendered;
    emit(config, report, rendered);
    if (!write_file(target, rendered.str())) {
      err << "error: cannot write " << target.string() << "\n";
      return kExitFailure;
    }
  } else {
    emit(config, report, out);
  }
  if (config.fail_on_violations && report.total() > 0) return kExitViolations;
  return kExitOk;
}

int cmd_batch(const CliConfig& config, std::ostream& out, std::ostream& err) {
  try {
    config.validate();
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  std::vector<std::string> inputs;
  try {
    inputs = read_url_list(config.input);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  std::error_code ec;
  fs::create_directories(config.output_dir, ec);
  if (!fs::is_directory(config.output_dir)) {
    err << "error: cannot create " << config.output_dir.string() << "\n";
    return kExitFailure;
  }
  BatchPlan plan = BatchPlan::from_inputs(inputs);
  plan.concurrency = config.concurrency;
  plan.timeout_ms = config.timeout_ms;
  plan.fetch_css = config.fetch_css;
  plan.per_host_delay_ms = config.per_host_delay_ms;
  plan.rules = config.rules_filter;
  for (const auto& bad : plan.invalid) err << "warning: skipping invalid URL '" << bad << "'\n";

  Aggregator aggregator;
  nlohmann::json index = nlohmann::json::object();
  int write_failures = 0;
  BatchSummary summary = run_batch(plan, [&](const FetchResult& fetched, const PageReport& report) {
    std::string name = report_file_name(fetched.url);
    if (!write_file(config.output_dir / name, emit_json(report))) ++write_failures;
    index[fetched.url] = name;
    aggregator.add(report);
  });
  CorpusAggregate agg = aggregator.result();
  write_file(config.output_dir / "aggregate.csv", emit_aggregate_csv(agg, config.rules_filter));
  write_file(config.output_dir / "histogram.csv", emit_histogram_csv(agg, config.rules_filter));
  write_file(config.output_dir / "index.json", index.dump(2) + "\n");

  nlohmann::json s;
  s["live_count"] = summary.live_count;
  s["dead_count"] = summary.dead_count;
  s["per_reason"] = summary.per_reason;
  nlohmann::json dead = nlohmann::json::array();
  for (const auto& [url, reason] : summary.dead) dead.push_back({{"url", url}, {"reason", reason}});
  s["dead"] = dead;
  s["invalid"] = plan.invalid;
  s["total_violations"] = agg.grand_total();
  nlohmann::json levels = nlohmann::json::object();
  for (const auto& [level, pct] : agg.level_percentages()) levels[std::string(to_string(level))] = pct;
  s["level_percentages"] = levels;
  write_file(config.output_dir / "summary.json", s.dump(2) + "\n");

  out << "Audited " << plan.urls.size() << " URL(s): " << summary.live_count << " live, " << summary.dead_count
      << " dead\n";
  for (const auto& [reason, count] : summary.per_reason) out << "  " << reason << ": " << count << "\n";
  out << "Total violations: " << agg.grand_total() << "\n";
  out << "Reports written to " << config.output_dir.string() << "\n";
  if (write_failures > 0) err << "warning: " << write_failures << " report file(s) could not be written\n";
  return kExitOk;
}

int cmd_rules(const CliConfig& config, std::ostream& out, std::ostream& /*err*/) {
  std::vector<const RuleDescriptor*> rows;
  for (const auto& r : registry()) {
    if (config.version_filter && r.version != *config.version_filter) continue;
    if (config.rules_filter && !config.rules_filter->empty() && !config.rules_filter->contains(r.id)) continue;
    rows.push_back(&r);
  }
  if (config.format == OutputFormat::Json) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto* r : rows)
      arr.push_back({{"id", r->id},
                     {"version", to_string(r->version)},
                     {"level", to_string(r->level)},
                     {"principle", to_string(r->principle)},
                     {"title", r->title},
                     {"class", to_string(r->rule_class)}});
    out << arr.dump(2) << "\n";
    return kExitOk;
  }
  out << std::left << std::setw(8) << "ID" << std::setw(9) << "VERSION" << std::setw(7) << "LEVEL" << std::setw(16)
      << "PRINCIPLE" << std::setw(16) << "CLASS" << "TITLE\n";
  for (const auto* r : rows)
    out << std::left << std::setw(8) << r->id << std::setw(9) << to_string(r->version) << std::setw(7)
        << to_string(r->level) << std::setw(16) << to_string(r->principle) << std::setw(16) << to_string(r->rule_class)
        << r->title << "\n";
  return kExitOk;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Static WCAG 2.0/2.1/2.2 accessibility auditor", "waccess"};
  app.set_version_flag("--version-info", std::string(kVersion));
  app.require_subcommand(1);

  CliConfig config;
  std::string format = "console";
  std::string rules;
  std::string version;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--format", format, "Output format")->check(CLI::IsMember({"console", "json"}));
    sub->add_option("--rules", rules, "Comma-separated rule ids to evaluate");
  };

  CLI::App* check = app.add_subcommand("check", "Audit one URL or local HTML file");
  check->add_option("input", config.input, "URL or path")->required();
  add_common(check);
  check->add_option("--out", config.output_dir, "Write the report to this file (or directory)");
  check->add_flag("--fetch-css", config.fetch_css, "Also load linked stylesheets");
  check->add_option("--timeout", config.timeout_ms, "Network timeout in ms (>= 1000)");
  check->add_flag("--fail-on-violations", config.fail_on_violations, "Exit 1 when any violation is found");

  CLI::App* batch = app.add_subcommand("batch", "Audit every URL in a list file");
  batch->add_option("input", config.input, "URL list, one per line")->required();
  batch->add_option("--rules", rules, "Comma-separated rule ids to evaluate");
  batch->add_option("--out", config.output_dir, "Output directory")->required();
  batch->add_flag("--fetch-css", config.fetch_css, "Also load same-origin stylesheets");
  batch->add_option("--concurrency", config.concurrency, "Parallel fetches (>= 1)");
  batch->add_option("--timeout", config.timeout_ms, "Network timeout in ms (>= 1000)");
  batch->add_option("--delay", config.per_host_delay_ms, "Minimum spacing between requests to one host, in ms");

  CLI::App* list = app.add_subcommand("rules", "List the supported guidelines");
  add_common(list);
  list->add_option("--version", version, "Only rules introduced in this WCAG version (2.0, 2.1, 2.2)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitFailure;
  }

  try {
    config.format = format == "json" ? OutputFormat::Json : OutputFormat::Console;
    if (!rules.empty()) config.rules_filter = parse_rule_filter(rules);
    if (!version.empty()) {
      config.version_filter = parse_version(version);
      if (!config.version_filter) throw std::invalid_argument("unknown WCAG version '" + version + "'");
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }

  if (check->parsed()) {
    config.command = Command::Check;
    return cmd_check(config, out, err);
  }
  if (batch->parsed()) {
    config.command = Command::Batch;
    return cmd_batch(config, out, err);
  }
  config.command = Command::Rules;
  return cmd_rules(config, out, err);
}

}  // namespace waccess
