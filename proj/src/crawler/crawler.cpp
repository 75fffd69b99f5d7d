#include "waccess/crawler.hpp"

#include <netdb.h>
#include <sys/socket.h>

#include <atomic>
#include <chrono>
#include <condition_variable>
#include <cstdlib>
#include <fstream>
#include <memory>
#include <mutex>
#include <thread>
#include <unordered_map>
#include <unordered_set>

#include <httplib.h>

#include "text_util.hpp"
#include "waccess/url.hpp"

namespace waccess {
namespace {

using Clock = std::chrono::steady_clock;

bool resolves(const std::string& host) {
  addrinfo hints{};
  hints.ai_family = AF_UNSPEC;
  hints.ai_socktype = SOCK_STREAM;
  addrinfo* result = nullptr;
  std::string h = host;
  if (h.size() > 2 && h.front() == '[' && h.back() == ']') h = h.substr(1, h.size() - 2);
  int rc = getaddrinfo(h.c_str(), nullptr, &hints, &result);
  if (result) freeaddrinfo(result);
  return rc == 0;
}

struct HttpOutcome {
  bool ok = false;
  DeadReason reason = DeadReason::None;
  int status = 0;
  std::string body;
  std::string location;
  std::string content_type;
};

// One GET without following redirects.
HttpOutcome http_get(const Url& url, const FetchOptions& options) {
  HttpOutcome out;
  if (!resolves(url.host)) {
    out.reason = DeadReason::Dns;
    return out;
  }
  auto start = Clock::now();
  std::unique_ptr<httplib::ClientImpl> client;
  if (url.scheme == "https") {
    auto ssl = std::make_unique<httplib::SSLClient>(url.host, url.effective_port());
    client = std::move(ssl);
  } else {
    client = std::make_unique<httplib::ClientImpl>(url.host, url.effective_port());
  }
  auto timeout = std::chrono::milliseconds(options.timeout_ms);
  client->set_connection_timeout(timeout);
  client->set_read_timeout(timeout);
  client->set_write_timeout(timeout);
  client->set_follow_location(false);
  client->set_keep_alive(false);
  httplib::Headers headers = {{"User-Agent", options.user_agent}, {"Accept", "text/html,text/css,*/*;q=0.5"}};
  bool truncated = false;
  auto result = client->Get(
      url.path_and_query(), headers,
      [&](const httplib::Response& res) {
        out.status = res.status;
        out.location = res.get_header_value("Location");
        out.content_type = res.get_header_value("Content-Type");
        return true;
      },
      [&](const char* data, std::size_t len) {
        if (out.body.size() + len > kMaxBodyBytes) {
          out.body.append(data, kMaxBodyBytes - out.body.size());
          truncated = true;
          return false;
        }
        out.body.append(data, len);
        return true;
      });
  if (result || (truncated && out.status != 0)) {
    out.ok = true;
    if (result) {
      out.status = result->status;
      out.location = result->get_header_value("Location");
      out.content_type = result->get_header_value("Content-Type");
    }
    return out;
  }
  auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - start);
  // A read or connect that ran for the whole budget is a timeout.
  bool slow = elapsed * 10 >= timeout * 9;
  out.reason = result.error() == httplib::Error::ConnectionTimeout || slow ? DeadReason::Timeout : DeadReason::Connect;
  return out;
}

std::string charset_of(std::string_view content_type) {
  std::string lowered = text::lower(content_type);
  std::size_t pos = lowered.find("charset=");
  if (pos == std::string::npos) return {};
  std::string_view v = std::string_view(lowered).substr(pos + 8);
  v = v.substr(0, v.find(';'));
  v = text::trim(v);
  if (v.size() >= 2 && (v.front() == '"' || v.front() == '\'')) v = v.substr(1, v.size() - 2);
  return std::string(v);
}

// GET with up to kMaxRedirects redirects.
FetchResult fetch_following(std::string_view url_text, const FetchOptions& options) {
  FetchResult r;
  r.url = std::string(url_text);
  r.fetched_at = utc_timestamp_now();
  auto start = Clock::now();
  std::string current(url_text);
  auto finish = [&](FetchResult& res) -> FetchResult& {
    res.elapsed_ms = static_cast<long>(
        std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - start).count());
    return res;
  };
  for (int hop = 0;; ++hop) {
    auto url = Url::parse(current);
    if (!url || (url->scheme != "http" && url->scheme != "https") || url->host.empty()) {
      r.reason = DeadReason::Connect;
      return finish(r);
    }
    HttpOutcome o = http_get(*url, options);
    r.final_url = current;
    if (!o.ok) {
      r.reason = o.reason;
      return finish(r);
    }
    r.http_status = o.status;
    bool redirect = (o.status == 301 || o.status == 302 || o.status == 303 || o.status == 307 || o.status == 308) &&
                    !o.location.empty();
    if (redirect) {
      if (hop >= kMaxRedirects) {
        r.reason = DeadReason::TooManyRedirects;
        return finish(r);
      }
      current = resolve_url(current, o.location);
      continue;
    }
    if (o.status < 200 || o.status > 399) {
      r.reason = DeadReason::HttpError;
      return finish(r);
    }
    if (o.body.empty()) {
      r.reason = DeadReason::EmptyBody;
      return finish(r);
    }
    r.live = true;
    r.body = std::move(o.body);
    r.content_type = std::move(o.content_type);
    return finish(r);
  }
}

}  // namespace

std::string default_user_agent() {
  if (const char* env = std::getenv("WACCESS_USER_AGENT"); env && *env) return env;
  return "waccess-kit-audit/" + std::string(kVersion);
}

std::string FetchResult::reason_text() const {
  switch (reason) {
    case DeadReason::None: return {};
    case DeadReason::Dns: return "dns";
    case DeadReason::Connect: return "connect";
    case DeadReason::Timeout: return "timeout";
    case DeadReason::HttpError: return "http_error(" + std::to_string(http_status) + ")";
    case DeadReason::TooManyRedirects: return "too_many_redirects";
    case DeadReason::EmptyBody: return "empty_body";
  }
  return {};
}

std::optional<std::string> normalize_url(std::string_view raw) {
  std::string_view s = text::trim(raw);
  if (s.empty()) return std::nullopt;
  std::string candidate(s);
  // "mailto:x" or "javascript:x" carry a scheme; "host:8080/x" carries a port.
  std::size_t colon = candidate.find(':');
  if (candidate.find("://") == std::string::npos && colon != std::string::npos && colon > 0 &&
      std::isalpha(static_cast<unsigned char>(candidate[0])) &&
      candidate.find_first_not_of("abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789+.-") == colon &&
      (colon + 1 >= candidate.size() || !std::isdigit(static_cast<unsigned char>(candidate[colon + 1]))))
    return std::nullopt;
  if (candidate.find("://") == std::string::npos) {
    if (candidate.starts_with("//")) candidate = "https:" + candidate;
    else candidate = "https://" + candidate;
  }
  auto url = Url::parse(candidate);
  if (!url || (url->scheme != "http" && url->scheme != "https") || url->host.empty()) return std::nullopt;
  if (url->host.find_first_of(" \t<>\"{}|\\^`") != std::string::npos) return std::nullopt;
  return url->str(false);
}

std::vector<std::string> read_url_list(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read URL list '" + path.string() + "'");
  std::vector<std::string> out;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (first && line.starts_with("\xEF\xBB\xBF")) line.erase(0, 3);
    first = false;
    std::string_view v = text::trim(line);
    if (v.empty() || v.front() == '#') continue;
    out.emplace_back(v);
  }
  if (in.bad()) throw std::runtime_error("error while reading URL list '" + path.string() + "'");
  return out;
}

FetchResult fetch_one(std::string_view url, const FetchOptions& options) {
  FetchResult r;
  try {
    r = fetch_following(url, options);
  } catch (const std::exception&) {
    r = FetchResult{};
    r.url = std::string(url);
    r.fetched_at = utc_timestamp_now();
    r.reason = DeadReason::Connect;
    return r;
  }
  if (!r.live || !options.fetch_css) return r;
  try {
    DocumentModel doc = parse_html(r.body, r.final_url, charset_of(r.content_type));
    auto base = Url::parse(r.final_url);
    std::unordered_set<std::string> seen;
    for (NodeId id : doc.elements_by_tag("link")) {
      const Node& n = doc.node(id);
      if (!text::contains_token(text::lower(n.attributes.get("rel")), "stylesheet")) continue;
      std::string href = resolve_url(r.final_url, n.attributes.get("href"));
      auto target = Url::parse(href);
      if (!target || !base || target->origin() != base->origin() || !seen.insert(href).second) continue;
      FetchResult sheet = fetch_following(href, options);
      if (sheet.live) r.stylesheets.push_back(ExternalSheet{href, std::move(sheet.body)});
    }
  } catch (const std::exception&) {
    // Stylesheets are best effort.
  }
  return r;
}

BatchPlan BatchPlan::from_inputs(const std::vector<std::string>& raw_urls) {
  BatchPlan plan;
  std::unordered_set<std::string> seen;
  for (const auto& raw : raw_urls) {
    auto normalized = normalize_url(raw);
    if (!normalized) {
      plan.invalid.push_back(raw);
      continue;
    }
    if (!seen.insert(*normalized).second) continue;
    plan.urls.push_back(*normalized);
    plan.scheme_added.push_back(std::string_view(text::trim(raw)).find("://") == std::string_view::npos);
  }
  return plan;
}

PageReport audit_fetched(const FetchResult& fetched, const std::optional<RuleSet>& rules) {
  DocumentModel doc = parse_html(fetched.body, fetched.final_url, charset_of(fetched.content_type));
  StyleSet styles = collect_styles(doc, fetched.stylesheets);
  PageReport report = evaluate_page(doc, styles, rules);
  report.url = fetched.url;
  report.fetched_at = fetched.fetched_at;
  return report;
}

namespace {

// Serializes requests per host and spaces them by the configured delay.
class HostGate {
 public:
  explicit HostGate(int delay_ms) : delay_(delay_ms) {}

  void acquire(const std::string& host) {
    std::unique_lock lock(mutex_);
    cv_.wait(lock, [&] { return !busy_.contains(host); });
    busy_.insert(host);
    if (auto it = last_.find(host); it != last_.end()) {
      auto ready = it->second + delay_;
      lock.unlock();
      std::this_thread::sleep_until(ready);
    }
  }

  void release(const std::string& host) {
    {
      std::lock_guard lock(mutex_);
      busy_.erase(host);
      last_[host] = Clock::now();
    }
    cv_.notify_all();
  }

 private:
  std::chrono::milliseconds delay_;
  std::mutex mutex_;
  std::condition_variable cv_;
  std::unordered_set<std::string> busy_;
  std::unordered_map<std::string, Clock::time_point> last_;
};

}  // namespace

BatchSummary run_batch(const BatchPlan& plan, const PageSink& sink) {
  BatchSummary summary;
  const std::size_t n = plan.urls.size();
  std::vector<FetchResult> dead(n);
  std::vector<char> is_dead(n, 0);  // one writer per index
  std::exception_ptr sink_error;
  std::atomic<std::size_t> next{0};
  std::mutex sink_mutex;
  HostGate gate(plan.per_host_delay_ms);
  FetchOptions options;
  options.timeout_ms = plan.timeout_ms;
  options.fetch_css = plan.fetch_css;
  options.user_agent = plan.user_agent;

  auto fetch_polite = [&](const std::string& url) {
    auto parsed = Url::parse(url);
    std::string host = parsed ? parsed->host : url;
    gate.acquire(host);
    FetchResult r = fetch_one(url, options);
    gate.release(host);
    return r;
  };

  auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      const std::string& url = plan.urls[i];
      FetchResult r = fetch_polite(url);
      if (!r.live && r.reason != DeadReason::Dns && i < plan.scheme_added.size() && plan.scheme_added[i] &&
          url.starts_with("https://")) {
        FetchResult fallback = fetch_polite("http://" + url.substr(8));
        if (fallback.live) {
          fallback.url = url;
          r = std::move(fallback);
        }
      }
      if (!r.live) {
        dead[i] = std::move(r);
        is_dead[i] = 1;
        continue;
      }
      PageReport report;
      try {
        report = audit_fetched(r, plan.rules);
      } catch (const std::exception&) {
        r.live = false;
        r.reason = DeadReason::EmptyBody;
        dead[i] = std::move(r);
        is_dead[i] = 1;
        continue;
      }
      std::lock_guard lock(sink_mutex);
      if (sink_error) continue;
      try {
        sink(r, report);
      } catch (...) {
        sink_error = std::current_exception();
      }
    }
  };

  std::size_t threads = std::min<std::size_t>(static_cast<std::size_t>(std::max(1, plan.concurrency)), std::max<std::size_t>(n, 1));
  {
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  if (sink_error) std::rethrow_exception(sink_error);
  for (std::size_t i = 0; i < n; ++i) {
    if (is_dead[i]) {
      std::string reason = dead[i].reason_text();
      ++summary.dead_count;
      ++summary.per_reason[reason];
      summary.dead.emplace_back(plan.urls[i], reason);
    } else {
      ++summary.live_count;
    }
  }
  return summary;
}

}  // namespace waccess
