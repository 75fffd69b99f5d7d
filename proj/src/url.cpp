#include "waccess/url.hpp"

#include <vector>

#include "text_util.hpp"

namespace waccess {
namespace {

bool valid_scheme(std::string_view s) {
  if (s.empty() || !std::isalpha(static_cast<unsigned char>(s[0]))) return false;
  for (char c : s)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '+' && c != '-' && c != '.') return false;
  return true;
}

int default_port(std::string_view scheme) {
  if (scheme == "http") return 80;
  if (scheme == "https") return 443;
  return 0;
}

std::string remove_dot_segments(std::string_view path) {
  std::vector<std::string_view> out;
  bool trailing = false;
  for (auto seg : text::split(path, '/')) {
    trailing = false;
    if (seg == ".") {
      trailing = true;
    } else if (seg == "..") {
      if (out.size() > 1) out.pop_back();
      trailing = true;
    } else {
      out.push_back(seg);
    }
  }
  std::string result;
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (i > 0) result += '/';
    result += out[i];
  }
  if (trailing) result += '/';
  if (result.empty() || result[0] != '/') result.insert(result.begin(), '/');
  return result;
}

}  // namespace

std::optional<Url> Url::parse(std::string_view text_in) {
  std::string_view s = text::trim(text_in);
  std::size_t colon = s.find(':');
  if (colon == std::string_view::npos || !valid_scheme(s.substr(0, colon))) return std::nullopt;
  Url url;
  url.scheme = text::lower(s.substr(0, colon));
  s.remove_prefix(colon + 1);
  if (std::size_t hash = s.find('#'); hash != std::string_view::npos) {
    url.fragment = std::string(s.substr(hash + 1));
    s = s.substr(0, hash);
  }
  if (std::size_t q = s.find('?'); q != std::string_view::npos) {
    url.query = std::string(s.substr(q + 1));
    s = s.substr(0, q);
  }
  if (s.starts_with("//")) {
    s.remove_prefix(2);
    std::size_t slash = s.find('/');
    std::string_view authority = s.substr(0, slash);
    s = slash == std::string_view::npos ? std::string_view{} : s.substr(slash);
    if (std::size_t at = authority.rfind('@'); at != std::string_view::npos) authority.remove_prefix(at + 1);
    std::size_t port_colon = authority.rfind(':');
    if (port_colon != std::string_view::npos && authority.find(']') == std::string_view::npos) {
      auto port = text::parse_int(authority.substr(port_colon + 1));
      if (port_colon + 1 < authority.size()) {
        if (!port || *port <= 0 || *port > 65535) return std::nullopt;
        url.port = static_cast<int>(*port);
      }
      authority = authority.substr(0, port_colon);
    }
    url.host = text::lower(authority);
    if (url.host.empty() && (url.scheme == "http" || url.scheme == "https")) return std::nullopt;
    if (url.port == default_port(url.scheme)) url.port = 0;
    url.path = s.empty() ? "/" : remove_dot_segments(s);
  } else {
    url.path = std::string(s);  // opaque (mailto:, javascript:, ...)
  }
  return url;
}

int Url::effective_port() const { return port ? port : default_port(scheme); }

std::string Url::authority() const {
  return port ? host + ":" + std::to_string(port) : host;
}

std::string Url::origin() const { return scheme + "://" + authority(); }

std::string Url::path_and_query() const {
  std::string out = path.empty() ? "/" : path;
  if (!query.empty()) out += "?" + query;
  return out;
}

std::string Url::str(bool with_fragment) const {
  std::string out = scheme + ":";
  if (!host.empty() || scheme == "http" || scheme == "https" || scheme == "file") out += "//" + authority();
  out += path;
  if (!query.empty()) out += "?" + query;
  if (with_fragment && !fragment.empty()) out += "#" + fragment;
  return out;
}

std::string resolve_url(std::string_view base_text, std::string_view ref_text) {
  std::string_view ref = text::trim(ref_text);
  if (auto absolute = Url::parse(ref)) return absolute->str();
  auto base = Url::parse(base_text);
  if (!base || base->host.empty()) return std::string(ref);

  Url out = *base;
  out.fragment.clear();
  std::string_view r = ref;
  std::string fragment;
  if (std::size_t hash = r.find('#'); hash != std::string_view::npos) {
    fragment = std::string(r.substr(hash + 1));
    r = r.substr(0, hash);
  }
  if (r.starts_with("//")) {
    auto net = Url::parse(base->scheme + ":" + std::string(r));
    if (!net) return std::string(ref);
    net->fragment = fragment;
    return net->str();
  }
  std::string query;
  bool has_query = false;
  if (std::size_t q = r.find('?'); q != std::string_view::npos) {
    query = std::string(r.substr(q + 1));
    r = r.substr(0, q);
    has_query = true;
  }
  if (r.empty()) {
    if (has_query) out.query = query;
  } else if (r.front() == '/') {
    out.path = remove_dot_segments(r);
    out.query = query;
  } else {
    std::string merged = base->path.substr(0, base->path.rfind('/') + 1);
    merged += r;
    out.path = remove_dot_segments(merged);
    out.query = query;
  }
  out.fragment = fragment;
  return out.str();
}

}  // namespace waccess
