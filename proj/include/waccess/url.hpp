#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace waccess {

struct Url {
  std::string scheme;  // lowercase, no ':'
  std::string host;    // lowercase
  int port = 0;        // 0 = scheme default
  std::string path;    // begins with '/' for hierarchical URLs
  std::string query;   // without '?'
  std::string fragment;

  static std::optional<Url> parse(std::string_view text);

  [[nodiscard]] int effective_port() const;
  [[nodiscard]] std::string authority() const;  // host[:port], default port omitted
  [[nodiscard]] std::string origin() const;
  [[nodiscard]] std::string path_and_query() const;
  [[nodiscard]] std::string str(bool with_fragment = true) const;
};

// RFC 3986 reference resolution. Returns `ref` unchanged when `base` is not
// an absolute URL, so relative hrefs on local files still compare stably.
std::string resolve_url(std::string_view base, std::string_view ref);

}  // namespace waccess
