#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace waccess::detail {

struct DecodedSource {
  std::string text;
  std::string charset;
  bool transcoded = false;
  std::vector<std::string> warnings;
};

// Honors a UTF-16 BOM, then `charset_hint`, then <meta charset>; falls back
// to lossy UTF-8.
DecodedSource decode_source(std::string_view bytes, std::string_view charset_hint);

std::string sanitize_utf8(std::string_view bytes, bool* replaced = nullptr);

// Decodes character references (&amp;, &#169;, &#x2014; ...) in `raw`.
std::string decode_entities(std::string_view raw, bool in_attribute);

}  // namespace waccess::detail
