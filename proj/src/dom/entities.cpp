#include <algorithm>
#include <array>
#include <cstdint>
#include <string>
#include <string_view>

#include "dom/encoding.hpp"

namespace waccess::detail {
namespace {

struct NamedEntity {
  std::string_view name;
  std::uint32_t code_point;
};

// Sorted by name. Covers the references that show up in real pages; anything
// else is left verbatim.
constexpr std::array<NamedEntity, 64> kEntities = {{
    {"AElig", 0xC6},   {"Aacute", 0xC1}, {"Eacute", 0xC9}, {"Ntilde", 0xD1},
    {"Ouml", 0xD6},    {"Uuml", 0xDC},   {"aacute", 0xE1}, {"acute", 0xB4},
    {"amp", 0x26},     {"apos", 0x27},   {"bdquo", 0x201E}, {"bull", 0x2022},
    {"cent", 0xA2},    {"copy", 0xA9},   {"darr", 0x2193}, {"deg", 0xB0},
    {"eacute", 0xE9},  {"egrave", 0xE8}, {"euro", 0x20AC}, {"frac12", 0xBD},
    {"gt", 0x3E},      {"hellip", 0x2026}, {"iacute", 0xED}, {"iexcl", 0xA1},
    {"iquest", 0xBF},  {"laquo", 0xAB},  {"larr", 0x2190}, {"ldquo", 0x201C},
    {"lsaquo", 0x2039}, {"lsquo", 0x2018}, {"lt", 0x3C},   {"mdash", 0x2014},
    {"middot", 0xB7},  {"nbsp", 0xA0},   {"ndash", 0x2013}, {"not", 0xAC},
    {"ntilde", 0xF1},  {"oacute", 0xF3}, {"ouml", 0xF6},   {"para", 0xB6},
    {"plusmn", 0xB1},  {"pound", 0xA3},  {"quot", 0x22},   {"raquo", 0xBB},
    {"rarr", 0x2192},  {"rdquo", 0x201D}, {"reg", 0xAE},   {"rsaquo", 0x203A},
    {"rsquo", 0x2019}, {"rupee", 0x20B9}, {"sbquo", 0x201A}, {"sect", 0xA7},
    {"shy", 0xAD},     {"sup2", 0xB2},   {"szlig", 0xDF},  {"thinsp", 0x2009},
    {"times", 0xD7},   {"trade", 0x2122}, {"uacute", 0xFA}, {"uarr", 0x2191},
    {"uuml", 0xFC},    {"yen", 0xA5},    {"zwj", 0x200D},  {"zwnj", 0x200C},
}};
static_assert(std::is_sorted(kEntities.begin(), kEntities.end(),
                             [](const NamedEntity& a, const NamedEntity& b) { return a.name < b.name; }));

void append_code_point(std::string& out, std::uint32_t cp) {
  if (cp == 0 || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) cp = 0xFFFD;
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

bool is_alnum(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9');
}

}  // namespace

std::string decode_entities(std::string_view raw, bool in_attribute) {
  if (raw.find('&') == std::string_view::npos) return std::string(raw);
  std::string out;
  out.reserve(raw.size());
  std::size_t i = 0;
  while (i < raw.size()) {
    char c = raw[i];
    if (c != '&') {
      out.push_back(c);
      ++i;
      continue;
    }
    std::size_t j = i + 1;
    if (j < raw.size() && raw[j] == '#') {
      ++j;
      bool hex = j < raw.size() && (raw[j] == 'x' || raw[j] == 'X');
      if (hex) ++j;
      std::size_t start = j;
      std::uint64_t value = 0;
      while (j < raw.size() && j - start < 8) {
        char d = raw[j];
        int digit = -1;
        if (d >= '0' && d <= '9') digit = d - '0';
        else if (hex && d >= 'a' && d <= 'f') digit = d - 'a' + 10;
        else if (hex && d >= 'A' && d <= 'F') digit = d - 'A' + 10;
        if (digit < 0) break;
        value = value * (hex ? 16 : 10) + static_cast<std::uint64_t>(digit);
        ++j;
      }
      if (j == start) {
        out.push_back('&');
        ++i;
        continue;
      }
      if (j < raw.size() && raw[j] == ';') ++j;
      append_code_point(out, static_cast<std::uint32_t>(std::min<std::uint64_t>(value, 0x110000)));
      i = j;
      continue;
    }
    std::size_t start = j;
    while (j < raw.size() && is_alnum(raw[j]) && j - start < 10) ++j;
    std::string_view name = raw.substr(start, j - start);
    bool terminated = j < raw.size() && raw[j] == ';';
    auto it = std::lower_bound(kEntities.begin(), kEntities.end(), name,
                               [](const NamedEntity& e, std::string_view n) { return e.name < n; });
    // In attributes an unterminated reference followed by '=' or alnum is literal.
    if (it != kEntities.end() && it->name == name && (terminated || !in_attribute)) {
      append_code_point(out, it->code_point);
      i = terminated ? j + 1 : j;
      continue;
    }
    out.push_back('&');
    ++i;
  }
  return out;
}

}  // namespace waccess::detail
