#include <algorithm>
#include <array>
#include <string>

#include "style/css_internal.hpp"
#include "text_util.hpp"
#include "waccess/style.hpp"

namespace waccess {
namespace detail {

bool is_supported_property(std::string_view name) {
  static constexpr std::array<std::string_view, 24> kExact = {
      "color",  "background-color", "background",       "background-image",
      "font-size", "font-weight",   "text-decoration",  "text-decoration-line",
      "display", "visibility",      "opacity",          "outline",
      "width",  "height",           "padding",          "border",
      "border-color", "border-style", "border-width",   "box-shadow",
      "page-break-before", "page-break-after", "break-before", "break-after"};
  if (std::find(kExact.begin(), kExact.end(), name) != kExact.end()) return true;
  return name.starts_with("outline-") || name.starts_with("padding-") ||
         name.starts_with("animation") || name.starts_with("transition");
}

std::vector<std::string_view> split_top_level(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  int depth = 0;
  char quote = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    char c = s[i];
    if (quote) {
      if (c == '\\') ++i;
      else if (c == quote) quote = 0;
      continue;
    }
    if (c == '"' || c == '\'') quote = c;
    else if (c == '(' || c == '[') ++depth;
    else if ((c == ')' || c == ']') && depth > 0) --depth;
    else if (c == sep && depth == 0) {
      out.push_back(s.substr(start, i - start));
      start = i + 1;
    }
  }
  out.push_back(s.substr(start));
  return out;
}

std::vector<std::string_view> value_tokens(std::string_view value) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < value.size()) {
    while (i < value.size() && (text::is_space(value[i]) || value[i] == ',')) ++i;
    std::size_t start = i;
    int depth = 0;
    while (i < value.size()) {
      char c = value[i];
      if (c == '(') ++depth;
      else if (c == ')' && depth > 0) --depth;
      else if (depth == 0 && (text::is_space(c) || c == ',')) break;
      ++i;
    }
    if (i > start) out.push_back(value.substr(start, i - start));
  }
  return out;
}

std::vector<CssProperty> parse_declaration_block(std::string_view block, int* skipped) {
  std::vector<CssProperty> props;
  for (auto item : split_top_level(block, ';')) {
    item = text::trim(item);
    if (item.empty()) continue;
    std::size_t colon = item.find(':');
    if (colon == std::string_view::npos) {
      if (skipped) ++*skipped;
      continue;
    }
    std::string name = text::lower(text::trim(item.substr(0, colon)));
    std::string_view value = text::trim(item.substr(colon + 1));
    bool important = false;
    if (std::size_t bang = value.rfind('!'); bang != std::string_view::npos) {
      if (text::iequals(text::trim(value.substr(bang + 1)), "important")) {
        important = true;
        value = text::trim(value.substr(0, bang));
      }
    }
    if (name.empty() || value.empty() || !is_supported_property(name)) {
      if (skipped) ++*skipped;
      continue;
    }
    props.push_back(CssProperty{std::move(name), std::string(value), important});
  }
  return props;
}

}  // namespace detail

namespace {

// Replaces /* comments */ with spaces so offsets stay aligned with the input.
std::string blank_comments(std::string_view text) {
  std::string out(text);
  std::size_t i = 0;
  while ((i = out.find("/*", i)) != std::string::npos) {
    std::size_t end = out.find("*/", i + 2);
    std::size_t stop = end == std::string::npos ? out.size() : end + 2;
    for (std::size_t k = i; k < stop; ++k)
      if (out[k] != '\n') out[k] = ' ';
    i = stop;
  }
  return out;
}

// Position of the '}' matching the '{' at `open`, or npos.
std::size_t matching_brace(std::string_view s, std::size_t open) {
  int depth = 0;
  char quote = 0;
  for (std::size_t i = open; i < s.size(); ++i) {
    char c = s[i];
    if (quote) {
      if (c == '\\') ++i;
      else if (c == quote) quote = 0;
      continue;
    }
    if (c == '"' || c == '\'') quote = c;
    else if (c == '{') ++depth;
    else if (c == '}' && --depth == 0) return i;
  }
  return std::string_view::npos;
}

bool media_applies(std::string_view prelude) {
  std::string q = text::normalize_space(text::lower(prelude));
  return q == "screen" || q == "all" || q == "only screen" || q.empty();
}

class CssParser {
 public:
  CssParser(std::string_view original, std::string_view cleaned, CssParseResult& out, int order,
            std::size_t base, int sheet)
      : original_(original), s_(cleaned), out_(out), order_(order), base_(base), sheet_(sheet) {}

  void parse_range(std::size_t begin, std::size_t end) {
    std::size_t i = begin;
    while (i < end) {
      while (i < end && (text::is_space(s_[i]) || s_[i] == ';')) ++i;
      if (i >= end) break;
      if (s_[i] == '}') {  // stray
        ++i;
        continue;
      }
      if (s_[i] == '@') {
        i = parse_at_rule(i, end);
        continue;
      }
      std::size_t brace = s_.find('{', i);
      if (brace == std::string_view::npos || brace >= end) {
        ++out_.skipped_constructs;
        break;
      }
      std::size_t close = matching_brace(s_, brace);
      if (close == std::string_view::npos || close >= end) close = end;
      parse_rule(i, brace, close);
      i = close + 1;
    }
  }

 private:
  std::size_t parse_at_rule(std::size_t at, std::size_t end) {
    std::size_t j = at + 1;
    while (j < end && (std::isalnum(static_cast<unsigned char>(s_[j])) || s_[j] == '-')) ++j;
    std::string name = text::lower(s_.substr(at + 1, j - at - 1));
    std::size_t brace = s_.find('{', j);
    std::size_t semi = s_.find(';', j);
    if (semi != std::string_view::npos && semi < end && (brace == std::string_view::npos || semi < brace)) {
      ++out_.skipped_constructs;  // @import, @charset, @namespace
      return semi + 1;
    }
    if (brace == std::string_view::npos || brace >= end) {
      ++out_.skipped_constructs;
      return end;
    }
    std::size_t close = matching_brace(s_, brace);
    if (close == std::string_view::npos || close >= end) close = end;
    std::string_view prelude = s_.substr(j, brace - j);
    if (name == "media") {
      if (text::lower(prelude).find("prefers-reduced-motion") != std::string::npos)
        out_.has_reduced_motion_block = true;
      if (media_applies(prelude)) {
        parse_range(brace + 1, close);
        return close + 1;
      }
    }
    ++out_.skipped_constructs;
    return close + 1;
  }

  void parse_rule(std::size_t begin, std::size_t brace, std::size_t close) {
    std::string_view prelude = text::trim(s_.substr(begin, brace - begin));
    std::string_view body = s_.substr(brace + 1, close > brace ? close - brace - 1 : 0);
    int skipped_props = 0;
    auto props = detail::parse_declaration_block(body, &skipped_props);
    out_.skipped_constructs += skipped_props;
    std::size_t rule_end = std::min(close + 1, original_.size());
    std::string rule_text(original_.substr(begin, rule_end - begin));
    if (props.empty()) {
      if (skipped_props == 0) ++out_.skipped_constructs;
      return;
    }
    for (auto sel_text : detail::split_top_level(prelude, ',')) {
      try {
        StyleDeclaration decl;
        decl.selector = SelectorSubset::parse(sel_text, true);
        decl.pseudo = decl.selector.pseudo();
        decl.specificity = decl.selector.specificity();
        decl.properties = props;
        decl.source_order = order_++;
        decl.origin = CssOrigin{sheet_, base_ + begin, rule_end - begin};
        decl.rule_text = rule_text;
        out_.declarations.push_back(std::move(decl));
      } catch (const UnsupportedSelector&) {
        ++out_.skipped_constructs;
      }
    }
  }

  std::string_view original_;
  std::string_view s_;
  CssParseResult& out_;
  int order_;
  std::size_t base_;
  int sheet_;
};

}  // namespace

const CssProperty* StyleDeclaration::find(std::string_view name) const {
  for (auto it = properties.rbegin(); it != properties.rend(); ++it)
    if (it->name == name) return &*it;
  return nullptr;
}

CssParseResult parse_css_subset(std::string_view text, int first_source_order, std::size_t base_offset,
                                int sheet) {
  CssParseResult result;
  std::string cleaned = blank_comments(text);
  CssParser parser(text, cleaned, result, first_source_order, base_offset, sheet);
  parser.parse_range(0, cleaned.size());
  return result;
}

}  // namespace waccess
