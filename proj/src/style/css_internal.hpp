#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "waccess/style.hpp"

namespace waccess::detail {

bool is_supported_property(std::string_view name);

// Parses "a: b; c: d !important" into properties, keeping supported ones.
// `skipped` receives the number of unsupported properties.
std::vector<CssProperty> parse_declaration_block(std::string_view block, int* skipped = nullptr);

// Splits on `sep` at nesting depth zero (outside (), [] and strings).
std::vector<std::string_view> split_top_level(std::string_view s, char sep);

// Whitespace-separated tokens, keeping "rgb(1, 2, 3)" style groups intact.
std::vector<std::string_view> value_tokens(std::string_view value);

}  // namespace waccess::detail
