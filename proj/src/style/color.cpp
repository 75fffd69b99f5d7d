#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <utility>

#include "text_util.hpp"
#include "waccess/style.hpp"

namespace waccess {
namespace {

struct NamedColor {
  std::string_view name;
  std::uint32_t rgb;
};

// CSS Color Module Level 4 named colors, sorted.
constexpr std::array<NamedColor, 148> kNamedColors = {{
    {"aliceblue", 0xf0f8ff}, {"antiquewhite", 0xfaebd7}, {"aqua", 0x00ffff},
    {"aquamarine", 0x7fffd4}, {"azure", 0xf0ffff}, {"beige", 0xf5f5dc},
    {"bisque", 0xffe4c4}, {"black", 0x000000}, {"blanchedalmond", 0xffebcd},
    {"blue", 0x0000ff}, {"blueviolet", 0x8a2be2}, {"brown", 0xa52a2a},
    {"burlywood", 0xdeb887}, {"cadetblue", 0x5f9ea0}, {"chartreuse", 0x7fff00},
    {"chocolate", 0xd2691e}, {"coral", 0xff7f50}, {"cornflowerblue", 0x6495ed},
    {"cornsilk", 0xfff8dc}, {"crimson", 0xdc143c}, {"cyan", 0x00ffff},
    {"darkblue", 0x00008b}, {"darkcyan", 0x008b8b}, {"darkgoldenrod", 0xb8860b},
    {"darkgray", 0xa9a9a9}, {"darkgreen", 0x006400}, {"darkgrey", 0xa9a9a9},
    {"darkkhaki", 0xbdb76b}, {"darkmagenta", 0x8b008b}, {"darkolivegreen", 0x556b2f},
    {"darkorange", 0xff8c00}, {"darkorchid", 0x9932cc}, {"darkred", 0x8b0000},
    {"darksalmon", 0xe9967a}, {"darkseagreen", 0x8fbc8f}, {"darkslateblue", 0x483d8b},
    {"darkslategray", 0x2f4f4f}, {"darkslategrey", 0x2f4f4f}, {"darkturquoise", 0x00ced1},
    {"darkviolet", 0x9400d3}, {"deeppink", 0xff1493}, {"deepskyblue", 0x00bfff},
    {"dimgray", 0x696969}, {"dimgrey", 0x696969}, {"dodgerblue", 0x1e90ff},
    {"firebrick", 0xb22222}, {"floralwhite", 0xfffaf0}, {"forestgreen", 0x228b22},
    {"fuchsia", 0xff00ff}, {"gainsboro", 0xdcdcdc}, {"ghostwhite", 0xf8f8ff},
    {"gold", 0xffd700}, {"goldenrod", 0xdaa520}, {"gray", 0x808080},
    {"green", 0x008000}, {"greenyellow", 0xadff2f}, {"grey", 0x808080},
    {"honeydew", 0xf0fff0}, {"hotpink", 0xff69b4}, {"indianred", 0xcd5c5c},
    {"indigo", 0x4b0082}, {"ivory", 0xfffff0}, {"khaki", 0xf0e68c},
    {"lavender", 0xe6e6fa}, {"lavenderblush", 0xfff0f5}, {"lawngreen", 0x7cfc00},
    {"lemonchiffon", 0xfffacd}, {"lightblue", 0xadd8e6}, {"lightcoral", 0xf08080},
    {"lightcyan", 0xe0ffff}, {"lightgoldenrodyellow", 0xfafad2}, {"lightgray", 0xd3d3d3},
    {"lightgreen", 0x90ee90}, {"lightgrey", 0xd3d3d3}, {"lightpink", 0xffb6c1},
    {"lightsalmon", 0xffa07a}, {"lightseagreen", 0x20b2aa}, {"lightskyblue", 0x87cefa},
    {"lightslategray", 0x778899}, {"lightslategrey", 0x778899}, {"lightsteelblue", 0xb0c4de},
    {"lightyellow", 0xffffe0}, {"lime", 0x00ff00}, {"limegreen", 0x32cd32},
    {"linen", 0xfaf0e6}, {"magenta", 0xff00ff}, {"maroon", 0x800000},
    {"mediumaquamarine", 0x66cdaa}, {"mediumblue", 0x0000cd}, {"mediumorchid", 0xba55d3},
    {"mediumpurple", 0x9370db}, {"mediumseagreen", 0x3cb371}, {"mediumslateblue", 0x7b68ee},
    {"mediumspringgreen", 0x00fa9a}, {"mediumturquoise", 0x48d1cc}, {"mediumvioletred", 0xc71585},
    {"midnightblue", 0x191970}, {"mintcream", 0xf5fffa}, {"mistyrose", 0xffe4e1},
    {"moccasin", 0xffe4b5}, {"navajowhite", 0xffdead}, {"navy", 0x000080},
    {"oldlace", 0xfdf5e6}, {"olive", 0x808000}, {"olivedrab", 0x6b8e23},
    {"orange", 0xffa500}, {"orangered", 0xff4500}, {"orchid", 0xda70d6},
    {"palegoldenrod", 0xeee8aa}, {"palegreen", 0x98fb98}, {"paleturquoise", 0xafeeee},
    {"palevioletred", 0xdb7093}, {"papayawhip", 0xffefd5}, {"peachpuff", 0xffdab9},
    {"peru", 0xcd853f}, {"pink", 0xffc0cb}, {"plum", 0xdda0dd},
    {"powderblue", 0xb0e0e6}, {"purple", 0x800080}, {"rebeccapurple", 0x663399},
    {"red", 0xff0000}, {"rosybrown", 0xbc8f8f}, {"royalblue", 0x4169e1},
    {"saddlebrown", 0x8b4513}, {"salmon", 0xfa8072}, {"sandybrown", 0xf4a460},
    {"seagreen", 0x2e8b57}, {"seashell", 0xfff5ee}, {"sienna", 0xa0522d},
    {"silver", 0xc0c0c0}, {"skyblue", 0x87ceeb}, {"slateblue", 0x6a5acd},
    {"slategray", 0x708090}, {"slategrey", 0x708090}, {"snow", 0xfffafa},
    {"springgreen", 0x00ff7f}, {"steelblue", 0x4682b4}, {"tan", 0xd2b48c},
    {"teal", 0x008080}, {"thistle", 0xd8bfd8}, {"tomato", 0xff6347},
    {"turquoise", 0x40e0d0}, {"violet", 0xee82ee}, {"wheat", 0xf5deb3},
    {"white", 0xffffff}, {"whitesmoke", 0xf5f5f5}, {"yellow", 0xffff00},
    {"yellowgreen", 0x9acd32},
}};
static_assert(std::is_sorted(kNamedColors.begin(), kNamedColors.end(),
                             [](const NamedColor& a, const NamedColor& b) { return a.name < b.name; }));

[[noreturn]] void fail(std::string_view text) {
  throw ColorParseError("unparseable color '" + std::string(text) + "'");
}

int hex_digit(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

std::uint8_t clamp_channel(double v) {
  // Round half up.
  return static_cast<std::uint8_t>(std::clamp(std::floor(v + 0.5), 0.0, 255.0));
}

Color parse_hex(std::string_view hex, std::string_view original) {
  std::array<int, 8> d{};
  for (std::size_t i = 0; i < hex.size(); ++i) {
    d[i] = hex_digit(hex[i]);
    if (d[i] < 0) fail(original);
  }
  auto pair = [&](std::size_t i) { return static_cast<std::uint8_t>(d[i] * 16 + d[i + 1]); };
  auto dup = [&](std::size_t i) { return static_cast<std::uint8_t>(d[i] * 17); };
  switch (hex.size()) {
    case 3: return {dup(0), dup(1), dup(2), 1.0};
    case 4: return {dup(0), dup(1), dup(2), dup(3) / 255.0};
    case 6: return {pair(0), pair(2), pair(4), 1.0};
    case 8: return {pair(0), pair(2), pair(4), pair(6) / 255.0};
    default: fail(original);
  }
}

// Splits "a, b, c" or "a b c / d" into components.
std::vector<std::string_view> function_args(std::string_view body) {
  std::vector<std::string_view> out;
  bool slash = false;
  std::size_t i = 0;
  while (i < body.size()) {
    while (i < body.size() && (text::is_space(body[i]) || body[i] == ',')) ++i;
    if (i < body.size() && body[i] == '/') {
      slash = true;
      ++i;
      continue;
    }
    std::size_t start = i;
    while (i < body.size() && !text::is_space(body[i]) && body[i] != ',' && body[i] != '/') ++i;
    if (i > start) out.push_back(body.substr(start, i - start));
  }
  (void)slash;
  return out;
}

double parse_alpha(std::string_view v, std::string_view original) {
  bool percent = v.ends_with('%');
  auto n = text::parse_number(percent ? v.substr(0, v.size() - 1) : v);
  if (!n) fail(original);
  double a = percent ? *n / 100.0 : *n;
  return std::clamp(a, 0.0, 1.0);
}

double parse_hue(std::string_view v, std::string_view original) {
  double scale = 1.0;
  if (v.ends_with("deg")) v.remove_suffix(3);
  else if (v.ends_with("turn")) { v.remove_suffix(4); scale = 360.0; }
  else if (v.ends_with("rad")) { v.remove_suffix(3); scale = 180.0 / 3.14159265358979323846; }
  auto n = text::parse_number(v);
  if (!n) fail(original);
  double h = std::fmod(*n * scale, 360.0);
  return h < 0 ? h + 360.0 : h;
}

double parse_percent(std::string_view v, std::string_view original) {
  if (v.ends_with('%')) v.remove_suffix(1);
  auto n = text::parse_number(v);
  if (!n) fail(original);
  return std::clamp(*n / 100.0, 0.0, 1.0);
}

Color hsl_to_rgb(double h, double s, double l, double alpha) {
  auto f = [&](double n) {
    double k = std::fmod(n + h / 30.0, 12.0);
    double a = s * std::min(l, 1.0 - l);
    return l - a * std::max(-1.0, std::min({k - 3.0, 9.0 - k, 1.0}));
  };
  return {clamp_channel(f(0) * 255.0), clamp_channel(f(8) * 255.0), clamp_channel(f(4) * 255.0), alpha};
}

}  // namespace

std::string Color::hex() const {
  char buf[16];
  if (opaque()) {
    std::snprintf(buf, sizeof buf, "#%02x%02x%02x", r, g, b);
  } else {
    std::snprintf(buf, sizeof buf, "#%02x%02x%02x%02x", r, g, b,
                  static_cast<unsigned>(clamp_channel(alpha * 255.0)));
  }
  return buf;
}

Color parse_color(std::string_view original) {
  std::string lowered = text::lower(text::trim(original));
  std::string_view s = lowered;
  if (s.empty()) fail(original);
  if (s.front() == '#') {
    s.remove_prefix(1);
    if (s.size() != 3 && s.size() != 4 && s.size() != 6 && s.size() != 8) fail(original);
    return parse_hex(s, original);
  }
  if (s == "transparent") return {0, 0, 0, 0.0};
  std::size_t paren = s.find('(');
  if (paren != std::string_view::npos) {
    if (!s.ends_with(')')) fail(original);
    std::string_view fn = text::trim(s.substr(0, paren));
    auto args = function_args(s.substr(paren + 1, s.size() - paren - 2));
    if (fn == "rgb" || fn == "rgba") {
      if (args.size() != 3 && args.size() != 4) fail(original);
      std::array<std::uint8_t, 3> ch{};
      for (std::size_t i = 0; i < 3; ++i) {
        std::string_view a = args[i];
        bool percent = a.ends_with('%');
        auto n = text::parse_number(percent ? a.substr(0, a.size() - 1) : a);
        if (!n) fail(original);
        ch[i] = clamp_channel(percent ? *n * 255.0 / 100.0 : *n);
      }
      double alpha = args.size() == 4 ? parse_alpha(args[3], original) : 1.0;
      return {ch[0], ch[1], ch[2], alpha};
    }
    if (fn == "hsl" || fn == "hsla") {
      if (args.size() != 3 && args.size() != 4) fail(original);
      double h = parse_hue(args[0], original);
      double sat = parse_percent(args[1], original);
      double light = parse_percent(args[2], original);
      double alpha = args.size() == 4 ? parse_alpha(args[3], original) : 1.0;
      return hsl_to_rgb(h, sat, light, alpha);
    }
    fail(original);
  }
  auto it = std::lower_bound(kNamedColors.begin(), kNamedColors.end(), s,
                             [](const NamedColor& c, std::string_view n) { return c.name < n; });
  if (it == kNamedColors.end() || it->name != s) fail(original);
  return Color::rgb(static_cast<std::uint8_t>(it->rgb >> 16), static_cast<std::uint8_t>((it->rgb >> 8) & 0xFF),
                    static_cast<std::uint8_t>(it->rgb & 0xFF));
}

std::optional<Color> try_parse_color(std::string_view text) {
  try {
    return parse_color(text);
  } catch (const ColorParseError&) {
    return std::nullopt;
  }
}

Color composite(const Color& fg, const Color& bg) {
  double a = std::clamp(fg.alpha, 0.0, 1.0);
  auto mix = [a](std::uint8_t f, std::uint8_t b) { return clamp_channel(a * f + (1.0 - a) * b); };
  return {mix(fg.r, bg.r), mix(fg.g, bg.g), mix(fg.b, bg.b), 1.0};
}

double relative_luminance(const Color& c) {
  auto linear = [](std::uint8_t channel) {
    double s = channel / 255.0;
    return s <= 0.03928 ? s / 12.92 : std::pow((s + 0.055) / 1.055, 2.4);
  };
  return 0.2126 * linear(c.r) + 0.7152 * linear(c.g) + 0.0722 * linear(c.b);
}

double contrast_ratio(const Color& a, const Color& b) {
  double la = relative_luminance(a);
  double lb = relative_luminance(b);
  auto [darker, lighter] = std::minmax(la, lb);
  return (lighter + 0.05) / (darker + 0.05);
}

}  // namespace waccess
