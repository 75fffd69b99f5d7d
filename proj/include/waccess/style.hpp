#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "waccess/dom.hpp"

namespace waccess {

class ColorParseError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct Color {
  std::uint8_t r = 0;
  std::uint8_t g = 0;
  std::uint8_t b = 0;
  double alpha = 1.0;

  static constexpr Color rgb(std::uint8_t r, std::uint8_t g, std::uint8_t b) { return {r, g, b, 1.0}; }
  static constexpr Color black() { return rgb(0, 0, 0); }
  static constexpr Color white() { return rgb(255, 255, 255); }

  [[nodiscard]] bool opaque() const { return alpha >= 1.0; }
  [[nodiscard]] std::string hex() const;  // "#rrggbb", or "#rrggbbaa" when translucent

  friend bool operator==(const Color&, const Color&) = default;
};

Color parse_color(std::string_view text);
std::optional<Color> try_parse_color(std::string_view text);

// Source-over compositing of `fg` onto an opaque `bg`; the result is opaque.
Color composite(const Color& fg, const Color& bg);

// WCAG 2.x relative luminance of an opaque sRGB color, in [0, 1].
double relative_luminance(const Color& c);

// (Llighter + 0.05) / (Ldarker + 0.05); both colors must be opaque.
double contrast_ratio(const Color& a, const Color& b);

// --- CSS --------------------------------------------------------------------

struct CssProperty {
  std::string name;
  std::string value;
  bool important = false;
};

// Where a rule came from: a <style> element (offsets into the document
// source) or an external sheet (offsets into that sheet's text).
struct CssOrigin {
  int sheet = 0;  // index into the StyleSet's sheet list
  std::size_t offset = 0;
  std::size_t length = 0;
};

struct StyleDeclaration {
  SelectorSubset selector;
  PseudoClass pseudo = PseudoClass::None;
  std::vector<CssProperty> properties;
  Specificity specificity;
  int source_order = 0;
  CssOrigin origin;
  std::string rule_text;  // the full "selector { ... }" rule, verbatim

  [[nodiscard]] const CssProperty* find(std::string_view name) const;
};

struct CssParseResult {
  std::vector<StyleDeclaration> declarations;
  int skipped_constructs = 0;
  bool has_reduced_motion_block = false;
};

// Parses the supported property subset. Offsets in each declaration's origin
// are relative to `text` plus `base_offset`.
CssParseResult parse_css_subset(std::string_view text, int first_source_order = 0,
                                std::size_t base_offset = 0, int sheet = 0);

struct StyleSheetSource {
  std::string label;     // locator prefix: "style[0]" or the sheet URL
  bool in_document = true;
  NodeId owner = kNoNode;  // <style>/<link> element
  std::string text;        // external sheets only
};

// Every stylesheet that applies to a document, cascade-ready.
struct StyleSet {
  std::vector<StyleDeclaration> declarations;
  std::vector<StyleSheetSource> sheets;
  int skipped_constructs = 0;
  bool has_reduced_motion_block = false;

  // Locator for a declaration: "<sheet label>@<offset>", e.g. "style[0]@12".
  [[nodiscard]] std::string locator(const StyleDeclaration& decl) const;
};

struct ExternalSheet {
  std::string url;
  std::string text;
};

// Collects <style> blocks (and, when given, fetched external sheets in the
// position of their <link>) into one StyleSet. <style media=...> other than
// screen/all is ignored.
StyleSet collect_styles(const DocumentModel& doc, const std::vector<ExternalSheet>& external = {});

// --- computed style ---------------------------------------------------------

enum class Display : std::uint8_t { Inline, Block, ListItem, InlineBlock, Table, Flex, Other, None };
enum class Visibility : std::uint8_t { Visible, Hidden, Collapse };

namespace decoration {
inline constexpr std::uint8_t kUnderline = 1;
inline constexpr std::uint8_t kOverline = 2;
inline constexpr std::uint8_t kLineThrough = 4;
}  // namespace decoration

struct BoxSize {
  double width = 0;
  double height = 0;
};

struct ComputedStyleApprox {
  Color color = Color::black();
  Color background = Color::white();  // composited over ancestors, opaque
  bool background_image = false;      // some layer up to the first opaque one is an image
  bool own_background = false;        // the element itself paints a background
  double font_size_px = 16.0;
  int font_weight = 400;
  std::uint8_t text_decoration = 0;
  Display display = Display::Inline;
  Visibility visibility = Visibility::Visible;
  double opacity = 1.0;  // product over ancestors
  bool rendered = true;  // no display:none on self or ancestors
  NodeId hidden_by = kNoNode;  // element whose style hides this one

  bool outline_suppressed_on_focus = false;
  std::optional<Color> focus_indicator_color;
  bool hover_reveals = false;

  std::optional<BoxSize> box_size_px;
  std::optional<Color> border_color;  // when a visible border is painted
  bool border_from_author = false;
  bool page_break = false;
  bool animation_infinite = false;
  bool is_large_text = false;

  [[nodiscard]] bool invisible() const {
    return !rendered || visibility != Visibility::Visible || opacity < 0.1;
  }
};

bool is_large_text(double font_size_px, int font_weight);

// Resolves and caches computed styles for one document. Immutable after
// construction; every element's style is computed eagerly.
class StyleResolver {
 public:
  StyleResolver(const DocumentModel& doc, const StyleSet& styles);

  [[nodiscard]] const ComputedStyleApprox& style(NodeId id) const { return styles_.at(id); }
  [[nodiscard]] const DocumentModel& document() const { return doc_; }
  [[nodiscard]] const StyleSet& style_set() const { return set_; }

  // Declarations whose selector (pseudo ignored) matches `id`, in cascade
  // order, filtered by pseudo layer.
  [[nodiscard]] std::vector<const StyleDeclaration*> matching(NodeId id, PseudoClass layer) const;

 private:
  void compute(NodeId id);

  const DocumentModel& doc_;
  const StyleSet& set_;
  std::vector<ComputedStyleApprox> styles_;
  std::vector<std::vector<const StyleDeclaration*>> matches_;  // per node, all layers
};

ComputedStyleApprox resolve_style(const DocumentModel& doc, const StyleSet& styles, NodeId element);

// Helpers shared with rules.
std::optional<double> parse_length_px(std::string_view value, double font_size_px);
// Largest time in a transition/animation value list, in seconds.
double max_duration_seconds(std::string_view value, bool animation_shorthand);

}  // namespace waccess
