#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <tuple>
#include <unordered_map>

#include "style/css_internal.hpp"
#include "text_util.hpp"
#include "waccess/style.hpp"
#include "waccess/url.hpp"

namespace waccess {
namespace {

constexpr double kRootFontPx = 16.0;
const Color kLinkColor = Color::rgb(0, 0, 0xEE);
const Color kControlBorder = Color::rgb(0x76, 0x76, 0x76);

bool is_block_tag(std::string_view tag) {
  static constexpr std::array<std::string_view, 33> kBlock = {
      "address", "article", "aside", "blockquote", "body", "center", "dd", "details", "dialog",
      "div", "dl", "dt", "fieldset", "figcaption", "figure", "footer", "form", "h1", "h2", "h3",
      "h4", "h5", "h6", "header", "hr", "html", "main", "nav", "ol", "p", "pre", "section", "ul"};
  return std::find(kBlock.begin(), kBlock.end(), tag) != kBlock.end();
}

bool is_never_rendered(std::string_view tag) {
  static constexpr std::array<std::string_view, 12> kNone = {
      "head", "script", "style", "title", "meta", "link", "template", "noscript",
      "datalist", "param", "base", "noframes"};
  return std::find(kNone.begin(), kNone.end(), tag) != kNone.end();
}

bool is_form_control(const Node& n) {
  if (n.tag == "button" || n.tag == "select" || n.tag == "textarea") return true;
  if (n.tag != "input") return false;
  auto type = text::lower(n.attributes.get("type"));
  return type != "hidden" && type != "image";
}

double ua_font_size(std::string_view tag, double inherited) {
  // UA stylesheet heading sizes in em.
  if (tag == "h1") return 2.0 * inherited;
  if (tag == "h2") return 1.5 * inherited;
  if (tag == "h3") return 1.17 * inherited;
  if (tag == "h5") return 0.83 * inherited;
  if (tag == "h6") return 0.67 * inherited;
  return inherited;
}

bool ua_bold(std::string_view tag) {
  return (tag.size() == 2 && tag[0] == 'h' && tag[1] >= '1' && tag[1] <= '6') || tag == "b" ||
         tag == "strong" || tag == "th";
}

// Winning value of one longhand property.
struct Winner {
  std::string value;
  std::tuple<int, int, int, Specificity, int> priority{-1, 0, 0, {}, 0};
  bool author = false;
  bool from_layer = false;  // set by the pseudo layer being resolved
};

using Cascade = std::map<std::string, Winner, std::less<>>;

bool is_outline_style(std::string_view t) {
  static constexpr std::array<std::string_view, 11> kStyles = {
      "none", "hidden", "dotted", "dashed", "solid", "double", "groove", "ridge", "inset", "outset", "auto"};
  return std::find(kStyles.begin(), kStyles.end(), t) != kStyles.end();
}

bool is_width_token(std::string_view t) {
  if (t == "thin" || t == "medium" || t == "thick") return true;
  return parse_length_px(t, kRootFontPx).has_value();
}

// Expands shorthands into the longhands the resolver reads.
std::vector<std::pair<std::string, std::string>> expand(const CssProperty& p) {
  std::vector<std::pair<std::string, std::string>> out;
  const std::string& name = p.name;
  std::string lowered = text::lower(p.value);
  std::string_view v = lowered;
  if (name == "background") {
    std::string color = "transparent";
    bool image = v.find("url(") != std::string_view::npos || v.find("gradient(") != std::string_view::npos;
    for (auto tok : detail::value_tokens(v)) {
      if (try_parse_color(tok)) {
        color = std::string(tok);
      }
    }
    if (v == "none") color = "transparent";
    out.emplace_back("background-color", color);
    out.emplace_back("background-image", image ? "image" : "none");
  } else if (name == "background-image") {
    out.emplace_back("background-image", v == "none" ? "none" : "image");
  } else if (name == "outline" || name == "border") {
    std::string style = "none", width = "medium", color = "currentcolor";
    for (auto tok : detail::value_tokens(v)) {
      if (is_outline_style(tok)) style = std::string(tok);
      else if (is_width_token(tok)) width = std::string(tok);
      else color = std::string(tok);
    }
    if (v == "0") width = "0";
    out.emplace_back(name + "-style", style);
    out.emplace_back(name + "-width", width);
    out.emplace_back(name + "-color", color);
  } else if (name == "text-decoration" || name == "text-decoration-line") {
    std::string line;
    for (auto tok : detail::value_tokens(v))
      if (tok == "underline" || tok == "overline" || tok == "line-through" || tok == "none")
        line += (line.empty() ? "" : " ") + std::string(tok);
    out.emplace_back("text-decoration-line", line.empty() ? "none" : line);
  } else if (name == "padding") {
    auto toks = detail::value_tokens(v);
    if (toks.empty() || toks.size() > 4) return out;
    std::string top(toks[0]);
    std::string right(toks.size() > 1 ? toks[1] : toks[0]);
    std::string bottom(toks.size() > 2 ? toks[2] : toks[0]);
    std::string left(toks.size() > 3 ? toks[3] : right);
    out.emplace_back("padding-top", top);
    out.emplace_back("padding-right", right);
    out.emplace_back("padding-bottom", bottom);
    out.emplace_back("padding-left", left);
  } else if (name == "animation") {
    bool infinite = false;
    bool none = true;
    for (auto item : detail::split_top_level(v, ',')) {
      auto toks = detail::value_tokens(item);
      for (auto tok : toks)
        if (tok == "infinite") infinite = true;
      if (!(toks.size() == 1 && toks[0] == "none") && !toks.empty()) none = false;
    }
    out.emplace_back("animation-name", none ? "none" : "set");
    out.emplace_back("animation-iteration-count", infinite ? "infinite" : "1");
  } else if (name == "border-top" || name == "border-bottom" || name == "border-left" ||
             name == "border-right") {
    // Side-specific borders do not change the control's boundary model.
  } else {
    out.emplace_back(name, std::string(v));
  }
  return out;
}

void apply(Cascade& cascade, const CssProperty& p, std::tuple<int, int, int, Specificity, int> priority,
           bool from_layer) {
  for (auto& [longhand, value] : expand(p)) {
    Winner& w = cascade[longhand];
    if (priority >= w.priority) {
      w.value = std::move(value);
      w.priority = priority;
      w.author = true;
      w.from_layer = from_layer;
    }
  }
}

const Winner* get(const Cascade& c, std::string_view name) {
  auto it = c.find(name);
  return it == c.end() ? nullptr : &it->second;
}

std::optional<Color> color_value(std::string_view value, const Color& current) {
  if (value == "currentcolor") return current;
  return try_parse_color(value);
}

int resolve_weight(std::string_view v, int parent) {
  if (v == "normal") return 400;
  if (v == "bold") return 700;
  if (v == "bolder") return parent < 400 ? 400 : parent < 600 ? 700 : 900;
  if (v == "lighter") return parent < 600 ? 100 : parent < 800 ? 400 : 700;
  if (v == "inherit") return parent;
  if (auto n = text::parse_int(v); n && *n >= 1 && *n <= 1000) return static_cast<int>(*n);
  return parent;
}

double resolve_font_size(std::string_view v, double parent) {
  static const std::map<std::string_view, double> kKeywords = {
      {"xx-small", 9.0},  {"x-small", 10.0}, {"small", 13.0},    {"medium", 16.0},
      {"large", 18.0},    {"x-large", 24.0}, {"xx-large", 32.0}, {"xxx-large", 48.0}};
  if (auto it = kKeywords.find(v); it != kKeywords.end()) return it->second;
  if (v == "smaller") return parent / 1.2;
  if (v == "larger") return parent * 1.2;
  if (v.ends_with('%')) {
    if (auto n = text::parse_number(v.substr(0, v.size() - 1))) return parent * *n / 100.0;
    return parent;
  }
  if (auto px = parse_length_px(v, parent); px && *px >= 0) return *px;
  return parent;
}

Display parse_display(std::string_view v, Display fallback) {
  if (v == "none") return Display::None;
  if (v == "block") return Display::Block;
  if (v == "inline") return Display::Inline;
  if (v == "inline-block") return Display::InlineBlock;
  if (v == "list-item") return Display::ListItem;
  if (v == "table") return Display::Table;
  if (v == "flex" || v == "inline-flex" || v == "grid" || v == "inline-grid") return Display::Flex;
  if (v == "inherit" || v == "initial" || v == "unset") return fallback;
  return Display::Other;
}

bool reveals(const CssProperty& p) {
  std::string v = text::lower(text::trim(p.value));
  if (p.name == "display") return v != "none";
  if (p.name == "visibility") return v == "visible";
  if (p.name == "opacity") {
    auto n = text::parse_number(v);
    return n && *n >= 0.1;
  }
  return false;
}

std::string selector_key_class(const CompoundSelector& c) { return c.classes.empty() ? "" : c.classes.front(); }

}  // namespace

bool is_large_text(double font_size_px, int font_weight) {
  return font_size_px >= 24.0 || (font_size_px >= 18.66 && font_weight >= 700);
}

std::optional<double> parse_length_px(std::string_view raw, double font_size_px) {
  std::string_view v = text::trim(raw);
  if (v.empty()) return std::nullopt;
  if (auto n = text::parse_number(v); n && *n == 0.0) return 0.0;
  struct Unit {
    std::string_view suffix;
    double scale;
  };
  const Unit units[] = {{"rem", kRootFontPx}, {"px", 1.0}, {"em", font_size_px}, {"pt", 96.0 / 72.0},
                        {"pc", 16.0},         {"in", 96.0}, {"cm", 96.0 / 2.54}, {"mm", 96.0 / 25.4}};
  for (const auto& u : units) {
    if (v.size() > u.suffix.size() && text::iequals(v.substr(v.size() - u.suffix.size()), u.suffix)) {
      if (auto n = text::parse_number(v.substr(0, v.size() - u.suffix.size()))) return *n * u.scale;
      return std::nullopt;
    }
  }
  return std::nullopt;
}

double max_duration_seconds(std::string_view value, bool /*animation_shorthand*/) {
  double best = 0.0;
  std::string lowered = text::lower(value);
  for (auto item : detail::split_top_level(lowered, ',')) {
    for (auto tok : detail::value_tokens(item)) {
      std::optional<double> seconds;
      if (tok.ends_with("ms")) {
        if (auto n = text::parse_number(tok.substr(0, tok.size() - 2))) seconds = *n / 1000.0;
      } else if (tok.ends_with('s')) {
        if (auto n = text::parse_number(tok.substr(0, tok.size() - 1))) seconds = *n;
      }
      if (seconds) {
        // The first time value in an item is its duration; later ones are delays.
        best = std::max(best, *seconds);
        break;
      }
    }
  }
  return best;
}

// --- StyleSet ----------------------------------------------------------------

std::string StyleSet::locator(const StyleDeclaration& decl) const {
  std::string label = "css";
  if (decl.origin.sheet >= 0 && static_cast<std::size_t>(decl.origin.sheet) < sheets.size())
    label = sheets[static_cast<std::size_t>(decl.origin.sheet)].label;
  return label + "@" + std::to_string(decl.origin.offset);
}

StyleSet collect_styles(const DocumentModel& doc, const std::vector<ExternalSheet>& external) {
  StyleSet set;
  int order = 0;
  int style_index = 0;
  auto absorb = [&](CssParseResult&& parsed) {
    order += static_cast<int>(parsed.declarations.size());
    set.skipped_constructs += parsed.skipped_constructs;
    set.has_reduced_motion_block = set.has_reduced_motion_block || parsed.has_reduced_motion_block;
    for (auto& d : parsed.declarations) set.declarations.push_back(std::move(d));
  };
  for (NodeId id : doc.elements()) {
    const Node& n = doc.node(id);
    if (n.tag == "style") {
      std::string media = text::lower(text::trim(n.attributes.get("media")));
      int sheet = static_cast<int>(set.sheets.size());
      set.sheets.push_back(StyleSheetSource{"style[" + std::to_string(style_index++) + "]", true, id, {}});
      if (!media.empty() && media != "screen" && media != "all" && media != "only screen") {
        ++set.skipped_constructs;
        continue;
      }
      for (NodeId child : n.children) {
        const Node& t = doc.node(child);
        if (!t.is_text()) continue;
        std::string_view css(doc.source().data() + t.span.begin, t.span.size());
        absorb(parse_css_subset(css, order, t.span.begin, sheet));
      }
    } else if (n.tag == "link" && !external.empty()) {
      if (!text::contains_token(text::lower(n.attributes.get("rel")), "stylesheet")) continue;
      std::string href = resolve_url(doc.url(), n.attributes.get("href"));
      for (const auto& sheet : external) {
        if (sheet.url != href) continue;
        int index = static_cast<int>(set.sheets.size());
        set.sheets.push_back(StyleSheetSource{sheet.url, false, id, sheet.text});
        absorb(parse_css_subset(set.sheets.back().text, order, 0, index));
        break;
      }
    }
  }
  return set;
}

// --- StyleResolver -----------------------------------------------------------

StyleResolver::StyleResolver(const DocumentModel& doc, const StyleSet& styles)
    : doc_(doc), set_(styles), styles_(doc.nodes().size()), matches_(doc.nodes().size()) {
  // Bucket declarations by the subject compound's most selective key.
  std::unordered_map<std::string, std::vector<const StyleDeclaration*>> by_id, by_class, by_tag;
  std::vector<const StyleDeclaration*> universal;
  for (const auto& decl : set_.declarations) {
    const auto& subject = decl.selector.compounds().back();
    if (!subject.ids.empty()) by_id[subject.ids.front()].push_back(&decl);
    else if (!subject.classes.empty()) by_class[selector_key_class(subject)].push_back(&decl);
    else if (!subject.tag.empty() && subject.tag != "*") by_tag[subject.tag].push_back(&decl);
    else universal.push_back(&decl);
  }
  for (const Node& n : doc_.nodes()) {
    if (!n.is_element()) continue;
    std::vector<const StyleDeclaration*> candidates = universal;
    if (const auto* id = n.attributes.find("id"))
      if (auto it = by_id.find(*id); it != by_id.end())
        candidates.insert(candidates.end(), it->second.begin(), it->second.end());
    for (auto cls : text::split_whitespace(n.attributes.get("class")))
      if (auto it = by_class.find(std::string(cls)); it != by_class.end())
        candidates.insert(candidates.end(), it->second.begin(), it->second.end());
    if (auto it = by_tag.find(n.tag); it != by_tag.end())
      candidates.insert(candidates.end(), it->second.begin(), it->second.end());
    std::sort(candidates.begin(), candidates.end(),
              [](const StyleDeclaration* a, const StyleDeclaration* b) { return a->source_order < b->source_order; });
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
    auto& out = matches_[n.id];
    for (const auto* decl : candidates)
      if (decl->selector.matches(doc_, n.id)) out.push_back(decl);
    compute(n.id);
  }
}

std::vector<const StyleDeclaration*> StyleResolver::matching(NodeId id, PseudoClass layer) const {
  std::vector<const StyleDeclaration*> out;
  for (const auto* decl : matches_.at(id))
    if (decl->pseudo == layer) out.push_back(decl);
  return out;
}

void StyleResolver::compute(NodeId id) {
  const Node& n = doc_.node(id);
  ComputedStyleApprox parent_style;  // canvas: black on white, 16px
  bool has_parent = n.parent != kNoNode;
  if (has_parent) parent_style = styles_[n.parent];
  ComputedStyleApprox& s = styles_[id];

  std::vector<CssProperty> inline_props;
  if (const auto* style_attr = n.attributes.find("style"))
    inline_props = detail::parse_declaration_block(*style_attr);

  // Base cascade: sheets by (important, specificity, order); inline beats
  // normal sheet declarations.
  Cascade base;
  for (const auto* decl : matches_[id]) {
    if (decl->pseudo != PseudoClass::None) continue;
    for (const auto& p : decl->properties)
      apply(base, p, {p.important ? 1 : 0, 0, 0, decl->specificity, decl->source_order}, false);
  }
  for (std::size_t i = 0; i < inline_props.size(); ++i) {
    const auto& p = inline_props[i];
    apply(base, p, {p.important ? 1 : 0, 1, 0, {}, static_cast<int>(i)}, false);
  }

  // Inherited properties.
  s.color = has_parent ? parent_style.color : Color::black();
  if (n.tag == "a" && n.attributes.has("href")) s.color = kLinkColor;
  if (const Winner* w = get(base, "color")) {
    if (w->value == "inherit") s.color = parent_style.color;
    else if (auto c = color_value(w->value, parent_style.color)) s.color = *c;
  }

  double inherited_size = has_parent ? parent_style.font_size_px : kRootFontPx;
  s.font_size_px = ua_font_size(n.tag, inherited_size);
  if (const Winner* w = get(base, "font-size")) s.font_size_px = resolve_font_size(w->value, inherited_size);

  s.font_weight = ua_bold(n.tag) ? 700 : (has_parent ? parent_style.font_weight : 400);
  if (const Winner* w = get(base, "font-weight")) s.font_weight = resolve_weight(w->value, parent_style.font_weight);
  s.is_large_text = is_large_text(s.font_size_px, s.font_weight);

  // Text decoration (not inherited; UA underlines links).
  s.text_decoration = 0;
  if ((n.tag == "a" && n.attributes.has("href")) || n.tag == "u" || n.tag == "ins")
    s.text_decoration = decoration::kUnderline;
  if (n.tag == "s" || n.tag == "strike" || n.tag == "del") s.text_decoration = decoration::kLineThrough;
  if (const Winner* w = get(base, "text-decoration-line")) {
    s.text_decoration = 0;
    for (auto tok : text::split_whitespace(w->value)) {
      if (tok == "underline") s.text_decoration |= decoration::kUnderline;
      if (tok == "overline") s.text_decoration |= decoration::kOverline;
      if (tok == "line-through") s.text_decoration |= decoration::kLineThrough;
    }
  }

  // Display and visibility.
  Display ua_display = is_block_tag(n.tag) ? Display::Block : Display::Inline;
  if (n.tag == "li") ua_display = Display::ListItem;
  if (n.tag == "table") ua_display = Display::Table;
  if (is_never_rendered(n.tag) || n.attributes.has("hidden") ||
      (n.tag == "input" && text::iequals(n.attributes.get("type"), "hidden")))
    ua_display = Display::None;
  s.display = ua_display;
  if (const Winner* w = get(base, "display")) s.display = parse_display(w->value, ua_display);

  s.visibility = has_parent ? parent_style.visibility : Visibility::Visible;
  bool own_visibility_hidden = false;
  if (const Winner* w = get(base, "visibility")) {
    if (w->value == "hidden") s.visibility = Visibility::Hidden;
    else if (w->value == "collapse") s.visibility = Visibility::Collapse;
    else if (w->value == "visible") s.visibility = Visibility::Visible;
    own_visibility_hidden = s.visibility != Visibility::Visible;
  }

  double own_opacity = 1.0;
  if (const Winner* w = get(base, "opacity")) {
    std::string_view v = w->value;
    bool percent = v.ends_with('%');
    if (auto o = text::parse_number(percent ? v.substr(0, v.size() - 1) : v))
      own_opacity = std::clamp(percent ? *o / 100.0 : *o, 0.0, 1.0);
  }
  s.opacity = (has_parent ? parent_style.opacity : 1.0) * own_opacity;
  s.rendered = (!has_parent || parent_style.rendered) && s.display != Display::None;

  s.hidden_by = kNoNode;
  if (s.display == Display::None) s.hidden_by = id;
  else if (has_parent && !parent_style.rendered) s.hidden_by = parent_style.hidden_by;
  else if (own_visibility_hidden) s.hidden_by = id;
  else if (s.visibility != Visibility::Visible && has_parent) s.hidden_by = parent_style.hidden_by;
  else if (own_opacity < 0.1) s.hidden_by = id;
  else if (s.opacity < 0.1 && has_parent) s.hidden_by = parent_style.hidden_by;

  // Background, composited over the parent's resolved background.
  Color parent_bg = has_parent ? parent_style.background : Color::white();
  s.own_background = false;
  s.background = parent_bg;
  s.background_image = has_parent && parent_style.background_image;
  bool own_image = false;
  if (const Winner* w = get(base, "background-image")) own_image = w->value == "image";
  if (const Winner* w = get(base, "background-color")) {
    if (auto c = color_value(w->value, s.color); c && c->alpha > 0.0) {
      s.background = composite(*c, parent_bg);
      s.own_background = true;
      if (c->opaque()) s.background_image = false;
    }
  }
  if (own_image) s.background_image = true;

  // Border: UA controls have a 2px #767676 border.
  s.border_color.reset();
  s.border_from_author = false;
  if (is_form_control(n)) s.border_color = kControlBorder;
  {
    const Winner* style = get(base, "border-style");
    const Winner* width = get(base, "border-width");
    const Winner* color = get(base, "border-color");
    if (style || width || color) {
      bool ua = is_form_control(n);
      std::string st = style ? style->value : (ua ? "solid" : "none");
      std::string wd = width ? width->value : "medium";
      bool visible = st != "none" && st != "hidden";
      if (auto px = parse_length_px(wd, s.font_size_px); px && *px <= 0.0) visible = false;
      s.border_from_author = true;
      if (!visible) {
        s.border_color.reset();
      } else {
        Color c = ua && !color ? kControlBorder : s.color;
        if (color)
          if (auto parsed = color_value(text::split_whitespace(color->value).empty()
                                            ? std::string_view{}
                                            : text::split_whitespace(color->value).front(),
                                        s.color))
            c = *parsed;
        s.border_color = composite(c, s.background);
      }
    }
  }

  // Box size in CSS px (content + padding).
  s.box_size_px.reset();
  {
    auto dimension = [&](std::string_view prop, std::string_view attr) -> std::optional<double> {
      if (const Winner* w = get(base, prop)) return parse_length_px(w->value, s.font_size_px);
      if (auto v = text::parse_number(n.attributes.get(attr)); v && *v >= 0) return *v;
      return std::nullopt;
    };
    auto padding = [&](std::string_view prop) -> std::optional<double> {
      if (const Winner* w = get(base, prop)) return parse_length_px(w->value, s.font_size_px);
      return 0.0;
    };
    auto w = dimension("width", "width");
    auto h = dimension("height", "height");
    auto pl = padding("padding-left"), pr = padding("padding-right");
    auto pt = padding("padding-top"), pb = padding("padding-bottom");
    if (w && h && pl && pr && pt && pb) s.box_size_px = BoxSize{*w + *pl + *pr, *h + *pt + *pb};
  }

  // Page breaks and animations.
  s.page_break = false;
  for (std::string_view prop : {"page-break-before", "page-break-after", "break-before", "break-after"})
    if (const Winner* w = get(base, prop))
      if (w->value == "always" || w->value == "page" || w->value == "left" || w->value == "right")
        s.page_break = true;
  s.animation_infinite = false;
  {
    const Winner* count = get(base, "animation-iteration-count");
    const Winner* name = get(base, "animation-name");
    if (count && count->value.find("infinite") != std::string::npos && !(name && name->value == "none"))
      s.animation_infinite = true;
  }

  // Focused state: base and :focus declarations cascade together, the focus
  // layer above base, inline above both.
  Cascade focus;
  std::vector<const StyleDeclaration*> focus_decls;
  for (const auto* decl : matches_[id]) {
    bool layer = decl->pseudo == PseudoClass::Focus && decl->selector.pseudo_on_subject();
    if (decl->pseudo != PseudoClass::None && !layer) continue;
    if (layer) focus_decls.push_back(decl);
    for (const auto& p : decl->properties)
      apply(focus, p, {p.important ? 1 : 0, 0, layer ? 1 : 0, decl->specificity, decl->source_order}, layer);
  }
  for (std::size_t i = 0; i < inline_props.size(); ++i) {
    const auto& p = inline_props[i];
    apply(focus, p, {p.important ? 1 : 0, 1, 0, {}, static_cast<int>(i)}, false);
  }
  Color focus_color = s.color;
  if (const Winner* w = get(focus, "color"))
    if (auto c = color_value(w->value, parent_style.color)) focus_color = *c;

  s.outline_suppressed_on_focus = false;
  s.focus_indicator_color.reset();
  const Winner* o_style = get(focus, "outline-style");
  const Winner* o_width = get(focus, "outline-width");
  const Winner* o_color = get(focus, "outline-color");
  if (o_style || o_width || o_color) {
    bool suppressed = false;
    if (o_style && (o_style->value == "none" || o_style->value == "hidden")) suppressed = true;
    if (o_width)
      if (auto px = parse_length_px(o_width->value, s.font_size_px); px && *px <= 0.0) suppressed = true;
    if (!suppressed) {
      if (o_color) {
        if (o_color->value != "invert" && o_color->value != "auto")
          if (auto c = color_value(o_color->value, focus_color)) s.focus_indicator_color = composite(*c, s.background);
      } else if (o_style && o_style->value != "auto") {
        s.focus_indicator_color = composite(focus_color, s.background);
      }
    } else {
      // Alternative indicators set by the :focus layer itself.
      std::optional<Color> alternative;
      if (const Winner* w = get(focus, "box-shadow"); w && w->from_layer && w->value != "none") {
        alternative = focus_color;
        for (auto tok : detail::value_tokens(w->value))
          if (auto c = try_parse_color(tok)) alternative = *c;
      }
      if (!alternative) {
        const Winner* bs = get(focus, "border-style");
        const Winner* bc = get(focus, "border-color");
        if ((bs && bs->from_layer && bs->value != "none" && bs->value != "hidden") || (bc && bc->from_layer)) {
          alternative = focus_color;
          if (bc)
            if (auto c = color_value(bc->value, focus_color)) alternative = *c;
        }
      }
      if (!alternative) {
        if (const Winner* w = get(focus, "background-color"); w && w->from_layer)
          if (auto c = color_value(w->value, focus_color); c && c->alpha > 0.0 && composite(*c, parent_bg) != s.background)
            alternative = *c;
      }
      if (!alternative) {
        if (const Winner* w = get(focus, "text-decoration-line"); w && w->from_layer &&
            w->value.find("underline") != std::string::npos && !(s.text_decoration & decoration::kUnderline))
          alternative = focus_color;
      }
      if (alternative) s.focus_indicator_color = composite(*alternative, s.background);
      else s.outline_suppressed_on_focus = true;
    }
  }

  // Hover disclosure: the element (or the ancestor hiding it) is revealed by
  // a :hover declaration.
  s.hover_reveals = false;
  if (s.invisible() && s.hidden_by != kNoNode) {
    for (const auto* decl : matches_[s.hidden_by]) {
      if (decl->pseudo != PseudoClass::Hover) continue;
      for (const auto& p : decl->properties)
        if (reveals(p)) s.hover_reveals = true;
    }
  }
}

ComputedStyleApprox resolve_style(const DocumentModel& doc, const StyleSet& styles, NodeId element) {
  StyleResolver resolver(doc, styles);
  return resolver.style(element);
}

}  // namespace waccess
