#include <charconv>
#include <stdexcept>

#include "text_util.hpp"
#include "waccess/rules.hpp"

namespace waccess {

std::string_view to_string(WcagVersion v) {
  switch (v) {
    case WcagVersion::V2_0: return "2.0";
    case WcagVersion::V2_1: return "2.1";
    case WcagVersion::V2_2: return "2.2";
  }
  return "?";
}

std::string_view to_string(Level l) {
  switch (l) {
    case Level::A: return "A";
    case Level::AA: return "AA";
    case Level::AAA: return "AAA";
  }
  return "?";
}

std::string_view to_string(Principle p) {
  switch (p) {
    case Principle::Perceivable: return "Perceivable";
    case Principle::Operable: return "Operable";
    case Principle::Understandable: return "Understandable";
    case Principle::Robust: return "Robust";
  }
  return "?";
}

std::string_view to_string(RuleClass c) {
  switch (c) {
    case RuleClass::Aria: return "aria";
    case RuleClass::ColorContrast: return "color_contrast";
    case RuleClass::HtmlCheck: return "html_check";
    case RuleClass::Interaction: return "interaction";
  }
  return "?";
}

std::optional<WcagVersion> parse_version(std::string_view text) {
  text = text::trim(text);
  if (text == "2.0" || text == "2") return WcagVersion::V2_0;
  if (text == "2.1") return WcagVersion::V2_1;
  if (text == "2.2") return WcagVersion::V2_2;
  return std::nullopt;
}

bool rule_id_less(std::string_view a, std::string_view b) {
  auto parts_a = text::split(a, '.');
  auto parts_b = text::split(b, '.');
  for (std::size_t i = 0; i < parts_a.size() && i < parts_b.size(); ++i) {
    long x = text::parse_int(parts_a[i]).value_or(0);
    long y = text::parse_int(parts_b[i]).value_or(0);
    if (x != y) return x < y;
  }
  return parts_a.size() < parts_b.size();
}

namespace {

using enum WcagVersion;
using enum Level;
using enum Principle;
using enum RuleClass;

std::vector<RuleDescriptor> build_registry() {
  std::vector<RuleDescriptor> r = {
      // WCAG 2.0
      {"1.1.1", V2_0, A, Perceivable, HtmlCheck, "Non-text Content",
       "Give the <{tag}> a text alternative, e.g. alt=\"description\" (use alt=\"\" for decorative images)."},
      {"1.3.1", V2_0, A, Perceivable, HtmlCheck, "Info and Relationships",
       "Mark up the structure of the <{tag}>: {value}."},
      {"1.4.1", V2_0, A, Perceivable, ColorContrast, "Use of Color",
       "Do not rely on color alone: keep the link underlined or make it bold, e.g. a { text-decoration: underline }."},
      {"1.4.3", V2_0, AA, Perceivable, ColorContrast, "Contrast (Minimum)",
       "Raise the contrast of the <{tag}> text to at least {value}:1, e.g. darken color {color} against {background}."},
      {"1.4.4", V2_0, AA, Perceivable, HtmlCheck, "Resize text",
       "Replace the presentational <{tag}> element with CSS (font-weight, font-style, font-size) or a semantic element."},
      {"1.4.6", V2_0, AAA, Perceivable, ColorContrast, "Contrast (Enhanced)",
       "Raise the contrast of the <{tag}> text to at least {value}:1, e.g. darken color {color} against {background}."},
      {"2.1.1", V2_0, A, Operable, Interaction, "Keyboard",
       "Make the <{tag}> keyboard operable: use a <button>, or add tabindex=\"0\" and a key handler next to {value}."},
      {"2.2.2", V2_0, A, Operable, Interaction, "Pause, Stop, Hide",
       "Give users a way to pause, stop or hide the moving content in <{tag}>: {value}."},
      {"2.4.4", V2_0, A, Operable, HtmlCheck, "Link Purpose (In Context)",
       "Give the link a descriptive accessible name{value}."},
      {"2.4.6", V2_0, AA, Operable, HtmlCheck, "Headings and Labels",
       "Order headings without skipping levels, starting with <h1>: {value}."},
      {"3.1.1", V2_0, A, Understandable, HtmlCheck, "Language of Page",
       "Declare the page language with a valid code, e.g. <html lang=\"en\">{value}."},
      {"3.3.2", V2_0, A, Understandable, HtmlCheck, "Labels or Instructions",
       "Associate a label with the <{tag}>, e.g. <label for=\"{value}\">...</label> or aria-label=\"...\"."},
      {"4.1.1", V2_0, A, Robust, HtmlCheck, "Parsing",
       "Fix the markup: {value}."},
      // WCAG 2.1
      {"1.3.5", V2_1, AA, Perceivable, Aria, "Identify Input Purpose",
       "Add an autocomplete attribute describing the field, e.g. autocomplete=\"{value}\"."},
      {"1.3.6", V2_1, AAA, Perceivable, Aria, "Identify Purpose",
       "Identify the purpose of the <{tag}>: {value}."},
      {"1.4.11", V2_1, AA, Perceivable, ColorContrast, "Non-text Contrast",
       "Give the <{tag}> a boundary or background with at least 3:1 contrast against {background}."},
      {"1.4.13", V2_1, AA, Perceivable, Interaction, "Content on Hover or Focus",
       "Reveal the same content on keyboard focus too, e.g. add a rule for {value}."},
      {"2.1.4", V2_1, A, Operable, Interaction, "Character Key Shortcuts",
       "Remove accesskey=\"{value}\" or make the single-character shortcut remappable or modifier-based."},
      {"2.3.3", V2_1, AAA, Operable, Interaction, "Animation from Interactions",
       "Wrap the motion in @media (prefers-reduced-motion: no-preference) or keep it under {value}s."},
      {"2.5.3", V2_1, A, Operable, Aria, "Label in Name",
       "Start the accessible name with the visible label, e.g. aria-label=\"{value} ...\"."},
      {"2.5.5", V2_1, AAA, Operable, Interaction, "Target Size",
       "Make the <{tag}> target at least {value}x{value} CSS pixels."},
      {"4.1.3", V2_1, AA, Robust, Aria, "Status Messages",
       "Expose the message to assistive technology, e.g. role=\"status\", role=\"alert\" or aria-live=\"polite\" on <{tag}>."},
      // WCAG 2.2
      {"2.4.11", V2_2, AA, Operable, ColorContrast, "Focus Appearance (Minimum)",
       "Give <{tag}> a visible focus indicator with at least {value}:1 contrast, e.g. :focus { outline: 2px solid #1a1a1a }."},
      {"2.4.12", V2_2, AAA, Operable, ColorContrast, "Focus Appearance (Enhanced)",
       "Give <{tag}> a visible focus indicator with at least {value}:1 contrast, e.g. :focus { outline: 2px solid #1a1a1a }."},
      {"2.4.13", V2_2, A, Operable, HtmlCheck, "Page Break Navigation",
       "Give the page break <{tag}> an id so it can be navigated to, e.g. id=\"page-{value}\"."},
      {"2.5.7", V2_2, AA, Operable, Interaction, "Dragging Movements",
       "Offer a single-pointer alternative to dragging the <{tag}>, e.g. a click handler or move buttons."},
      {"2.5.8", V2_2, AA, Operable, Interaction, "Target Size (Minimum)",
       "Make the <{tag}> target at least {value}x{value} CSS pixels."},
      {"3.2.7", V2_2, A, Understandable, Interaction, "Visible Controls",
       "Keep the <{tag}> visible without hovering, or reveal it on focus as well."},
      {"3.3.7", V2_2, A, Understandable, Aria, "Accessible Authentication",
       "Allow password managers with autocomplete=\"current-password\" or add a \"Forgot password?\" link."},
  };
  std::stable_sort(r.begin(), r.end(), [](const RuleDescriptor& a, const RuleDescriptor& b) {
    if (a.version != b.version) return a.version < b.version;
    return rule_id_less(a.id, b.id);
  });
  return r;
}

}  // namespace

const std::vector<RuleDescriptor>& registry() {
  static const std::vector<RuleDescriptor> kRegistry = build_registry();
  return kRegistry;
}

const RuleDescriptor* find_rule(std::string_view id) {
  for (const auto& d : registry())
    if (d.id == id) return &d;
  return nullptr;
}

RuleSet parse_rule_filter(std::string_view comma_separated) {
  RuleSet out;
  for (auto part : text::split(comma_separated, ',')) {
    part = text::trim(part);
    if (part.empty()) continue;
    if (!find_rule(part)) throw std::invalid_argument("unknown rule id '" + std::string(part) + "'");
    out.emplace(part);
  }
  return out;
}

}  // namespace waccess
