#include "rules/common.hpp"
#include "text_util.hpp"

namespace waccess::checks {
namespace {

RuleOutcome text_contrast(const AuditContext& ctx, std::string_view rule_id, double normal, double large) {
  RuleOutcome out;
  const DocumentModel& doc = ctx.doc();
  for (NodeId id : doc.elements()) {
    const Node& n = doc.node(id);
    if (!has_direct_text(doc, id)) continue;
    const ComputedStyleApprox& s = ctx.style(id);
    if (s.invisible() || is_disabled(n)) continue;
    if (s.background_image) {
      ++out.skipped_elements;  // background under the text is unknown
      continue;
    }
    Color fg = composite(s.color, s.background);
    double ratio = contrast_ratio(fg, s.background);
    double required = s.is_large_text ? large : normal;
    if (ratio >= required) continue;
    std::string req = format_ratio(required);
    out.violations.push_back(element_violation(
        ctx, rule_id, id,
        "Text contrast " + format_ratio(ratio) + ":1 (" + fg.hex() + " on " + s.background.hex() +
            ") is below the required " + req + ":1 for " + (s.is_large_text ? "large" : "normal") + " text.",
        fix_for(rule_id, {{"tag", n.tag}, {"value", req}, {"color", fg.hex()}, {"background", s.background.hex()}})));
  }
  return out;
}

RuleOutcome focus_appearance(const AuditContext& ctx, std::string_view rule_id, double threshold) {
  RuleOutcome out;
  const DocumentModel& doc = ctx.doc();
  std::string req = format_ratio(threshold);
  for (NodeId id : doc.elements()) {
    const Node& n = doc.node(id);
    if (!is_focusable(n)) continue;
    const ComputedStyleApprox& s = ctx.style(id);
    if (!s.rendered) continue;
    std::string message;
    if (s.outline_suppressed_on_focus) {
      message = "The focus outline is removed without an alternative focus indicator.";
    } else if (s.focus_indicator_color) {
      double ratio = contrast_ratio(*s.focus_indicator_color, s.background);
      if (ratio >= threshold) continue;
      message = "The focus indicator " + s.focus_indicator_color->hex() + " has contrast " + format_ratio(ratio) +
                ":1 against " + s.background.hex() + ", below " + req + ":1.";
    } else {
      continue;  // user agent default indicator
    }
    out.violations.push_back(
        element_violation(ctx, rule_id, id, std::move(message), fix_for(rule_id, {{"tag", n.tag}, {"value", req}})));
  }
  return out;
}

bool is_ui_component(const Node& n) {
  if (n.tag == "button" || n.tag == "select" || n.tag == "textarea") return true;
  if (n.tag == "input") {
    std::string type = input_type(n);
    return type != "hidden" && type != "image";
  }
  return n.tag == "a" && text::iequals(text::trim(n.attributes.get("role")), "button");
}

// Nearest block container of an inline element.
NodeId text_block(const AuditContext& ctx, NodeId id) {
  const DocumentModel& doc = ctx.doc();
  for (NodeId cur = doc.node(id).parent; cur != kNoNode; cur = doc.node(cur).parent) {
    Display d = ctx.style(cur).display;
    if (d != Display::Inline) return cur;
  }
  return kNoNode;
}

// True when `block` has non-whitespace text outside the subtree of `link`.
bool has_text_outside(const DocumentModel& doc, NodeId block, NodeId link) {
  std::vector<NodeId> stack{block};
  while (!stack.empty()) {
    NodeId cur = stack.back();
    stack.pop_back();
    if (cur == link) continue;
    const Node& n = doc.node(cur);
    if (n.is_text()) {
      if (!n.raw_text && !text::normalize_space(n.text).empty()) return true;
      continue;
    }
    for (NodeId child : n.children) stack.push_back(child);
  }
  return false;
}

}  // namespace

RuleOutcome check_1_4_3(const AuditContext& ctx) {
  return text_contrast(ctx, "1.4.3", thresholds::kContrastAA, thresholds::kContrastAALarge);
}

RuleOutcome check_1_4_6(const AuditContext& ctx) {
  return text_contrast(ctx, "1.4.6", thresholds::kContrastAAA, thresholds::kContrastAAALarge);
}

RuleOutcome check_1_4_11(const AuditContext& ctx) {
  RuleOutcome out;
  const DocumentModel& doc = ctx.doc();
  for (NodeId id : doc.elements()) {
    const Node& n = doc.node(id);
    if (!is_ui_component(n) || is_disabled(n)) continue;
    const ComputedStyleApprox& s = ctx.style(id);
    if (s.invisible()) continue;
    if (s.background_image) {
      ++out.skipped_elements;
      continue;
    }
    Color surround = n.parent == kNoNode ? Color::white() : ctx.style(n.parent).background;
    double ratio = 1.0;
    std::string what;
    if (s.own_background && s.background != surround) {
      ratio = contrast_ratio(s.background, surround);
      what = "background " + s.background.hex();
    } else if (s.border_color) {
      ratio = contrast_ratio(*s.border_color, surround);
      what = "border " + s.border_color->hex();
    } else {
      what = "component without a distinct background or border";
    }
    if (ratio >= thresholds::kNonTextContrast) continue;
    out.violations.push_back(element_violation(
        ctx, "1.4.11", id,
        "The " + what + " has contrast " + format_ratio(ratio) + ":1 against the adjacent " + surround.hex() +
            ", below 3:1.",
        fix_for("1.4.11", {{"tag", n.tag}, {"background", surround.hex()}})));
  }
  return out;
}

RuleOutcome check_2_4_11(const AuditContext& ctx) {
  return focus_appearance(ctx, "2.4.11", thresholds::kFocusContrastAA);
}

RuleOutcome check_2_4_12(const AuditContext& ctx) {
  return focus_appearance(ctx, "2.4.12", thresholds::kFocusContrastAAA);
}

RuleOutcome check_1_4_1(const AuditContext& ctx) {
  RuleOutcome out;
  const DocumentModel& doc = ctx.doc();
  for (NodeId id : doc.elements_by_tag("a")) {
    const Node& n = doc.node(id);
    if (!n.attributes.has("href")) continue;
    const ComputedStyleApprox& s = ctx.style(id);
    if (s.invisible() || s.display != Display::Inline) continue;
    if (text::normalize_space(doc.text_content(id)).empty()) continue;
    if (s.text_decoration & (decoration::kUnderline | decoration::kOverline)) continue;
    NodeId block = text_block(ctx, id);
    if (block == kNoNode || !has_text_outside(doc, block, id)) continue;
    const ComputedStyleApprox& around = ctx.style(block);
    if (s.font_weight != around.font_weight || s.font_size_px != around.font_size_px) continue;
    if (s.own_background || s.border_color) continue;
    out.violations.push_back(element_violation(
        ctx, "1.4.1", id,
        "The link inside running text is distinguished from the surrounding text by color alone (" + s.color.hex() +
            " vs " + around.color.hex() + ").",
        fix_for("1.4.1", {{"tag", n.tag}})));
  }
  return out;
}

}  // namespace waccess::checks
