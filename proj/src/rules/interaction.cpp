#include <algorithm>

#include "rules/common.hpp"
#include "text_util.hpp"

namespace waccess::checks {
namespace {

bool natively_focusable(const Node& n) {
  if ((n.tag == "a" || n.tag == "area") && n.attributes.has("href")) return true;
  if (n.tag == "input") return input_type(n) != "hidden";
  return n.tag == "button" || n.tag == "select" || n.tag == "textarea" || n.tag == "summary" ||
         n.tag == "iframe" || n.attributes.has("contenteditable");
}

std::size_t utf8_codepoints(std::string_view s) {
  std::size_t count = 0;
  for (char c : s)
    if ((static_cast<unsigned char>(c) & 0xC0) != 0x80) ++count;
  return count;
}

RuleOutcome target_size(const AuditContext& ctx, std::string_view rule_id, double minimum) {
  RuleOutcome out;
  const DocumentModel& doc = ctx.doc();
  int targets = 0;
  for (NodeId id : doc.elements()) {
    const Node& n = doc.node(id);
    if (!is_interactive(n)) continue;
    const ComputedStyleApprox& s = ctx.style(id);
    if (s.invisible()) continue;
    ++targets;
    if (!s.box_size_px) {
      ++out.skipped_elements;
      continue;
    }
    double w = s.box_size_px->width;
    double h = s.box_size_px->height;
    if (w >= minimum && h >= minimum) continue;
    char size[64];
    std::snprintf(size, sizeof size, "%gx%g", w, h);
    std::string min = format_ratio(minimum);
    min = min.substr(0, min.find('.'));
    out.violations.push_back(element_violation(
        ctx, rule_id, id, "The target is " + std::string(size) + " CSS pixels, smaller than " + min + "x" + min + ".",
        fix_for(rule_id, {{"tag", n.tag}, {"value", min}})));
  }
  if (targets > 0 && out.skipped_elements == targets)
    out.skip_reason = "target sizes indeterminable without layout";
  return out;
}

bool reveals_content(const CssProperty& p) {
  std::string v = text::lower(text::trim(p.value));
  if (p.name == "display") return v != "none";
  if (p.name == "visibility") return v == "visible";
  if (p.name == "opacity") {
    auto n = text::parse_number(v);
    return n && *n >= 0.1;
  }
  return false;
}

bool declaration_reveals(const StyleDeclaration& d) {
  return std::any_of(d.properties.begin(), d.properties.end(), reveals_content);
}

std::optional<std::string> no_stylesheet_reason(const AuditContext& ctx) {
  if (!ctx.styles().declarations.empty()) return std::nullopt;
  const DocumentModel& doc = ctx.doc();
  for (NodeId id : doc.elements_by_tag("link"))
    if (text::contains_token(text::lower(doc.node(id).attributes.get("rel")), "stylesheet"))
      return std::string("external stylesheets not fetched");
  return std::string("no stylesheet rules");
}

}  // namespace

RuleOutcome check_2_1_1(const AuditContext& ctx) {
  RuleOutcome out;
  const DocumentModel& doc = ctx.doc();
  for (NodeId id : doc.elements()) {
    const Node& n = doc.node(id);
    const char* handler = n.attributes.has("onclick")       ? "onclick"
                          : n.attributes.has("onmousedown") ? "onmousedown"
                          : n.attributes.has("onmouseup")   ? "onmouseup"
                                                            : nullptr;
    if (!handler || natively_focusable(n) || n.attributes.has("tabindex")) continue;
    if (n.attributes.has("onkeydown") || n.attributes.has("onkeypress") || n.attributes.has("onkeyup")) continue;
    out.violations.push_back(element_violation(
        ctx, "2.1.1", id,
        "The <" + n.tag + "> reacts to " + handler + " but cannot be reached or operated with the keyboard.",
        fix_for("2.1.1", {{"tag", n.tag}, {"value", handler}})));
  }
  return out;
}

RuleOutcome check_2_1_4(const AuditContext& ctx) {
  RuleOutcome out;
  const DocumentModel& doc = ctx.doc();
  for (NodeId id : doc.elements()) {
    const Node& n = doc.node(id);
    const std::string* key = n.attributes.find("accesskey");
    if (!key || key->empty() || utf8_codepoints(*key) != 1) continue;
    unsigned char c = static_cast<unsigned char>((*key)[0]);
    if (c < 0x80 && (c <= 0x20 || c == 0x7F)) continue;
    out.violations.push_back(element_violation(ctx, "2.1.4", id,
                                               "The single-character shortcut accesskey=\"" + *key + "\" is set.",
                                               fix_for("2.1.4", {{"value", *key}})));
  }
  return out;
}

RuleOutcome check_2_2_2(const AuditContext& ctx) {
  RuleOutcome out;
  const DocumentModel& doc = ctx.doc();
  for (NodeId id : doc.elements()) {
    const Node& n = doc.node(id);
    std::string message, how;
    if (n.tag == "marquee" || n.tag == "blink") {
      message = "The <" + n.tag + "> element moves or blinks with no way to stop it.";
      how = "replace <" + n.tag + "> with static content";
    } else if ((n.tag == "video" || n.tag == "audio") && n.attributes.has("autoplay") && !n.attributes.has("controls")) {
      message = "The <" + n.tag + "> plays automatically without controls.";
      how = "add the controls attribute or remove autoplay";
    } else if (const auto& s = ctx.style(id); s.animation_infinite && s.rendered && !doc.text_content(id).empty()) {
      message = "Text inside the <" + n.tag + "> is animated indefinitely.";
      how = "limit animation-iteration-count or provide a pause control";
    } else {
      continue;
    }
    out.violations.push_back(
        element_violation(ctx, "2.2.2", id, std::move(message), fix_for("2.2.2", {{"tag", n.tag}, {"value", how}})));
  }
  return out;
}

RuleOutcome check_2_3_3(const AuditContext& ctx) {
  RuleOutcome out;
  if (auto reason = no_stylesheet_reason(ctx)) {
    out.skip_reason = reason;
    return out;
  }
  if (ctx.styles().has_reduced_motion_block) return out;
  for (const auto& decl : ctx.styles().declarations) {
    if (decl.pseudo == PseudoClass::None) continue;
    double longest = 0.0;
    for (const auto& p : decl.properties) {
      if (p.name == "transition" || p.name == "transition-duration" || p.name == "animation" ||
          p.name == "animation-duration")
        longest = std::max(longest, max_duration_seconds(p.value, p.name == "animation"));
    }
    if (longest <= thresholds::kAnimationSeconds) continue;
    char secs[32];
    std::snprintf(secs, sizeof secs, "%g", longest);
    out.violations.push_back(css_violation(
        ctx, "2.3.3", decl,
        "The " + std::string(decl.pseudo == PseudoClass::Hover ? ":hover" : ":focus") + " rule \"" +
            decl.selector.text() + "\" animates for " + secs + "s and ignores prefers-reduced-motion.",
        fix_for("2.3.3", {{"value", "0.5"}})));
  }
  return out;
}

RuleOutcome check_2_5_5(const AuditContext& ctx) {
  return target_size(ctx, "2.5.5", thresholds::kTargetEnhancedPx);
}

RuleOutcome check_2_5_8(const AuditContext& ctx) {
  return target_size(ctx, "2.5.8", thresholds::kTargetMinimumPx);
}

RuleOutcome check_2_5_7(const AuditContext& ctx) {
  RuleOutcome out;
  const DocumentModel& doc = ctx.doc();
  for (NodeId id : doc.elements()) {
    const Node& n = doc.node(id);
    bool draggable = text::iequals(text::trim(n.attributes.get("draggable")), "true") ||
                     n.attributes.has("ondragstart") || n.attributes.has("ondrop");
    if (!draggable || n.attributes.has("onclick") || n.attributes.has("onkeydown")) continue;
    bool sibling_button = false;
    if (n.parent != kNoNode) {
      for (NodeId sib : doc.node(n.parent).children) {
        const Node& s = doc.node(sib);
        if (sib == id || !s.is_element()) continue;
        std::string type = s.tag == "input" ? input_type(s) : "";
        if (s.tag == "button" || type == "button" || type == "submit" ||
            text::iequals(text::trim(s.attributes.get("role")), "button"))
          sibling_button = true;
      }
    }
    if (sibling_button) continue;
    out.violations.push_back(element_violation(ctx, "2.5.7", id,
                                               "The draggable <" + n.tag + "> has no single-pointer alternative.",
                                               fix_for("2.5.7", {{"tag", n.tag}})));
  }
  return out;
}

RuleOutcome check_3_2_7(const AuditContext& ctx) {
  RuleOutcome out;
  const DocumentModel& doc = ctx.doc();
  for (NodeId id : doc.elements()) {
    const Node& n = doc.node(id);
    if (!is_interactive(n)) continue;
    const ComputedStyleApprox& s = ctx.style(id);
    if (!s.invisible() || !s.hover_reveals) continue;
    out.violations.push_back(element_violation(ctx, "3.2.7", id,
                                               "The <" + n.tag + "> control is hidden until the pointer hovers.",
                                               fix_for("3.2.7", {{"tag", n.tag}})));
  }
  return out;
}

RuleOutcome check_1_4_13(const AuditContext& ctx) {
  RuleOutcome out;
  if (auto reason = no_stylesheet_reason(ctx)) {
    out.skip_reason = reason;
    return out;
  }
  const DocumentModel& doc = ctx.doc();
  const auto& decls = ctx.styles().declarations;
  for (const auto& decl : decls) {
    if (decl.pseudo != PseudoClass::Hover || !declaration_reveals(decl)) continue;
    std::string bare = decl.selector.text_without_pseudo();
    bool focus_twin = std::any_of(decls.begin(), decls.end(), [&](const StyleDeclaration& other) {
      return other.pseudo == PseudoClass::Focus && declaration_reveals(other) &&
             other.selector.text_without_pseudo() == bare;
    });
    if (focus_twin) continue;
    bool hides_content = false;
    for (NodeId id : doc.elements()) {
      if (!decl.selector.matches(doc, id)) continue;
      const ComputedStyleApprox& s = ctx.style(id);
      if (s.invisible() && s.hidden_by == id) {
        hides_content = true;
        break;
      }
    }
    if (!hides_content) continue;
    std::string focus_selector = decl.selector.text();
    text::replace_all(focus_selector, ":hover", ":focus-within");
    out.violations.push_back(css_violation(
        ctx, "1.4.13", decl, "The rule \"" + decl.selector.text() + "\" reveals content on hover only.",
        fix_for("1.4.13", {{"value", focus_selector}})));
  }
  return out;
}

}  // namespace waccess::checks
