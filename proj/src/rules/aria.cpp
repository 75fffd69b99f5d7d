#include <algorithm>
#include <array>
#include <map>

#include "rules/common.hpp"
#include "text_util.hpp"

namespace waccess::checks {
namespace {

constexpr std::array<std::string_view, 13> kPurposeKeywords = {
    "name", "fname", "lname", "email", "phone", "tel", "address", "city", "zip", "postal", "country", "cc-number", "bday"};

std::string suggested_autocomplete(std::string_view key) {
  if (key == "fname") return "given-name";
  if (key == "lname") return "family-name";
  if (key == "phone" || key == "tel") return "tel";
  if (key == "address") return "street-address";
  if (key == "city") return "address-level2";
  if (key == "zip" || key == "postal") return "postal-code";
  if (key == "password") return "current-password";
  if (key == "url") return "url";
  return std::string(key);
}

// Explicit programmatic name: aria-labelledby text, else aria-label.
std::string explicit_name(const DocumentModel& doc, const Node& n) {
  if (const auto* ids = n.attributes.find("aria-labelledby")) {
    std::string joined;
    for (auto ref : text::split_whitespace(*ids)) {
      NodeId target = doc.element_by_id(ref);
      if (target == kNoNode) continue;
      if (!joined.empty()) joined += ' ';
      joined += doc.text_content(target);
    }
    if (!text::normalize_space(joined).empty()) return text::normalize_space(joined);
  }
  return text::normalize_space(n.attributes.get("aria-label"));
}

// Landmark kind of an element, or empty.
std::string landmark_kind(const DocumentModel& doc, const Node& n) {
  std::string role = text::lower(text::trim(n.attributes.get("role")));
  if (!role.empty()) {
    if (role == "navigation") return "nav";
    if (role == "main") return "main";
    if (role == "complementary") return "aside";
    if (role == "banner") return "header";
    if (role == "contentinfo") return "footer";
    return {};
  }
  if (n.tag == "nav" || n.tag == "main" || n.tag == "aside") return n.tag;
  if (n.tag == "header" || n.tag == "footer") {
    for (NodeId p = n.parent; p != kNoNode; p = doc.node(p).parent) {
      const std::string& t = doc.node(p).tag;
      if (t == "article" || t == "aside" || t == "main" || t == "nav" || t == "section") return {};
    }
    return n.tag;
  }
  return {};
}

// Case-insensitive /(forgot|forgotten|reset).{0,20}password/.
bool mentions_password_recovery(std::string_view name) {
  std::string s = text::lower(name);
  for (std::string_view word : {"forgot", "reset"}) {
    for (std::size_t pos = s.find(word); pos != std::string::npos; pos = s.find(word, pos + 1)) {
      std::size_t from = pos + word.size();
      std::size_t hit = s.find("password", from);
      if (hit != std::string::npos && hit - from <= 20) return true;
    }
  }
  return false;
}

bool mentions_status(std::string_view value) {
  std::string s = text::lower(value);
  for (std::string_view word : {"alert", "status", "toast", "notification", "message"})
    if (s.find(word) != std::string::npos) return true;
  return false;
}

bool has_role(const Node& n, std::initializer_list<std::string_view> roles) {
  std::string role = text::lower(n.attributes.get("role"));
  return std::any_of(roles.begin(), roles.end(), [&](std::string_view r) { return text::contains_token(role, r); });
}

}  // namespace

RuleOutcome check_1_3_5(const AuditContext& ctx) {
  RuleOutcome out;
  const DocumentModel& doc = ctx.doc();
  for (NodeId id : doc.elements_by_tag("input")) {
    const Node& n = doc.node(id);
    if (n.attributes.has("autocomplete")) continue;
    std::string type = input_type(n);
    std::string purpose;
    if (type == "email" || type == "tel" || type == "url" || type == "password") {
      purpose = type;
    } else if (type == "text" || type == "search" || type == "number" || type == "date") {
      for (std::string_view attr : {"name", "id"}) {
        std::string value = text::lower(text::trim(n.attributes.get(attr)));
        if (std::find(kPurposeKeywords.begin(), kPurposeKeywords.end(), value) != kPurposeKeywords.end()) {
          purpose = value;
          break;
        }
      }
    }
    if (purpose.empty()) continue;
    out.violations.push_back(element_violation(
        ctx, "1.3.5", id, "The " + purpose + " field does not declare its purpose with autocomplete.",
        fix_for("1.3.5", {{"value", suggested_autocomplete(purpose)}})));
  }
  return out;
}

RuleOutcome check_1_3_6(const AuditContext& ctx) {
  RuleOutcome out;
  const DocumentModel& doc = ctx.doc();
  std::map<std::string, std::vector<NodeId>> unlabeled;
  std::map<std::string, int> totals;
  for (NodeId id : doc.elements()) {
    const Node& n = doc.node(id);
    if (n.tag == "iframe") {
      if (!text::trim(n.attributes.get("title")).empty()) continue;
      out.violations.push_back(element_violation(ctx, "1.3.6", id, "The <iframe> has no title describing its content.",
                                                 fix_for("1.3.6", {{"tag", "iframe"}, {"value", "add title=\"...\""}})));
      continue;
    }
    std::string kind = landmark_kind(doc, n);
    if (kind.empty()) continue;
    ++totals[kind];
    if (explicit_name(doc, n).empty()) unlabeled[kind].push_back(id);
  }
  for (const auto& [kind, ids] : unlabeled) {
    if (totals[kind] < 2 || ids.size() < 2) continue;
    for (std::size_t i = 1; i < ids.size(); ++i) {
      const Node& n = doc.node(ids[i]);
      out.violations.push_back(element_violation(
          ctx, "1.3.6", ids[i],
          "The page has " + std::to_string(totals[kind]) + " " + kind + " landmarks and this one has no label.",
          fix_for("1.3.6", {{"tag", n.tag}, {"value", "add aria-label=\"...\" to tell the " + kind + " landmarks apart"}})));
    }
  }
  return out;
}

RuleOutcome check_2_5_3(const AuditContext& ctx) {
  RuleOutcome out;
  const DocumentModel& doc = ctx.doc();
  // Label text excludes unrendered subtrees and the embedded control's own content.
  HiddenPredicate hidden = [&ctx, &doc](NodeId id) {
    const std::string& tag = doc.node(id).tag;
    return !ctx.style(id).rendered || tag == "select" || tag == "textarea" || tag == "option";
  };
  std::map<std::string, std::vector<NodeId>> labels_for;
  for (NodeId id : doc.elements_by_tag("label"))
    if (const auto* f = doc.node(id).attributes.find("for")) labels_for[*f].push_back(id);
  for (NodeId id : doc.elements()) {
    const Node& n = doc.node(id);
    bool candidate = (n.tag == "a" && n.attributes.has("href")) || n.tag == "button" || n.tag == "input" ||
                     n.tag == "select" || n.tag == "textarea" ||
                     has_role(n, {"button", "link", "menuitem", "tab", "checkbox", "radio", "switch"});
    if (!candidate) continue;
    std::string name = explicit_name(doc, n);
    if (name.empty()) continue;
    std::string visible;
    if (n.tag == "input") {
      std::string type = input_type(n);
      if (type == "hidden") continue;
      if (type == "submit" || type == "button" || type == "reset") {
        visible = text::normalize_space(n.attributes.get("value"));
      }
    }
    if (visible.empty() && (n.tag == "input" || n.tag == "select" || n.tag == "textarea")) {
      if (auto it = labels_for.find(std::string(n.attributes.get("id"))); it != labels_for.end() && !n.attributes.get("id").empty())
        visible = visible_label_text(doc, it->second.front(), hidden);
      for (NodeId p = n.parent; visible.empty() && p != kNoNode; p = doc.node(p).parent)
        if (doc.node(p).tag == "label") visible = visible_label_text(doc, p, hidden);
    } else if (visible.empty()) {
      visible = visible_label_text(doc, id, hidden);
    }
    std::string v = normalize_name(visible);
    if (v.empty()) continue;
    if (normalize_name(name).find(v) != std::string::npos) continue;
    out.violations.push_back(element_violation(
        ctx, "2.5.3", id, "The accessible name \"" + name + "\" does not contain the visible label \"" + visible + "\".",
        fix_for("2.5.3", {{"value", visible}})));
  }
  return out;
}

RuleOutcome check_3_3_7(const AuditContext& ctx) {
  RuleOutcome out;
  const DocumentModel& doc = ctx.doc();
  for (NodeId id : doc.elements()) {
    const Node& n = doc.node(id);
    bool actionable = n.tag == "a" || n.tag == "button" ||
                      (n.tag == "input" && (input_type(n) == "submit" || input_type(n) == "button"));
    if (!actionable) continue;
    if (mentions_password_recovery(accessible_name(doc, id))) return out;
  }
  for (NodeId form : doc.elements_by_tag("form")) {
    bool has_password = false;
    bool manager_friendly = false;
    for (NodeId input : doc.elements_by_tag("input")) {
      const Node& n = doc.node(input);
      if (input_type(n) != "password" || !doc.is_descendant_of(input, form)) continue;
      has_password = true;
      if (text::contains_token(text::lower(n.attributes.get("autocomplete")), "current-password")) manager_friendly = true;
    }
    if (!has_password || manager_friendly) continue;
    out.violations.push_back(element_violation(
        ctx, "3.3.7", form,
        "The login form relies on a remembered password with no recovery link and no password-manager support.",
        fix_for("3.3.7", {})));
  }
  return out;
}

RuleOutcome check_4_1_3(const AuditContext& ctx) {
  RuleOutcome out;
  const DocumentModel& doc = ctx.doc();
  auto is_live = [&](const Node& n) {
    std::string live = text::lower(text::trim(n.attributes.get("aria-live")));
    return has_role(n, {"status", "alert", "log"}) || (n.attributes.has("aria-live") && live != "off");
  };
  static constexpr std::array<std::string_view, 16> kExcluded = {
      "html", "head", "body", "script", "style", "template", "meta", "link", "title", "noscript",
      "input", "textarea", "select", "button", "label", "form"};
  for (NodeId id : doc.elements()) {
    const Node& n = doc.node(id);
    if (std::find(kExcluded.begin(), kExcluded.end(), n.tag) != kExcluded.end()) continue;
    std::string_view cls = n.attributes.get("class");
    std::string_view elem_id = n.attributes.get("id");
    std::string matched_on;
    if (mentions_status(cls)) matched_on = "class \"" + std::string(cls) + "\"";
    else if (mentions_status(elem_id)) matched_on = "id \"" + std::string(elem_id) + "\"";
    if (matched_on.empty() || is_live(n)) continue;
    bool inside_live = false;
    for (NodeId p = n.parent; p != kNoNode && !inside_live; p = doc.node(p).parent) inside_live = is_live(doc.node(p));
    if (inside_live) continue;
    out.violations.push_back(element_violation(
        ctx, "4.1.3", id, "The element with " + matched_on + " looks like a status message but is not a live region.",
        fix_for("4.1.3", {{"tag", n.tag}})));
  }
  return out;
}

}  // namespace waccess::checks
