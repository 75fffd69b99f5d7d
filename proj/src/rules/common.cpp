#include "rules/common.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "text_util.hpp"

namespace waccess::checks {

std::string fix_for(std::string_view rule_id, Values values) {
  const RuleDescriptor* d = find_rule(rule_id);
  if (!d) return {};
  std::string out;
  std::string_view t = d->fix_template;
  std::size_t i = 0;
  while (i < t.size()) {
    if (t[i] == '{') {
      std::size_t close = t.find('}', i);
      std::string_view key = close == std::string_view::npos ? std::string_view{} : t.substr(i + 1, close - i - 1);
      bool placeholder = !key.empty() && std::all_of(key.begin(), key.end(), [](char c) { return c >= 'a' && c <= 'z'; });
      if (placeholder) {
        for (const auto& [k, v] : values)
          if (k == key) out += v;
        i = close + 1;
        continue;
      }
    }
    out += t[i++];
  }
  return out;
}

Violation element_violation(const AuditContext& ctx, std::string_view rule_id, NodeId element,
                            std::string message, std::string fix) {
  const DocumentModel& doc = ctx.doc();
  Violation v;
  v.rule_id = std::string(rule_id);
  v.message = std::move(message);
  v.fix = std::move(fix);
  v.snippet = std::string(doc.snippet(element));
  v.locator = doc.locator(element);
  v.offset = doc.node(element).span.begin;
  return v;
}

Violation css_violation(const AuditContext& ctx, std::string_view rule_id, const StyleDeclaration& decl,
                        std::string message, std::string fix) {
  Violation v;
  v.rule_id = std::string(rule_id);
  v.message = std::move(message);
  v.fix = std::move(fix);
  v.snippet = decl.rule_text;
  v.locator = ctx.styles().locator(decl);
  v.offset = decl.origin.offset;
  return v;
}

Violation token_violation(const AuditContext& ctx, std::string_view rule_id, const TagToken& token,
                          std::string message, std::string fix) {
  Violation v;
  v.rule_id = std::string(rule_id);
  v.message = std::move(message);
  v.fix = std::move(fix);
  v.snippet = std::string(ctx.doc().snippet(token));
  v.locator = "</" + token.tag + ">@" + std::to_string(token.byte_offset);
  v.offset = token.byte_offset;
  return v;
}

bool is_disabled(const Node& n) {
  return n.attributes.has("disabled") || text::iequals(n.attributes.get("aria-disabled"), "true");
}

std::string input_type(const Node& n) {
  std::string t = text::lower(text::trim(n.attributes.get("type")));
  return t.empty() ? "text" : t;
}

bool is_focusable(const Node& n) {
  if (!n.is_element() || is_disabled(n)) return false;
  if (const auto* tabindex = n.attributes.find("tabindex")) {
    if (auto v = text::parse_int(text::trim(*tabindex))) return *v >= 0;
  }
  if ((n.tag == "a" || n.tag == "area") && n.attributes.has("href")) return true;
  if (n.tag == "input") return input_type(n) != "hidden";
  return n.tag == "button" || n.tag == "select" || n.tag == "textarea" || n.tag == "summary";
}

bool is_interactive(const Node& n) {
  if (is_focusable(n)) return true;
  if (!n.is_element() || is_disabled(n)) return false;
  std::string role = text::lower(text::trim(n.attributes.get("role")));
  return role == "button" || role == "link" || role == "checkbox" || role == "radio" || role == "tab" ||
         role == "menuitem" || role == "switch" || role == "option";
}

bool has_direct_text(const DocumentModel& doc, NodeId id) {
  for (NodeId child : doc.node(id).children) {
    const Node& c = doc.node(child);
    if (c.is_text() && !c.raw_text && !text::normalize_space(c.text).empty()) return true;
  }
  return false;
}

std::string format_ratio(double ratio) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", std::floor(ratio * 100.0) / 100.0);
  return buf;
}

std::string normalize_name(std::string_view s) { return text::lower(text::normalize_space(s)); }

}  // namespace waccess::checks
