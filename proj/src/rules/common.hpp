#pragma once

#include <initializer_list>
#include <string>
#include <string_view>
#include <utility>

#include "rules/catalog.hpp"
#include "waccess/rules.hpp"

namespace waccess::checks {

using Values = std::initializer_list<std::pair<std::string_view, std::string>>;

// Fills "{name}" placeholders in the rule's fix template; missing values become empty.
std::string fix_for(std::string_view rule_id, Values values);

Violation element_violation(const AuditContext& ctx, std::string_view rule_id, NodeId element,
                            std::string message, std::string fix);
Violation css_violation(const AuditContext& ctx, std::string_view rule_id, const StyleDeclaration& decl,
                        std::string message, std::string fix);
// Violation located at a raw tag token (for tags that produced no element).
Violation token_violation(const AuditContext& ctx, std::string_view rule_id, const TagToken& token,
                          std::string message, std::string fix);

bool is_disabled(const Node& n);
// a[href], area[href], button, input (not hidden), select, textarea,
// summary, or tabindex >= 0.
bool is_focusable(const Node& n);
// Focusable controls plus elements with an interactive ARIA role.
bool is_interactive(const Node& n);
std::string input_type(const Node& n);  // lowercase, "text" when absent
bool has_direct_text(const DocumentModel& doc, NodeId id);
std::string format_ratio(double ratio);  // "4.48"
std::string normalize_name(std::string_view s);  // lowercase, collapsed spaces

}  // namespace waccess::checks
