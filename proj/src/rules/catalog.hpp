#pragma once

#include <string_view>
#include <vector>

#include "waccess/rules.hpp"

namespace waccess::checks {

using CheckFn = RuleOutcome (*)(const AuditContext&);

// color_contrast
RuleOutcome check_1_4_3(const AuditContext& ctx);
RuleOutcome check_1_4_6(const AuditContext& ctx);
RuleOutcome check_1_4_11(const AuditContext& ctx);
RuleOutcome check_2_4_11(const AuditContext& ctx);
RuleOutcome check_2_4_12(const AuditContext& ctx);
RuleOutcome check_1_4_1(const AuditContext& ctx);
// html_check
RuleOutcome check_1_1_1(const AuditContext& ctx);
RuleOutcome check_1_3_1(const AuditContext& ctx);
RuleOutcome check_1_4_4(const AuditContext& ctx);
RuleOutcome check_2_4_4(const AuditContext& ctx);
RuleOutcome check_2_4_6(const AuditContext& ctx);
RuleOutcome check_3_1_1(const AuditContext& ctx);
RuleOutcome check_3_3_2(const AuditContext& ctx);
RuleOutcome check_4_1_1(const AuditContext& ctx);
RuleOutcome check_2_4_13(const AuditContext& ctx);
// aria
RuleOutcome check_1_3_5(const AuditContext& ctx);
RuleOutcome check_1_3_6(const AuditContext& ctx);
RuleOutcome check_2_5_3(const AuditContext& ctx);
RuleOutcome check_3_3_7(const AuditContext& ctx);
RuleOutcome check_4_1_3(const AuditContext& ctx);
// interaction
RuleOutcome check_2_1_1(const AuditContext& ctx);
RuleOutcome check_2_1_4(const AuditContext& ctx);
RuleOutcome check_2_2_2(const AuditContext& ctx);
RuleOutcome check_2_3_3(const AuditContext& ctx);
RuleOutcome check_2_5_5(const AuditContext& ctx);
RuleOutcome check_2_5_8(const AuditContext& ctx);
RuleOutcome check_2_5_7(const AuditContext& ctx);
RuleOutcome check_3_2_7(const AuditContext& ctx);
RuleOutcome check_1_4_13(const AuditContext& ctx);

CheckFn check_for(std::string_view rule_id);

}  // namespace waccess::checks
