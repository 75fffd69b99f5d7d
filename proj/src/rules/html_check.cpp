#include <algorithm>
#include <map>
#include <unordered_map>

#include "rules/common.hpp"
#include "text_util.hpp"
#include "waccess/url.hpp"

namespace waccess::checks {
namespace {

// Rows and cells owned by `table`, ignoring nested tables.
void table_shape(const DocumentModel& doc, NodeId table, int& rows, int& max_cols, bool& has_headers) {
  rows = 0;
  max_cols = 0;
  has_headers = false;
  std::vector<NodeId> stack(doc.node(table).children.rbegin(), doc.node(table).children.rend());
  while (!stack.empty()) {
    NodeId cur = stack.back();
    stack.pop_back();
    const Node& n = doc.node(cur);
    if (!n.is_element() || n.tag == "table") continue;
    if (n.tag == "th" || n.attributes.has("scope")) has_headers = true;
    if (n.tag == "tr") {
      ++rows;
      int cols = 0;
      for (NodeId c : n.children) {
        const Node& cell = doc.node(c);
        if (!cell.is_element() || (cell.tag != "td" && cell.tag != "th")) continue;
        auto span = text::parse_int(cell.attributes.get("colspan"));
        cols += span && *span > 1 ? static_cast<int>(std::min<long>(*span, 1000)) : 1;
      }
      max_cols = std::max(max_cols, cols);
    }
    for (auto it = n.children.rbegin(); it != n.children.rend(); ++it) stack.push_back(*it);
  }
}

int heading_level(const Node& n) {
  if (n.tag.size() == 2 && n.tag[0] == 'h' && n.tag[1] >= '1' && n.tag[1] <= '6') return n.tag[1] - '0';
  return 0;
}

bool is_alpha(std::string_view s) {
  return std::all_of(s.begin(), s.end(), [](char c) { return std::isalpha(static_cast<unsigned char>(c)) != 0; });
}

bool is_alnum(std::string_view s) {
  return std::all_of(s.begin(), s.end(), [](char c) { return std::isalnum(static_cast<unsigned char>(c)) != 0; });
}

// Primary subtag of 2-3 letters; later subtags 1-8 alphanumerics, so
// "en", "en-IN", "zh-Hant-TW" and "es-419" pass.
bool valid_lang(std::string_view lang) {
  auto parts = text::split(lang, '-');
  if (parts.empty() || parts[0].size() < 2 || parts[0].size() > 3 || !is_alpha(parts[0])) return false;
  for (std::size_t i = 1; i < parts.size(); ++i)
    if (parts[i].empty() || parts[i].size() > 8 || !is_alnum(parts[i])) return false;
  return true;
}

bool is_labelable_control(const Node& n) {
  if (n.tag == "select" || n.tag == "textarea") return true;
  if (n.tag != "input") return false;
  std::string type = input_type(n);
  return type != "hidden" && type != "submit" && type != "reset" && type != "button" && type != "image";
}

}  // namespace

RuleOutcome check_1_1_1(const AuditContext& ctx) {
  RuleOutcome out;
  const DocumentModel& doc = ctx.doc();
  for (NodeId id : doc.elements()) {
    const Node& n = doc.node(id);
    bool needs_alt = n.tag == "img" || n.tag == "area" || (n.tag == "input" && input_type(n) == "image");
    if (needs_alt) {
      if (n.attributes.has("alt")) continue;
      out.violations.push_back(element_violation(ctx, "1.1.1", id, "The <" + n.tag + "> has no alt attribute.",
                                                 fix_for("1.1.1", {{"tag", n.tag}})));
    } else if (n.tag == "embed" || n.tag == "object") {
      bool named = !text::trim(n.attributes.get("aria-label")).empty() ||
                   !text::trim(n.attributes.get("aria-labelledby")).empty() ||
                   !text::trim(n.attributes.get("title")).empty();
      if (n.tag == "object" && !doc.text_content(id).empty()) named = true;
      if (named) continue;
      out.violations.push_back(element_violation(ctx, "1.1.1", id,
                                                 "The <" + n.tag + "> has no text alternative.",
                                                 fix_for("1.1.1", {{"tag", n.tag}})));
    }
  }
  return out;
}

RuleOutcome check_1_3_1(const AuditContext& ctx) {
  RuleOutcome out;
  const DocumentModel& doc = ctx.doc();
  for (NodeId id : doc.elements()) {
    const Node& n = doc.node(id);
    if (n.tag == "table") {
      std::string role = text::lower(text::trim(n.attributes.get("role")));
      if (role == "presentation" || role == "none") continue;
      int rows = 0, cols = 0;
      bool headers = false;
      table_shape(doc, id, rows, cols, headers);
      if (rows < 2 || cols < 2 || headers) continue;
      out.violations.push_back(element_violation(
          ctx, "1.3.1", id,
          "The data table (" + std::to_string(rows) + " rows, " + std::to_string(cols) +
              " columns) has no header cells (<th> or scope).",
          fix_for("1.3.1", {{"tag", "table"}, {"value", "use <th scope=\"col\"> for the header row"}})));
    } else if (n.tag == "fieldset") {
      bool legend = std::any_of(n.children.begin(), n.children.end(), [&](NodeId c) {
        return doc.node(c).is_element() && doc.node(c).tag == "legend";
      });
      if (legend) continue;
      out.violations.push_back(element_violation(
          ctx, "1.3.1", id, "The <fieldset> has no <legend> naming the group.",
          fix_for("1.3.1", {{"tag", "fieldset"}, {"value", "add a <legend> as its first child"}})));
    }
  }
  return out;
}

RuleOutcome check_1_4_4(const AuditContext& ctx) {
  RuleOutcome out;
  const DocumentModel& doc = ctx.doc();
  for (NodeId id : doc.elements()) {
    const Node& n = doc.node(id);
    if (n.tag != "b" && n.tag != "i" && n.tag != "font") continue;
    out.violations.push_back(element_violation(ctx, "1.4.4", id,
                                               "The presentational <" + n.tag + "> element is used for styling text.",
                                               fix_for("1.4.4", {{"tag", n.tag}})));
  }
  return out;
}

RuleOutcome check_2_4_4(const AuditContext& ctx) {
  RuleOutcome out;
  const DocumentModel& doc = ctx.doc();
  struct Group {
    std::vector<std::pair<NodeId, std::string>> links;  // (link, resolved href)
  };
  std::map<std::string, Group> groups;
  std::vector<std::string> order;
  for (NodeId id : doc.elements_by_tag("a")) {
    const Node& n = doc.node(id);
    const std::string* href = n.attributes.find("href");
    if (!href) continue;
    std::string name = normalize_name(accessible_name(doc, id));
    if (name.empty()) {
      out.violations.push_back(element_violation(ctx, "2.4.4", id, "The link has no accessible name.",
                                                 fix_for("2.4.4", {{"value", " (link text, alt text or aria-label)"}})));
      continue;
    }
    auto [it, inserted] = groups.try_emplace(name);
    if (inserted) order.push_back(name);
    it->second.links.emplace_back(id, resolve_url(doc.url(), *href));
  }
  for (const auto& name : order) {
    const auto& links = groups[name].links;
    if (links.size() < 2) continue;
    bool distinct = std::any_of(links.begin(), links.end(), [&](const auto& l) { return l.second != links[0].second; });
    if (!distinct) continue;
    for (std::size_t i = 1; i < links.size(); ++i) {
      out.violations.push_back(element_violation(
          ctx, "2.4.4", links[i].first,
          "Links named \"" + name + "\" lead to different destinations (" + std::to_string(links.size()) +
              " links share this name).",
          fix_for("2.4.4", {{"value", " that tells \"" + name + "\" links apart"}})));
    }
  }
  return out;
}

RuleOutcome check_2_4_6(const AuditContext& ctx) {
  RuleOutcome out;
  const DocumentModel& doc = ctx.doc();
  int prev = 0;
  NodeId offender = kNoNode;
  std::string message;
  for (NodeId id : doc.elements()) {
    int level = heading_level(doc.node(id));
    if (level == 0) continue;
    if (prev == 0 && level != 1) {
      offender = id;
      message = "The first heading is <h" + std::to_string(level) + ">, not <h1>.";
      break;
    }
    if (prev != 0 && level > prev + 1) {
      offender = id;
      message = "Heading level skips from <h" + std::to_string(prev) + "> to <h" + std::to_string(level) + ">.";
      break;
    }
    prev = level;
  }
  if (offender == kNoNode && prev != 0) return out;
  std::string fix = fix_for("2.4.6", {{"value", offender == kNoNode ? "add an <h1> naming the page"
                                                                     : "use <h" + std::to_string(prev + 1) + "> here"}});
  if (offender != kNoNode) {
    out.violations.push_back(element_violation(ctx, "2.4.6", offender, std::move(message), std::move(fix)));
    return out;
  }
  // No headings at all: anchor the finding on <body>, else <html>.
  message = "The page has no headings.";
  auto bodies = doc.elements_by_tag("body");
  auto htmls = doc.elements_by_tag("html");
  auto all = doc.elements();
  NodeId anchor = !bodies.empty() ? bodies.front() : !htmls.empty() ? htmls.front() : !all.empty() ? all.front() : kNoNode;
  if (anchor != kNoNode) {
    out.violations.push_back(element_violation(ctx, "2.4.6", anchor, std::move(message), std::move(fix)));
  } else {
    Violation v;
    v.rule_id = "2.4.6";
    v.message = std::move(message);
    v.fix = std::move(fix);
    std::string_view src = doc.source();
    v.snippet = std::string(src.substr(0, std::min(src.find('\n'), src.size())));
    if (text::trim(v.snippet).empty()) v.snippet = std::string(src);
    v.locator = "document@0";
    out.violations.push_back(std::move(v));
  }
  return out;
}

RuleOutcome check_3_1_1(const AuditContext& ctx) {
  RuleOutcome out;
  const DocumentModel& doc = ctx.doc();
  const Node& root = doc.node(doc.root());
  std::string lang(text::trim(root.attributes.get("lang")));
  std::string message;
  if (root.synthetic || root.tag != "html") message = "The document has no <html> element declaring a language.";
  else if (!root.attributes.has("lang")) message = "The <html> element has no lang attribute.";
  else if (lang.empty()) message = "The lang attribute is empty.";
  else if (!valid_lang(lang)) message = "The lang value \"" + lang + "\" is not a valid language code.";
  else return out;
  std::string fix = fix_for("3.1.1", {{"value", lang.empty() ? "" : " instead of \"" + lang + "\""}});
  NodeId anchor = doc.root();
  if (root.synthetic) {
    auto all = doc.elements();
    anchor = all.empty() ? kNoNode : all.front();
  }
  if (anchor != kNoNode) {
    out.violations.push_back(element_violation(ctx, "3.1.1", anchor, std::move(message), std::move(fix)));
  } else {
    Violation v;
    v.message = std::move(message);
    v.fix = std::move(fix);
    std::string_view src = doc.source();
    v.snippet = std::string(src.substr(0, std::min(src.find('\n'), src.size())));
    if (text::trim(v.snippet).empty()) v.snippet = std::string(src);
    v.locator = "document@0";
    out.violations.push_back(std::move(v));
  }
  return out;
}

RuleOutcome check_3_3_2(const AuditContext& ctx) {
  RuleOutcome out;
  const DocumentModel& doc = ctx.doc();
  std::unordered_map<std::string, int> label_for;
  for (NodeId id : doc.elements_by_tag("label"))
    if (const auto* f = doc.node(id).attributes.find("for")) ++label_for[*f];
  for (NodeId id : doc.elements()) {
    const Node& n = doc.node(id);
    if (!is_labelable_control(n)) continue;
    std::string elem_id(n.attributes.get("id"));
    if (!elem_id.empty() && label_for.contains(elem_id)) continue;
    bool wrapped = false;
    for (NodeId p = n.parent; p != kNoNode && !wrapped; p = doc.node(p).parent) wrapped = doc.node(p).tag == "label";
    if (wrapped) continue;
    if (!text::trim(n.attributes.get("aria-label")).empty() || !text::trim(n.attributes.get("aria-labelledby")).empty() ||
        !text::trim(n.attributes.get("title")).empty())
      continue;
    std::string name(n.attributes.get("name"));
    out.violations.push_back(element_violation(
        ctx, "3.3.2", id, "The form control <" + n.tag + (name.empty() ? "" : " name=\"" + name + "\"") + "> has no label.",
        fix_for("3.3.2", {{"tag", n.tag}, {"value", elem_id.empty() ? (name.empty() ? "field" : name) : elem_id}})));
  }
  return out;
}

RuleOutcome check_4_1_1(const AuditContext& ctx) {
  RuleOutcome out;
  const DocumentModel& doc = ctx.doc();
  auto tokens = doc.token_log();
  std::vector<const TagToken*> stack;
  auto report_unclosed = [&](const TagToken& t) {
    NodeId el = doc.element_at_offset(t.byte_offset);
    std::string message = "The <" + t.tag + "> element is never closed.";
    std::string fix = fix_for("4.1.1", {{"value", "add </" + t.tag + "> where the element ends"}});
    if (el != kNoNode) out.violations.push_back(element_violation(ctx, "4.1.1", el, std::move(message), std::move(fix)));
    else out.violations.push_back(token_violation(ctx, "4.1.1", t, std::move(message), std::move(fix)));
  };
  for (const TagToken& t : tokens) {
    if (t.kind == TagKind::SelfClosing || is_void_element(t.tag)) continue;
    if (t.kind == TagKind::Open) {
      stack.push_back(&t);
      continue;
    }
    auto match = std::find_if(stack.rbegin(), stack.rend(), [&](const TagToken* open) { return open->tag == t.tag; });
    if (match == stack.rend()) {
      out.violations.push_back(token_violation(ctx, "4.1.1", t,
                                               "The closing </" + t.tag + "> tag has no matching opening tag.",
                                               fix_for("4.1.1", {{"value", "remove the stray </" + t.tag + ">"}})));
      continue;
    }
    std::size_t keep = static_cast<std::size_t>(stack.rend() - match) - 1;
    for (std::size_t i = keep + 1; i < stack.size(); ++i) report_unclosed(*stack[i]);
    stack.resize(keep);
  }
  for (const TagToken* t : stack) report_unclosed(*t);

  std::unordered_map<std::string, int> seen;
  for (NodeId id : doc.elements()) {
    const std::string* value = doc.node(id).attributes.find("id");
    if (!value || value->empty()) continue;
    if (++seen[*value] < 2) continue;
    out.violations.push_back(element_violation(ctx, "4.1.1", id, "The id \"" + *value + "\" is used more than once.",
                                               fix_for("4.1.1", {{"value", "give this element a unique id"}})));
  }
  return out;
}

RuleOutcome check_2_4_13(const AuditContext& ctx) {
  RuleOutcome out;
  const DocumentModel& doc = ctx.doc();
  int index = 0;
  for (NodeId id : doc.elements()) {
    const Node& n = doc.node(id);
    bool marker = text::contains_token(text::lower(n.attributes.get("role")), "doc-pagebreak") ||
                  text::contains_token(text::lower(n.attributes.get("epub:type")), "pagebreak");
    bool css_break = ctx.style(id).page_break;
    if (!marker && !css_break) continue;
    ++index;
    if (!text::trim(n.attributes.get("id")).empty()) continue;
    bool anchored = std::any_of(n.children.begin(), n.children.end(), [&](NodeId c) {
      const Node& child = doc.node(c);
      return child.is_element() && child.tag == "a" &&
             (!text::trim(child.attributes.get("id")).empty() || !text::trim(child.attributes.get("name")).empty());
    });
    if (anchored) continue;
    out.violations.push_back(element_violation(
        ctx, "2.4.13", id,
        marker ? "The page break marker has no id to navigate to." : "The CSS page break has no id or anchor to navigate to.",
        fix_for("2.4.13", {{"tag", n.tag}, {"value", std::to_string(index)}})));
  }
  return out;
}

}  // namespace waccess::checks
