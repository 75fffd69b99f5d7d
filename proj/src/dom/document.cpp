#include <algorithm>
#include <string>

#include "text_util.hpp"
#include "waccess/dom.hpp"

namespace waccess {

const std::string* Attributes::find(std::string_view name) const {
  for (const auto& [key, value] : entries_)
    if (key == name) return &value;
  return nullptr;
}

std::string_view Attributes::get(std::string_view name) const {
  const std::string* v = find(name);
  return v ? std::string_view(*v) : std::string_view{};
}

bool Attributes::add(std::string name, std::string value) {
  if (has(name)) return false;
  entries_.emplace_back(std::move(name), std::move(value));
  return true;
}

std::string_view DocumentModel::snippet(NodeId id) const {
  const Node& n = node(id);
  if (n.span.empty() || n.span.end > source_.size()) return {};
  return std::string_view(source_).substr(n.span.begin, n.span.size());
}

std::string_view DocumentModel::snippet(const TagToken& token) const {
  if (token.byte_offset + token.length > source_.size()) return {};
  return std::string_view(source_).substr(token.byte_offset, token.length);
}

NodeId DocumentModel::element_at_offset(std::size_t offset) const {
  auto it = std::lower_bound(offset_index_.begin(), offset_index_.end(),
                             std::pair<std::size_t, NodeId>{offset, 0});
  if (it != offset_index_.end() && it->first == offset) return it->second;
  return kNoNode;
}

NodeId DocumentModel::element_by_id(std::string_view id) const {
  if (id.empty()) return kNoNode;
  for (const auto& n : nodes_)
    if (n.is_element() && !n.synthetic && n.attributes.get("id") == id && n.attributes.has("id"))
      return n.id;
  return kNoNode;
}

std::string DocumentModel::locator(NodeId id) const {
  std::vector<std::string> segments;
  for (NodeId cur = id; cur != kNoNode; cur = node(cur).parent) {
    const Node& n = node(cur);
    std::string seg = n.tag;
    std::string_view elem_id = n.attributes.get("id");
    if (!elem_id.empty() && elem_id.find_first_of(" \t\n") == std::string_view::npos) {
      seg += "#";
      seg += elem_id;
    } else if (n.parent != kNoNode) {
      auto [index, total] = type_position_.at(cur);
      if (total > 1) seg += ":nth-of-type(" + std::to_string(index) + ")";
    }
    segments.push_back(std::move(seg));
  }
  std::string out;
  for (auto it = segments.rbegin(); it != segments.rend(); ++it) {
    if (!out.empty()) out += " > ";
    out += *it;
  }
  out += "@" + std::to_string(node(id).span.begin);
  return out;
}

bool DocumentModel::is_descendant_of(NodeId n, NodeId ancestor) const {
  for (NodeId cur = node(n).parent; cur != kNoNode; cur = node(cur).parent)
    if (cur == ancestor) return true;
  return false;
}

namespace {

void collect_text(const DocumentModel& doc, NodeId id, std::string& out) {
  const Node& n = doc.node(id);
  if (n.is_text()) {
    if (!n.raw_text) out += n.text;
    return;
  }
  for (NodeId child : n.children) collect_text(doc, child, out);
}

}  // namespace

std::string DocumentModel::text_content(NodeId id) const {
  std::string raw;
  collect_text(*this, id, raw);
  return text::normalize_space(raw);
}

std::vector<NodeId> DocumentModel::elements() const {
  std::vector<NodeId> out;
  // Node ids are assigned in document order during the build.
  for (const auto& n : nodes_)
    if (n.is_element() && !n.synthetic) out.push_back(n.id);
  return out;
}

std::vector<NodeId> DocumentModel::elements_by_tag(std::string_view tag) const {
  std::vector<NodeId> out;
  for (const auto& n : nodes_)
    if (n.is_element() && !n.synthetic && n.tag == tag) out.push_back(n.id);
  return out;
}

// --- accessible names ---------------------------------------------------------

namespace {

bool is_image_like(const Node& n) {
  return n.tag == "img" || n.tag == "area" ||
         (n.tag == "input" && text::iequals(n.attributes.get("type"), "image"));
}

void collect_name_from_content(const DocumentModel& doc, NodeId id, std::string& out) {
  for (NodeId child : doc.node(id).children) {
    const Node& c = doc.node(child);
    if (c.is_text()) {
      if (!c.raw_text) out += c.text;
      continue;
    }
    if (c.attributes.get("aria-hidden") == "true" || c.attributes.has("hidden")) continue;
    if (std::string label(text::trim(c.attributes.get("aria-label"))); !label.empty()) {
      out += " " + label + " ";
      continue;
    }
    if (is_image_like(c)) {
      if (const auto* alt = c.attributes.find("alt")) out += " " + *alt + " ";
      continue;
    }
    collect_name_from_content(doc, child, out);
  }
}

}  // namespace

std::string accessible_name(const DocumentModel& doc, NodeId element) {
  const Node& n = doc.node(element);
  if (!n.is_element()) return text::normalize_space(n.text);
  const Attributes& a = n.attributes;

  if (auto label = text::normalize_space(a.get("aria-label")); !label.empty()) return label;

  if (const auto* refs = a.find("aria-labelledby")) {
    std::string joined;
    for (auto ref : text::split_whitespace(*refs)) {
      NodeId target = doc.element_by_id(ref);
      if (target == kNoNode) continue;
      joined += " " + doc.text_content(target);
    }
    if (auto name = text::normalize_space(joined); !name.empty()) return name;
  }

  if (auto alt = text::normalize_space(a.get("alt")); !alt.empty()) return alt;

  std::string content;
  collect_name_from_content(doc, element, content);
  if (auto name = text::normalize_space(content); !name.empty()) return name;

  if (auto title = text::normalize_space(a.get("title")); !title.empty()) return title;

  if (n.tag == "input") {
    auto type = text::lower(a.get("type"));
    if (type == "submit" || type == "button" || type == "reset")
      if (auto value = text::normalize_space(a.get("value")); !value.empty()) return value;
  }
  return {};
}

namespace {

void collect_visible_text(const DocumentModel& doc, NodeId id, const HiddenPredicate& hidden,
                          std::string& out) {
  for (NodeId child : doc.node(id).children) {
    const Node& c = doc.node(child);
    if (c.is_text()) {
      if (!c.raw_text) out += c.text;
      continue;
    }
    if (c.attributes.get("aria-hidden") == "true") continue;
    if (hidden ? hidden(child) : c.attributes.has("hidden")) continue;
    collect_visible_text(doc, child, hidden, out);
  }
}

}  // namespace

std::string visible_label_text(const DocumentModel& doc, NodeId element, const HiddenPredicate& hidden) {
  std::string raw;
  collect_visible_text(doc, element, hidden, raw);
  return text::normalize_space(raw);
}

}  // namespace waccess
