#include <string>

#include "text_util.hpp"
#include "waccess/dom.hpp"

namespace waccess {
namespace {

bool is_ident_char(char c) {
  auto u = static_cast<unsigned char>(c);
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '-' ||
         c == '_' || u >= 0x80;
}

class SelectorParser {
 public:
  SelectorParser(std::string_view text, bool allow_pseudo) : s_(text), allow_pseudo_(allow_pseudo) {}

  void parse(std::vector<CompoundSelector>& compounds, std::vector<Combinator>& combinators) {
    skip_space();
    if (at_end()) fail("empty selector");
    compounds.push_back(parse_compound());
    while (true) {
      bool had_space = skip_space();
      if (at_end()) break;
      char c = s_[i_];
      Combinator comb = Combinator::Descendant;
      if (c == '>') {
        comb = Combinator::Child;
        ++i_;
        skip_space();
      } else if (c == '+' || c == '~' || c == ',') {
        fail(std::string("unsupported combinator '") + c + "'");
      } else if (!had_space) {
        fail("unexpected character");
      }
      if (at_end()) fail("dangling combinator");
      combinators.push_back(comb);
      compounds.push_back(parse_compound());
    }
  }

 private:
  [[noreturn]] void fail(const std::string& why) const {
    throw UnsupportedSelector("unsupported selector '" + std::string(s_) + "': " + why);
  }

  bool at_end() const { return i_ >= s_.size(); }

  bool skip_space() {
    std::size_t start = i_;
    while (!at_end() && text::is_space(s_[i_])) ++i_;
    return i_ > start;
  }

  std::string ident() {
    std::string out;
    while (!at_end()) {
      char c = s_[i_];
      if (c == '\\' && i_ + 1 < s_.size()) {
        out.push_back(s_[i_ + 1]);
        i_ += 2;
        continue;
      }
      if (!is_ident_char(c)) break;
      out.push_back(c);
      ++i_;
    }
    return out;
  }

  CompoundSelector parse_compound() {
    CompoundSelector compound;
    bool any = false;
    if (!at_end() && s_[i_] == '*') {
      compound.tag = "*";
      ++i_;
      any = true;
    } else if (!at_end() && is_ident_char(s_[i_])) {
      compound.tag = text::lower(ident());
      any = true;
    }
    while (!at_end()) {
      char c = s_[i_];
      if (c == '#') {
        ++i_;
        std::string id = ident();
        if (id.empty()) fail("empty id");
        compound.ids.push_back(std::move(id));
      } else if (c == '.') {
        ++i_;
        std::string cls = ident();
        if (cls.empty()) fail("empty class");
        compound.classes.push_back(std::move(cls));
      } else if (c == '[') {
        ++i_;
        compound.attributes.push_back(parse_attribute());
      } else if (c == ':') {
        parse_pseudo(compound);
      } else {
        break;
      }
      any = true;
    }
    if (!any) fail("expected a simple selector");
    return compound;
  }

  AttributeSelector parse_attribute() {
    skip_space();
    AttributeSelector attr;
    attr.name = text::lower(ident());
    if (attr.name.empty()) fail("empty attribute name");
    skip_space();
    if (at_end()) fail("unterminated attribute selector");
    if (s_[i_] == ']') {
      ++i_;
      return attr;
    }
    if (s_[i_] != '=') fail("only [attr] and [attr=value] are supported");
    ++i_;
    skip_space();
    std::string value;
    if (!at_end() && (s_[i_] == '"' || s_[i_] == '\'')) {
      char quote = s_[i_++];
      while (!at_end() && s_[i_] != quote) {
        if (s_[i_] == '\\' && i_ + 1 < s_.size()) ++i_;
        value.push_back(s_[i_++]);
      }
      if (at_end()) fail("unterminated string");
      ++i_;
    } else {
      value = ident();
    }
    skip_space();
    if (!at_end() && (s_[i_] == 'i' || s_[i_] == 's')) {
      ++i_;
      skip_space();
    }
    if (at_end() || s_[i_] != ']') fail("unterminated attribute selector");
    ++i_;
    attr.value = std::move(value);
    return attr;
  }

  void parse_pseudo(CompoundSelector& compound) {
    if (!allow_pseudo_) fail("pseudo-classes are not part of the query subset");
    ++i_;
    if (!at_end() && s_[i_] == ':') fail("pseudo-elements are not supported");
    std::string name = text::lower(ident());
    if (!at_end() && s_[i_] == '(') fail("functional pseudo-classes are not supported");
    if (compound.pseudo != PseudoClass::None && name != "link" && name != "any-link")
      fail("multiple state pseudo-classes");
    if (name == "hover") {
      compound.pseudo = PseudoClass::Hover;
    } else if (name == "focus" || name == "focus-visible") {
      compound.pseudo = PseudoClass::Focus;
    } else if (name == "focus-within") {
      compound.pseudo = PseudoClass::Focus;
      compound.focus_within = true;
    } else if (name == "link" || name == "any-link") {
      compound.attributes.push_back(AttributeSelector{"href", std::nullopt});
    } else {
      fail("pseudo-class ':" + name + "'");
    }
  }

  std::string_view s_;
  std::size_t i_ = 0;
  bool allow_pseudo_;
};

bool compound_matches(const CompoundSelector& c, const Node& n, bool ignore_pseudo) {
  if (!n.is_element()) return false;
  if (!ignore_pseudo && c.pseudo != PseudoClass::None) return false;
  if (!c.tag.empty() && c.tag != "*" && c.tag != n.tag) return false;
  for (const auto& id : c.ids) {
    const std::string* v = n.attributes.find("id");
    if (!v || *v != id) return false;
  }
  if (!c.classes.empty()) {
    std::string_view cls = n.attributes.get("class");
    for (const auto& want : c.classes)
      if (!text::contains_token(cls, want)) return false;
  }
  for (const auto& attr : c.attributes) {
    const std::string* v = n.attributes.find(attr.name);
    if (!v) return false;
    if (attr.value) {
      bool equal = attr.name == "type" ? text::iequals(*v, *attr.value) : *v == *attr.value;
      if (!equal) return false;
    }
  }
  return true;
}

void append_compound_text(std::string& out, const CompoundSelector& c) {
  if (!c.tag.empty()) out += c.tag;
  for (const auto& id : c.ids) out += "#" + id;
  for (const auto& cls : c.classes) out += "." + cls;
  for (const auto& a : c.attributes) {
    out += "[" + a.name;
    if (a.value) out += "=\"" + *a.value + "\"";
    out += "]";
  }
  if (c.tag.empty() && c.ids.empty() && c.classes.empty() && c.attributes.empty()) out += "*";
}

}  // namespace

SelectorSubset SelectorSubset::parse(std::string_view text_in, bool allow_pseudo) {
  SelectorSubset sel;
  sel.text_ = std::string(text::trim(text_in));
  SelectorParser parser(sel.text_, allow_pseudo);
  parser.parse(sel.compounds_, sel.combinators_);
  return sel;
}

bool SelectorSubset::match_from(const DocumentModel& doc, NodeId element, std::size_t index,
                                bool ignore_pseudo) const {
  if (!compound_matches(compounds_[index], doc.node(element), ignore_pseudo)) return false;
  if (index == 0) return true;
  NodeId parent = doc.node(element).parent;
  if (combinators_[index - 1] == Combinator::Child)
    return parent != kNoNode && match_from(doc, parent, index - 1, ignore_pseudo);
  for (NodeId anc = parent; anc != kNoNode; anc = doc.node(anc).parent)
    if (match_from(doc, anc, index - 1, ignore_pseudo)) return true;
  return false;
}

bool SelectorSubset::matches(const DocumentModel& doc, NodeId element, bool ignore_pseudo) const {
  if (compounds_.empty()) return false;
  return match_from(doc, element, compounds_.size() - 1, ignore_pseudo);
}

Specificity SelectorSubset::specificity() const {
  Specificity s;
  for (const auto& c : compounds_) {
    s.ids += static_cast<int>(c.ids.size());
    s.classes += static_cast<int>(c.classes.size() + c.attributes.size());
    if (!c.tag.empty() && c.tag != "*") ++s.tags;
  }
  return s;
}

PseudoClass SelectorSubset::pseudo() const {
  for (const auto& c : compounds_)
    if (c.pseudo != PseudoClass::None) return c.pseudo;
  return PseudoClass::None;
}

bool SelectorSubset::pseudo_on_subject() const {
  return !compounds_.empty() && compounds_.back().pseudo != PseudoClass::None;
}

std::string SelectorSubset::text_without_pseudo() const {
  std::string out;
  for (std::size_t i = 0; i < compounds_.size(); ++i) {
    if (i > 0) out += combinators_[i - 1] == Combinator::Child ? " > " : " ";
    append_compound_text(out, compounds_[i]);
  }
  return out;
}

std::vector<NodeId> query(const DocumentModel& doc, const SelectorSubset& selector) {
  std::vector<NodeId> out;
  for (NodeId id : doc.elements())
    if (selector.matches(doc, id)) out.push_back(id);
  return out;
}

std::vector<NodeId> query(const DocumentModel& doc, std::string_view selector) {
  return query(doc, SelectorSubset::parse(selector));
}

}  // namespace waccess
