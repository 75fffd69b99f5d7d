#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace waccess {

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class UnsupportedSelector : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

using NodeId = std::uint32_t;
inline constexpr NodeId kNoNode = static_cast<NodeId>(-1);

struct SourceSpan {
  std::size_t begin = 0;
  std::size_t end = 0;  // one past the last byte

  [[nodiscard]] std::size_t size() const { return end - begin; }
  [[nodiscard]] bool empty() const { return end <= begin; }
};

// Attribute list in source order. Names are lowercase; the first occurrence
// of a duplicated name wins.
class Attributes {
 public:
  using Entry = std::pair<std::string, std::string>;

  [[nodiscard]] const std::string* find(std::string_view name) const;
  [[nodiscard]] bool has(std::string_view name) const { return find(name) != nullptr; }
  [[nodiscard]] std::string_view get(std::string_view name) const;
  // Returns false when `name` was already present.
  bool add(std::string name, std::string value);

  [[nodiscard]] const std::vector<Entry>& entries() const { return entries_; }
  [[nodiscard]] std::size_t size() const { return entries_.size(); }

 private:
  std::vector<Entry> entries_;
};

enum class NodeKind : std::uint8_t { Element, Text };

struct Node {
  NodeKind kind = NodeKind::Element;
  NodeId id = kNoNode;
  NodeId parent = kNoNode;
  std::string tag;   // elements: lowercase name
  std::string text;  // text nodes: entity-decoded content
  Attributes attributes;
  std::vector<NodeId> children;
  SourceSpan span;  // elements: the opening tag; text: the raw run
  bool synthetic = false;  // inserted by error recovery, not present in source
  bool raw_text = false;   // text inside script/style/textarea/title

  [[nodiscard]] bool is_element() const { return kind == NodeKind::Element; }
  [[nodiscard]] bool is_text() const { return kind == NodeKind::Text; }
};

enum class TagKind : std::uint8_t { Open, Close, SelfClosing };

struct TagToken {
  TagKind kind = TagKind::Open;
  std::string tag;
  std::size_t byte_offset = 0;
  std::size_t length = 0;
  std::string attributes_raw;
};

class DocumentModel {
 public:
  [[nodiscard]] const std::string& url() const { return url_; }
  [[nodiscard]] const std::string& raw_bytes() const { return raw_bytes_; }
  // Decoded UTF-8 text every span and token offset refers to.
  [[nodiscard]] const std::string& source() const { return source_; }
  [[nodiscard]] NodeId root() const { return root_; }
  [[nodiscard]] const Node& node(NodeId id) const { return nodes_.at(id); }
  [[nodiscard]] std::span<const Node> nodes() const { return nodes_; }
  [[nodiscard]] std::span<const TagToken> token_log() const { return tokens_; }
  [[nodiscard]] const std::vector<std::string>& parse_warnings() const { return warnings_; }

  // Verbatim source of the element's opening tag.
  [[nodiscard]] std::string_view snippet(NodeId id) const;
  [[nodiscard]] std::string_view snippet(const TagToken& token) const;
  // Element whose opening tag starts at `offset`, if any.
  [[nodiscard]] NodeId element_at_offset(std::size_t offset) const;
  [[nodiscard]] NodeId element_by_id(std::string_view id) const;
  // CSS-like path with byte offset, e.g. "html > body > p:nth-of-type(2)@120".
  [[nodiscard]] std::string locator(NodeId id) const;
  [[nodiscard]] bool is_descendant_of(NodeId node, NodeId ancestor) const;
  // Whitespace-normalized concatenation of all descendant text.
  [[nodiscard]] std::string text_content(NodeId id) const;
  // Elements in document order, synthetic ones excluded.
  [[nodiscard]] std::vector<NodeId> elements() const;
  [[nodiscard]] std::vector<NodeId> elements_by_tag(std::string_view tag) const;

 private:
  friend class TreeBuilder;
  friend DocumentModel parse_html(std::string_view, std::string_view, std::string_view);

  std::string url_;
  std::string raw_bytes_;
  std::string source_;
  NodeId root_ = kNoNode;
  std::vector<Node> nodes_;
  std::vector<TagToken> tokens_;
  std::vector<std::string> warnings_;
  std::vector<std::pair<std::size_t, NodeId>> offset_index_;  // sorted by offset
  std::vector<std::pair<std::uint32_t, std::uint32_t>> type_position_;  // (index, count) among same-tag siblings
};

// Lenient HTML parse. Throws ParseError on empty input only.
// `charset_hint` is e.g. the charset from an HTTP Content-Type header.
DocumentModel parse_html(std::string_view bytes, std::string_view url = {},
                         std::string_view charset_hint = {});

bool is_void_element(std::string_view tag);

// --- selectors --------------------------------------------------------------

enum class PseudoClass : std::uint8_t { None, Hover, Focus };

struct AttributeSelector {
  std::string name;
  std::optional<std::string> value;  // exact match when set
};

struct CompoundSelector {
  std::string tag;  // empty or "*" matches any element
  std::vector<std::string> ids;
  std::vector<std::string> classes;
  std::vector<AttributeSelector> attributes;
  PseudoClass pseudo = PseudoClass::None;
  bool focus_within = false;
};

enum class Combinator : std::uint8_t { Descendant, Child };

struct Specificity {
  int ids = 0;
  int classes = 0;
  int tags = 0;

  auto operator<=>(const Specificity&) const = default;
};

// Supported subset: tag, *, #id, .class, [attr], [attr=val], descendant and
// child combinators. `:hover`/`:focus` (and focus-visible/-within) are
// accepted only when `allow_pseudo` is set, which the CSS parser uses.
class SelectorSubset {
 public:
  static SelectorSubset parse(std::string_view text, bool allow_pseudo = false);

  [[nodiscard]] bool matches(const DocumentModel& doc, NodeId element,
                             bool ignore_pseudo = true) const;
  [[nodiscard]] Specificity specificity() const;
  // First pseudo-class found anywhere in the selector.
  [[nodiscard]] PseudoClass pseudo() const;
  [[nodiscard]] bool pseudo_on_subject() const;
  [[nodiscard]] const std::string& text() const { return text_; }
  // Text with all pseudo-classes removed; used to pair :hover/:focus twins.
  [[nodiscard]] std::string text_without_pseudo() const;
  [[nodiscard]] const std::vector<CompoundSelector>& compounds() const { return compounds_; }
  [[nodiscard]] const std::vector<Combinator>& combinators() const { return combinators_; }

 private:
  bool match_from(const DocumentModel& doc, NodeId element, std::size_t index,
                  bool ignore_pseudo) const;

  std::string text_;
  std::vector<CompoundSelector> compounds_;
  std::vector<Combinator> combinators_;  // combinators_[i] joins compounds_[i] and [i+1]
};

std::vector<NodeId> query(const DocumentModel& doc, const SelectorSubset& selector);
std::vector<NodeId> query(const DocumentModel& doc, std::string_view selector);

// --- names ------------------------------------------------------------------

// First non-empty of: aria-label, aria-labelledby targets, alt, descendant
// text, title, value (submit/button inputs).
std::string accessible_name(const DocumentModel& doc, NodeId element);

using HiddenPredicate = std::function<bool(NodeId)>;

// Descendant text, skipping aria-hidden="true" subtrees and any subtree for
// which `hidden` returns true (defaults to the `hidden` attribute only).
std::string visible_label_text(const DocumentModel& doc, NodeId element,
                               const HiddenPredicate& hidden = {});

}  // namespace waccess
