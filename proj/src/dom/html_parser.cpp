#include <algorithm>
#include <array>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>

#include "dom/encoding.hpp"
#include "text_util.hpp"
#include "waccess/dom.hpp"

namespace waccess {
namespace {

constexpr std::array<std::string_view, 13> kVoidElements = {
    "area", "base", "br", "col", "embed", "hr", "img",
    "input", "link", "meta", "source", "track", "wbr"};

// Content is raw text up to the matching end tag.
bool is_raw_text_element(std::string_view tag) {
  return tag == "script" || tag == "style" || tag == "textarea" || tag == "title" ||
         tag == "xmp" || tag == "noembed" || tag == "iframe" || tag == "noframes";
}

// Opening one of these implicitly closes an open <p>.
bool closes_paragraph(std::string_view tag) {
  static const std::unordered_set<std::string_view> kTags = {
      "address", "article", "aside",  "blockquote", "center", "details", "dialog",
      "dir",     "div",     "dl",     "fieldset",   "figcaption", "figure", "footer",
      "form",    "h1",      "h2",     "h3",         "h4",     "h5",     "h6",
      "header",  "hgroup",  "hr",     "main",       "menu",   "nav",    "ol",
      "p",       "pre",     "section", "summary",   "table",  "ul",     "listing"};
  return kTags.contains(tag);
}

bool is_heading(std::string_view tag) {
  return tag.size() == 2 && tag[0] == 'h' && tag[1] >= '1' && tag[1] <= '6';
}

bool is_name_char(char c) {
  return !text::is_space(c) && c != '/' && c != '>' && c != '\0';
}

bool is_ascii_alpha(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); }

}  // namespace

bool is_void_element(std::string_view tag) {
  return std::find(kVoidElements.begin(), kVoidElements.end(), tag) != kVoidElements.end();
}

class TreeBuilder {
 public:
  explicit TreeBuilder(DocumentModel& doc) : doc_(doc), src_(doc.source_) {}

  void run() {
    std::size_t i = 0;
    std::size_t text_start = 0;
    const std::size_t n = src_.size();
    while (i < n) {
      if (src_[i] != '<') {
        ++i;
        continue;
      }
      std::size_t consumed = try_markup(i, text_start);
      if (consumed == 0) {
        ++i;
        continue;
      }
      i += consumed;
      text_start = i;
      if (!raw_text_tag_.empty()) i = consume_raw_text(i, text_start);
    }
    flush_text(text_start, n);
    finish();
  }

 private:
  // Handles markup starting at `pos` (which holds '<'). Returns bytes
  // consumed, or 0 when the '<' is literal text.
  std::size_t try_markup(std::size_t pos, std::size_t text_start) {
    std::string_view rest(src_.data() + pos, src_.size() - pos);
    if (rest.size() < 2) return 0;
    char next = rest[1];
    if (rest.starts_with("<!--")) {
      flush_text(text_start, pos);
      std::size_t end = rest.find("-->", 4);
      if (end == std::string_view::npos) {
        warn("unterminated comment at offset " + std::to_string(pos));
        return rest.size();
      }
      return end + 3;
    }
    if (next == '!' || next == '?') {
      // doctype, CDATA, processing instruction or bogus comment
      flush_text(text_start, pos);
      std::size_t end = rest.find('>');
      return end == std::string_view::npos ? rest.size() : end + 1;
    }
    if (next == '/') {
      if (rest.size() < 3) return 0;
      if (!is_ascii_alpha(rest[2])) {
        flush_text(text_start, pos);
        std::size_t end = rest.find('>');
        return end == std::string_view::npos ? rest.size() : end + 1;
      }
      std::size_t end = rest.find('>');
      if (end == std::string_view::npos) {
        warn("unterminated end tag at offset " + std::to_string(pos));
        flush_text(text_start, pos);
        return rest.size();
      }
      flush_text(text_start, pos);
      std::size_t j = 2;
      while (j < end && is_name_char(rest[j])) ++j;
      std::string name = text::lower(rest.substr(2, j - 2));
      doc_.tokens_.push_back(TagToken{TagKind::Close, name, pos, end + 1, {}});
      handle_end_tag(name, pos);
      return end + 1;
    }
    if (!is_ascii_alpha(next)) return 0;
    return parse_start_tag(pos, text_start);
  }

  std::size_t parse_start_tag(std::size_t pos, std::size_t text_start) {
    const std::size_t n = src_.size();
    std::size_t j = pos + 1;
    while (j < n && is_name_char(src_[j])) ++j;
    std::string name = text::lower(std::string_view(src_).substr(pos + 1, j - pos - 1));
    std::size_t attrs_begin = j;
    Attributes attrs;
    bool self_closing = false;
    bool closed = false;
    std::vector<std::string> dup_names;
    while (j < n) {
      char c = src_[j];
      if (text::is_space(c)) {
        ++j;
        continue;
      }
      if (c == '>') {
        closed = true;
        break;
      }
      if (c == '/') {
        if (j + 1 < n && src_[j + 1] == '>') {
          self_closing = true;
          ++j;
          closed = true;
          break;
        }
        ++j;
        continue;
      }
      // attribute name (a leading '=' is part of the name, per HTML)
      std::size_t name_start = j;
      ++j;
      while (j < n && !text::is_space(src_[j]) && src_[j] != '/' && src_[j] != '>' &&
             src_[j] != '=')
        ++j;
      std::string attr_name = text::lower(std::string_view(src_).substr(name_start, j - name_start));
      std::size_t k = j;
      while (k < n && text::is_space(src_[k])) ++k;
      std::string value;
      if (k < n && src_[k] == '=') {
        ++k;
        while (k < n && text::is_space(src_[k])) ++k;
        if (k < n && (src_[k] == '"' || src_[k] == '\'')) {
          char quote = src_[k];
          std::size_t close = src_.find(quote, k + 1);
          if (close == std::string::npos) {
            j = n;
            break;
          }
          value = detail::decode_entities(std::string_view(src_).substr(k + 1, close - k - 1), true);
          j = close + 1;
        } else {
          std::size_t vstart = k;
          while (k < n && !text::is_space(src_[k]) && src_[k] != '>') ++k;
          value = detail::decode_entities(std::string_view(src_).substr(vstart, k - vstart), true);
          j = k;
        }
      }
      if (!attrs.add(std::move(attr_name), std::move(value)))
        dup_names.push_back(std::string(std::string_view(src_).substr(name_start, j - name_start)));
    }
    if (!closed) {
      // EOF inside a tag: the tag never completed, so it is not a token.
      warn("unterminated start tag <" + name + "> at offset " + std::to_string(pos));
      flush_text(text_start, pos);
      return n - pos;
    }
    flush_text(text_start, pos);
    std::size_t end = j + 1;
    for (const auto& d : dup_names)
      warn("duplicate attribute '" + d + "' on <" + name + "> at offset " + std::to_string(pos));
    std::size_t attrs_end = self_closing ? j - 1 : j;
    doc_.tokens_.push_back(TagToken{self_closing ? TagKind::SelfClosing : TagKind::Open, name, pos,
                                    end - pos,
                                    std::string(text::trim(std::string_view(src_).substr(
                                        attrs_begin, attrs_end > attrs_begin ? attrs_end - attrs_begin : 0)))});
    handle_start_tag(name, std::move(attrs), SourceSpan{pos, end}, self_closing);
    return end - pos;
  }

  std::size_t consume_raw_text(std::size_t from, std::size_t& text_start) {
    std::string closing = "</" + raw_text_tag_;
    std::size_t i = from;
    const std::size_t n = src_.size();
    while (true) {
      std::size_t pos = src_.find("</", i);
      if (pos == std::string::npos) {
        warn("unterminated <" + raw_text_tag_ + "> element");
        i = n;
        break;
      }
      std::string_view cand(src_.data() + pos, std::min(closing.size(), n - pos));
      std::size_t after = pos + closing.size();
      if (text::iequals(cand, closing) &&
          (after >= n || text::is_space(src_[after]) || src_[after] == '>' || src_[after] == '/')) {
        i = pos;
        break;
      }
      i = pos + 2;
    }
    add_text(from, i, raw_text_tag_ != "textarea" && raw_text_tag_ != "title");
    text_start = i;
    raw_text_tag_.clear();
    return i;
  }

  void flush_text(std::size_t begin, std::size_t end) {
    if (end > begin) add_text(begin, end, false);
  }

  void add_text(std::size_t begin, std::size_t end, bool raw) {
    if (end <= begin) return;
    if (doc_.root_ == kNoNode) {
      // Whitespace or a BOM ahead of <html> does not force a synthetic root.
      std::string_view slice(src_.data() + begin, end - begin);
      while (slice.starts_with("\xEF\xBB\xBF")) slice.remove_prefix(3);
      if (text::trim(slice).empty()) return;
    }
    NodeId parent = insertion_point();
    Node node;
    node.kind = NodeKind::Text;
    node.span = {begin, end};
    node.raw_text = raw;
    std::string_view slice(src_.data() + begin, end - begin);
    node.text = raw ? std::string(slice) : detail::decode_entities(slice, false);
    append(parent, std::move(node));
  }

  NodeId insertion_point() {
    if (!stack_.empty()) return stack_.back();
    return ensure_root();
  }

  NodeId ensure_root() {
    if (doc_.root_ == kNoNode) {
      Node html;
      html.tag = "html";
      html.synthetic = true;
      doc_.root_ = append(kNoNode, std::move(html));
    }
    return doc_.root_;
  }

  NodeId append(NodeId parent, Node node) {
    auto id = static_cast<NodeId>(doc_.nodes_.size());
    node.id = id;
    node.parent = parent;
    doc_.nodes_.push_back(std::move(node));
    if (parent != kNoNode) doc_.nodes_[parent].children.push_back(id);
    return id;
  }

  const std::string& tag_of(NodeId id) const { return doc_.nodes_[id].tag; }

  // Index in stack_ of the nearest open `tag`, stopping at any `barriers`.
  std::optional<std::size_t> find_open(std::string_view tag,
                                       std::initializer_list<std::string_view> barriers) const {
    for (std::size_t k = stack_.size(); k-- > 0;) {
      const std::string& t = tag_of(stack_[k]);
      if (t == tag) return k;
      if (std::find(barriers.begin(), barriers.end(), t) != barriers.end()) return std::nullopt;
    }
    return std::nullopt;
  }

  void pop_to(std::size_t index) { stack_.resize(index); }

  void implicit_close(std::string_view tag) {
    if (closes_paragraph(tag)) {
      if (auto k = find_open("p", {"button", "table", "td", "th", "caption", "object",
                                   "marquee", "template", "html"}))
        pop_to(*k);
    }
    if (is_heading(tag) && !stack_.empty() && is_heading(tag_of(stack_.back()))) stack_.pop_back();
    if (tag == "li") {
      if (auto k = find_open("li", {"ul", "ol", "menu", "table", "td", "th", "html"})) pop_to(*k);
    } else if (tag == "dt" || tag == "dd") {
      for (std::size_t k = stack_.size(); k-- > 0;) {
        const std::string& t = tag_of(stack_[k]);
        if (t == "dt" || t == "dd") {
          pop_to(k);
          break;
        }
        if (t == "dl" || t == "table" || t == "html") break;
      }
    } else if (tag == "tr") {
      if (auto k = find_open("tr", {"table", "thead", "tbody", "tfoot", "html"})) pop_to(*k);
    } else if (tag == "td" || tag == "th") {
      for (std::size_t k = stack_.size(); k-- > 0;) {
        const std::string& t = tag_of(stack_[k]);
        if (t == "td" || t == "th") {
          pop_to(k);
          break;
        }
        if (t == "tr" || t == "table" || t == "html") break;
      }
    } else if (tag == "thead" || tag == "tbody" || tag == "tfoot") {
      for (std::size_t k = stack_.size(); k-- > 0;) {
        const std::string& t = tag_of(stack_[k]);
        if (t == "thead" || t == "tbody" || t == "tfoot") {
          pop_to(k);
          break;
        }
        if (t == "table" || t == "html") break;
      }
    } else if (tag == "option") {
      if (!stack_.empty() && tag_of(stack_.back()) == "option") stack_.pop_back();
    } else if (tag == "optgroup") {
      if (!stack_.empty() && tag_of(stack_.back()) == "option") stack_.pop_back();
      if (!stack_.empty() && tag_of(stack_.back()) == "optgroup") stack_.pop_back();
    } else if (tag == "a") {
      if (auto k = find_open("a", {"td", "th", "table", "button", "html"})) pop_to(*k);
    }
  }

  void handle_start_tag(const std::string& tag, Attributes attrs, SourceSpan span, bool self_closing) {
    Node node;
    node.tag = tag;
    node.attributes = std::move(attrs);
    node.span = span;
    if (doc_.root_ == kNoNode && tag == "html") {
      doc_.root_ = append(kNoNode, std::move(node));
      index(doc_.root_);
      if (!self_closing) stack_.push_back(doc_.root_);
      return;
    }
    ensure_root();
    implicit_close(tag);
    NodeId id = append(insertion_point(), std::move(node));
    index(id);
    if (self_closing || is_void_element(tag)) return;
    stack_.push_back(id);
    if (is_raw_text_element(tag)) raw_text_tag_ = tag;
  }

  void handle_end_tag(const std::string& tag, std::size_t pos) {
    for (std::size_t k = stack_.size(); k-- > 0;) {
      if (tag_of(stack_[k]) == tag) {
        pop_to(k);
        return;
      }
    }
    if (!is_void_element(tag))
      warn("stray end tag </" + tag + "> at offset " + std::to_string(pos));
  }

  void index(NodeId id) { doc_.offset_index_.emplace_back(doc_.nodes_[id].span.begin, id); }

  void finish() {
    ensure_root();
    std::sort(doc_.offset_index_.begin(), doc_.offset_index_.end());
    // Position of each element among same-tag siblings, for locators.
    doc_.type_position_.assign(doc_.nodes_.size(), {1, 1});
    std::unordered_map<std::string_view, std::vector<NodeId>> by_tag;
    for (const auto& parent : doc_.nodes_) {
      by_tag.clear();
      for (NodeId child : parent.children)
        if (doc_.nodes_[child].is_element()) by_tag[doc_.nodes_[child].tag].push_back(child);
      for (const auto& [tag, list] : by_tag)
        for (std::size_t i = 0; i < list.size(); ++i)
          doc_.type_position_[list[i]] = {static_cast<std::uint32_t>(i + 1), static_cast<std::uint32_t>(list.size())};
    }
    // Dangling IDREFs make accessible-name computation lossy; surface them.
    std::unordered_set<std::string> ids;
    for (const auto& node : doc_.nodes_)
      if (node.is_element())
        if (const auto* v = node.attributes.find("id")) ids.insert(*v);
    for (const auto& node : doc_.nodes_) {
      if (!node.is_element()) continue;
      if (const auto* refs = node.attributes.find("aria-labelledby")) {
        for (auto ref : text::split_whitespace(*refs))
          if (!ids.contains(std::string(ref)))
            warn("aria-labelledby on <" + node.tag + "> at offset " +
                 std::to_string(node.span.begin) + " references missing id '" + std::string(ref) + "'");
      }
    }
  }

  void warn(std::string message) {
    // Hostile inputs can produce one warning per byte; cap the log.
    constexpr std::size_t kMaxWarnings = 1000;
    if (doc_.warnings_.size() < kMaxWarnings)
      doc_.warnings_.push_back(std::move(message));
    else if (doc_.warnings_.size() == kMaxWarnings)
      doc_.warnings_.emplace_back("further parse warnings suppressed");
  }

  DocumentModel& doc_;
  const std::string& src_;
  std::vector<NodeId> stack_;
  std::string raw_text_tag_;
};

DocumentModel parse_html(std::string_view bytes, std::string_view url, std::string_view charset_hint) {
  if (bytes.empty()) throw ParseError("empty document");
  DocumentModel doc;
  doc.url_ = std::string(url);
  doc.raw_bytes_ = std::string(bytes);
  auto decoded = detail::decode_source(bytes, charset_hint);
  doc.source_ = std::move(decoded.text);
  doc.warnings_ = std::move(decoded.warnings);
  if (doc.source_.empty()) throw ParseError("document decodes to no characters");
  TreeBuilder builder(doc);
  builder.run();
  return doc;
}

}  // namespace waccess
