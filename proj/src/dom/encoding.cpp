#include "dom/encoding.hpp"

#include <array>
#include <cstdint>

#include "text_util.hpp"

namespace waccess::detail {
namespace {

void append_utf8(std::string& out, std::uint32_t cp) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

// windows-1252 code points for 0x80..0x9F; other bytes map to themselves.
constexpr std::array<std::uint16_t, 32> kCp1252High = {
    0x20AC, 0x0081, 0x201A, 0x0192, 0x201E, 0x2026, 0x2020, 0x2021,
    0x02C6, 0x2030, 0x0160, 0x2039, 0x0152, 0x008D, 0x017D, 0x008F,
    0x0090, 0x2018, 0x2019, 0x201C, 0x201D, 0x2022, 0x2013, 0x2014,
    0x02DC, 0x2122, 0x0161, 0x203A, 0x0153, 0x009D, 0x017E, 0x0178};

std::string decode_cp1252(std::string_view bytes) {
  std::string out;
  out.reserve(bytes.size() + bytes.size() / 8);
  for (char ch : bytes) {
    auto b = static_cast<unsigned char>(ch);
    if (b >= 0x80 && b <= 0x9F)
      append_utf8(out, kCp1252High[b - 0x80]);
    else
      append_utf8(out, b);
  }
  return out;
}

std::string decode_utf16(std::string_view bytes, bool big_endian) {
  std::string out;
  out.reserve(bytes.size());
  auto unit = [&](std::size_t i) -> std::uint32_t {
    auto a = static_cast<unsigned char>(bytes[i]);
    auto b = static_cast<unsigned char>(bytes[i + 1]);
    return big_endian ? (a << 8 | b) : (b << 8 | a);
  };
  std::size_t i = 2;  // skip BOM
  while (i + 1 < bytes.size()) {
    std::uint32_t cu = unit(i);
    i += 2;
    if (cu >= 0xD800 && cu <= 0xDBFF && i + 1 < bytes.size()) {
      std::uint32_t lo = unit(i);
      if (lo >= 0xDC00 && lo <= 0xDFFF) {
        i += 2;
        append_utf8(out, 0x10000 + ((cu - 0xD800) << 10) + (lo - 0xDC00));
        continue;
      }
    }
    if (cu >= 0xD800 && cu <= 0xDFFF) cu = 0xFFFD;
    append_utf8(out, cu);
  }
  return out;
}

// Finds a charset declared in a <meta> tag within the first 1024 bytes.
std::string sniff_meta_charset(std::string_view bytes) {
  std::string head = text::lower(bytes.substr(0, 1024));
  std::size_t pos = 0;
  while ((pos = head.find("<meta", pos)) != std::string::npos) {
    std::size_t end = head.find('>', pos);
    if (end == std::string::npos) break;
    std::string_view tag(head.data() + pos, end - pos);
    std::size_t cs = tag.find("charset");
    if (cs != std::string_view::npos) {
      std::size_t i = cs + 7;
      while (i < tag.size() && (text::is_space(tag[i]) || tag[i] == '=')) ++i;
      while (i < tag.size() && (tag[i] == '"' || tag[i] == '\'')) ++i;
      std::size_t start = i;
      while (i < tag.size() && (std::isalnum(static_cast<unsigned char>(tag[i])) ||
                                tag[i] == '-' || tag[i] == '_' || tag[i] == ':'))
        ++i;
      if (i > start) return std::string(tag.substr(start, i - start));
    }
    pos = end;
  }
  return {};
}

}  // namespace

std::string sanitize_utf8(std::string_view bytes, bool* replaced) {
  std::string out;
  out.reserve(bytes.size());
  std::size_t i = 0;
  const std::size_t n = bytes.size();
  auto byte = [&](std::size_t k) { return static_cast<unsigned char>(bytes[k]); };
  while (i < n) {
    unsigned char b = byte(i);
    if (b < 0x80) {
      // NUL is kept out of the text so downstream consumers see clean strings.
      if (b == 0) {
        append_utf8(out, 0xFFFD);
        if (replaced) *replaced = true;
      } else {
        out.push_back(static_cast<char>(b));
      }
      ++i;
      continue;
    }
    std::size_t len = 0;
    std::uint32_t min = 0;
    if ((b & 0xE0) == 0xC0) {
      len = 2;
      min = 0x80;
    } else if ((b & 0xF0) == 0xE0) {
      len = 3;
      min = 0x800;
    } else if ((b & 0xF8) == 0xF0) {
      len = 4;
      min = 0x10000;
    }
    bool ok = len != 0 && i + len <= n;
    std::uint32_t cp = len ? (b & (0x7F >> len)) : 0;
    for (std::size_t k = 1; ok && k < len; ++k) {
      if ((byte(i + k) & 0xC0) != 0x80)
        ok = false;
      else
        cp = (cp << 6) | (byte(i + k) & 0x3F);
    }
    if (ok && (cp < min || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF))) ok = false;
    if (ok) {
      out.append(bytes.substr(i, len));
      i += len;
    } else {
      append_utf8(out, 0xFFFD);
      if (replaced) *replaced = true;
      ++i;
    }
  }
  return out;
}

DecodedSource decode_source(std::string_view bytes, std::string_view charset_hint) {
  DecodedSource result;
  if (bytes.size() >= 2) {
    auto b0 = static_cast<unsigned char>(bytes[0]);
    auto b1 = static_cast<unsigned char>(bytes[1]);
    if ((b0 == 0xFF && b1 == 0xFE) || (b0 == 0xFE && b1 == 0xFF)) {
      result.text = decode_utf16(bytes, b0 == 0xFE);
      result.charset = b0 == 0xFE ? "utf-16be" : "utf-16le";
      result.transcoded = true;
      return result;
    }
  }
  std::string charset = text::lower(text::trim(charset_hint));
  if (charset.empty()) charset = sniff_meta_charset(bytes);
  if (charset.empty()) charset = "utf-8";
  result.charset = charset;

  if (charset == "utf-8" || charset == "utf8" || charset == "us-ascii" || charset == "ascii") {
    bool replaced = false;
    result.text = sanitize_utf8(bytes, &replaced);
    if (replaced) result.warnings.emplace_back("invalid UTF-8 sequences replaced with U+FFFD");
    return result;
  }
  if (charset == "windows-1252" || charset == "iso-8859-1" || charset == "latin1" ||
      charset == "latin-1" || charset == "cp1252" || charset == "iso8859-1") {
    result.text = decode_cp1252(bytes);
    result.transcoded = true;
    return result;
  }
  bool replaced = false;
  result.text = sanitize_utf8(bytes, &replaced);
  result.warnings.push_back("unsupported charset '" + charset + "', decoded as UTF-8");
  return result;
}

}  // namespace waccess::detail
