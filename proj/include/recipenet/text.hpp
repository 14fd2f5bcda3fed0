// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 recipenet contributors

#ifndef RECIPENET_TEXT_HPP_
#define RECIPENET_TEXT_HPP_

#include <charconv>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace recipenet::text {

namespace detail {

// Replacement text for U+00C0..U+00FF.
inline constexpr const char* kLatin1[64] = {
    "a", "a", "a", "a", "a", "a", "ae", "c", "e", "e", "e", "e", "i", "i", "i", "i",
    "d", "n", "o", "o", "o", "o", "o", " x ", "o", "u", "u", "u", "u", "y", "th", "ss",
    "a", "a", "a", "a", "a", "a", "ae", "c", "e", "e", "e", "e", "i", "i", "i", "i",
    "d", "n", "o", "o", "o", "o", "o", " ", "o", "u", "u", "u", "u", "y", "th", "y"};

// Base letters for U+0100..U+017F.
inline constexpr std::string_view kLatinExtA =
    "AaAaAaCcCcCcCcDdDdEeEeEeEeEeGgGgGgGgHhHhIiIiIiIiIiIiJjKkkLlLlLlLlLlNnNnNnnNn"
    "OoOoOoOoRrRrRrSsSsSsSsTtTtTtUuUuUuUuUuUuWwYyyZzZzZzs";
static_assert(kLatinExtA.size() == 128);

inline void append_codepoint(std::string& out, std::uint32_t cp) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
    return;
  }
  if (cp >= 0xC0 && cp <= 0xFF) {
    out += kLatin1[cp - 0xC0];
    return;
  }
  if (cp == 0x152 || cp == 0x153) {
    out += "oe";
    return;
  }
  if (cp >= 0x100 && cp <= 0x17F) {
    out.push_back(kLatinExtA[cp - 0x100]);
    return;
  }
  if (cp >= 0x300 && cp <= 0x36F) return;  // combining marks
  switch (cp) {
    case 0xAE:    // registered sign
    case 0xA9:    // copyright sign
    case 0x2122:  // trade mark sign
    case 0x2120:  // service mark
      return;
    case 0xA0: out.push_back(' '); return;
    case 0xBC: out += " 1/4 "; return;
    case 0xBD: out += " 1/2 "; return;
    case 0xBE: out += " 3/4 "; return;
    case 0x2150: out += " 1/7 "; return;
    case 0x2151: out += " 1/9 "; return;
    case 0x2152: out += " 1/10 "; return;
    case 0x2153: out += " 1/3 "; return;
    case 0x2154: out += " 2/3 "; return;
    case 0x2155: out += " 1/5 "; return;
    case 0x2156: out += " 2/5 "; return;
    case 0x2157: out += " 3/5 "; return;
    case 0x2158: out += " 4/5 "; return;
    case 0x2159: out += " 1/6 "; return;
    case 0x215A: out += " 5/6 "; return;
    case 0x215B: out += " 1/8 "; return;
    case 0x215C: out += " 3/8 "; return;
    case 0x215D: out += " 5/8 "; return;
    case 0x215E: out += " 7/8 "; return;
    case 0x2044: out.push_back('/'); return;
    case 0x2018:
    case 0x2019:
    case 0x02BC: out.push_back('\''); return;
    case 0x201C:
    case 0x201D: out.push_back('"'); return;
    case 0x2010:
    case 0x2011:
    case 0x2012:
    case 0x2013:
    case 0x2014: out.push_back('-'); return;
    case 0x2026: out += "..."; return;
    default: out.push_back(' '); return;
  }
}

}  // namespace detail

/// Decodes UTF-8, strips accents and brand marks, maps vulgar fractions and
/// typographic punctuation to ASCII, and lowercases. Invalid bytes become spaces.
inline std::string fold(std::string_view in) {
  std::string out;
  out.reserve(in.size());
  std::size_t i = 0;
  while (i < in.size()) {
    const auto b0 = static_cast<unsigned char>(in[i]);
    std::uint32_t cp = 0;
    std::size_t len = 1;
    if (b0 < 0x80) {
      cp = b0;
    } else if ((b0 & 0xE0) == 0xC0) {
      cp = b0 & 0x1F;
      len = 2;
    } else if ((b0 & 0xF0) == 0xE0) {
      cp = b0 & 0x0F;
      len = 3;
    } else if ((b0 & 0xF8) == 0xF0) {
      cp = b0 & 0x07;
      len = 4;
    } else {
      out.push_back(' ');
      ++i;
      continue;
    }
    bool ok = i + len <= in.size();
    for (std::size_t k = 1; ok && k < len; ++k) {
      const auto b = static_cast<unsigned char>(in[i + k]);
      if ((b & 0xC0) != 0x80) ok = false;
      cp = (cp << 6) | (b & 0x3F);
    }
    if (!ok) {
      out.push_back(' ');
      ++i;
      continue;
    }
    detail::append_codepoint(out, cp);
    i += len;
  }
  for (char& c : out)
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  return out;
}

inline bool is_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

inline bool is_alnum(char c) {
  return (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || (c >= 'A' && c <= 'Z');
}

/// A word of a folded string, with its byte span.
struct Token {
  std::string text;
  std::size_t begin = 0;
  std::size_t end = 0;
};

/// Splits folded text into words: maximal runs of [a-z0-9'-], with leading and
/// trailing apostrophes/hyphens trimmed off.
inline std::vector<Token> words(std::string_view s) {
  std::vector<Token> out;
  std::size_t i = 0;
  const auto word_char = [](char c) { return is_alnum(c) || c == '\'' || c == '-'; };
  while (i < s.size()) {
    if (!word_char(s[i])) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < s.size() && word_char(s[j])) ++j;
    std::size_t b = i, e = j;
    while (b < e && !is_alnum(s[b])) ++b;
    while (e > b && !is_alnum(s[e - 1])) --e;
    if (b < e) out.push_back({std::string(s.substr(b, e - b)), b, e});
    i = j;
  }
  return out;
}

/// Joins tokens with single spaces.
inline std::string join(const std::vector<std::string>& parts, std::string_view sep = " ") {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

/// Removes every apostrophe.
inline std::string strip_apostrophes(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s)
    if (c != '\'') out.push_back(c);
  return out;
}

inline bool starts_with(std::string_view s, std::string_view prefix) {
  return s.substr(0, prefix.size()) == prefix;
}

/// Shortest decimal text that reads back to exactly `v`.
inline std::string format_double(double v) {
  char buf[64];
  auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

inline std::string format_fixed(double v, int digits) {
  char buf[64];
  auto r = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed, digits);
  return std::string(buf, r.ptr);
}

}  // namespace recipenet::text

#endif  // RECIPENET_TEXT_HPP_
