#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>

namespace loghet::utf8 {

// Decodes UTF-8 into code points. Decoding is total: a byte that does not
// start a well-formed sequence maps to U+DC00 + byte (the "surrogateescape"
// convention), so distinct invalid bytes stay distinct and every input has
// a well-defined length.
inline std::u32string decode(std::string_view text) {
  std::u32string out;
  out.reserve(text.size());
  const auto* s = reinterpret_cast<const unsigned char*>(text.data());
  const std::size_t n = text.size();
  std::size_t i = 0;
  auto continuation = [&](std::size_t at) { return at < n && (s[at] & 0xC0) == 0x80; };
  while (i < n) {
    const unsigned char b = s[i];
    if (b < 0x80) {
      out.push_back(b);
      ++i;
      continue;
    }
    char32_t cp = 0;
    std::size_t len = 0;
    char32_t min = 0;
    if ((b & 0xE0) == 0xC0) {
      cp = b & 0x1F;
      len = 2;
      min = 0x80;
    } else if ((b & 0xF0) == 0xE0) {
      cp = b & 0x0F;
      len = 3;
      min = 0x800;
    } else if ((b & 0xF8) == 0xF0) {
      cp = b & 0x07;
      len = 4;
      min = 0x10000;
    }
    bool ok = len != 0;
    for (std::size_t k = 1; ok && k < len; ++k) {
      if (!continuation(i + k)) {
        ok = false;
      } else {
        cp = (cp << 6) | (s[i + k] & 0x3F);
      }
    }
    if (ok && (cp < min || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF))) ok = false;
    if (ok) {
      out.push_back(cp);
      i += len;
    } else {
      out.push_back(static_cast<char32_t>(0xDC00 + b));
      ++i;
    }
  }
  return out;
}

inline std::size_t length(std::string_view text) { return decode(text).size(); }

}  // namespace loghet::utf8
