#include "duncode/unicode.hpp"

#include "duncode/error.hpp"

namespace duncode {

void append_utf8(char32_t cp, std::string& out) {
  if (!is_scalar_value(cp)) {
    throw Error(errc::invalid_input, "not a Unicode scalar value");
  }
  if (cp < 0x80) {
    out += static_cast<char>(cp);
  } else if (cp < 0x800) {
    out += static_cast<char>(0xC0 | (cp >> 6));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else if (cp < 0x10000) {
    out += static_cast<char>(0xE0 | (cp >> 12));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else {
    out += static_cast<char>(0xF0 | (cp >> 18));
    out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  }
}

std::string to_utf8(std::u32string_view text) {
  std::string out;
  out.reserve(text.size());
  for (char32_t cp : text) append_utf8(cp, out);
  return out;
}

namespace {

[[noreturn]] void bad_utf8(std::size_t offset) {
  throw Error(errc::invalid_input, "invalid UTF-8 at offset " + std::to_string(offset), offset);
}

}  // namespace

std::size_t decode_utf8_prefix(std::string_view bytes, std::u32string& out) {
  std::size_t i = 0;
  const std::size_t n = bytes.size();
  while (i < n) {
    const std::uint8_t b0 = static_cast<std::uint8_t>(bytes[i]);
    if (b0 < 0x80) {
      out += static_cast<char32_t>(b0);
      ++i;
      continue;
    }
    int len;
    char32_t cp;
    char32_t min;
    if ((b0 & 0xE0) == 0xC0) {
      len = 2;
      cp = b0 & 0x1F;
      min = 0x80;
    } else if ((b0 & 0xF0) == 0xE0) {
      len = 3;
      cp = b0 & 0x0F;
      min = 0x800;
    } else if ((b0 & 0xF8) == 0xF0) {
      len = 4;
      cp = b0 & 0x07;
      min = 0x10000;
    } else {
      bad_utf8(i);
    }
    if (i + len > n) break;  // incomplete tail; caller decides
    for (int k = 1; k < len; ++k) {
      const std::uint8_t b = static_cast<std::uint8_t>(bytes[i + k]);
      if ((b & 0xC0) != 0x80) bad_utf8(i);
      cp = (cp << 6) | (b & 0x3F);
    }
    if (cp < min || cp > kMaxScalar || is_surrogate(cp)) bad_utf8(i);
    out += cp;
    i += len;
  }
  return i;
}

std::u32string from_utf8(std::string_view bytes) {
  std::u32string out;
  out.reserve(bytes.size());
  const std::size_t consumed = decode_utf8_prefix(bytes, out);
  if (consumed != bytes.size()) {
    throw Error(errc::invalid_input,
                "truncated UTF-8 sequence at offset " + std::to_string(consumed), consumed);
  }
  return out;
}

std::size_t utf8_length(std::u32string_view text) {
  std::size_t n = 0;
  for (char32_t cp : text) {
    if (cp < 0x80) {
      n += 1;
    } else if (cp < 0x800) {
      n += 2;
    } else if (cp < 0x10000) {
      n += 3;
    } else {
      n += 4;
    }
  }
  return n;
}

std::size_t utf16_length(std::u32string_view text) {
  std::size_t n = 0;
  for (char32_t cp : text) n += cp >= 0x10000 ? 4 : 2;
  return n;
}

}  // namespace duncode
