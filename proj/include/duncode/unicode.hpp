#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>

namespace duncode {

inline constexpr char32_t kMaxScalar = 0x10FFFF;
inline constexpr char32_t kReplacement = 0xFFFD;

constexpr bool is_surrogate(char32_t cp) { return cp >= 0xD800 && cp <= 0xDFFF; }
constexpr bool is_scalar_value(char32_t cp) { return cp <= kMaxScalar && !is_surrogate(cp); }

void append_utf8(char32_t cp, std::string& out);
std::string to_utf8(std::u32string_view text);

/// Strict decode: rejects overlong forms, surrogates, out-of-range values and
/// truncated sequences. Throws Error(invalid_input) with the byte offset.
std::u32string from_utf8(std::string_view bytes);

/// Decodes the longest complete prefix of `bytes`, appending to `out`.
/// Returns the number of bytes consumed; an incomplete trailing sequence is
/// left unconsumed (at most 3 bytes). Invalid sequences throw as from_utf8.
std::size_t decode_utf8_prefix(std::string_view bytes, std::u32string& out);

std::size_t utf8_length(std::u32string_view text);
std::size_t utf16_length(std::u32string_view text);  // bytes, no BOM

}  // namespace duncode
