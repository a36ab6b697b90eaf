#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "duncode/tables.hpp"

namespace duncode::bench {

/// One measured text. Symbol lengths and the size ratio are always computed
/// from the stored counts, never cached.
struct Row {
  std::string label;
  std::uint64_t n_chars = 0;
  std::uint64_t n_bytes_utf8 = 0;
  std::uint64_t n_bytes_utf16 = 0;
  std::uint64_t n_bytes_duncode = 0;

  double sym_len_utf8() const;
  double sym_len_duncode() const;
  double ratio_utf8_over_duncode() const;  // percent
};

Row measure(std::string label, std::u32string_view text, const Tables& tables);
/// UTF-8 entry point; invalid input throws Error(invalid_input) with offset.
Row measure_utf8(std::string label, std::string_view utf8, const Tables& tables);

enum class Format { csv, markdown };

std::string report(std::span<const Row> rows, Format format);

/// Deterministic synthetic corpora for repeatable runs without external
/// dumps. Same (profile, n_chars, seed, tables) always yields the same text.
enum class Profile { english, russian, arabic, chinese, mixed };

bool profile_from_name(std::string_view name, Profile& out);
std::u32string synth_profile(Profile profile, std::size_t n_chars, std::uint32_t seed,
                             const Tables& tables);

}  // namespace duncode::bench
