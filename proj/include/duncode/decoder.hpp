#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "duncode/tables.hpp"

namespace duncode {

enum class Policy { replace, strict };

struct Segmented {
  std::vector<std::string_view> units;  // each ends at a tail byte
  std::string_view carry;               // bytes after the last tail byte
};

/// Splits a byte sequence at tail bytes (high bit 0). Concatenating
/// units + carry reproduces the input. Overlong slices are not rejected
/// here; decode_unit flags them.
Segmented segment(std::string_view bytes);

/// Decodes one unit to 1-3 characters. `offset` is the unit's position in
/// the surrounding stream, used for strict-mode diagnostics. Under
/// Policy::replace every malformed unit yields exactly one U+FFFD.
std::u32string decode_unit(std::string_view unit, const Tables& tables, Policy policy,
                           std::size_t offset = 0);

std::u32string decode(std::string_view bytes, const Tables& tables,
                      Policy policy = Policy::replace);
std::string decode_to_utf8(std::string_view bytes, const Tables& tables,
                           Policy policy = Policy::replace);

/// First unit boundary at or after `offset`: the index one past the next
/// tail byte, or the stream length if none remains.
std::size_t resync(std::string_view bytes, std::size_t offset);

/// True when `unit` is a byte form the encoder itself can produce: no
/// isolate unit for a byte2-mapped character, no byte2/isolate unit for
/// ASCII, and no padded pair that individual units would encode as cheaply.
bool is_canonical_unit(std::string_view unit, const Tables& tables);

/// Streaming decoder; output is independent of input chunking. Carries at
/// most 4 buffered bytes (overlong runs are tracked without storage).
class Decoder {
 public:
  Decoder(const Tables& tables, Policy policy) : tables_(&tables), policy_(policy) {}

  void feed(std::string_view chunk, std::u32string& out);
  /// Flushes at end of stream; a dangling partial unit is malformed.
  void finish(std::u32string& out);

 private:
  const Tables* tables_;
  Policy policy_;
  std::array<char, kMaxUnitBytes> carry_{};
  std::size_t carry_n_ = 0;
  bool overlong_ = false;
  std::size_t unit_start_ = 0;  // absolute offset of the unit being carried
  std::size_t consumed_ = 0;
};

}  // namespace duncode
