#pragma once

#include <array>
#include <string>
#include <string_view>

#include "duncode/tables.hpp"

namespace duncode {

/// Streaming encoder. Buffers up to two symbols of one alphabet; a third
/// completes a 4-byte unit. Output depends only on the pushed character
/// sequence, never on input chunking. Single-user; distinct encoders may
/// share one Tables.
class Encoder {
 public:
  explicit Encoder(const Tables& tables) : tables_(&tables) {}

  /// Appends zero or more finished units to `out`. Throws
  /// Error(invalid_input) for non scalar values.
  void push(char32_t cp, std::string& out);

  /// Drains buffered symbols: one leftover becomes a byte2/isolate unit; a
  /// pair becomes a padded 4-byte unit only when that beats emitting both
  /// individually.
  void flush(std::string& out);

  bool has_pending() const { return pending_n_ > 0; }

 private:
  struct Pending {
    char32_t cp = 0;
    Classification cls;
  };

  void drain(std::string& out);
  void emit_single(char32_t cp, const Classification& cls, std::string& out);

  const Tables* tables_;
  std::array<Pending, 2> pending_{};
  int pending_n_ = 0;
};

std::string encode(std::u32string_view text, const Tables& tables);
/// Decodes UTF-8 strictly, then encodes. Throws Error(invalid_input) with a
/// byte offset on bad UTF-8.
std::string encode_utf8(std::string_view utf8, const Tables& tables);

}  // namespace duncode
