#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace duncode {

enum class errc {
  invalid_input,       // non scalar value or broken UTF-8 from the caller
  malformed_unit,      // byte stream violates the unit format
  parse_error,         // table file rejected
  resource_error,      // bundled resource missing or too short
  contract_violation,  // API misuse
  io_error,
};

class Error : public std::runtime_error {
 public:
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  Error(errc code, const std::string& message, std::size_t offset = npos)
      : std::runtime_error(message), code_(code), offset_(offset) {}

  errc code() const noexcept { return code_; }
  /// Byte offset into the stream, or line number for table files. npos if unknown.
  std::size_t offset() const noexcept { return offset_; }
  bool has_offset() const noexcept { return offset_ != npos; }

 private:
  errc code_;
  std::size_t offset_;
};

}  // namespace duncode
