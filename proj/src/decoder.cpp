#include "duncode/decoder.hpp"

#include "duncode/error.hpp"
#include "duncode/unicode.hpp"

namespace duncode {

Segmented segment(std::string_view bytes) {
  Segmented out;
  std::size_t start = 0;
  for (std::size_t i = 0; i < bytes.size(); ++i) {
    if (is_tail_byte(static_cast<std::uint8_t>(bytes[i]))) {
      out.units.push_back(bytes.substr(start, i + 1 - start));
      start = i + 1;
    }
  }
  out.carry = bytes.substr(start);
  return out;
}

std::size_t resync(std::string_view bytes, std::size_t offset) {
  for (std::size_t i = offset; i < bytes.size(); ++i) {
    if (is_tail_byte(static_cast<std::uint8_t>(bytes[i]))) return i + 1;
  }
  return bytes.size();
}

namespace {

std::u32string decode_unit_strict(std::string_view unit, const Tables& tables) {
  const Unit u = unpack_unit(unit);
  std::u32string out;
  switch (u.zone) {
    case Zone::ascii:
      out += static_cast<char32_t>(u.payload);
      break;
    case Zone::byte2: {
      const auto cp = tables.byte2_codepoint(static_cast<std::uint16_t>(u.payload));
      if (!cp) {
        throw Error(errc::malformed_unit,
                    "unmapped byte2 index " + std::to_string(u.payload));
      }
      out += *cp;
      break;
    }
    case Zone::isolate:
      out += static_cast<char32_t>(u.payload);
      break;
    default: {
      const int count = u.symbol_count();
      for (int i = 0; i < count; ++i) {
        out += tables.lookup_letter(u.zone, u.alphabet, u.letters[static_cast<std::size_t>(i)]);
      }
      break;
    }
  }
  return out;
}

}  // namespace

std::u32string decode_unit(std::string_view unit, const Tables& tables, Policy policy,
                           std::size_t offset) {
  try {
    return decode_unit_strict(unit, tables);
  } catch (const Error& e) {
    if (e.code() != errc::malformed_unit) throw;
    if (policy == Policy::replace) return std::u32string(1, kReplacement);
    throw Error(errc::malformed_unit,
                std::string(e.what()) + " at offset " + std::to_string(offset), offset);
  }
}

std::u32string decode(std::string_view bytes, const Tables& tables, Policy policy) {
  std::u32string out;
  out.reserve(bytes.size());
  const Segmented parts = segment(bytes);
  std::size_t offset = 0;
  for (std::string_view unit : parts.units) {
    out += decode_unit(unit, tables, policy, offset);
    offset += unit.size();
  }
  if (!parts.carry.empty()) {
    if (policy == Policy::strict) {
      throw Error(errc::malformed_unit,
                  "truncated stream: unit without tail byte at offset " + std::to_string(offset),
                  offset);
    }
    out += kReplacement;
  }
  return out;
}

std::string decode_to_utf8(std::string_view bytes, const Tables& tables, Policy policy) {
  return to_utf8(decode(bytes, tables, policy));
}

bool is_canonical_unit(std::string_view unit, const Tables& tables) {
  Unit u;
  std::u32string chars;
  try {
    u = unpack_unit(unit);
    chars = decode_unit_strict(unit, tables);
  } catch (const Error&) {
    return false;
  }
  switch (u.zone) {
    case Zone::ascii:
      return true;
    case Zone::byte2:
      return chars[0] >= 0x80;
    case Zone::isolate:
      return chars[0] >= 0x80 && !tables.byte2_index(chars[0]).has_value();
    default:
      break;
  }
  if (u.symbol_count() == 3) return true;
  // A padded pair is canonical only when splitting it would cost more.
  int individually = 0;
  for (char32_t cp : chars) individually += tables.byte2_index(cp) ? 2 : 3;
  return individually > kMaxUnitBytes;
}

void Decoder::feed(std::string_view chunk, std::u32string& out) {
  for (std::size_t i = 0; i < chunk.size(); ++i) {
    const std::uint8_t byte = static_cast<std::uint8_t>(chunk[i]);
    if (!is_tail_byte(byte)) {
      if (carry_n_ == carry_.size()) {
        overlong_ = true;  // shape is already malformed; bytes need not be kept
      } else {
        carry_[carry_n_++] = static_cast<char>(byte);
      }
      ++consumed_;
      continue;
    }
    if (overlong_ || carry_n_ == carry_.size()) {
      if (policy_ == Policy::strict) {
        throw Error(errc::malformed_unit,
                    "unit exceeds 4 bytes at offset " + std::to_string(unit_start_), unit_start_);
      }
      out += kReplacement;
    } else {
      std::string unit(carry_.data(), carry_n_);
      unit += static_cast<char>(byte);
      out += decode_unit(unit, *tables_, policy_, unit_start_);
    }
    ++consumed_;
    carry_n_ = 0;
    overlong_ = false;
    unit_start_ = consumed_;
  }
}

void Decoder::finish(std::u32string& out) {
  if (carry_n_ > 0 || overlong_) {
    if (policy_ == Policy::strict) {
      throw Error(errc::malformed_unit,
                  "truncated stream: unit without tail byte at offset " +
                      std::to_string(unit_start_),
                  unit_start_);
    }
    out += kReplacement;
  }
  carry_n_ = 0;
  overlong_ = false;
  unit_start_ = consumed_;
}

}  // namespace duncode
