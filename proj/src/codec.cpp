#include "duncode/codec.hpp"

#include "duncode/error.hpp"
#include "duncode/unicode.hpp"

namespace duncode {

namespace {

constexpr std::string_view kZoneNames[] = {"ascii", "byte2", "isolate", "bit8", "bit7"};

[[noreturn]] void contract(const std::string& what) {
  throw Error(errc::contract_violation, what);
}

[[noreturn]] void malformed(const std::string& what) {
  throw Error(errc::malformed_unit, what);
}

}  // namespace

std::string_view zone_name(Zone zone) { return kZoneNames[static_cast<int>(zone)]; }

bool zone_from_name(std::string_view name, Zone& out) {
  for (int i = 0; i < 5; ++i) {
    if (kZoneNames[i] == name) {
      out = static_cast<Zone>(i);
      return true;
    }
  }
  return false;
}

Unit Unit::ascii(std::uint8_t value) { return Unit{Zone::ascii, 0, value, {0, 0, 0}}; }

Unit Unit::byte2(std::uint16_t index) { return Unit{Zone::byte2, 0, index, {0, 0, 0}}; }

Unit Unit::isolate(char32_t cp) { return Unit{Zone::isolate, 0, cp, {0, 0, 0}}; }

Unit Unit::compressed(Zone zone, std::uint8_t alphabet, std::uint8_t x, std::uint8_t y) {
  return Unit{zone, alphabet, 0, {x, y, zone_pad(zone)}};
}

Unit Unit::compressed(Zone zone, std::uint8_t alphabet, std::uint8_t x, std::uint8_t y,
                      std::uint8_t z) {
  return Unit{zone, alphabet, 0, {x, y, z}};
}

int Unit::symbol_count() const {
  if (zone != Zone::bit7 && zone != Zone::bit8) return 1;
  return letters[2] == zone_pad(zone) ? 2 : 3;
}

void pack_unit(const Unit& unit, std::string& out) {
  switch (unit.zone) {
    case Zone::ascii:
      if (unit.payload > 0x7F) contract("ascii payload exceeds 7 bits");
      out += static_cast<char>(unit.payload);
      return;
    case Zone::byte2:
      if (unit.payload >= kByte2Slots) contract("byte2 payload exceeds 14 bits");
      out += static_cast<char>(0x80 | (unit.payload >> 7));
      out += static_cast<char>(unit.payload & 0x7F);
      return;
    case Zone::isolate:
      if (!is_scalar_value(unit.payload)) contract("isolate payload is not a scalar value");
      out += static_cast<char>(0x80 | ((unit.payload >> 14) & 0x7F));
      out += static_cast<char>(0x80 | ((unit.payload >> 7) & 0x7F));
      out += static_cast<char>(unit.payload & 0x7F);
      return;
    case Zone::bit8: {
      if (unit.alphabet >= kBit8Alphabets) contract("bit8 alphabet id exceeds 2 bits");
      const auto [x, y, z] = unit.letters;
      if (x == kPadBit8 || y == kPadBit8) contract("pad sentinel outside the final slot");
      out += static_cast<char>(0xE0 | (unit.alphabet << 3) | (x >> 5));
      out += static_cast<char>(0x80 | ((x & 0x1F) << 2) | (y >> 6));
      out += static_cast<char>(0x80 | ((y & 0x3F) << 1) | (z >> 7));
      out += static_cast<char>(z & 0x7F);
      return;
    }
    case Zone::bit7: {
      if (unit.alphabet >= kBit7Alphabets) contract("bit7 alphabet id exceeds 95");
      const auto [x, y, z] = unit.letters;
      if (x == kPadBit7 || y == kPadBit7) contract("pad sentinel outside the final slot");
      if (z > kPadBit7) contract("bit7 letter index exceeds 7 bits");
      out += static_cast<char>(0x80 | unit.alphabet);
      out += static_cast<char>(0x80 | x);
      out += static_cast<char>(0x80 | y);
      out += static_cast<char>(z);
      return;
    }
  }
  contract("unknown zone");
}

std::string pack_unit(const Unit& unit) {
  std::string out;
  pack_unit(unit, out);
  return out;
}

Unit unpack_unit(std::string_view bytes) {
  const std::size_t n = bytes.size();
  if (n == 0) malformed("empty unit");
  if (n > kMaxUnitBytes) malformed("unit exceeds 4 bytes");
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (is_tail_byte(static_cast<std::uint8_t>(bytes[i]))) {
      contract("tail byte before end of unit");
    }
  }
  const std::uint8_t last = static_cast<std::uint8_t>(bytes[n - 1]);
  if (!is_tail_byte(last)) contract("unit does not end with a tail byte");

  const auto b = [&](std::size_t i) { return static_cast<std::uint8_t>(bytes[i]); };
  switch (n) {
    case 1:
      return Unit::ascii(last);
    case 2:
      return Unit::byte2(static_cast<std::uint16_t>((b(0) & 0x7F) << 7 | last));
    case 3: {
      const char32_t cp = static_cast<char32_t>((b(0) & 0x7F) << 14 | (b(1) & 0x7F) << 7 | last);
      if (!is_scalar_value(cp)) malformed("isolate payload is not a scalar value");
      return Unit::isolate(cp);
    }
    default: {
      if (b(0) >= 0xE0) {
        const std::uint8_t alphabet = (b(0) >> 3) & 0x03;
        const std::uint8_t x = static_cast<std::uint8_t>((b(0) & 0x07) << 5 | (b(1) & 0x7F) >> 2);
        const std::uint8_t y = static_cast<std::uint8_t>((b(1) & 0x03) << 6 | (b(2) & 0x7F) >> 1);
        const std::uint8_t z = static_cast<std::uint8_t>((b(2) & 0x01) << 7 | last);
        if (x == kPadBit8 || y == kPadBit8) malformed("pad sentinel outside the final slot");
        return Unit::compressed(Zone::bit8, alphabet, x, y, z);
      }
      const std::uint8_t alphabet = b(0) & 0x7F;
      const std::uint8_t x = b(1) & 0x7F;
      const std::uint8_t y = b(2) & 0x7F;
      if (x == kPadBit7 || y == kPadBit7) malformed("pad sentinel outside the final slot");
      return Unit::compressed(Zone::bit7, alphabet, x, y, last);
    }
  }
}

}  // namespace duncode
