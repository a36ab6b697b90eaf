#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>

namespace duncode {

/// Encoding zones. A unit's length and first-byte prefix identify its zone:
/// ascii 1 byte, byte2 2 bytes, isolate 3 bytes, bit8/bit7 4 bytes
/// (first byte >= 0xE0 selects bit8, otherwise bit7).
enum class Zone : std::uint8_t { ascii = 0, byte2 = 1, isolate = 2, bit8 = 3, bit7 = 4 };

std::string_view zone_name(Zone zone);
bool zone_from_name(std::string_view name, Zone& out);

inline constexpr std::uint8_t kPadBit7 = 0x7F;
inline constexpr std::uint8_t kPadBit8 = 0xFF;
inline constexpr int kMaxUnitBytes = 4;
// bit7 alphabet ids stop at 95: 0x80 + 96 == 0xE0 would collide with the
// bit8 first-byte prefix.
inline constexpr int kBit7Alphabets = 96;
inline constexpr int kBit8Alphabets = 4;
inline constexpr int kByte2Slots = 1 << 14;

constexpr std::uint8_t zone_pad(Zone zone) { return zone == Zone::bit7 ? kPadBit7 : kPadBit8; }
constexpr bool is_tail_byte(std::uint8_t b) { return (b & 0x80) == 0; }

/// One decoded unit. ascii/byte2/isolate carry a single payload value;
/// bit7/bit8 carry letter indexes, with the pad sentinel in the last slot
/// marking a two-symbol unit.
struct Unit {
  Zone zone = Zone::ascii;
  std::uint8_t alphabet = 0;
  std::uint32_t payload = 0;
  std::array<std::uint8_t, 3> letters{0, 0, 0};

  static Unit ascii(std::uint8_t value);
  static Unit byte2(std::uint16_t index);
  static Unit isolate(char32_t cp);
  static Unit compressed(Zone zone, std::uint8_t alphabet, std::uint8_t x, std::uint8_t y);
  static Unit compressed(Zone zone, std::uint8_t alphabet, std::uint8_t x, std::uint8_t y,
                         std::uint8_t z);

  int symbol_count() const;
  bool operator==(const Unit&) const = default;
};

constexpr int packed_size(Zone zone) {
  switch (zone) {
    case Zone::ascii: return 1;
    case Zone::byte2: return 2;
    case Zone::isolate: return 3;
    default: return 4;
  }
}

/// Appends the 1-4 byte form of `unit`. Exactly the last byte has high bit 0.
/// Invariant violations throw Error(contract_violation).
void pack_unit(const Unit& unit, std::string& out);
std::string pack_unit(const Unit& unit);

/// Inverse of pack_unit. Malformed byte shapes throw Error(malformed_unit);
/// a tail byte anywhere but last throws Error(contract_violation).
Unit unpack_unit(std::string_view bytes);

}  // namespace duncode
