#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <random>
#include <string>

#include "doctest.h"
#include "duncode/codec.hpp"
#include "duncode/error.hpp"

using namespace duncode;

namespace {

// Independent packing oracle: spell the unit layout as a literal bit string,
// then chop it into bytes. Shares nothing with pack_unit.
std::string bits_to_bytes(const std::string& bits) {
  REQUIRE(bits.size() % 8 == 0);
  std::string out;
  for (std::size_t i = 0; i < bits.size(); i += 8) {
    unsigned value = 0;
    for (std::size_t k = 0; k < 8; ++k) {
      value = value << 1 | static_cast<unsigned>(bits[i + k] - '0');
    }
    out += static_cast<char>(value);
  }
  return out;
}

std::string field(unsigned value, int width) {
  std::string s;
  for (int i = width - 1; i >= 0; --i) s += static_cast<char>('0' + ((value >> i) & 1));
  return s;
}

std::string oracle_ascii(unsigned v) { return bits_to_bytes("0" + field(v, 7)); }

std::string oracle_byte2(unsigned v) {
  return bits_to_bytes("1" + field(v >> 7, 7) + "0" + field(v & 0x7F, 7));
}

std::string oracle_isolate(unsigned v) {
  return bits_to_bytes("1" + field((v >> 14) & 0x7F, 7) + "1" + field((v >> 7) & 0x7F, 7) + "0" +
                       field(v & 0x7F, 7));
}

std::string oracle_bit8(unsigned n, unsigned x, unsigned y, unsigned z) {
  const std::string xb = field(x, 8), yb = field(y, 8), zb = field(z, 8);
  return bits_to_bytes("111" + field(n, 2) + xb.substr(0, 3) + "1" + xb.substr(3) +
                       yb.substr(0, 2) + "1" + yb.substr(2) + zb.substr(0, 1) + "0" +
                       zb.substr(1));
}

std::string oracle_bit7(unsigned n, unsigned x, unsigned y, unsigned z) {
  return bits_to_bytes("1" + field(n, 7) + "1" + field(x, 7) + "1" + field(y, 7) + "0" +
                       field(z, 7));
}

std::string hexs(std::string_view s) {
  static const char d[] = "0123456789ABCDEF";
  std::string out;
  for (unsigned char c : s) {
    out += d[c >> 4];
    out += d[c & 0xF];
    out += ' ';
  }
  return out;
}

}  // namespace

TEST_CASE("pack matches the bit-string oracle on frozen vectors") {
  // bit8, alphabet 0, indexes 41 42 43: 111|00|010 1|00001|01 1|000010|0 0|1000011
  const std::string fig1 = oracle_bit8(0, 0x41, 0x42, 0x43);
  CHECK(hexs(fig1) == "E2 85 84 43 ");
  CHECK(pack_unit(Unit::compressed(Zone::bit8, 0, 0x41, 0x42, 0x43)) == fig1);

  const std::string greek_alpha = oracle_byte2(0x331);
  CHECK(hexs(greek_alpha) == "86 31 ");
  CHECK(pack_unit(Unit::byte2(0x331)) == greek_alpha);

  const std::string astral = oracle_isolate(0x10000);
  CHECK(hexs(astral) == "84 80 00 ");
  CHECK(pack_unit(Unit::isolate(0x10000)) == astral);

  CHECK(pack_unit(Unit::ascii(0x41)) == oracle_ascii(0x41));
  CHECK(pack_unit(Unit::ascii(0x41)) == "\x41");
}

TEST_CASE("pack matches the oracle across randomized units") {
  std::mt19937 gen(7);
  for (int trial = 0; trial < 20000; ++trial) {
    switch (gen() % 3) {
      case 0: {
        char32_t cp = gen() % 0x110000;
        if (cp >= 0xD800 && cp <= 0xDFFF) cp = 0xE000 + (cp - 0xD800);
        CHECK(pack_unit(Unit::isolate(cp)) == oracle_isolate(cp));
        break;
      }
      case 1: {
        const unsigned n = gen() % kBit8Alphabets;
        const unsigned x = gen() % 0xFF, y = gen() % 0xFF;
        const unsigned z = gen() % 0x100;  // pad allowed in the last slot
        CHECK(pack_unit(Unit::compressed(Zone::bit8, static_cast<std::uint8_t>(n),
                                         static_cast<std::uint8_t>(x), static_cast<std::uint8_t>(y),
                                         static_cast<std::uint8_t>(z))) == oracle_bit8(n, x, y, z));
        break;
      }
      default: {
        const unsigned n = gen() % kBit7Alphabets;
        const unsigned x = gen() % 0x7F, y = gen() % 0x7F;
        const unsigned z = gen() % 0x80;
        CHECK(pack_unit(Unit::compressed(Zone::bit7, static_cast<std::uint8_t>(n),
                                         static_cast<std::uint8_t>(x), static_cast<std::uint8_t>(y),
                                         static_cast<std::uint8_t>(z))) == oracle_bit7(n, x, y, z));
        break;
      }
    }
  }
}

TEST_CASE("unit length and tail byte shape") {
  const Unit units[] = {
      Unit::ascii(0x00),
      Unit::ascii(0x7F),
      Unit::byte2(0),
      Unit::byte2(0x3FFF),
      Unit::isolate(0x10FFFF),
      Unit::compressed(Zone::bit8, 3, 0, 0),
      Unit::compressed(Zone::bit7, 95, 0x7E, 0x7E, 0x7E),
  };
  for (const Unit& u : units) {
    const std::string bytes = pack_unit(u);
    CHECK(bytes.size() == static_cast<std::size_t>(packed_size(u.zone)));
    for (std::size_t i = 0; i + 1 < bytes.size(); ++i) {
      CHECK(!is_tail_byte(static_cast<std::uint8_t>(bytes[i])));
    }
    CHECK(is_tail_byte(static_cast<std::uint8_t>(bytes.back())));
  }
}

TEST_CASE("four byte zone detection splits at 0xE0") {
  // alphabet 95 is the highest bit7 id; its first byte stays below the bit8 prefix
  const std::string top_bit7 = pack_unit(Unit::compressed(Zone::bit7, 95, 1, 2, 3));
  CHECK(static_cast<std::uint8_t>(top_bit7[0]) == 0xDF);
  const std::string low_bit8 = pack_unit(Unit::compressed(Zone::bit8, 0, 0, 0, 0));
  CHECK(static_cast<std::uint8_t>(low_bit8[0]) == 0xE0);
  CHECK(unpack_unit(top_bit7).zone == Zone::bit7);
  CHECK(unpack_unit(low_bit8).zone == Zone::bit8);
}

TEST_CASE("round-trip is exhaustive over ascii and byte2") {
  for (unsigned v = 0; v < 0x80; ++v) {
    const Unit u = Unit::ascii(static_cast<std::uint8_t>(v));
    CHECK(unpack_unit(pack_unit(u)) == u);
  }
  for (unsigned v = 0; v < kByte2Slots; ++v) {
    const Unit u = Unit::byte2(static_cast<std::uint16_t>(v));
    CHECK(unpack_unit(pack_unit(u)) == u);
  }
}

TEST_CASE("round-trip holds over randomized isolate/bit7/bit8 units") {
  std::mt19937 gen(11);
  for (int trial = 0; trial < 50000; ++trial) {
    Unit u;
    switch (gen() % 3) {
      case 0: {
        char32_t cp = gen() % 0x110000;
        if (cp >= 0xD800 && cp <= 0xDFFF) cp = 0x20;
        u = Unit::isolate(cp);
        break;
      }
      case 1: {
        const auto z = static_cast<std::uint8_t>(gen() % 0x100);
        u = Unit::compressed(Zone::bit8, static_cast<std::uint8_t>(gen() % 4),
                             static_cast<std::uint8_t>(gen() % 0xFF),
                             static_cast<std::uint8_t>(gen() % 0xFF), z);
        break;
      }
      default: {
        const auto z = static_cast<std::uint8_t>(gen() % 0x80);
        u = Unit::compressed(Zone::bit7, static_cast<std::uint8_t>(gen() % 96),
                             static_cast<std::uint8_t>(gen() % 0x7F),
                             static_cast<std::uint8_t>(gen() % 0x7F), z);
        break;
      }
    }
    CHECK(unpack_unit(pack_unit(u)) == u);
  }
}

TEST_CASE("symbol count distinguishes padded pairs") {
  CHECK(Unit::compressed(Zone::bit8, 0, 1, 2, 3).symbol_count() == 3);
  CHECK(Unit::compressed(Zone::bit8, 0, 1, 2).symbol_count() == 2);
  CHECK(Unit::compressed(Zone::bit8, 0, 1, 2).letters[2] == kPadBit8);
  CHECK(Unit::compressed(Zone::bit7, 0, 1, 2).letters[2] == kPadBit7);
  CHECK(Unit::ascii(0x41).symbol_count() == 1);
}

TEST_CASE("pack rejects invariant violations") {
  CHECK_THROWS_AS(pack_unit(Unit::ascii(0x80)), Error);
  CHECK_THROWS_AS(pack_unit(Unit::byte2(0x4000)), Error);
  CHECK_THROWS_AS(pack_unit(Unit::isolate(0xD800)), Error);
  CHECK_THROWS_AS(pack_unit(Unit::isolate(0x110000)), Error);
  // pad sentinel in a leading slot
  CHECK_THROWS_AS(pack_unit(Unit::compressed(Zone::bit7, 0, kPadBit7, 1, 2)), Error);
  CHECK_THROWS_AS(pack_unit(Unit::compressed(Zone::bit8, 0, 1, kPadBit8, 2)), Error);
  // alphabet out of range
  CHECK_THROWS_AS(pack_unit(Unit::compressed(Zone::bit7, 96, 1, 2, 3)), Error);
  CHECK_THROWS_AS(pack_unit(Unit::compressed(Zone::bit8, 4, 1, 2, 3)), Error);
}

TEST_CASE("unpack rejects malformed byte shapes") {
  CHECK_THROWS_WITH_AS(unpack_unit(""), "empty unit", Error);
  const std::string five("\x84\x80\x80\x80\x00", 5);
  try {
    unpack_unit(five);
    FAIL("expected malformed unit");
  } catch (const Error& e) {
    CHECK(e.code() == errc::malformed_unit);
  }
  // isolate payload above the scalar range: all 21 bits set is 0x1FFFFF
  CHECK_THROWS_AS(unpack_unit("\xFF\xFF\x7F"), Error);
  {
    // 0xD800 split 7/7/7 = 0000011 0110000 0000000
    const std::string surrogate("\x83\xB0\x00", 3);
    try {
      unpack_unit(surrogate);
      FAIL("expected malformed unit");
    } catch (const Error& e) {
      CHECK(e.code() == errc::malformed_unit);
    }
  }
  // pad in a non-final slot arrives as malformed, not contract
  try {
    unpack_unit(oracle_bit7(0, 0x7F, 1, 2));
    FAIL("expected malformed unit");
  } catch (const Error& e) {
    CHECK(e.code() == errc::malformed_unit);
  }
}

TEST_CASE("unpack flags contract misuse") {
  try {
    unpack_unit(std::string("\x41\x41", 2));  // tail byte in the middle
    FAIL("expected contract violation");
  } catch (const Error& e) {
    CHECK(e.code() == errc::contract_violation);
  }
  try {
    unpack_unit(std::string("\x86", 1));  // no tail byte at all
    FAIL("expected contract violation");
  } catch (const Error& e) {
    CHECK(e.code() == errc::contract_violation);
  }
}

TEST_CASE("non-canonical but well-formed units unpack fine") {
  // ASCII 'A' forced into byte2 and isolate shapes
  CHECK(unpack_unit(pack_unit(Unit::byte2(0x41))) == Unit::byte2(0x41));
  CHECK(unpack_unit(pack_unit(Unit::isolate(0x41))) == Unit::isolate(0x41));
}
