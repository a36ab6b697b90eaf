#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <fstream>
#include <set>
#include <sstream>

#include "doctest.h"
#include "duncode/error.hpp"
#include "duncode/tables.hpp"
#include "duncode/unicode.hpp"

using namespace duncode;

namespace {

const Tables& tables() {
  static const Tables t = Tables::build_default();
  return t;
}

}  // namespace

TEST_CASE("byte2 identity range covers 0x80..0x7ff") {
  // Brute-force dump: every entry of the low range must sit at cp - 0x80.
  const Tables& t = tables();
  for (char32_t cp = 0x80; cp <= 0x7FF; ++cp) {
    auto index = t.byte2_index(cp);
    REQUIRE(index.has_value());
    CHECK(*index == cp - 0x80);
    CHECK(t.byte2_codepoint(*index) == cp);
  }
  CHECK(*t.byte2_index(0x00E9) == 105);  // e acute
  CHECK(!t.byte2_index(0x0041).has_value());
  CHECK(t.classify(0x0041).zone == Zone::ascii);
}

TEST_CASE("byte2 map is full and a bijection") {
  const Tables& t = tables();
  CHECK(t.byte2_count() == std::size_t(kByte2Slots));
  std::set<char32_t> seen;
  for (unsigned i = 0; i < kByte2Slots; ++i) {
    auto cp = t.byte2_codepoint(static_cast<std::uint16_t>(i));
    REQUIRE(cp.has_value());
    CHECK(seen.insert(*cp).second);
    CHECK(*t.byte2_index(*cp) == i);
  }
}

TEST_CASE("byte2 fill order pins kana, punctuation, tibetan, mongolian, hanzi") {
  const Tables& t = tables();
  CHECK(t.byte2_codepoint(1920) == char32_t(0x3000));   // CJK symbols follow the identity range
  CHECK(t.byte2_codepoint(1984) == char32_t(0x3040));   // hiragana
  CHECK(t.byte2_codepoint(2080) == char32_t(0x30A0));   // katakana
  CHECK(t.byte2_codepoint(2176) == char32_t(0x2000));   // general punctuation
  CHECK(t.byte2_codepoint(2288) == char32_t(0x0F00));   // tibetan
  CHECK(t.byte2_codepoint(2544) == char32_t(0x1800));   // mongolian
  CHECK(t.byte2_codepoint(2720) == char32_t(U'的'));  // most frequent hanzi
  for (unsigned i = 2720; i < kByte2Slots; ++i) {
    const char32_t cp = *t.byte2_codepoint(static_cast<std::uint16_t>(i));
    CHECK(cp >= 0x4E00);
    CHECK(cp <= 0x9FFF);
  }
}

TEST_CASE("zone assignment follows the default roster") {
  const Tables& t = tables();

  Classification greek = t.classify(0x03B1);
  CHECK(greek.zone == Zone::bit8);
  CHECK(greek.alphabet == 0);
  CHECK(greek.letter == 0x41);
  CHECK(greek.byte2 == 0x331);

  CHECK(t.classify(0x0400).alphabet == 1);  // cyrillic
  CHECK(t.classify(0x0600).alphabet == 2);  // arabic
  CHECK(t.classify(0x1000).alphabet == 3);  // myanmar
  CHECK(t.classify(0x1000).zone == Zone::bit8);

  // Hangul syllables stay uncompressed
  Classification hangul = t.classify(0xAC00);
  CHECK(hangul.zone == Zone::isolate);
  CHECK(hangul.letter == 0xAC00);
  CHECK(hangul.block_id == -1);

  // Tibetan is pinned to byte2 even though the block would fit bit8
  CHECK(t.classify(0x0F40).zone == Zone::byte2);
  CHECK(t.classify(0x4E00).zone == Zone::byte2);

  Classification deva = t.classify(0x0915);
  CHECK(deva.zone == Zone::bit7);
  CHECK(deva.letter == 0x15);
  CHECK(!deva.byte2.has_value());
}

TEST_CASE("classify is total and rejects non scalar values") {
  const Tables& t = tables();
  CHECK(t.classify(0x10FFFF).zone == Zone::isolate);
  CHECK(t.classify(0x0000).zone == Zone::ascii);
  CHECK_THROWS_AS(t.classify(0xD800), Error);
  CHECK_THROWS_AS(t.classify(0xDFFF), Error);
  CHECK_THROWS_AS(t.classify(0x110000), Error);
}

TEST_CASE("bit7 numbering is dense over 0..95 in began order") {
  const Tables& t = tables();
  std::vector<char32_t> begans(96, 0);
  int mothers = 0;
  for (const Block& b : t.blocks()) {
    if (b.zone != Zone::bit7 || b.mother_id) continue;
    REQUIRE(b.alphabet.has_value());
    REQUIRE(*b.alphabet >= 0);
    REQUIRE(*b.alphabet < 96);
    begans[static_cast<std::size_t>(*b.alphabet)] = b.began;
    ++mothers;
  }
  CHECK(mothers == 96);
  for (int i = 1; i < 96; ++i) CHECK(begans[size_t(i)] > begans[size_t(i) - 1]);
  // Devanagari lands at id 8 with this roster; the encoder tests rely on it.
  CHECK(t.classify(0x0900).alphabet == 8);
}

TEST_CASE("lookup_letter inverts classify over the full scalar range") {
  const Tables& t = tables();
  std::size_t checked = 0;
  for (char32_t cp = 0x20; cp <= 0x10FFFF; ++cp) {
    if (is_surrogate(cp)) continue;
    const Classification c = t.classify(cp);
    if (c.zone != Zone::bit7 && c.zone != Zone::bit8) continue;
    REQUIRE(c.alphabet.has_value());
    CHECK(t.lookup_letter(c.zone, *c.alphabet, c.letter) == cp);
    ++checked;
  }
  std::size_t compressible = 0;
  for (const Block& b : t.blocks()) {
    if (b.zone == Zone::bit7 || b.zone == Zone::bit8) compressible += b.size();
  }
  CHECK(checked == compressible);
  CHECK(checked > 5000);
}

TEST_CASE("lookup_letter spec vectors") {
  const Tables& t = tables();
  CHECK(t.lookup_letter(Zone::bit8, 0, 0x41) == char32_t(0x03B1));
  CHECK(t.lookup_letter(Zone::bit8, 0, 0x00) == char32_t(0x0370));
  CHECK_THROWS_AS(t.lookup_letter(Zone::bit7, 0, 200), Error);
  // Armenian has 96 letters, so the pad index is out of range there; full
  // alphabets do own a character at the pad position.
  CHECK_THROWS_AS(t.lookup_letter(Zone::bit7, 0, kPadBit7), Error);
  CHECK(t.lookup_letter(Zone::bit8, 1, kPadBit8) == char32_t(0x04FF));
  CHECK(t.lookup_letter(Zone::bit7, 8, kPadBit7) == char32_t(0x097F));
  CHECK_THROWS_AS(t.lookup_letter(Zone::bit8, 0, 250), Error);  // greek tops out at 224
}

TEST_CASE("merged child blocks extend the mother alphabet") {
  const Tables& t = tables();
  // Ancient Greek Numbers ride on the Greek alphabet after its 144 letters.
  const Classification agn = t.classify(0x10140);
  CHECK(agn.zone == Zone::bit8);
  CHECK(agn.alphabet == 0);
  CHECK(agn.letter == 144);
  CHECK(t.lookup_letter(Zone::bit8, 0, 144) == char32_t(0x10140));
  CHECK(t.alphabet_letters(Zone::bit8, 0) == 144 + 80);

  // Myanmar has two children stacked in began order.
  CHECK(t.classify(0xA9E0).letter == 160);
  CHECK(t.classify(0xAA60).letter == 192);
  CHECK(t.alphabet_letters(Zone::bit8, 3) == 224);

  // Full 256-letter alphabets lose the sentinel slot.
  CHECK(t.alphabet_letters(Zone::bit8, 1) == 255);
  CHECK(t.classify(0x04FF).letter == 0xFF);
  CHECK(t.alphabet_letters(Zone::bit7, 8) == 127);  // Devanagari
}

TEST_CASE("serialize/parse round-trips the default tables") {
  const Tables& t = tables();
  const std::string text = t.serialize();
  const Tables back = Tables::parse(text);
  CHECK(back == t);
  CHECK(back.serialize() == text);
}

TEST_CASE("table build is deterministic") {
  CHECK(Tables::build_default().serialize() == Tables::build_default().serialize());
}

TEST_CASE("bundled table file matches the built-in registry") {
  const Tables golden = Tables::load(std::string(DUNCODE_DATA_DIR) + "/duncode.tables");
  CHECK(golden == tables());
}

TEST_CASE("a short frequency list fails construction with the resource named") {
  try {
    Tables::build_default("一\n二\n");
    FAIL("expected resource error");
  } catch (const Error& e) {
    CHECK(e.code() == errc::resource_error);
    CHECK(std::string(e.what()).find("hanzi frequency list") != std::string::npos);
  }
}

TEST_CASE("parse rejects invariant violations with line numbers") {
  const auto fails_with = [](std::string_view text, std::string_view needle) {
    try {
      Tables::parse(text);
      FAIL_CHECK("expected parse error for: " << needle);
    } catch (const Error& e) {
      CHECK(e.code() == errc::parse_error);
      CHECK(std::string(e.what()).find(needle) != std::string::npos);
    }
  };

  fails_with("version x\nblock 0 0500 05ff bit7 alphabet=0 # A\n"
             "block 1 0580 060f bit7 alphabet=1 # B\n",
             "overlapping ranges");
  fails_with("version x\nblock 0 0500 05ff bit8 alphabet=4 # too high\n", "out of range");
  fails_with("version x\nblock 0 0500 05ff bogus\n", "unknown zone");
  fails_with("version x\nnonsense 1 2 3\n", "line 2");
  fails_with("version x\nbyte2 4000 0041\n", "byte2 index out of range");
  fails_with("version x\nbyte2 0001 0041\nbyte2 0001 0042\n", "duplicate byte2 index");
  fails_with("version x\nbyte2 0001 0041\nbyte2 0002 0041\n", "two byte2 indexes");
  fails_with("version x\nblock 0 0900 097f bit7 alphabet=0 # A\n"
             "block 1 0980 09ff bit7 alphabet=0 # B\n",
             "duplicate alphabet id");
  fails_with("version x\nblock 0 0900 097f bit7 # missing alphabet\n", "required");
  fails_with("version x\nblock 0 0100 017f byte2 alphabet=1 # stray alphabet\n", "not allowed");
  fails_with("block 0 0100 017f byte2 # A\n", "missing version");
  // capacity: a 160-letter mother cannot sit in bit7
  fails_with("version x\nblock 0 1000 109f bit7 alphabet=0 # too big\n", "capacity");
  // 256 letters plus a child overflows bit8
  fails_with("version x\nblock 0 0400 04ff bit8 alphabet=0 # full\n"
             "block 1 0500 050f bit8 alphabet=0 mother=0 offset=256 # child\n",
             "capacity");
  fails_with("version x\nblock 0 0700 074f bit7 alphabet=0 # A\n"
             "block 1 0860 086f bit7 alphabet=0 mother=2 offset=80 # missing mother\n",
             "unknown mother");
  fails_with("version x\nblock 0 0700 074f bit7 alphabet=0 # A\n"
             "block 1 0860 086f bit7 alphabet=0 mother=0 offset=10 # overlaps mother\n",
             "overlapping letter ranges");
}

TEST_CASE("parse accepts gaps in a custom alphabet but lookup flags them") {
  const Tables t = Tables::parse(
      "version gap-test\n"
      "block 0 e000 e00f bit7 alphabet=0 # mother\n"
      "block 1 e100 e10f bit7 alphabet=0 mother=0 offset=32 # child with gap\n");
  CHECK(t.lookup_letter(Zone::bit7, 0, 5) == char32_t(0xE005));
  CHECK(t.lookup_letter(Zone::bit7, 0, 33) == char32_t(0xE101));
  CHECK_THROWS_AS(t.lookup_letter(Zone::bit7, 0, 20), Error);  // inside the gap
  CHECK(t.alphabet_letters(Zone::bit7, 0) == 48);
  CHECK(!t.has_alphabet(Zone::bit7, 1));
  CHECK_THROWS_AS(t.lookup_letter(Zone::bit7, 1, 0), Error);
}

TEST_CASE("load reports missing files") {
  CHECK_THROWS_AS(Tables::load("/nonexistent/duncode.tables"), Error);
}
