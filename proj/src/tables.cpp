#include "duncode/tables.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include "duncode/error.hpp"
#include "duncode/unicode.hpp"

namespace duncode {

namespace {

struct RawBlock {
  char32_t began;
  char32_t end;
  Zone zone;
  int alphabet;           // -1 for byte2
  const char* name;
  const char* mother;     // name of the mother block, nullptr for mothers
};

// Default registry. Zone choices: four large alphabets compress in bit8;
// 96 smaller ones in bit7; frequent ranges that intermix with other scripts
// (Latin supplements, kana, punctuation, Tibetan, Mongolian, Hanzi) stay in
// the 2-byte map and are never run-compressed.
constexpr RawBlock kDefaultBlocks[] = {
    {0x0080, 0x00FF, Zone::byte2, -1, "Latin-1 Supplement", nullptr},
    {0x0100, 0x017F, Zone::byte2, -1, "Latin Extended-A", nullptr},
    {0x0180, 0x024F, Zone::byte2, -1, "Latin Extended-B", nullptr},
    {0x0250, 0x02AF, Zone::byte2, -1, "IPA Extensions", nullptr},
    {0x02B0, 0x02FF, Zone::byte2, -1, "Spacing Modifier Letters", nullptr},
    {0x0300, 0x036F, Zone::byte2, -1, "Combining Diacritical Marks", nullptr},
    {0x0370, 0x03FF, Zone::bit8, 0, "Greek and Coptic", nullptr},
    {0x0400, 0x04FF, Zone::bit8, 1, "Cyrillic", nullptr},
    {0x0500, 0x052F, Zone::byte2, -1, "Cyrillic Supplement", nullptr},
    {0x0530, 0x058F, Zone::bit7, -1, "Armenian", nullptr},
    {0x0590, 0x05FF, Zone::bit7, -1, "Hebrew", nullptr},
    {0x0600, 0x06FF, Zone::bit8, 2, "Arabic", nullptr},
    {0x0700, 0x074F, Zone::bit7, -1, "Syriac", nullptr},
    {0x0750, 0x077F, Zone::byte2, -1, "Arabic Supplement", nullptr},
    {0x0780, 0x07BF, Zone::bit7, -1, "Thaana", nullptr},
    {0x07C0, 0x07FF, Zone::bit7, -1, "NKo", nullptr},
    {0x0800, 0x083F, Zone::bit7, -1, "Samaritan", nullptr},
    {0x0840, 0x085F, Zone::bit7, -1, "Mandaic", nullptr},
    {0x0860, 0x086F, Zone::bit7, -1, "Syriac Supplement", "Syriac"},
    {0x08A0, 0x08FF, Zone::bit7, -1, "Arabic Extended-A", nullptr},
    {0x0900, 0x097F, Zone::bit7, -1, "Devanagari", nullptr},
    {0x0980, 0x09FF, Zone::bit7, -1, "Bengali", nullptr},
    {0x0A00, 0x0A7F, Zone::bit7, -1, "Gurmukhi", nullptr},
    {0x0A80, 0x0AFF, Zone::bit7, -1, "Gujarati", nullptr},
    {0x0B00, 0x0B7F, Zone::bit7, -1, "Oriya", nullptr},
    {0x0B80, 0x0BFF, Zone::bit7, -1, "Tamil", nullptr},
    {0x0C00, 0x0C7F, Zone::bit7, -1, "Telugu", nullptr},
    {0x0C80, 0x0CFF, Zone::bit7, -1, "Kannada", nullptr},
    {0x0D00, 0x0D7F, Zone::bit7, -1, "Malayalam", nullptr},
    {0x0D80, 0x0DFF, Zone::bit7, -1, "Sinhala", nullptr},
    {0x0E00, 0x0E7F, Zone::bit7, -1, "Thai", nullptr},
    {0x0E80, 0x0EFF, Zone::bit7, -1, "Lao", nullptr},
    {0x0F00, 0x0FFF, Zone::byte2, -1, "Tibetan", nullptr},
    {0x1000, 0x109F, Zone::bit8, 3, "Myanmar", nullptr},
    {0x10A0, 0x10FF, Zone::bit7, -1, "Georgian", nullptr},
    {0x13A0, 0x13FF, Zone::bit7, -1, "Cherokee", nullptr},
    {0x1680, 0x169F, Zone::bit7, -1, "Ogham", nullptr},
    {0x16A0, 0x16FF, Zone::bit7, -1, "Runic", nullptr},
    {0x1700, 0x171F, Zone::bit7, -1, "Tagalog", nullptr},
    {0x1720, 0x173F, Zone::bit7, -1, "Hanunoo", nullptr},
    {0x1740, 0x175F, Zone::bit7, -1, "Buhid", nullptr},
    {0x1760, 0x177F, Zone::bit7, -1, "Tagbanwa", nullptr},
    {0x1780, 0x17FF, Zone::bit7, -1, "Khmer", nullptr},
    {0x1800, 0x18AF, Zone::byte2, -1, "Mongolian", nullptr},
    {0x1900, 0x194F, Zone::bit7, -1, "Limbu", nullptr},
    {0x1950, 0x197F, Zone::bit7, -1, "Tai Le", nullptr},
    {0x1980, 0x19DF, Zone::bit7, -1, "New Tai Lue", nullptr},
    {0x1A00, 0x1A1F, Zone::bit7, -1, "Buginese", nullptr},
    {0x1B00, 0x1B7F, Zone::bit7, -1, "Balinese", nullptr},
    {0x1B80, 0x1BBF, Zone::bit7, -1, "Sundanese", nullptr},
    {0x1BC0, 0x1BFF, Zone::bit7, -1, "Batak", nullptr},
    {0x1C00, 0x1C4F, Zone::bit7, -1, "Lepcha", nullptr},
    {0x1C50, 0x1C7F, Zone::bit7, -1, "Ol Chiki", nullptr},
    {0x1CC0, 0x1CCF, Zone::bit7, -1, "Sundanese Supplement", "Sundanese"},
    {0x2000, 0x206F, Zone::byte2, -1, "General Punctuation", nullptr},
    {0x2C80, 0x2CFF, Zone::bit7, -1, "Coptic", nullptr},
    {0x2D30, 0x2D7F, Zone::bit7, -1, "Tifinagh", nullptr},
    {0x3000, 0x303F, Zone::byte2, -1, "CJK Symbols and Punctuation", nullptr},
    {0x3040, 0x309F, Zone::byte2, -1, "Hiragana", nullptr},
    {0x30A0, 0x30FF, Zone::byte2, -1, "Katakana", nullptr},
    {0x4E00, 0x9FFF, Zone::byte2, -1, "CJK Unified Ideographs", nullptr},
    {0xA4D0, 0xA4FF, Zone::bit7, -1, "Lisu", nullptr},
    {0xA6A0, 0xA6FF, Zone::bit7, -1, "Bamum", nullptr},
    {0xA840, 0xA87F, Zone::bit7, -1, "Phags-pa", nullptr},
    {0xA880, 0xA8DF, Zone::bit7, -1, "Saurashtra", nullptr},
    {0xA900, 0xA92F, Zone::bit7, -1, "Kayah Li", nullptr},
    {0xA930, 0xA95F, Zone::bit7, -1, "Rejang", nullptr},
    {0xA980, 0xA9DF, Zone::bit7, -1, "Javanese", nullptr},
    {0xA9E0, 0xA9FF, Zone::bit8, 3, "Myanmar Extended-B", "Myanmar"},
    {0xAA00, 0xAA5F, Zone::bit7, -1, "Cham", nullptr},
    {0xAA60, 0xAA7F, Zone::bit8, 3, "Myanmar Extended-A", "Myanmar"},
    {0xAA80, 0xAADF, Zone::bit7, -1, "Tai Viet", nullptr},
    {0xABC0, 0xABFF, Zone::bit7, -1, "Meetei Mayek", nullptr},
    {0x10000, 0x1007F, Zone::bit7, -1, "Linear B Syllabary", nullptr},
    {0x10080, 0x100FF, Zone::bit7, -1, "Linear B Ideograms", nullptr},
    {0x10100, 0x1013F, Zone::bit7, -1, "Aegean Numbers", nullptr},
    {0x10140, 0x1018F, Zone::bit8, 0, "Ancient Greek Numbers", "Greek and Coptic"},
    {0x10280, 0x1029F, Zone::bit7, -1, "Lycian", nullptr},
    {0x102A0, 0x102DF, Zone::bit7, -1, "Carian", nullptr},
    {0x10300, 0x1032F, Zone::bit7, -1, "Old Italic", nullptr},
    {0x10330, 0x1034F, Zone::bit7, -1, "Gothic", nullptr},
    {0x10350, 0x1037F, Zone::bit7, -1, "Old Permic", nullptr},
    {0x10380, 0x1039F, Zone::bit7, -1, "Ugaritic", nullptr},
    {0x103A0, 0x103DF, Zone::bit7, -1, "Old Persian", nullptr},
    {0x10450, 0x1047F, Zone::bit7, -1, "Shavian", nullptr},
    {0x10480, 0x104AF, Zone::bit7, -1, "Osmanya", nullptr},
    {0x104B0, 0x104FF, Zone::bit7, -1, "Osage", nullptr},
    {0x10500, 0x1052F, Zone::bit7, -1, "Elbasan", nullptr},
    {0x10530, 0x1056F, Zone::bit7, -1, "Caucasian Albanian", nullptr},
    {0x10800, 0x1083F, Zone::bit7, -1, "Cypriot Syllabary", nullptr},
    {0x10840, 0x1085F, Zone::bit7, -1, "Imperial Aramaic", nullptr},
    {0x10860, 0x1087F, Zone::bit7, -1, "Palmyrene", nullptr},
    {0x10880, 0x108AF, Zone::bit7, -1, "Nabataean", nullptr},
    {0x108E0, 0x108FF, Zone::bit7, -1, "Hatran", nullptr},
    {0x10900, 0x1091F, Zone::bit7, -1, "Phoenician", nullptr},
    {0x10920, 0x1093F, Zone::bit7, -1, "Lydian", nullptr},
    {0x109A0, 0x109FF, Zone::bit7, -1, "Meroitic Cursive", nullptr},
    {0x10A00, 0x10A5F, Zone::bit7, -1, "Kharoshthi", nullptr},
    {0x10A60, 0x10A7F, Zone::bit7, -1, "Old South Arabian", nullptr},
    {0x10A80, 0x10A9F, Zone::bit7, -1, "Old North Arabian", nullptr},
    {0x10AC0, 0x10AFF, Zone::bit7, -1, "Manichaean", nullptr},
    {0x10B00, 0x10B3F, Zone::bit7, -1, "Avestan", nullptr},
    {0x10B40, 0x10B5F, Zone::bit7, -1, "Inscriptional Parthian", nullptr},
    {0x10B60, 0x10B7F, Zone::bit7, -1, "Inscriptional Pahlavi", nullptr},
    {0x10B80, 0x10BAF, Zone::bit7, -1, "Psalter Pahlavi", nullptr},
    {0x10C00, 0x10C4F, Zone::bit7, -1, "Old Turkic", nullptr},
    {0x10C80, 0x10CFF, Zone::bit7, -1, "Old Hungarian", nullptr},
    {0x11000, 0x1107F, Zone::bit7, -1, "Brahmi", nullptr},
    {0x11080, 0x110CF, Zone::bit7, -1, "Kaithi", nullptr},
    {0x110D0, 0x110FF, Zone::bit7, -1, "Sora Sompeng", nullptr},
    {0x11100, 0x1114F, Zone::bit7, -1, "Chakma", nullptr},
    {0x11150, 0x1117F, Zone::bit7, -1, "Mahajani", nullptr},
    {0x11180, 0x111DF, Zone::bit7, -1, "Sharada", nullptr},
    {0x11200, 0x1124F, Zone::bit7, -1, "Khojki", nullptr},
    {0x11280, 0x112AF, Zone::bit7, -1, "Multani", nullptr},
    {0x112B0, 0x112FF, Zone::bit7, -1, "Khudawadi", nullptr},
    {0x11300, 0x1137F, Zone::bit7, -1, "Grantha", nullptr},
    {0x11400, 0x1147F, Zone::bit7, -1, "Newa", nullptr},
    {0x11480, 0x114DF, Zone::bit7, -1, "Tirhuta", nullptr},
    {0x11580, 0x115FF, Zone::bit7, -1, "Siddham", nullptr},
};

// byte2 fill order. [0,1919] is the identity-shifted U+0080..U+07FF range;
// the listed ranges follow; remaining slots take the frequency list.
constexpr struct {
  char32_t began;
  char32_t end;
} kByte2Ranges[] = {
    {0x0080, 0x07FF}, {0x3000, 0x303F}, {0x3040, 0x309F}, {0x30A0, 0x30FF},
    {0x2000, 0x206F}, {0x0F00, 0x0FFF}, {0x1800, 0x18AF},
};

constexpr std::string_view kDefaultVersion = "duncode-default-1";

std::string hex(std::uint32_t value, int width = 4) {
  static const char digits[] = "0123456789abcdef";
  std::string s;
  for (; value || s.size() < static_cast<std::size_t>(width); value >>= 4) {
    s.insert(s.begin(), digits[value & 0xF]);
  }
  return s;
}

[[noreturn]] void parse_fail(std::size_t line, const std::string& what) {
  throw Error(errc::parse_error, "line " + std::to_string(line) + ": " + what, line);
}

std::vector<std::string_view> split_fields(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    std::size_t j = i;
    while (j < s.size() && s[j] != ' ' && s[j] != '\t') ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

bool parse_hex(std::string_view s, std::uint32_t& out) {
  if (s.empty()) return false;
  std::uint32_t value = 0;
  for (char c : s) {
    int d;
    if (c >= '0' && c <= '9') {
      d = c - '0';
    } else if (c >= 'a' && c <= 'f') {
      d = c - 'a' + 10;
    } else if (c >= 'A' && c <= 'F') {
      d = c - 'A' + 10;
    } else {
      return false;
    }
    if (value > 0x0FFFFFFF) return false;
    value = value << 4 | static_cast<std::uint32_t>(d);
  }
  out = value;
  return true;
}

bool parse_int(std::string_view s, int& out) {
  int value = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || p != s.data() + s.size()) return false;
  out = value;
  return true;
}

}  // namespace

std::string_view bundled_hanzi_frequency() {
  static const std::string_view text =
#include "hanzi_frequency.inc"
      ;
  return text;
}

Tables Tables::build_default() { return build_default(bundled_hanzi_frequency()); }

Tables Tables::build_default(std::string_view hanzi_frequency) {
  Tables t;
  t.version_ = kDefaultVersion;

  std::unordered_map<std::string_view, std::string_view> mother_of;
  for (const RawBlock& raw : kDefaultBlocks) {
    if (raw.mother) mother_of.emplace(raw.name, raw.mother);
  }

  std::vector<Block> blocks;
  blocks.reserve(std::size(kDefaultBlocks));
  for (const RawBlock& raw : kDefaultBlocks) {
    Block b;
    b.began = raw.began;
    b.end = raw.end;
    b.zone = raw.zone;
    if (raw.zone == Zone::bit7 || raw.zone == Zone::bit8) b.alphabet = raw.alphabet;
    b.name = raw.name;
    blocks.push_back(std::move(b));
  }
  std::sort(blocks.begin(), blocks.end(),
            [](const Block& a, const Block& b) { return a.began < b.began; });
  std::unordered_map<std::string_view, Block*> by_name;
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    blocks[i].id = static_cast<int>(i);
    by_name.emplace(blocks[i].name, &blocks[i]);
  }

  // bit7 alphabet ids run 0..95 in ascending order of mother block start.
  int next_bit7 = 0;
  for (Block& b : blocks) {
    if (b.zone == Zone::bit7 && !mother_of.contains(b.name)) b.alphabet = next_bit7++;
  }

  // Children inherit the mother's alphabet and stack after its letters, in
  // ascending order of their own start.
  for (Block& b : blocks) {
    const auto parent = mother_of.find(b.name);
    if (parent == mother_of.end()) continue;
    Block& mother = *by_name.at(parent->second);
    std::uint32_t offset = mother.size();
    for (const Block& sibling : blocks) {
      if (&sibling == &b) break;
      const auto sibling_parent = mother_of.find(sibling.name);
      if (sibling_parent != mother_of.end() && sibling_parent->second == mother.name) {
        offset += sibling.size();
      }
    }
    b.mother_id = mother.id;
    b.alphabet = mother.alphabet;
    b.child_offset = offset;
  }
  t.blocks_ = std::move(blocks);

  // byte2 map: fixed ranges first, then the frequency list.
  t.byte2_reverse_.assign(kByte2Slots, kByte2Unassigned);
  std::uint16_t next = 0;
  const auto assign = [&](char32_t cp) {
    t.byte2_forward_.emplace(cp, next);
    t.byte2_reverse_[next] = cp;
    ++next;
  };
  for (const auto& range : kByte2Ranges) {
    for (char32_t cp = range.began; cp <= range.end; ++cp) assign(cp);
  }
  std::size_t pos = 0;
  std::u32string line;
  while (next < kByte2Slots && pos < hanzi_frequency.size()) {
    std::size_t eol = hanzi_frequency.find('\n', pos);
    if (eol == std::string_view::npos) eol = hanzi_frequency.size();
    std::string_view raw = hanzi_frequency.substr(pos, eol - pos);
    pos = eol + 1;
    if (!raw.empty() && raw.back() == '\r') raw.remove_suffix(1);
    if (raw.empty() || raw[0] == '#') continue;
    line.clear();
    try {
      decode_utf8_prefix(raw, line);
    } catch (const Error&) {
      throw Error(errc::resource_error, "hanzi frequency list: invalid UTF-8 entry");
    }
    if (line.empty()) continue;
    const char32_t cp = line[0];
    if (cp < 0x80 || t.byte2_forward_.contains(cp)) continue;
    assign(cp);
  }
  if (next < kByte2Slots) {
    throw Error(errc::resource_error,
                "hanzi frequency list too short: " + std::to_string(kByte2Slots - next) +
                    " byte2 slots unfilled");
  }

  t.finalize();
  return t;
}

void Tables::finalize(const LineMap* lines) {
  const auto where = [lines](const Block& b) {
    if (!lines) return std::string();
    const auto it = lines->find(b.id);
    return it == lines->end() ? std::string() : " (line " + std::to_string(it->second) + ")";
  };

  std::sort(blocks_.begin(), blocks_.end(),
            [](const Block& a, const Block& b) { return a.began < b.began; });
  for (std::size_t i = 1; i < blocks_.size(); ++i) {
    if (blocks_[i].began <= blocks_[i - 1].end) {
      throw Error(errc::parse_error, "overlapping ranges: '" + blocks_[i - 1].name + "' and '" +
                                         blocks_[i].name + "'" + where(blocks_[i]));
    }
  }

  bit7_alphabets_.assign(kBit7Alphabets, {});
  bit8_alphabets_.assign(kBit8Alphabets, {});
  bit7_sizes_.assign(kBit7Alphabets, 0);
  bit8_sizes_.assign(kBit8Alphabets, 0);

  std::unordered_map<int, const Block*> by_id;
  for (const Block& b : blocks_) {
    if (b.began > b.end) {
      throw Error(errc::parse_error, "block '" + b.name + "': began exceeds end" + where(b));
    }
    if (!by_id.emplace(b.id, &b).second) {
      throw Error(errc::parse_error, "duplicate block id " + std::to_string(b.id) + where(b));
    }
  }

  for (const Block& b : blocks_) {
    const bool compressible = b.zone == Zone::bit7 || b.zone == Zone::bit8;
    if (compressible != b.alphabet.has_value()) {
      throw Error(errc::parse_error, "block '" + b.name + "': alphabet id is " +
                                         (compressible ? "required" : "not allowed") +
                                         " for zone " + std::string(zone_name(b.zone)) + where(b));
    }
    if (!compressible) {
      if (b.mother_id) {
        throw Error(errc::parse_error,
                    "block '" + b.name + "': mother requires a bit7/bit8 zone" + where(b));
      }
      continue;
    }
    const int limit = b.zone == Zone::bit7 ? kBit7Alphabets : kBit8Alphabets;
    if (*b.alphabet < 0 || *b.alphabet >= limit) {
      throw Error(errc::parse_error, "block '" + b.name + "': alphabet id " +
                                         std::to_string(*b.alphabet) + " out of range for zone " +
                                         std::string(zone_name(b.zone)) + where(b));
    }
    if (b.mother_id) {
      auto it = by_id.find(*b.mother_id);
      if (it == by_id.end()) {
        throw Error(errc::parse_error, "block '" + b.name + "': unknown mother id " +
                                           std::to_string(*b.mother_id) + where(b));
      }
      const Block& m = *it->second;
      if (m.mother_id) {
        throw Error(errc::parse_error, "block '" + b.name + "': mother '" + m.name +
                                           "' is itself a child block" + where(b));
      }
      if (m.zone != b.zone || m.alphabet != b.alphabet) {
        throw Error(errc::parse_error, "block '" + b.name +
                                           "': zone/alphabet does not match mother '" + m.name +
                                           "'" + where(b));
      }
    } else if (b.child_offset != 0) {
      throw Error(errc::parse_error,
                  "block '" + b.name + "': offset requires a mother block" + where(b));
    }
    auto& alphabets = b.zone == Zone::bit7 ? bit7_alphabets_ : bit8_alphabets_;
    auto& segments = alphabets[static_cast<std::size_t>(*b.alphabet)];
    if (!b.mother_id && std::any_of(segments.begin(), segments.end(),
                                    [](const Segment& s) { return s.offset == 0; })) {
      throw Error(errc::parse_error,
                  "duplicate alphabet id " + std::to_string(*b.alphabet) + " in zone " +
                      std::string(zone_name(b.zone)) + " ('" + b.name + "')" + where(b));
    }
    segments.push_back(Segment{b.child_offset, b.size(), b.began, b.id});
  }

  const auto check_zone = [&](std::vector<std::vector<Segment>>& alphabets,
                              std::vector<std::uint32_t>& sizes, std::uint32_t max_letters,
                              Zone zone) {
    const auto where_segment = [&](const Segment& s) { return where(*by_id.at(s.block_id)); };
    for (std::size_t id = 0; id < alphabets.size(); ++id) {
      auto& segments = alphabets[id];
      if (segments.empty()) continue;
      std::sort(segments.begin(), segments.end(),
                [](const Segment& a, const Segment& b) { return a.offset < b.offset; });
      if (segments.front().offset != 0) {
        throw Error(errc::parse_error, "alphabet " + std::to_string(id) + " in zone " +
                                           std::string(zone_name(zone)) + " has no mother block" +
                                           where_segment(segments.front()));
      }
      std::uint32_t top = 0;
      for (const Segment& s : segments) {
        if (s.offset < top) {
          throw Error(errc::parse_error, "alphabet " + std::to_string(id) + " in zone " +
                                             std::string(zone_name(zone)) +
                                             " has overlapping letter ranges" + where_segment(s));
        }
        top = s.offset + s.size;
      }
      if (top > max_letters + 1) {
        throw Error(errc::parse_error, "alphabet " + std::to_string(id) + " in zone " +
                                           std::string(zone_name(zone)) + " holds " +
                                           std::to_string(top) + " letters, capacity is " +
                                           std::to_string(max_letters + 1) +
                                           where_segment(segments.back()));
      }
      sizes[id] = top;
    }
  };
  check_zone(bit7_alphabets_, bit7_sizes_, kPadBit7, Zone::bit7);
  check_zone(bit8_alphabets_, bit8_sizes_, kPadBit8, Zone::bit8);

  if (byte2_reverse_.empty()) byte2_reverse_.assign(kByte2Slots, kByte2Unassigned);
}

Classification Tables::classify(char32_t cp) const {
  if (!is_scalar_value(cp)) {
    throw Error(errc::invalid_input, "not a Unicode scalar value: 0x" + hex(cp));
  }
  Classification c;
  if (cp < 0x80) {
    c.zone = Zone::ascii;
    c.letter = cp;
    return c;
  }
  auto it = std::upper_bound(blocks_.begin(), blocks_.end(), cp,
                             [](char32_t v, const Block& b) { return v < b.began; });
  if (it != blocks_.begin() && cp <= std::prev(it)->end) {
    const Block& b = *std::prev(it);
    c.zone = b.zone;
    c.block_id = b.id;
    c.alphabet = b.alphabet;
    c.letter = static_cast<std::uint32_t>(cp) - static_cast<std::uint32_t>(b.began) +
               b.child_offset;
  } else {
    c.zone = Zone::isolate;
    c.letter = cp;
  }
  if (auto found = byte2_forward_.find(cp); found != byte2_forward_.end()) {
    c.byte2 = found->second;
  }
  return c;
}

const std::vector<Tables::Segment>* Tables::alphabet_segments(Zone zone, int alphabet) const {
  const auto& alphabets = zone == Zone::bit7 ? bit7_alphabets_ : bit8_alphabets_;
  if (alphabet < 0 || static_cast<std::size_t>(alphabet) >= alphabets.size()) return nullptr;
  if (alphabets[static_cast<std::size_t>(alphabet)].empty()) return nullptr;
  return &alphabets[static_cast<std::size_t>(alphabet)];
}

bool Tables::has_alphabet(Zone zone, int alphabet) const {
  if (zone != Zone::bit7 && zone != Zone::bit8) return false;
  return alphabet_segments(zone, alphabet) != nullptr;
}

std::uint32_t Tables::alphabet_letters(Zone zone, int alphabet) const {
  if (!has_alphabet(zone, alphabet)) return 0;
  const auto& sizes = zone == Zone::bit7 ? bit7_sizes_ : bit8_sizes_;
  return std::min(sizes[static_cast<std::size_t>(alphabet)],
                  static_cast<std::uint32_t>(zone_pad(zone)));
}

char32_t Tables::lookup_letter(Zone zone, int alphabet, std::uint32_t letter) const {
  if (zone != Zone::bit7 && zone != Zone::bit8) {
    throw Error(errc::contract_violation, "lookup_letter requires a bit7/bit8 zone");
  }
  const auto* segments = alphabet_segments(zone, alphabet);
  if (!segments) {
    throw Error(errc::malformed_unit, "unknown " + std::string(zone_name(zone)) + " alphabet " +
                                          std::to_string(alphabet));
  }
  // Bound by the assigned indexes, not the run-usable count: a full-size
  // alphabet still owns a letter at the pad position, it just never joins
  // compressed units (unpack rejects the pad outside the final slot).
  const auto& sizes = zone == Zone::bit7 ? bit7_sizes_ : bit8_sizes_;
  if (letter >= sizes[static_cast<std::size_t>(alphabet)]) {
    throw Error(errc::malformed_unit, "letter index " + std::to_string(letter) +
                                          " out of range for " + std::string(zone_name(zone)) +
                                          " alphabet " + std::to_string(alphabet));
  }
  for (const Segment& s : *segments) {
    if (letter >= s.offset && letter < s.offset + s.size) {
      return s.began + (letter - s.offset);
    }
  }
  throw Error(errc::malformed_unit, "letter index " + std::to_string(letter) +
                                        " unassigned in " + std::string(zone_name(zone)) +
                                        " alphabet " + std::to_string(alphabet));
}

std::optional<std::uint16_t> Tables::byte2_index(char32_t cp) const {
  if (auto it = byte2_forward_.find(cp); it != byte2_forward_.end()) return it->second;
  return std::nullopt;
}

std::optional<char32_t> Tables::byte2_codepoint(std::uint16_t index) const {
  if (index >= byte2_reverse_.size()) return std::nullopt;
  if (byte2_reverse_[index] == kByte2Unassigned) return std::nullopt;
  return byte2_reverse_[index];
}

bool Tables::operator==(const Tables& other) const {
  return blocks_ == other.blocks_ && byte2_reverse_ == other.byte2_reverse_ &&
         version_ == other.version_;
}

std::string Tables::serialize() const {
  std::string out;
  out += "# duncode table file\n";
  out += "version " + version_ + "\n";
  for (const Block& b : blocks_) {
    out += "block " + std::to_string(b.id) + " " + hex(b.began) + " " + hex(b.end) + " " +
           std::string(zone_name(b.zone));
    if (b.alphabet) out += " alphabet=" + std::to_string(*b.alphabet);
    if (b.mother_id) {
      out += " mother=" + std::to_string(*b.mother_id);
      out += " offset=" + std::to_string(b.child_offset);
    }
    out += " # " + b.name + "\n";
  }
  for (std::size_t i = 0; i < byte2_reverse_.size(); ++i) {
    if (byte2_reverse_[i] == kByte2Unassigned) continue;
    out += "byte2 " + hex(static_cast<std::uint32_t>(i)) + " " + hex(byte2_reverse_[i]) + "\n";
  }
  return out;
}

Tables Tables::parse(std::string_view text) {
  Tables t;
  t.byte2_reverse_.assign(kByte2Slots, kByte2Unassigned);
  bool saw_version = false;
  LineMap block_lines;  // id -> line, for diagnostics

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);

    // A block line carries its name after '#'; everywhere else '#' starts a comment.
    std::string_view name;
    if (std::size_t hash = line.find('#'); hash != std::string_view::npos) {
      name = line.substr(hash + 1);
      while (!name.empty() && (name.front() == ' ' || name.front() == '\t')) name.remove_prefix(1);
      while (!name.empty() && (name.back() == ' ' || name.back() == '\t')) name.remove_suffix(1);
      line = line.substr(0, hash);
    }
    const auto fields = split_fields(line);
    if (fields.empty()) {
      if (pos > text.size()) break;
      continue;
    }

    if (fields[0] == "version") {
      if (fields.size() != 2) parse_fail(line_no, "version takes one value");
      if (saw_version) parse_fail(line_no, "duplicate version line");
      t.version_ = std::string(fields[1]);
      saw_version = true;
    } else if (fields[0] == "block") {
      if (fields.size() < 5) parse_fail(line_no, "block needs id, range and zone");
      Block b;
      std::uint32_t began = 0;
      std::uint32_t end = 0;
      if (!parse_int(fields[1], b.id)) parse_fail(line_no, "bad block id");
      if (!parse_hex(fields[2], began) || !parse_hex(fields[3], end)) {
        parse_fail(line_no, "bad code point range");
      }
      if (began > kMaxScalar || end > kMaxScalar || began > end) {
        parse_fail(line_no, "bad code point range");
      }
      b.began = began;
      b.end = end;
      if (!zone_from_name(fields[4], b.zone)) {
        parse_fail(line_no, "unknown zone '" + std::string(fields[4]) + "'");
      }
      if (b.zone == Zone::ascii || b.zone == Zone::isolate) {
        parse_fail(line_no, "zone '" + std::string(fields[4]) + "' takes no block entries");
      }
      bool saw_offset = false;
      for (std::size_t i = 5; i < fields.size(); ++i) {
        const std::string_view f = fields[i];
        int value = 0;
        if (f.starts_with("alphabet=") && parse_int(f.substr(9), value)) {
          b.alphabet = value;
        } else if (f.starts_with("mother=") && parse_int(f.substr(7), value)) {
          b.mother_id = value;
        } else if (f.starts_with("offset=") && parse_int(f.substr(7), value) && value >= 0) {
          b.child_offset = static_cast<std::uint32_t>(value);
          saw_offset = true;
        } else {
          parse_fail(line_no, "unknown field '" + std::string(f) + "'");
        }
      }
      if (b.mother_id && !saw_offset) parse_fail(line_no, "child block needs offset=");
      b.name = std::string(name);
      block_lines.emplace(b.id, line_no);
      t.blocks_.push_back(std::move(b));
    } else if (fields[0] == "byte2") {
      if (fields.size() != 3) parse_fail(line_no, "byte2 needs index and code point");
      std::uint32_t index = 0;
      std::uint32_t cp = 0;
      if (!parse_hex(fields[1], index) || index >= kByte2Slots) {
        parse_fail(line_no, "byte2 index out of range");
      }
      if (!parse_hex(fields[2], cp) || !is_scalar_value(cp)) {
        parse_fail(line_no, "byte2 code point is not a scalar value");
      }
      if (t.byte2_reverse_[index] != kByte2Unassigned) {
        parse_fail(line_no, "duplicate byte2 index " + std::string(fields[1]));
      }
      if (!t.byte2_forward_.emplace(cp, static_cast<std::uint16_t>(index)).second) {
        parse_fail(line_no, "code point mapped to two byte2 indexes");
      }
      t.byte2_reverse_[index] = cp;
    } else {
      parse_fail(line_no, "unknown line type '" + std::string(fields[0]) + "'");
    }
    if (pos > text.size()) break;
  }

  if (!saw_version) throw Error(errc::parse_error, "missing version line");
  t.finalize(&block_lines);
  return t;
}

Tables Tables::load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(errc::io_error, "cannot open table file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse(buffer.str());
}

}  // namespace duncode
