#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "duncode/codec.hpp"

namespace duncode {

/// A contiguous code-point range with a zone assignment. Small blocks can be
/// merged into the alphabet of a mother block; such children carry the
/// mother's id and the letter-index offset where their range begins.
struct Block {
  int id = 0;
  char32_t began = 0;
  char32_t end = 0;
  Zone zone = Zone::byte2;
  std::optional<int> alphabet;   // bit7/bit8 only
  std::optional<int> mother_id;  // child blocks only
  std::uint32_t child_offset = 0;
  std::string name;

  std::uint32_t size() const {
    return static_cast<std::uint32_t>(end) - static_cast<std::uint32_t>(began) + 1;
  }
  bool operator==(const Block&) const = default;
};

struct Classification {
  Zone zone = Zone::isolate;
  int block_id = -1;  // -1 when no block covers the code point
  std::optional<int> alphabet;
  std::uint32_t letter = 0;  // index within the alphabet; the code point itself for ascii/isolate
  std::optional<std::uint16_t> byte2;
};

/// Immutable registry: block ranges sorted by start, per-zone alphabet
/// numbering, and the 2^14-entry hot-character map for the byte2 zone.
/// Safe to share across concurrent encoders and decoders.
class Tables {
 public:
  Tables() = default;

  /// Builds the bundled default registry. Deterministic: repeated calls
  /// serialize to identical bytes.
  static Tables build_default();
  /// Same, with a caller-supplied frequency list (UTF-8, one character per
  /// line, descending frequency). Throws Error(resource_error) if too short.
  static Tables build_default(std::string_view hanzi_frequency);

  /// Parses the line-oriented table format; validates every invariant and
  /// reports violations with a line number.
  static Tables parse(std::string_view text);
  static Tables load(const std::string& path);

  std::string serialize() const;

  /// Total classification over Unicode scalar values. Non-scalar input
  /// throws Error(invalid_input).
  Classification classify(char32_t cp) const;

  /// Inverse of classify for compressible zones: maps (zone, alphabet,
  /// letter index) back to a code point. Out-of-range or unassigned indexes
  /// throw Error(malformed_unit).
  char32_t lookup_letter(Zone zone, int alphabet, std::uint32_t letter) const;

  bool has_alphabet(Zone zone, int alphabet) const;
  /// Usable letters of an alphabet (the pad sentinel slot is excluded).
  std::uint32_t alphabet_letters(Zone zone, int alphabet) const;

  std::optional<std::uint16_t> byte2_index(char32_t cp) const;
  std::optional<char32_t> byte2_codepoint(std::uint16_t index) const;
  std::size_t byte2_count() const { return byte2_forward_.size(); }

  const std::vector<Block>& blocks() const { return blocks_; }
  const std::string& version() const { return version_; }

  bool operator==(const Tables& other) const;

 private:
  struct Segment {
    std::uint32_t offset = 0;  // first letter index of this range
    std::uint32_t size = 0;
    char32_t began = 0;
    int block_id = 0;
  };

  // Sorts, validates, builds the alphabet indexes. `lines` (block id ->
  // source line) lets parse errors name the offending line.
  using LineMap = std::unordered_map<int, std::size_t>;
  void finalize(const LineMap* lines = nullptr);
  const std::vector<Segment>* alphabet_segments(Zone zone, int alphabet) const;

  std::vector<Block> blocks_;  // sorted by began
  std::unordered_map<char32_t, std::uint16_t> byte2_forward_;
  std::vector<char32_t> byte2_reverse_;  // kByte2Slots entries, kByte2Unassigned sentinel
  std::string version_;

  std::vector<std::vector<Segment>> bit7_alphabets_;
  std::vector<std::vector<Segment>> bit8_alphabets_;
  std::vector<std::uint32_t> bit7_sizes_;  // total letter indexes per alphabet
  std::vector<std::uint32_t> bit8_sizes_;
};

inline constexpr char32_t kByte2Unassigned = 0xFFFFFFFF;

/// The frequency list compiled into the library (mirrors data/hanzi_frequency.txt).
std::string_view bundled_hanzi_frequency();

}  // namespace duncode
