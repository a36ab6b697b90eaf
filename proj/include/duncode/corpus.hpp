#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace duncode::corpus {

enum class Kind { plain, wikidump };

struct Spec {
  std::string source;  // file path
  std::string label;
  std::uint64_t max_bytes = 1u << 20;
  Kind kind = Kind::plain;
};

/// Reads and extracts one corpus source to UTF-8 text, truncated at
/// max_bytes without splitting a character. Unreadable files throw
/// Error(io_error); malformed XML throws Error(parse_error) with offset.
std::string extract(const Spec& spec);

/// Same, over in-memory content.
std::string extract_text(std::string_view content, Kind kind, std::uint64_t max_bytes);

/// Minimal wikitext cleanup: comments, templates {{..}}, tables {|..|} and
/// tag markers are removed; [[target|label]] keeps the label; quote markup
/// is dropped. Behavior is pinned by fixtures, not by any wikitext grammar.
std::string strip_wikitext(std::string_view text);

/// Streams over a MediaWiki pages-articles export, concatenating stripped
/// article text with newlines up to max_bytes.
std::string wikidump_to_text(std::string_view xml, std::uint64_t max_bytes);

}  // namespace duncode::corpus
