#include "duncode/bench.hpp"

#include <cstdio>
#include <random>

#include "duncode/encoder.hpp"
#include "duncode/error.hpp"
#include "duncode/unicode.hpp"

namespace duncode::bench {

namespace {

double safe_div(std::uint64_t a, std::uint64_t b) {
  return b == 0 ? 0.0 : static_cast<double>(a) / static_cast<double>(b);
}

std::string fixed2(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", value);
  return buf;
}

bool needs_csv_quotes(std::string_view s) {
  return s.find_first_of(",\"\r\n") != std::string_view::npos;
}

std::string csv_field(std::string_view s) {
  if (!needs_csv_quotes(s)) return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    out += c;
    if (c == '"') out += '"';
  }
  out += '"';
  return out;
}

std::string md_field(std::string_view s) {
  std::string out;
  for (char c : s) {
    if (c == '|') out += '\\';
    out += c;
  }
  return out;
}

}  // namespace

double Row::sym_len_utf8() const { return safe_div(n_bytes_utf8, n_chars); }
double Row::sym_len_duncode() const { return safe_div(n_bytes_duncode, n_chars); }
double Row::ratio_utf8_over_duncode() const {
  return 100.0 * safe_div(n_bytes_utf8, n_bytes_duncode);
}

Row measure(std::string label, std::u32string_view text, const Tables& tables) {
  Row row;
  row.label = std::move(label);
  row.n_chars = text.size();
  row.n_bytes_utf8 = utf8_length(text);
  row.n_bytes_utf16 = utf16_length(text);
  row.n_bytes_duncode = encode(text, tables).size();
  return row;
}

Row measure_utf8(std::string label, std::string_view utf8, const Tables& tables) {
  return measure(std::move(label), from_utf8(utf8), tables);
}

std::string report(std::span<const Row> rows, Format format) {
  static constexpr const char* kColumns[] = {
      "label",        "n_chars",          "n_bytes_utf8",     "n_bytes_duncode",
      "sym_len_utf8", "sym_len_duncode", "utf8/duncode",
  };
  std::string out;
  if (format == Format::csv) {
    for (int i = 0; i < 7; ++i) {
      if (i) out += ',';
      out += kColumns[i];
    }
    out += '\n';
    for (const Row& r : rows) {
      out += csv_field(r.label);
      out += ',' + std::to_string(r.n_chars);
      out += ',' + std::to_string(r.n_bytes_utf8);
      out += ',' + std::to_string(r.n_bytes_duncode);
      out += ',' + fixed2(r.sym_len_utf8());
      out += ',' + fixed2(r.sym_len_duncode());
      out += ',' + fixed2(r.ratio_utf8_over_duncode()) + "%\n";
    }
    return out;
  }
  out += "|";
  for (const char* col : kColumns) out += " " + std::string(col) + " |";
  out += "\n|";
  for (int i = 0; i < 7; ++i) out += i == 0 ? " --- |" : " ---: |";
  out += "\n";
  for (const Row& r : rows) {
    out += "| " + md_field(r.label) + " | " + std::to_string(r.n_chars) + " | " +
           std::to_string(r.n_bytes_utf8) + " | " + std::to_string(r.n_bytes_duncode) + " | " +
           fixed2(r.sym_len_utf8()) + " | " + fixed2(r.sym_len_duncode()) + " | " +
           fixed2(r.ratio_utf8_over_duncode()) + "% |\n";
  }
  return out;
}

namespace {

// mt19937 output is pinned by the standard; std::uniform_int_distribution is
// not, so bounded draws go through a plain modulo.
class Rng {
 public:
  explicit Rng(std::uint32_t seed) : gen_(seed) {}
  std::uint32_t below(std::uint32_t n) { return gen_() % n; }
  char32_t pick(std::u32string_view pool) { return pool[below(static_cast<std::uint32_t>(pool.size()))]; }

 private:
  std::mt19937 gen_;
};

std::u32string range_pool(char32_t first, char32_t last) {
  std::u32string pool;
  for (char32_t cp = first; cp <= last; ++cp) pool += cp;
  return pool;
}

// Words of 3-8 letters with single spaces, punctuation and the occasional
// number or Latin token: ~15% whitespace plus some other ASCII, like wiki
// running text.
std::u32string word_text(Rng& rng, std::u32string_view letters, std::size_t n_chars) {
  std::u32string out;
  out.reserve(n_chars);
  while (out.size() < n_chars) {
    const std::uint32_t kind = rng.below(10);
    if (kind == 0) {
      const std::size_t digits = 2 + rng.below(3);
      for (std::size_t i = 0; i < digits && out.size() < n_chars; ++i) {
        out += static_cast<char32_t>(U'0' + rng.below(10));
      }
    } else {
      const std::size_t len = 3 + rng.below(6);
      for (std::size_t i = 0; i < len && out.size() < n_chars; ++i) out += rng.pick(letters);
    }
    if (out.size() >= n_chars) break;
    const std::uint32_t punct = rng.below(12);
    if (punct == 0) {
      out += U'.';
    } else if (punct == 1) {
      out += U',';
    } else if (punct == 2 && out.size() + 1 < n_chars) {
      out += U')';
    }
    if (out.size() >= n_chars) break;
    out += rng.below(14) == 0 ? U'\n' : U' ';
  }
  return out;
}

}  // namespace

bool profile_from_name(std::string_view name, Profile& out) {
  if (name == "english") {
    out = Profile::english;
  } else if (name == "russian") {
    out = Profile::russian;
  } else if (name == "arabic") {
    out = Profile::arabic;
  } else if (name == "chinese") {
    out = Profile::chinese;
  } else if (name == "mixed") {
    out = Profile::mixed;
  } else {
    return false;
  }
  return true;
}

std::u32string synth_profile(Profile profile, std::size_t n_chars, std::uint32_t seed,
                             const Tables& tables) {
  Rng rng(seed);
  switch (profile) {
    case Profile::english: {
      std::u32string out;
      out.reserve(n_chars);
      const std::u32string ascii = range_pool(U'a', U'z');
      // A sprinkle of curly quotes, dashes and accented Latin, as wiki text has.
      const std::u32string extras = U"éüè—“”’";
      while (out.size() < n_chars) {
        const std::size_t len = 2 + rng.below(9);
        for (std::size_t i = 0; i < len && out.size() < n_chars; ++i) {
          out += rng.below(160) == 0 ? rng.pick(extras) : rng.pick(ascii);
        }
        if (out.size() >= n_chars) break;
        if (rng.below(9) == 0) out += U',';
        if (out.size() >= n_chars) break;
        out += rng.below(15) == 0 ? U'\n' : U' ';
      }
      return out;
    }
    case Profile::russian: {
      Rng words(seed);
      return word_text(words, range_pool(0x0430, 0x044F), n_chars);
    }
    case Profile::arabic: {
      Rng words(seed);
      return word_text(words, range_pool(0x0621, 0x064A), n_chars);
    }
    case Profile::chinese: {
      // Draw from the head of the byte2 Hanzi fill: frequent characters with
      // 2-byte units. CJK text carries almost no ASCII whitespace.
      std::u32string pool;
      for (std::uint16_t index = 0; index < kByte2Slots && pool.size() < 3000; ++index) {
        const auto cp = tables.byte2_codepoint(index);
        if (cp && *cp >= 0x4E00 && *cp <= 0x9FFF) pool += *cp;
      }
      if (pool.empty()) {
        throw Error(errc::resource_error, "tables carry no byte2 Hanzi for the chinese profile");
      }
      std::u32string out;
      out.reserve(n_chars);
      while (out.size() < n_chars) {
        const std::size_t run = 6 + rng.below(20);
        for (std::size_t i = 0; i < run && out.size() < n_chars; ++i) out += rng.pick(pool);
        if (out.size() < n_chars) out += rng.below(10) == 0 ? U'\n' : U'。';
      }
      return out;
    }
    case Profile::mixed: {
      const std::u32string pools[] = {
          range_pool(U'a', U'z') + U"    ",
          range_pool(0x0391, 0x03A9),   // Greek capitals
          range_pool(0x0430, 0x044F),   // Cyrillic
          range_pool(0x0621, 0x064A),   // Arabic
          range_pool(0x0905, 0x0939),   // Devanagari
          range_pool(0x4E00, 0x4E2F),   // Hanzi, mostly byte2-mapped
          range_pool(0xAC00, 0xAC7F),   // Hangul, isolate
          range_pool(0x10330, 0x1034A), // Gothic, astral bit7
      };
      std::u32string out;
      out.reserve(n_chars);
      while (out.size() < n_chars) {
        const std::u32string& pool = pools[rng.below(std::size(pools))];
        const std::size_t run = 1 + rng.below(12);
        for (std::size_t i = 0; i < run && out.size() < n_chars; ++i) out += rng.pick(pool);
      }
      return out;
    }
  }
  throw Error(errc::contract_violation, "unknown profile");
}

}  // namespace duncode::bench
