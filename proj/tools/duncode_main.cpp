// duncode CLI: encode, decode, inspect, bench, tables.
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "duncode/bench.hpp"
#include "duncode/corpus.hpp"
#include "duncode/decoder.hpp"
#include "duncode/encoder.hpp"
#include "duncode/error.hpp"
#include "duncode/unicode.hpp"

using namespace duncode;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitData = 1;
constexpr int kExitUsage = 2;
constexpr std::size_t kChunk = 64 * 1024;

class Input {
 public:
  explicit Input(const std::string& path) {
    if (path == "-") {
      stream_ = &std::cin;
    } else {
      file_.open(path, std::ios::binary);
      if (!file_) throw Error(errc::io_error, "cannot open input: " + path);
      stream_ = &file_;
    }
  }
  std::istream& stream() { return *stream_; }

 private:
  std::ifstream file_;
  std::istream* stream_ = nullptr;
};

class Output {
 public:
  explicit Output(const std::string& path) {
    if (path == "-") {
      stream_ = &std::cout;
    } else {
      file_.open(path, std::ios::binary | std::ios::trunc);
      if (!file_) throw Error(errc::io_error, "cannot open output: " + path);
      stream_ = &file_;
    }
  }
  std::ostream& stream() { return *stream_; }
  void finish() {
    stream_->flush();
    if (!*stream_) throw Error(errc::io_error, "write failed");
  }

 private:
  std::ofstream file_;
  std::ostream* stream_ = nullptr;
};

std::string read_all(std::istream& in) {
  return std::string(std::istreambuf_iterator<char>(in), {});
}

Tables load_tables(const std::string& path) {
  if (path.empty()) return Tables::build_default();
  return Tables::load(path);
}

int run_encode(const std::string& input, const std::string& output, const std::string& tables) {
  const Tables t = load_tables(tables);
  Input in(input);
  Output out(output);
  Encoder encoder(t);
  std::string buffer(kChunk, '\0');
  std::string pending;  // undecoded UTF-8 tail across chunk boundaries
  std::string bytes;
  std::u32string chars;
  std::size_t offset = 0;
  while (in.stream()) {
    in.stream().read(buffer.data(), static_cast<std::streamsize>(buffer.size()));
    const std::size_t got = static_cast<std::size_t>(in.stream().gcount());
    if (got == 0) break;
    pending.append(buffer.data(), got);
    chars.clear();
    std::size_t consumed;
    try {
      consumed = decode_utf8_prefix(pending, chars);
    } catch (const Error& e) {
      throw Error(errc::invalid_input,
                  "invalid UTF-8 at offset " + std::to_string(offset + e.offset()));
    }
    bytes.clear();
    for (char32_t cp : chars) encoder.push(cp, bytes);
    out.stream().write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    pending.erase(0, consumed);
    offset += consumed;
  }
  if (!pending.empty()) {
    throw Error(errc::invalid_input,
                "truncated UTF-8 sequence at offset " + std::to_string(offset));
  }
  bytes.clear();
  encoder.flush(bytes);
  out.stream().write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  out.finish();
  return kExitOk;
}

int run_decode(const std::string& input, const std::string& output, const std::string& tables,
               bool strict, bool strict_canonical) {
  const Tables t = load_tables(tables);
  Input in(input);
  Output out(output);
  Decoder decoder(t, strict ? Policy::strict : Policy::replace);
  std::string buffer(kChunk, '\0');
  std::u32string chars;
  std::size_t noncanonical = 0;

  // Canonicality checking needs unit boundaries, so it keeps its own carry.
  std::string canon_carry;
  std::size_t canon_offset = 0;
  const auto scan_canonical = [&](std::string_view chunk, bool final) {
    if (!strict_canonical) return;
    canon_carry.append(chunk);
    const Segmented parts = segment(canon_carry);
    for (std::string_view unit : parts.units) {
      if (!is_canonical_unit(unit, t)) {
        std::fprintf(stderr, "duncode: non-canonical unit at offset %zu\n", canon_offset);
        ++noncanonical;
      }
      canon_offset += unit.size();
    }
    const std::string rest(parts.carry);
    canon_carry = rest;
    if (final && !canon_carry.empty()) {
      std::fprintf(stderr, "duncode: non-canonical unit at offset %zu\n", canon_offset);
      ++noncanonical;
    }
  };

  while (in.stream()) {
    in.stream().read(buffer.data(), static_cast<std::streamsize>(buffer.size()));
    const std::size_t got = static_cast<std::size_t>(in.stream().gcount());
    if (got == 0) break;
    chars.clear();
    decoder.feed(std::string_view(buffer.data(), got), chars);
    scan_canonical(std::string_view(buffer.data(), got), false);
    const std::string utf8 = to_utf8(chars);
    out.stream().write(utf8.data(), static_cast<std::streamsize>(utf8.size()));
  }
  chars.clear();
  decoder.finish(chars);
  scan_canonical("", true);
  const std::string utf8 = to_utf8(chars);
  out.stream().write(utf8.data(), static_cast<std::streamsize>(utf8.size()));
  out.finish();
  return noncanonical > 0 ? kExitData : kExitOk;
}

int run_inspect(const std::string& input, const std::string& output, const std::string& tables) {
  const Tables t = load_tables(tables);
  Input in(input);
  Output out(output);
  const std::string bytes = read_all(in.stream());
  const Segmented parts = segment(bytes);
  std::size_t offset = 0;
  bool any_malformed = false;
  for (std::string_view unit : parts.units) {
    std::string line = std::to_string(offset) + ": ";
    try {
      const Unit u = unpack_unit(unit);
      const std::u32string chars = decode_unit(unit, t, Policy::strict, offset);
      line += std::string(zone_name(u.zone));
      if (u.zone == Zone::bit7 || u.zone == Zone::bit8) {
        line += " alphabet=" + std::to_string(u.alphabet);
        line += " indexes=[";
        for (int i = 0; i < u.symbol_count(); ++i) {
          char hexbuf[8];
          std::snprintf(hexbuf, sizeof hexbuf, "%s%02x", i ? " " : "",
                        u.letters[static_cast<std::size_t>(i)]);
          line += hexbuf;
        }
        line += "]";
      } else {
        char hexbuf[16];
        std::snprintf(hexbuf, sizeof hexbuf, " value=%04x", u.payload);
        line += hexbuf;
      }
      line += " \"" + to_utf8(chars) + "\"";
      if (!is_canonical_unit(unit, t)) line += " (non-canonical)";
    } catch (const Error& e) {
      line += std::string("malformed (") + e.what() + ")";
      any_malformed = true;
    }
    out.stream() << line << "\n";
    offset += unit.size();
  }
  if (!parts.carry.empty()) {
    out.stream() << offset << ": malformed (truncated unit of " << parts.carry.size()
                 << " bytes)\n";
    any_malformed = true;
  }
  out.finish();
  return any_malformed ? kExitData : kExitOk;
}

int run_bench(const std::vector<std::string>& files, const std::string& output,
              const std::string& tables, const std::string& format, std::uint64_t max_bytes,
              bool wikidump) {
  const Tables t = load_tables(tables);
  std::vector<bench::Row> rows;
  for (const std::string& path : files) {
    corpus::Spec spec;
    spec.source = path;
    spec.kind = wikidump ? corpus::Kind::wikidump : corpus::Kind::plain;
    spec.max_bytes = max_bytes;
    const std::size_t slash = path.find_last_of('/');
    spec.label = slash == std::string::npos ? path : path.substr(slash + 1);
    const std::string text = corpus::extract(spec);
    rows.push_back(bench::measure_utf8(spec.label, text, t));
  }
  Output out(output);
  out.stream() << bench::report(rows, format == "markdown" ? bench::Format::markdown
                                                           : bench::Format::csv);
  out.finish();
  return kExitOk;
}

int run_tables_dump(const std::string& output, const std::string& tables) {
  const Tables t = load_tables(tables);
  Output out(output);
  out.stream() << t.serialize();
  out.finish();
  return kExitOk;
}

int run_tables_validate(const std::string& path) {
  const Tables t = Tables::load(path);
  std::size_t mothers = 0;
  for (const Block& b : t.blocks()) mothers += !b.mother_id;
  std::printf("OK: version %s, %zu blocks (%zu mothers), %zu byte2 entries\n",
              t.version().c_str(), t.blocks().size(), mothers, t.byte2_count());
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Duncode text codec"};
  app.require_subcommand(1);

  std::string input = "-";
  std::string output = "-";
  std::string tables_path;
  bool strict = false;
  bool strict_canonical = false;
  std::string format = "csv";
  std::uint64_t max_bytes = 1u << 20;
  bool wikidump = false;
  std::vector<std::string> bench_files;
  std::string validate_path;

  auto* enc = app.add_subcommand("encode", "UTF-8 in, Duncode bytes out");
  enc->add_option("input", input, "input file, - for stdin");
  enc->add_option("-o,--output", output, "output file, - for stdout");
  enc->add_option("--tables", tables_path, "table file (default: bundled)");

  auto* dec = app.add_subcommand("decode", "Duncode bytes in, UTF-8 out");
  dec->add_option("input", input, "input file, - for stdin");
  dec->add_option("-o,--output", output, "output file, - for stdout");
  dec->add_option("--tables", tables_path, "table file (default: bundled)");
  dec->add_flag("--strict", strict, "fail on malformed units instead of emitting U+FFFD");
  dec->add_flag("--strict-canonical", strict_canonical,
                "report units the encoder would never produce");

  auto* ins = app.add_subcommand("inspect", "one line per unit: offset, zone, indexes, text");
  ins->add_option("input", input, "input file, - for stdin");
  ins->add_option("-o,--output", output, "output file, - for stdout");
  ins->add_option("--tables", tables_path, "table file (default: bundled)");

  auto* ben = app.add_subcommand("bench", "measure corpora against UTF-8");
  ben->add_option("files", bench_files, "corpus files")->required();
  ben->add_option("-o,--output", output, "output file, - for stdout");
  ben->add_option("--tables", tables_path, "table file (default: bundled)");
  ben->add_option("--format", format, "csv or markdown")
      ->check(CLI::IsMember({"csv", "markdown"}));
  ben->add_option("--max-bytes", max_bytes, "per-file extraction cap (default 1 MiB)");
  ben->add_flag("--wikidump", wikidump, "treat inputs as MediaWiki XML exports");

  auto* tab = app.add_subcommand("tables", "dump or validate table files");
  tab->require_subcommand(1);
  auto* tab_dump = tab->add_subcommand("dump", "write the active tables in text form");
  tab_dump->add_option("-o,--output", output, "output file, - for stdout");
  tab_dump->add_option("--tables", tables_path, "table file (default: bundled)");
  auto* tab_validate = tab->add_subcommand("validate", "parse a table file and report");
  tab_validate->add_option("file", validate_path, "table file to check")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (enc->parsed()) return run_encode(input, output, tables_path);
    if (dec->parsed()) return run_decode(input, output, tables_path, strict, strict_canonical);
    if (ins->parsed()) return run_inspect(input, output, tables_path);
    if (ben->parsed()) {
      return run_bench(bench_files, output, tables_path, format, max_bytes, wikidump);
    }
    if (tab_dump->parsed()) return run_tables_dump(output, tables_path);
    if (tab_validate->parsed()) return run_tables_validate(validate_path);
  } catch (const Error& e) {
    std::fprintf(stderr, "duncode: %s\n", e.what());
    return kExitData;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "duncode: %s\n", e.what());
    return kExitData;
  }
  return kExitUsage;
}
