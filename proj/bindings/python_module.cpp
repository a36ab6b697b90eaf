#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <memory>

#include "duncode/bench.hpp"
#include "duncode/corpus.hpp"
#include "duncode/decoder.hpp"
#include "duncode/encoder.hpp"
#include "duncode/error.hpp"
#include "duncode/unicode.hpp"

namespace py = pybind11;
using namespace duncode;

namespace {

std::u32string str_to_u32(const py::str& text) {
  try {
    return text.cast<std::u32string>();
  } catch (const py::cast_error&) {
    throw Error(errc::invalid_input, "text is not a sequence of Unicode scalar values");
  }
}

py::dict classification_dict(const Classification& c) {
  py::dict d;
  d["zone"] = std::string(zone_name(c.zone));
  d["block_id"] = c.block_id;
  if (c.alphabet) {
    d["alphabet"] = *c.alphabet;
  } else {
    d["alphabet"] = py::none();
  }
  d["letter"] = c.letter;
  if (c.byte2) {
    d["byte2"] = *c.byte2;
  } else {
    d["byte2"] = py::none();
  }
  return d;
}

}  // namespace

PYBIND11_MODULE(_duncode, m) {
  m.doc() = "Duncode text codec: encode, decode, inspect, measure";

  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      switch (e.code()) {
        case errc::io_error:
          PyErr_SetString(PyExc_OSError, e.what());
          break;
        case errc::contract_violation:
          PyErr_SetString(PyExc_RuntimeError, e.what());
          break;
        default:
          PyErr_SetString(PyExc_ValueError, e.what());
          break;
      }
    }
  });

  py::class_<Tables, std::shared_ptr<Tables>>(m, "Tables")
      .def_static("default", []() { return std::make_shared<Tables>(Tables::build_default()); },
                  "Bundled default registry")
      .def_static(
          "from_text",
          [](const std::string& text) { return std::make_shared<Tables>(Tables::parse(text)); },
          py::arg("text"))
      .def_static(
          "from_file",
          [](const std::string& path) { return std::make_shared<Tables>(Tables::load(path)); },
          py::arg("path"))
      .def("serialize", &Tables::serialize)
      .def("classify",
           [](const Tables& t, std::uint32_t cp) {
             return classification_dict(t.classify(static_cast<char32_t>(cp)));
           },
           py::arg("codepoint"))
      .def_property_readonly("version", &Tables::version)
      .def_property_readonly("block_count", [](const Tables& t) { return t.blocks().size(); })
      .def_property_readonly("byte2_count", &Tables::byte2_count)
      .def("__eq__", [](const Tables& a, const Tables& b) { return a == b; })
      .def("__repr__", [](const Tables& t) {
        return "<duncode.Tables version='" + t.version() + "' blocks=" +
               std::to_string(t.blocks().size()) + ">";
      });

  py::class_<bench::Row>(m, "Row")
      .def_readonly("label", &bench::Row::label)
      .def_readonly("n_chars", &bench::Row::n_chars)
      .def_readonly("n_bytes_utf8", &bench::Row::n_bytes_utf8)
      .def_readonly("n_bytes_utf16", &bench::Row::n_bytes_utf16)
      .def_readonly("n_bytes_duncode", &bench::Row::n_bytes_duncode)
      .def_property_readonly("sym_len_utf8", &bench::Row::sym_len_utf8)
      .def_property_readonly("sym_len_duncode", &bench::Row::sym_len_duncode)
      .def_property_readonly("ratio_utf8_over_duncode", &bench::Row::ratio_utf8_over_duncode)
      .def("__repr__", [](const bench::Row& r) {
        return "<duncode.Row label='" + r.label + "' chars=" + std::to_string(r.n_chars) + ">";
      });

  m.def(
      "encode",
      [](const py::str& text, const std::shared_ptr<Tables>& tables) {
        return py::bytes(encode(str_to_u32(text), *tables));
      },
      py::arg("text"), py::arg("tables"), "Encode text to Duncode bytes");

  m.def(
      "decode",
      [](const py::bytes& data, const std::shared_ptr<Tables>& tables, bool strict) {
        const std::string bytes = data;
        return decode_to_utf8(bytes, *tables, strict ? Policy::strict : Policy::replace);
      },
      py::arg("data"), py::arg("tables"), py::arg("strict") = false,
      "Decode Duncode bytes to text; malformed units become U+FFFD unless strict");

  m.def(
      "resync",
      [](const py::bytes& data, std::size_t offset) {
        const std::string bytes = data;
        if (offset > bytes.size()) throw Error(errc::invalid_input, "offset past end of data");
        return resync(bytes, offset);
      },
      py::arg("data"), py::arg("offset"), "First unit boundary at or after offset");

  m.def(
      "inspect",
      [](const py::bytes& data, const std::shared_ptr<Tables>& tables) {
        const std::string bytes = data;
        const Segmented parts = segment(bytes);
        py::list out;
        std::size_t offset = 0;
        for (std::string_view unit : parts.units) {
          py::dict entry;
          entry["offset"] = offset;
          entry["size"] = unit.size();
          try {
            const Unit u = unpack_unit(unit);
            entry["zone"] = std::string(zone_name(u.zone));
            if (u.zone == Zone::bit7 || u.zone == Zone::bit8) {
              entry["alphabet"] = static_cast<int>(u.alphabet);
              py::list letters;
              for (int i = 0; i < u.symbol_count(); ++i) {
                letters.append(static_cast<int>(u.letters[static_cast<std::size_t>(i)]));
              }
              entry["letters"] = letters;
            } else {
              entry["value"] = u.payload;
            }
            entry["text"] = to_utf8(decode_unit(unit, *tables, Policy::strict, offset));
            entry["canonical"] = is_canonical_unit(unit, *tables);
          } catch (const Error& e) {
            entry["error"] = std::string(e.what());
          }
          out.append(entry);
          offset += unit.size();
        }
        if (!parts.carry.empty()) {
          py::dict entry;
          entry["offset"] = offset;
          entry["size"] = parts.carry.size();
          entry["error"] = std::string("truncated unit");
          out.append(entry);
        }
        return out;
      },
      py::arg("data"), py::arg("tables"), "One entry per unit: offset, zone, letters, text");

  m.def(
      "measure",
      [](const std::string& label, const py::str& text, const std::shared_ptr<Tables>& tables) {
        return bench::measure(label, str_to_u32(text), *tables);
      },
      py::arg("label"), py::arg("text"), py::arg("tables"),
      "Byte counts and symbol lengths for one text");

  m.def(
      "report",
      [](const std::vector<bench::Row>& rows, const std::string& format) {
        return bench::report(rows, format == "markdown" ? bench::Format::markdown
                                                        : bench::Format::csv);
      },
      py::arg("rows"), py::arg("format") = "csv", "Render rows as csv or markdown");

  m.def(
      "synth_profile",
      [](const std::string& profile, std::size_t n_chars, std::uint32_t seed,
         const std::shared_ptr<Tables>& tables) {
        bench::Profile p;
        if (!bench::profile_from_name(profile, p)) {
          throw Error(errc::invalid_input, "unknown profile: " + profile);
        }
        return py::cast(bench::synth_profile(p, n_chars, seed, *tables));
      },
      py::arg("profile"), py::arg("n_chars"), py::arg("seed"), py::arg("tables"),
      "Deterministic synthetic corpus (english/russian/arabic/chinese/mixed)");

  m.def(
      "extract",
      [](const std::string& path, const std::string& kind, std::uint64_t max_bytes) {
        corpus::Spec spec;
        spec.source = path;
        spec.max_bytes = max_bytes;
        if (kind == "wikidump") {
          spec.kind = corpus::Kind::wikidump;
        } else if (kind == "plain") {
          spec.kind = corpus::Kind::plain;
        } else {
          throw Error(errc::invalid_input, "unknown corpus kind: " + kind);
        }
        return corpus::extract(spec);
      },
      py::arg("path"), py::arg("kind") = "plain", py::arg("max_bytes") = std::uint64_t(1) << 20,
      "Extract benchmark text from a plain file or MediaWiki XML export");
}
