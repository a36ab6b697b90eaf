#include "duncode/encoder.hpp"

#include "duncode/error.hpp"
#include "duncode/unicode.hpp"

namespace duncode {

namespace {

bool compressible(const Classification& c) {
  if (c.zone != Zone::bit7 && c.zone != Zone::bit8) return false;
  // The top letter index is the pad sentinel; such characters never join runs.
  return c.letter != zone_pad(c.zone);
}

int single_cost(const Classification& c) { return c.byte2 ? 2 : 3; }

}  // namespace

void Encoder::push(char32_t cp, std::string& out) {
  const Classification c = tables_->classify(cp);
  const bool joins = compressible(c);

  if (pending_n_ > 0) {
    const Classification& head = pending_[0].cls;
    if (joins && c.zone == head.zone && c.alphabet == head.alphabet) {
      if (pending_n_ == 2) {
        pack_unit(Unit::compressed(c.zone, static_cast<std::uint8_t>(*c.alphabet),
                                   static_cast<std::uint8_t>(pending_[0].cls.letter),
                                   static_cast<std::uint8_t>(pending_[1].cls.letter),
                                   static_cast<std::uint8_t>(c.letter)),
                  out);
        pending_n_ = 0;
      } else {
        pending_[pending_n_++] = Pending{cp, c};
      }
      return;
    }
    drain(out);
  }

  if (joins) {
    pending_[0] = Pending{cp, c};
    pending_n_ = 1;
    return;
  }
  emit_single(cp, c, out);
}

void Encoder::flush(std::string& out) { drain(out); }

void Encoder::drain(std::string& out) {
  if (pending_n_ == 1) {
    emit_single(pending_[0].cp, pending_[0].cls, out);
  } else if (pending_n_ == 2) {
    const int individually = single_cost(pending_[0].cls) + single_cost(pending_[1].cls);
    if (individually > kMaxUnitBytes) {
      const Classification& head = pending_[0].cls;
      pack_unit(Unit::compressed(head.zone, static_cast<std::uint8_t>(*head.alphabet),
                                 static_cast<std::uint8_t>(head.letter),
                                 static_cast<std::uint8_t>(pending_[1].cls.letter)),
                out);
    } else {
      emit_single(pending_[0].cp, pending_[0].cls, out);
      emit_single(pending_[1].cp, pending_[1].cls, out);
    }
  }
  pending_n_ = 0;
}

void Encoder::emit_single(char32_t cp, const Classification& cls, std::string& out) {
  if (cls.zone == Zone::ascii) {
    out += static_cast<char>(cp);
  } else if (cls.byte2) {
    pack_unit(Unit::byte2(*cls.byte2), out);
  } else {
    pack_unit(Unit::isolate(cp), out);
  }
}

std::string encode(std::u32string_view text, const Tables& tables) {
  std::string out;
  out.reserve(text.size() + text.size() / 2);
  Encoder encoder(tables);
  for (char32_t cp : text) encoder.push(cp, out);
  encoder.flush(out);
  return out;
}

std::string encode_utf8(std::string_view utf8, const Tables& tables) {
  return encode(from_utf8(utf8), tables);
}

}  // namespace duncode
