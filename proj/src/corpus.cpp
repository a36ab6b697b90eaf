#include "duncode/corpus.hpp"

#include <fstream>
#include <sstream>

#include "duncode/error.hpp"
#include "duncode/unicode.hpp"

namespace duncode::corpus {

namespace {

// Longest prefix of valid UTF-8 `text` not exceeding max_bytes, cut at a
// character boundary.
std::string_view truncate_on_boundary(std::string_view text, std::uint64_t max_bytes) {
  if (text.size() <= max_bytes) return text;
  std::size_t cut = static_cast<std::size_t>(max_bytes);
  while (cut > 0 && (static_cast<std::uint8_t>(text[cut]) & 0xC0) == 0x80) --cut;
  return text.substr(0, cut);
}

std::string decode_entities(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  std::size_t i = 0;
  while (i < s.size()) {
    if (s[i] != '&') {
      out += s[i++];
      continue;
    }
    const std::size_t semi = s.find(';', i);
    if (semi == std::string_view::npos || semi - i > 12) {
      out += s[i++];
      continue;
    }
    const std::string_view entity = s.substr(i + 1, semi - i - 1);
    if (entity == "lt") {
      out += '<';
    } else if (entity == "gt") {
      out += '>';
    } else if (entity == "amp") {
      out += '&';
    } else if (entity == "quot") {
      out += '"';
    } else if (entity == "apos") {
      out += '\'';
    } else if (entity.starts_with("#")) {
      char32_t cp = 0;
      bool ok = entity.size() > 1;
      if (entity.size() > 2 && (entity[1] == 'x' || entity[1] == 'X')) {
        for (char c : entity.substr(2)) {
          if (c >= '0' && c <= '9') {
            cp = cp * 16 + static_cast<char32_t>(c - '0');
          } else if (c >= 'a' && c <= 'f') {
            cp = cp * 16 + static_cast<char32_t>(c - 'a' + 10);
          } else if (c >= 'A' && c <= 'F') {
            cp = cp * 16 + static_cast<char32_t>(c - 'A' + 10);
          } else {
            ok = false;
            break;
          }
        }
      } else {
        for (char c : entity.substr(1)) {
          if (c < '0' || c > '9') {
            ok = false;
            break;
          }
          cp = cp * 10 + static_cast<char32_t>(c - '0');
        }
      }
      if (ok && is_scalar_value(cp) && cp != 0) {
        append_utf8(cp, out);
      } else {
        out += s.substr(i, semi - i + 1);
      }
    } else {
      out += s.substr(i, semi - i + 1);
    }
    i = semi + 1;
  }
  return out;
}

// Removes nested open..close spans, e.g. {{..}} and {|..|}. An unterminated
// span is dropped through the end of the text.
std::string remove_spans(std::string_view s, std::string_view open, std::string_view close) {
  std::string out;
  out.reserve(s.size());
  int depth = 0;
  std::size_t i = 0;
  while (i < s.size()) {
    if (s.substr(i).starts_with(open)) {
      ++depth;
      i += open.size();
    } else if (depth > 0 && s.substr(i).starts_with(close)) {
      --depth;
      i += close.size();
    } else if (depth == 0) {
      out += s[i++];
    } else {
      ++i;
    }
  }
  return out;
}

std::string remove_comments(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  std::size_t i = 0;
  while (i < s.size()) {
    if (s.substr(i).starts_with("<!--")) {
      const std::size_t end = s.find("-->", i + 4);
      i = end == std::string_view::npos ? s.size() : end + 3;
    } else {
      out += s[i++];
    }
  }
  return out;
}

std::string remove_tags(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  std::size_t i = 0;
  while (i < s.size()) {
    if (s[i] == '<') {
      const std::size_t end = s.find('>', i + 1);
      if (end == std::string_view::npos) break;
      i = end + 1;
    } else {
      out += s[i++];
    }
  }
  return out;
}

std::string rewrite_links(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  std::size_t i = 0;
  while (i < s.size()) {
    if (s.substr(i).starts_with("[[")) {
      const std::size_t end = s.find("]]", i + 2);
      if (end == std::string_view::npos) {
        out += s.substr(i);
        break;
      }
      const std::string_view inner = s.substr(i + 2, end - i - 2);
      const std::size_t pipe = inner.rfind('|');
      out += pipe == std::string_view::npos ? inner : inner.substr(pipe + 1);
      i = end + 2;
    } else if (s[i] == '[') {
      // External link: [url], or [url label] keeping the label.
      const std::size_t end = s.find(']', i + 1);
      if (end == std::string_view::npos) {
        out += s[i++];
        continue;
      }
      const std::string_view inner = s.substr(i + 1, end - i - 1);
      const std::size_t space = inner.find(' ');
      if (space != std::string_view::npos) out += inner.substr(space + 1);
      i = end + 1;
    } else {
      out += s[i++];
    }
  }
  return out;
}

std::string remove_quote_markup(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  std::size_t i = 0;
  while (i < s.size()) {
    if (s[i] == '\'' && i + 1 < s.size() && s[i + 1] == '\'') {
      i += 2;
      while (i < s.size() && s[i] == '\'') ++i;
    } else {
      out += s[i++];
    }
  }
  return out;
}

struct TagScanner {
  std::string_view xml;
  std::size_t pos = 0;

  // Finds the next element start tag, returning its name. Skips comments,
  // processing instructions and closing tags.
  bool next_open(std::string& name, bool& self_closing, std::size_t& content_start) {
    while (true) {
      const std::size_t lt = xml.find('<', pos);
      if (lt == std::string_view::npos) return false;
      if (xml.substr(lt).starts_with("<!--")) {
        const std::size_t end = xml.find("-->", lt);
        if (end == std::string_view::npos) {
          throw Error(errc::parse_error, "unterminated XML comment at offset " +
                                             std::to_string(lt), lt);
        }
        pos = end + 3;
        continue;
      }
      const std::size_t gt = xml.find('>', lt);
      if (gt == std::string_view::npos) {
        throw Error(errc::parse_error, "unterminated tag at offset " + std::to_string(lt), lt);
      }
      pos = gt + 1;
      std::string_view tag = xml.substr(lt + 1, gt - lt - 1);
      if (tag.empty() || tag[0] == '/' || tag[0] == '?' || tag[0] == '!') continue;
      self_closing = tag.ends_with("/");
      if (self_closing) tag.remove_suffix(1);
      const std::size_t name_end = tag.find_first_of(" \t\r\n");
      name = std::string(name_end == std::string_view::npos ? tag : tag.substr(0, name_end));
      content_start = gt + 1;
      return true;
    }
  }

  // Content of the element whose start tag was just consumed.
  std::string_view element_text(std::string_view name, std::size_t content_start) {
    const std::string closing = "</" + std::string(name) + ">";
    const std::size_t end = xml.find(closing, content_start);
    if (end == std::string_view::npos) {
      throw Error(errc::parse_error,
                  "unterminated <" + std::string(name) + "> element at offset " +
                      std::to_string(content_start),
                  content_start);
    }
    pos = end + closing.size();
    return xml.substr(content_start, end - content_start);
  }
};

}  // namespace

std::string strip_wikitext(std::string_view text) {
  std::string s = remove_comments(text);
  s = remove_spans(s, "{{", "}}");
  s = remove_spans(s, "{|", "|}");
  s = remove_tags(s);
  s = rewrite_links(s);
  s = remove_quote_markup(s);
  return s;
}

std::string wikidump_to_text(std::string_view xml, std::uint64_t max_bytes) {
  std::string out;
  TagScanner scanner{xml};
  std::string name;
  bool self_closing = false;
  std::size_t content_start = 0;

  while (out.size() < max_bytes && scanner.next_open(name, self_closing, content_start)) {
    if (name != "page" || self_closing) continue;
    bool keep = true;
    std::string page_text;
    // Scan the page's children until </page>.
    while (true) {
      const std::size_t before = scanner.pos;
      std::size_t close = xml.find("</page>", before);
      if (close == std::string_view::npos) {
        throw Error(errc::parse_error,
                    "unterminated <page> element at offset " + std::to_string(before), before);
      }
      std::string child;
      bool child_self_closing = false;
      std::size_t child_content = 0;
      if (!scanner.next_open(child, child_self_closing, child_content) ||
          child_content > close) {
        scanner.pos = close + 7;
        break;
      }
      if (child == "redirect") {
        keep = false;
        if (!child_self_closing) scanner.element_text(child, child_content);
      } else if (child == "ns") {
        if (scanner.element_text(child, child_content) != "0") keep = false;
      } else if (child == "text") {
        if (!child_self_closing) page_text = std::string(scanner.element_text(child, child_content));
      } else if (!child_self_closing && (child == "title" || child == "id" ||
                                         child == "timestamp" || child == "comment" ||
                                         child == "model" || child == "format" ||
                                         child == "username" || child == "ip" ||
                                         child == "parentid" || child == "sha1" ||
                                         child == "minor")) {
        scanner.element_text(child, child_content);
      }
      // Container children (revision, contributor) just recurse into the scan.
    }
    if (!keep || page_text.empty()) continue;
    std::string cleaned = strip_wikitext(decode_entities(page_text));
    if (!out.empty()) out += '\n';
    out += cleaned;
  }
  return std::string(truncate_on_boundary(out, max_bytes));
}

std::string extract_text(std::string_view content, Kind kind, std::uint64_t max_bytes) {
  if (kind == Kind::wikidump) {
    std::string text = wikidump_to_text(content, max_bytes);
    from_utf8(text);  // reject dumps that are not valid UTF-8
    return text;
  }
  const std::string_view cut = truncate_on_boundary(content, max_bytes);
  from_utf8(cut);
  return std::string(cut);
}

std::string extract(const Spec& spec) {
  if (spec.max_bytes == 0) {
    throw Error(errc::contract_violation, "max_bytes must be positive");
  }
  std::ifstream in(spec.source, std::ios::binary);
  if (!in) throw Error(errc::io_error, "cannot open corpus source: " + spec.source);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return extract_text(buffer.str(), spec.kind, spec.max_bytes);
}

}  // namespace duncode::corpus
