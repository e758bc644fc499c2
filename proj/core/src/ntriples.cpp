#include "rdd/ntriples.hpp"

#include <cctype>
#include <iterator>
#include <map>
#include <optional>

namespace rdd {

NTriplesError::NTriplesError(std::string source, std::size_t line, const std::string& what)
    : std::runtime_error(source + ":" + std::to_string(line) + ": " + what),
      source_(std::move(source)),
      line_(line) {}

namespace {

void append_utf8(std::string& out, char32_t cp) {
  if (cp < 0x80) {
    out += static_cast<char>(cp);
  } else if (cp < 0x800) {
    out += static_cast<char>(0xC0 | (cp >> 6));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else if (cp < 0x10000) {
    out += static_cast<char>(0xE0 | (cp >> 12));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else {
    out += static_cast<char>(0xF0 | (cp >> 18));
    out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  }
}

class LineParser {
 public:
  LineParser(std::string_view line, std::string_view source, std::size_t line_no)
      : line_(line), source_(source), line_no_(line_no) {}

  // Returns nullopt for blank and comment-only lines.
  std::optional<Triple> parse() {
    skip_ws();
    if (at_end() || peek() == '#') return std::nullopt;
    Triple t;
    t.s = parse_subject();
    skip_ws();
    t.p = parse_iri_term("predicate");
    skip_ws();
    t.o = parse_object();
    skip_ws();
    if (at_end() || peek() != '.') fail("expected '.' terminating the triple");
    ++pos_;
    skip_ws();
    if (!at_end() && peek() != '#') fail("unexpected content after '.'");
    return t;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw NTriplesError(std::string(source_), line_no_, what);
  }

  bool at_end() const { return pos_ >= line_.size(); }
  char peek() const { return line_[pos_]; }

  void skip_ws() {
    while (!at_end() && (peek() == ' ' || peek() == '\t')) ++pos_;
  }

  Term parse_subject() {
    if (at_end()) fail("missing subject");
    if (peek() == '<') return Term::iri(parse_iriref());
    if (peek() == '_') return Term::blank(parse_blank_label());
    fail("subject must be an IRI or blank node");
  }

  Term parse_iri_term(const char* role) {
    if (at_end() || peek() != '<') fail(std::string(role) + " must be an IRI");
    return Term::iri(parse_iriref());
  }

  Term parse_object() {
    if (at_end()) fail("missing object");
    switch (peek()) {
      case '<': return Term::iri(parse_iriref());
      case '_': return Term::blank(parse_blank_label());
      case '"': return parse_literal();
      default: fail("object must be an IRI, blank node or literal");
    }
  }

  char32_t parse_uchar() {
    // Positioned after the backslash, at 'u' or 'U'.
    std::size_t digits = peek() == 'u' ? 4 : 8;
    ++pos_;
    if (pos_ + digits > line_.size()) fail("truncated unicode escape");
    char32_t cp = 0;
    for (std::size_t i = 0; i < digits; ++i) {
      char c = line_[pos_++];
      if (!std::isxdigit(static_cast<unsigned char>(c))) fail("bad hex digit in unicode escape");
      cp = cp * 16 + static_cast<char32_t>(std::isdigit(static_cast<unsigned char>(c))
                                                ? c - '0'
                                                : std::tolower(static_cast<unsigned char>(c)) - 'a' + 10);
    }
    if (cp > 0x10FFFF) fail("unicode escape out of range");
    return cp;
  }

  std::string parse_iriref() {
    ++pos_;  // '<'
    std::string iri;
    while (true) {
      if (at_end()) fail("unterminated IRI (missing '>')");
      char c = line_[pos_];
      if (c == '>') break;
      if (c == '\\') {
        ++pos_;
        if (at_end() || (peek() != 'u' && peek() != 'U')) fail("invalid escape in IRI");
        append_utf8(iri, parse_uchar());
        continue;
      }
      if (static_cast<unsigned char>(c) <= 0x20 || c == '<' || c == '"' || c == '{' || c == '}' ||
          c == '|' || c == '^' || c == '`') {
        fail("invalid character in IRI");
      }
      iri += c;
      ++pos_;
    }
    ++pos_;  // '>'
    if (!is_absolute_iri(iri)) fail("relative IRI <" + iri + "> is not allowed");
    return iri;
  }

  std::string parse_blank_label() {
    if (line_.substr(pos_, 2) != "_:") fail("malformed blank node");
    pos_ += 2;
    std::size_t start = pos_;
    auto label_char = [](unsigned char c) {
      return std::isalnum(c) || c == '_' || c == '-' || c == '.' || c >= 0x80;
    };
    while (!at_end() && label_char(static_cast<unsigned char>(peek()))) ++pos_;
    // A label may not end with '.'; give the dot back to the terminator.
    while (pos_ > start && line_[pos_ - 1] == '.') --pos_;
    if (pos_ == start) fail("empty blank node label");
    char first = line_[start];
    if (first == '-' || first == '.') fail("blank node label may not start with '" + std::string(1, first) + "'");
    return std::string(line_.substr(start, pos_ - start));
  }

  Term parse_literal() {
    ++pos_;  // opening quote
    std::string lexical;
    while (true) {
      if (at_end()) fail("unterminated literal");
      char c = line_[pos_];
      if (c == '"') break;
      if (c == '\\') {
        ++pos_;
        if (at_end()) fail("unterminated literal");
        char e = peek();
        switch (e) {
          case 't': lexical += '\t'; ++pos_; break;
          case 'b': lexical += '\b'; ++pos_; break;
          case 'n': lexical += '\n'; ++pos_; break;
          case 'r': lexical += '\r'; ++pos_; break;
          case 'f': lexical += '\f'; ++pos_; break;
          case '"': lexical += '"'; ++pos_; break;
          case '\'': lexical += '\''; ++pos_; break;
          case '\\': lexical += '\\'; ++pos_; break;
          case 'u':
          case 'U': append_utf8(lexical, parse_uchar()); break;
          default: fail(std::string("invalid escape '\\") + e + "' in literal");
        }
        continue;
      }
      lexical += c;
      ++pos_;
    }
    ++pos_;  // closing quote
    if (line_.substr(pos_, 2) == "^^") {
      pos_ += 2;
      if (at_end() || peek() != '<') fail("datatype must be an IRI");
      return Term::typed_literal(std::move(lexical), parse_iriref());
    }
    if (!at_end() && peek() == '@') {
      ++pos_;
      std::size_t start = pos_;
      while (!at_end() && std::isalpha(static_cast<unsigned char>(peek()))) ++pos_;
      if (pos_ == start) fail("empty language tag");
      while (!at_end() && peek() == '-') {
        ++pos_;
        std::size_t sub = pos_;
        while (!at_end() && std::isalnum(static_cast<unsigned char>(peek()))) ++pos_;
        if (pos_ == sub) fail("malformed language tag");
      }
      return Term::lang_literal(std::move(lexical), std::string(line_.substr(start, pos_ - start)));
    }
    return Term::literal(std::move(lexical));
  }

  std::string_view line_;
  std::string_view source_;
  std::size_t line_no_;
  std::size_t pos_ = 0;
};

}  // namespace

std::vector<Triple> parse_ntriples_triples(std::string_view input, std::string_view source) {
  std::vector<Triple> out;
  std::size_t line_no = 0;
  while (!input.empty()) {
    ++line_no;
    auto nl = input.find('\n');
    std::string_view line = input.substr(0, nl);
    input = nl == std::string_view::npos ? std::string_view{} : input.substr(nl + 1);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (auto t = LineParser(line, source, line_no).parse()) out.push_back(std::move(*t));
  }
  return out;
}

Dataset parse_ntriples(std::string_view input, std::string_view source) {
  return Dataset::from_triples(parse_ntriples_triples(input, source));
}

Dataset parse_ntriples(std::istream& in, std::string_view source) {
  std::string text{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  return parse_ntriples(text, source);
}

void DatasetBuilder::add_document(std::string_view text, std::string_view source) {
  add_triples(parse_ntriples_triples(text, source));
}

void DatasetBuilder::add_triples(std::vector<Triple> triples) {
  std::map<std::string, std::string> renames;
  auto scoped = [&](Term& t) {
    if (!t.is_blank()) return;
    auto it = renames.find(t.value);
    if (it == renames.end()) {
      std::string fresh = t.value;
      for (int n = 1; used_labels_.contains(fresh); ++n) fresh = t.value + "_" + std::to_string(n);
      used_labels_.insert(fresh);
      it = renames.emplace(t.value, fresh).first;
    }
    t.value = it->second;
  };
  for (auto& t : triples) {
    scoped(t.s);
    scoped(t.o);
  }
  for (auto& t : triples) triples_.push_back(std::move(t));
}

}  // namespace rdd
