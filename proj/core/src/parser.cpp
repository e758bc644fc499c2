#include "rdd/parser.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <set>

#include "rdd/term.hpp"
#include "rdd/vocab.hpp"

namespace rdd {

RddError::RddError(Kind kind, SourceLoc loc, const std::string& detail)
    : std::runtime_error(std::to_string(loc.line) + ":" + std::to_string(loc.column) + ": " +
                         to_string(kind) + ": " + detail),
      kind_(kind),
      loc_(loc),
      detail_(detail) {}

const char* to_string(RddError::Kind kind) {
  switch (kind) {
    case RddError::Kind::Lexical: return "lexical error";
    case RddError::Kind::Syntax: return "syntax error";
    case RddError::Kind::UnresolvedPrefix: return "unresolved prefix";
    case RddError::Kind::DuplicateClass: return "duplicate class";
    case RddError::Kind::Invariant: return "invalid constraint";
  }
  return "error";
}

const PrefixMap& well_known_prefixes() {
  static const PrefixMap prefixes = {
      {"foaf", std::string(vocab::kFoafNs)}, {"owl", std::string(vocab::kOwlNs)},
      {"rdf", std::string(vocab::kRdfNs)},   {"rdfs", std::string(vocab::kRdfsNs)},
      {"xsd", std::string(vocab::kXsdNs)},
  };
  return prefixes;
}

const std::vector<std::string>& grammar_productions() {
  static const std::vector<std::string> names = {
      "RDD",
      "PrefixDecl",
      "ClassConstraintSec",
      "PropConstraintSec",
      "ClassConstraint",
      "Key",
      "PropConstraint",
      "ConstraintList",
      "Constraint",
      "MinConstraint",
      "MaxConstraint",
      "DomainConstraint",
      "RangeConstraint",
      "PathConstraint",
      "SubPropertyConstraint",
      "PartialityConstraint",
      "TotalityConstraint",
      "WA",
      "IRIList",
      "IRISeq",
      "IRIWithRangeTypeList",
      "IRIWithRangeType",
      "RangeType",
      "IRI",
      "PrefixedName",
      "IRIREF",
      "INTEGER",
  };
  return names;
}

const char* atom_keyword(const ConstraintAtom& a) {
  static constexpr std::array<const char*, 8> names = {"MIN",  "MAX",         "DOMAIN",  "RANGE",
                                                       "PATH", "SUBPROPERTY", "PARTIAL", "TOTAL"};
  return names[a.value.index()];
}

namespace {

enum class Tok {
  Keyword,
  PName,
  IriRef,
  Integer,
  LBrace,
  RBrace,
  LParen,
  RParen,
  Comma,
  Semicolon,
  Colon,
  Slash,
  End,
};

struct Token {
  Tok kind = Tok::End;
  std::string text;    // keyword name, IRI, integer digits, or punctuation
  std::string prefix;  // PName only
  std::string local;   // PName only
  SourceLoc loc;
};

const std::set<std::string, std::less<>>& keywords() {
  static const std::set<std::string, std::less<>> kw = {
      "OWA",   "CWA",     "CLASSES", "PROPERTIES", "CLASS",       "SINGLETON", "SUBCLASS",
      "KEY",   "MIN",     "MAX",     "DOMAIN",     "RANGE",       "PATH",      "SUBPROPERTY",
      "PARTIAL", "TOTAL", "IRI",     "BNODE",      "RESOURCE",    "LITERAL",   "PREFIX",
  };
  return kw;
}

bool is_range_keyword(std::string_view word) {
  return word == "IRI" || word == "BNODE" || word == "RESOURCE" || word == "LITERAL";
}

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (true) {
      skip_ws_and_comments();
      Token t = next();
      bool end = t.kind == Tok::End;
      out.push_back(std::move(t));
      if (end) return out;
    }
  }

 private:
  static bool name_start(unsigned char c) { return std::isalpha(c) || c >= 0x80; }
  static bool name_char(unsigned char c) {
    return std::isalnum(c) || c == '_' || c == '-' || c == '.' || c >= 0x80;
  }

  [[noreturn]] void fail(SourceLoc loc, const std::string& what) const {
    throw RddError(RddError::Kind::Lexical, loc, what);
  }

  bool at_end() const { return pos_ >= text_.size(); }
  unsigned char peek(std::size_t ahead = 0) const {
    return pos_ + ahead < text_.size() ? static_cast<unsigned char>(text_[pos_ + ahead]) : 0;
  }
  SourceLoc here() const { return {line_, col_}; }

  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else if ((static_cast<unsigned char>(text_[pos_]) & 0xC0) != 0x80) {
      ++col_;
    }
    ++pos_;
  }

  void skip_ws_and_comments() {
    while (!at_end()) {
      unsigned char c = peek();
      if (c == '#') {
        while (!at_end() && peek() != '\n') advance();
      } else if (std::isspace(c)) {
        advance();
      } else {
        return;
      }
    }
  }

  Token punct(Tok kind) {
    Token t{kind, std::string(1, static_cast<char>(peek())), {}, {}, here()};
    advance();
    return t;
  }

  Token next() {
    if (at_end()) return Token{Tok::End, "end of input", {}, {}, here()};
    unsigned char c = peek();
    switch (c) {
      case '{': return punct(Tok::LBrace);
      case '}': return punct(Tok::RBrace);
      case '(': return punct(Tok::LParen);
      case ')': return punct(Tok::RParen);
      case ',': return punct(Tok::Comma);
      case ';': return punct(Tok::Semicolon);
      case '/': return punct(Tok::Slash);
      case '<': return iriref();
      default: break;
    }
    if (c == ':') {
      if (local_start(peek(1))) return pname();
      return punct(Tok::Colon);
    }
    if (std::isdigit(c)) return integer();
    if (name_start(c)) return word();
    fail(here(), std::string("unexpected character '") + static_cast<char>(c) + "'");
  }

  static bool local_start(unsigned char c) {
    return std::isalnum(c) || c == '_' || c == ':' || c == '%' || c == '\\' || c >= 0x80;
  }

  Token iriref() {
    Token t{Tok::IriRef, {}, {}, {}, here()};
    advance();
    while (true) {
      if (at_end() || peek() == '\n') fail(t.loc, "unterminated IRI reference");
      unsigned char c = peek();
      if (c == '>') break;
      if (c <= 0x20 || c == '<' || c == '"' || c == '{' || c == '}' || c == '|' || c == '^' ||
          c == '`' || c == '\\') {
        fail(here(), "invalid character in IRI reference");
      }
      t.text += static_cast<char>(c);
      advance();
    }
    advance();
    return t;
  }

  Token integer() {
    Token t{Tok::Integer, {}, {}, {}, here()};
    while (std::isdigit(peek())) {
      t.text += static_cast<char>(peek());
      advance();
    }
    if (name_start(peek())) fail(t.loc, "malformed integer '" + t.text + "'");
    return t;
  }

  // A bare word: a keyword, or the prefix part of a prefixed name.
  Token word() {
    SourceLoc loc = here();
    std::string text;
    while (name_char(peek())) {
      text += static_cast<char>(peek());
      advance();
    }
    if (peek() == ':') {
      if (text.back() == '.') fail(loc, "prefix may not end with '.'");
      return pname_after_prefix(std::move(text), loc);
    }
    std::string upper = text;
    std::transform(upper.begin(), upper.end(), upper.begin(),
                   [](unsigned char ch) { return static_cast<char>(std::toupper(ch)); });
    if (upper == "PREFIX") return Token{Tok::Keyword, "PREFIX", {}, {}, loc};
    if (keywords().contains(text)) return Token{Tok::Keyword, text, {}, {}, loc};
    fail(loc, "unknown token '" + text + "'");
  }

  Token pname() { return pname_after_prefix({}, here()); }

  Token pname_after_prefix(std::string prefix, SourceLoc loc) {
    advance();  // ':'
    std::string local;
    std::size_t raw_len = 0;  // raw characters consumed, to give back trailing dots
    while (!at_end()) {
      unsigned char c = peek();
      if (c == '\\') {
        advance();
        if (at_end() || std::isspace(peek())) fail(here(), "dangling escape in local name");
        local += static_cast<char>(peek());
        advance();
        raw_len = local.size();
        continue;
      }
      if (c == '%') {
        if (!std::isxdigit(peek(1)) || !std::isxdigit(peek(2))) fail(here(), "malformed percent escape");
        for (int i = 0; i < 3; ++i) {
          local += static_cast<char>(peek());
          advance();
        }
        raw_len = local.size();
        continue;
      }
      if (!(name_char(c) || c == ':')) break;
      local += static_cast<char>(c);
      advance();
      if (c != '.') raw_len = local.size();
    }
    // A local name may not end with '.'; the trailing dots are not ours.
    while (local.size() > raw_len) {
      local.pop_back();
      --pos_;
      --col_;
    }
    return Token{Tok::PName, prefix + ":" + local, std::move(prefix), std::move(local), loc};
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::uint32_t line_ = 1;
  std::uint32_t col_ = 1;
};

class Parser {
 public:
  Parser(std::vector<Token> tokens, const ParseOptions& options)
      : tokens_(std::move(tokens)), trace_(options.trace) {
    doc_.prefixes = options.predeclared;
  }

  RddDocument parse_document() {
    reduce("RDD");
    while (is_keyword("PREFIX")) parse_prefix_decl();
    doc_.class_section = parse_class_section();
    doc_.prop_section = parse_prop_section();
    if (peek().kind != Tok::End) syntax("RDD", "end of input");
    return std::move(doc_);
  }

 private:
  const Token& peek(std::size_t ahead = 0) const {
    return tokens_[std::min(pos_ + ahead, tokens_.size() - 1)];
  }
  const Token& take() {
    const Token& t = tokens_[pos_];
    if (pos_ + 1 < tokens_.size()) ++pos_;
    return t;
  }

  void reduce(const char* production) {
    if (trace_) trace_->insert(production);
  }

  bool is_keyword(std::string_view kw, std::size_t ahead = 0) const {
    return peek(ahead).kind == Tok::Keyword && peek(ahead).text == kw;
  }

  [[noreturn]] void syntax(const char* rule, const std::string& expected) const {
    const Token& t = peek();
    std::string found = t.kind == Tok::End ? "end of input" : "'" + t.text + "'";
    throw RddError(RddError::Kind::Syntax, t.loc,
                   std::string("in ") + rule + ": expected " + expected + " but found " + found);
  }

  const Token& expect(Tok kind, const char* rule, const char* what) {
    if (peek().kind != kind) syntax(rule, what);
    return take();
  }

  void expect_keyword(std::string_view kw, const char* rule) {
    if (!is_keyword(kw)) syntax(rule, "'" + std::string(kw) + "'");
    take();
  }

  [[noreturn]] static void invariant(SourceLoc loc, const std::string& what) {
    throw RddError(RddError::Kind::Invariant, loc, what);
  }

  void parse_prefix_decl() {
    reduce("PrefixDecl");
    take();  // PREFIX
    const Token& ns = peek();
    std::string prefix;
    if (ns.kind == Tok::PName && ns.local.empty()) {
      prefix = ns.prefix;
    } else if (ns.kind != Tok::Colon) {
      syntax("PrefixDecl", "a prefix name followed by ':'");
    }
    take();
    const Token& iri = expect(Tok::IriRef, "PrefixDecl", "an IRI reference");
    if (!is_absolute_iri(iri.text)) {
      throw RddError(RddError::Kind::Syntax, iri.loc, "namespace IRI <" + iri.text + "> is not absolute");
    }
    doc_.prefixes[prefix] = iri.text;
  }

  bool parse_wa(const char* rule) {
    reduce("WA");
    if (is_keyword("OWA")) {
      take();
      return true;
    }
    if (is_keyword("CWA")) {
      take();
      return false;
    }
    syntax(rule, "'OWA' or 'CWA'");
  }

  bool at_iri() const { return peek().kind == Tok::PName || peek().kind == Tok::IriRef; }

  Iri parse_iri(const char* rule) {
    const Token& t = peek();
    if (t.kind == Tok::IriRef) {
      reduce("IRI");
      reduce("IRIREF");
      take();
      if (!is_absolute_iri(t.text)) {
        throw RddError(RddError::Kind::Syntax, t.loc, "relative IRI <" + t.text + "> is not allowed");
      }
      return t.text;
    }
    if (t.kind == Tok::PName) {
      reduce("IRI");
      reduce("PrefixedName");
      take();
      auto it = doc_.prefixes.find(t.prefix);
      if (it == doc_.prefixes.end()) {
        throw RddError(RddError::Kind::UnresolvedPrefix, t.loc, "prefix '" + t.prefix + ":' is not declared");
      }
      return it->second + t.local;
    }
    syntax(rule, "an IRI");
  }

  std::vector<Iri> parse_iri_list(const char* rule) {
    reduce("IRIList");
    std::vector<Iri> out{parse_iri(rule)};
    while (peek().kind == Tok::Comma) {
      take();
      out.push_back(parse_iri(rule));
    }
    return out;
  }

  std::vector<Iri> parse_iri_seq() {
    reduce("IRISeq");
    std::vector<Iri> out{parse_iri("IRISeq")};
    while (peek().kind == Tok::Slash) {
      take();
      out.push_back(parse_iri("IRISeq"));
    }
    return out;
  }

  // A PName with an empty prefix in range-type position, e.g. the ":IRI" of
  // "ex:p :IRI", is the ':' separator glued to a range keyword.
  bool at_glued_range_type() const {
    const Token& t = peek();
    return t.kind == Tok::PName && t.prefix.empty() && is_range_keyword(t.local);
  }

  std::optional<RangeType> parse_optional_range_type() {
    if (peek().kind == Tok::Colon) {
      take();
      return parse_range_type(peek().text, false);
    }
    if (at_glued_range_type()) return parse_range_type(peek().local, true);
    return std::nullopt;
  }

  RangeType parse_range_type(std::string word, bool glued) {
    reduce("RangeType");
    if (!glued && peek().kind != Tok::Keyword) syntax("RangeType", "'IRI', 'BNODE', 'RESOURCE' or 'LITERAL'");
    if (!is_range_keyword(word)) syntax("RangeType", "'IRI', 'BNODE', 'RESOURCE' or 'LITERAL'");
    take();
    RangeType rt;
    if (word == "IRI") {
      rt.kind = RangeKind::Iri;
    } else if (word == "BNODE") {
      rt.kind = RangeKind::BNode;
    } else if (word == "RESOURCE") {
      rt.kind = RangeKind::Resource;
    } else {
      rt.kind = RangeKind::Literal;
      if (peek().kind == Tok::LParen) {
        take();
        rt.datatype = parse_iri("RangeType");
        expect(Tok::RParen, "RangeType", "')'");
      }
    }
    return rt;
  }

  KeyProperty parse_iri_with_range_type() {
    reduce("IRIWithRangeType");
    KeyProperty kp;
    kp.prop = parse_iri("IRIWithRangeType");
    kp.range_type = parse_optional_range_type();
    return kp;
  }

  std::uint32_t parse_cardinality(const char* rule) {
    const Token& t = expect(Tok::Integer, rule, "an integer");
    reduce("INTEGER");
    std::string digits = t.text;
    digits.erase(0, std::min(digits.find_first_not_of('0'), digits.size()));
    if (digits.size() > 6 || (!digits.empty() && std::stoul(digits) > kMaxCardinality)) {
      invariant(t.loc, "cardinality " + t.text + " exceeds the limit of " + std::to_string(kMaxCardinality));
    }
    return digits.empty() ? 0 : static_cast<std::uint32_t>(std::stoul(digits));
  }

  bool at_constraint() const {
    static constexpr std::array<std::string_view, 8> starts = {
        "MIN", "MAX", "DOMAIN", "RANGE", "PATH", "SUBPROPERTY", "PARTIAL", "TOTAL"};
    return peek().kind == Tok::Keyword &&
           std::find(starts.begin(), starts.end(), peek().text) != starts.end();
  }

  ConstraintAtom parse_constraint() {
    reduce("Constraint");
    ConstraintAtom a;
    a.loc = peek().loc;
    std::string kw = take().text;
    auto open = [&](const char* rule) { expect(Tok::LParen, rule, "'('"); };
    auto close = [&](const char* rule) { expect(Tok::RParen, rule, "')'"); };
    if (kw == "MIN") {
      reduce("MinConstraint");
      open("MinConstraint");
      a.value = atom::Min{parse_cardinality("MinConstraint")};
      close("MinConstraint");
    } else if (kw == "MAX") {
      reduce("MaxConstraint");
      open("MaxConstraint");
      a.value = atom::Max{parse_cardinality("MaxConstraint")};
      close("MaxConstraint");
    } else if (kw == "DOMAIN") {
      reduce("DomainConstraint");
      open("DomainConstraint");
      a.value = atom::Domain{parse_iri("DomainConstraint")};
      close("DomainConstraint");
    } else if (kw == "RANGE") {
      reduce("RangeConstraint");
      open("RangeConstraint");
      a.value = atom::Range{parse_iri("RangeConstraint")};
      close("RangeConstraint");
    } else if (kw == "PATH") {
      reduce("PathConstraint");
      open("PathConstraint");
      a.value = atom::Path{parse_iri_seq()};
      close("PathConstraint");
    } else if (kw == "SUBPROPERTY") {
      reduce("SubPropertyConstraint");
      open("SubPropertyConstraint");
      a.value = atom::SubProperty{parse_iri_list("SubPropertyConstraint")};
      close("SubPropertyConstraint");
    } else if (kw == "PARTIAL") {
      reduce("PartialityConstraint");
      a.value = atom::Partial{};
    } else {
      reduce("TotalityConstraint");
      a.value = atom::Total{};
    }
    return a;
  }

  PropConstraint parse_prop_constraint() {
    reduce("PropConstraint");
    PropConstraint pc;
    pc.loc = peek().loc;
    if (at_constraint()) {
      reduce("ConstraintList");
      pc.constraints.push_back(parse_constraint());
      while (peek().kind == Tok::Comma) {
        take();
        if (!at_constraint()) syntax("ConstraintList", "a constraint");
        pc.constraints.push_back(parse_constraint());
      }
    }
    if (!at_iri()) syntax("PropConstraint", at_constraint() ? "','" : "a constraint or a property IRI");
    KeyProperty target = parse_iri_with_range_type();
    pc.prop = std::move(target.prop);
    pc.range_type = std::move(target.range_type);

    // Infix form "p SUBPROPERTY q1, ..., qn ;" is sugar for "SUBPROPERTY(q1, ..., qn) p ;".
    if (is_keyword("SUBPROPERTY")) {
      ConstraintAtom a;
      a.loc = take().loc;
      reduce("SubPropertyConstraint");
      a.value = atom::SubProperty{parse_iri_list("SubPropertyConstraint")};
      pc.constraints.push_back(std::move(a));
    }
    expect(Tok::Semicolon, "PropConstraint", "';'");
    check_prop_constraint(pc);
    return pc;
  }

  static void check_prop_constraint(const PropConstraint& pc) {
    std::array<const ConstraintAtom*, 8> seen{};
    for (const auto& a : pc.constraints) {
      auto& slot = seen[a.value.index()];
      if (slot) invariant(a.loc, std::string("duplicate ") + atom_keyword(a) + " on property <" + pc.prop + ">");
      slot = &a;
    }
    const auto* partial = seen[6];
    const auto* total = seen[7];
    if (partial && total) invariant(total->loc, "PARTIAL and TOTAL are mutually exclusive on <" + pc.prop + ">");
    const auto* min = seen[0];
    const auto* max = seen[1];
    if (min && max && std::get<atom::Min>(min->value).n > std::get<atom::Max>(max->value).n) {
      invariant(max->loc, "MIN exceeds MAX on <" + pc.prop + ">");
    }
  }

  Key parse_key() {
    reduce("Key");
    Key key;
    key.loc = take().loc;  // KEY
    reduce("IRIWithRangeTypeList");
    key.props.push_back(parse_iri_with_range_type());
    while (peek().kind == Tok::Comma) {
      take();
      key.props.push_back(parse_iri_with_range_type());
    }
    expect(Tok::Semicolon, "Key", "';'");
    std::set<Iri> distinct;
    for (const auto& kp : key.props) {
      if (!distinct.insert(kp.prop).second) invariant(key.loc, "key property <" + kp.prop + "> listed twice");
    }
    return key;
  }

  ClassConstraint parse_class_constraint() {
    reduce("ClassConstraint");
    ClassConstraint cc;
    cc.loc = peek().loc;
    cc.is_owa = parse_wa("ClassConstraint");
    if (is_keyword("SINGLETON")) {
      take();
      cc.is_singleton = true;
    }
    expect_keyword("CLASS", "ClassConstraint");
    cc.cls = parse_iri("ClassConstraint");
    if (is_keyword("SUBCLASS")) {
      SourceLoc loc = take().loc;
      cc.sub_classes = parse_iri_list("ClassConstraint");
      std::set<Iri> distinct;
      for (const auto& sc : cc.sub_classes) {
        if (!distinct.insert(sc).second) invariant(loc, "subclass <" + sc + "> listed twice");
      }
    }
    expect(Tok::LBrace, "ClassConstraint", "'{'");
    while (peek().kind != Tok::RBrace) {
      if (is_keyword("KEY")) {
        cc.keys.push_back(parse_key());
      } else if (at_constraint() || at_iri()) {
        cc.qpcs.push_back(parse_prop_constraint());
      } else {
        syntax("ClassConstraint", "'KEY', a property constraint or '}'");
      }
    }
    take();
    return cc;
  }

  ClassConstraintSec parse_class_section() {
    reduce("ClassConstraintSec");
    ClassConstraintSec sec;
    sec.loc = peek().loc;
    sec.is_owa = parse_wa("ClassConstraintSec");
    expect_keyword("CLASSES", "ClassConstraintSec");
    expect(Tok::LBrace, "ClassConstraintSec", "'{'");
    std::set<Iri> defined;
    while (peek().kind != Tok::RBrace) {
      if (!is_keyword("OWA") && !is_keyword("CWA")) syntax("ClassConstraintSec", "a class definition or '}'");
      ClassConstraint cc = parse_class_constraint();
      if (!defined.insert(cc.cls).second) {
        throw RddError(RddError::Kind::DuplicateClass, cc.loc, "class <" + cc.cls + "> is defined twice");
      }
      sec.classes.push_back(std::move(cc));
    }
    take();
    return sec;
  }

  PropConstraintSec parse_prop_section() {
    reduce("PropConstraintSec");
    PropConstraintSec sec;
    sec.loc = peek().loc;
    sec.is_owa = parse_wa("PropConstraintSec");
    expect_keyword("PROPERTIES", "PropConstraintSec");
    expect(Tok::LBrace, "PropConstraintSec", "'{'");
    while (peek().kind != Tok::RBrace) {
      if (!at_constraint() && !at_iri()) syntax("PropConstraintSec", "a property constraint or '}'");
      sec.upcs.push_back(parse_prop_constraint());
    }
    take();
    return sec;
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  std::set<std::string>* trace_;
  RddDocument doc_;
};

}  // namespace

RddDocument parse_rdd(std::string_view text, const ParseOptions& options) {
  return Parser(Lexer(text).run(), options).parse_document();
}

}  // namespace rdd
