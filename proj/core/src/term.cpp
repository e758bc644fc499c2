#include "rdd/term.hpp"

#include <cctype>
#include <cstdio>

#include "rdd/vocab.hpp"

namespace rdd {

Term Term::iri(std::string iri) { return Term{TermKind::Iri, std::move(iri), std::nullopt, std::nullopt}; }

Term Term::blank(std::string label) {
  return Term{TermKind::BlankNode, std::move(label), std::nullopt, std::nullopt};
}

Term Term::literal(std::string lexical) {
  return Term{TermKind::Literal, std::move(lexical), std::nullopt, std::nullopt};
}

Term Term::typed_literal(std::string lexical, std::string datatype) {
  return Term{TermKind::Literal, std::move(lexical), std::move(datatype), std::nullopt};
}

Term Term::lang_literal(std::string lexical, std::string language) {
  return Term{TermKind::Literal, std::move(lexical), std::nullopt, std::move(language)};
}

std::optional<std::string> Term::effective_datatype() const {
  if (!is_literal()) return std::nullopt;
  if (language) return std::string(vocab::kRdfLangString);
  return datatype;
}

std::string Term::to_ntriples() const {
  switch (kind) {
    case TermKind::Iri:
      return "<" + escape_iri(value) + ">";
    case TermKind::BlankNode:
      return "_:" + value;
    case TermKind::Literal: {
      std::string out = "\"" + escape_literal(value) + "\"";
      if (language) {
        out += "@" + *language;
      } else if (datatype) {
        out += "^^<" + escape_iri(*datatype) + ">";
      }
      return out;
    }
  }
  return {};
}

bool Triple::well_formed() const { return s.is_resource() && p.is_iri(); }

std::string Triple::to_ntriples() const {
  return s.to_ntriples() + " " + p.to_ntriples() + " " + o.to_ntriples() + " .";
}

std::string escape_literal(std::string_view lexical) {
  std::string out;
  out.reserve(lexical.size());
  for (char c : lexical) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      default: out += c;
    }
  }
  return out;
}

std::string escape_iri(std::string_view iri) {
  std::string out;
  out.reserve(iri.size());
  for (unsigned char c : iri) {
    if (c <= 0x20 || c == '<' || c == '>' || c == '"' || c == '{' || c == '}' || c == '|' ||
        c == '^' || c == '`' || c == '\\') {
      char buf[12];
      std::snprintf(buf, sizeof buf, "\\u%04X", static_cast<unsigned>(c));
      out += buf;
    } else {
      out += static_cast<char>(c);
    }
  }
  return out;
}

bool is_absolute_iri(std::string_view iri) {
  if (iri.empty() || !std::isalpha(static_cast<unsigned char>(iri[0]))) return false;
  for (std::size_t i = 1; i < iri.size(); ++i) {
    unsigned char c = iri[i];
    if (c == ':') return true;
    if (!std::isalnum(c) && c != '+' && c != '-' && c != '.') return false;
  }
  return false;
}

}  // namespace rdd
