#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace rdd {

enum class TermKind : std::uint8_t { Iri, BlankNode, Literal };

// An RDF node. Equality is syntactic: kind, value, datatype and language
// must all match byte for byte, so "01"^^xsd:integer != "1"^^xsd:integer.
//
// `value` holds the IRI for Iri terms, the label (without "_:") for blank
// nodes and the lexical form for literals.
struct Term {
  TermKind kind = TermKind::Iri;
  std::string value;
  std::optional<std::string> datatype;
  std::optional<std::string> language;

  static Term iri(std::string iri);
  static Term blank(std::string label);
  static Term literal(std::string lexical);
  static Term typed_literal(std::string lexical, std::string datatype);
  static Term lang_literal(std::string lexical, std::string language);

  bool is_iri() const { return kind == TermKind::Iri; }
  bool is_blank() const { return kind == TermKind::BlankNode; }
  bool is_literal() const { return kind == TermKind::Literal; }
  bool is_resource() const { return kind != TermKind::Literal; }

  // Datatype as seen by value-level consumers: rdf:langString for
  // language-tagged literals, the explicit datatype otherwise.
  std::optional<std::string> effective_datatype() const;

  // N-Triples token syntax (<iri>, _:label, "lex"^^<dt>, "lex"@lang).
  std::string to_ntriples() const;

  friend bool operator==(const Term&, const Term&) = default;
  friend auto operator<=>(const Term&, const Term&) = default;
};

struct Triple {
  Term s;
  Term p;
  Term o;

  // s is an IRI or blank node and p is an IRI.
  bool well_formed() const;
  std::string to_ntriples() const;

  friend bool operator==(const Triple&, const Triple&) = default;
  friend auto operator<=>(const Triple&, const Triple&) = default;
};

// Escapes a lexical form for use between double quotes in N-Triples.
std::string escape_literal(std::string_view lexical);
// Escapes characters that may not appear raw inside <...>.
std::string escape_iri(std::string_view iri);

// True when `iri` starts with a scheme ("[A-Za-z][A-Za-z0-9+.-]*:").
bool is_absolute_iri(std::string_view iri);

}  // namespace rdd
