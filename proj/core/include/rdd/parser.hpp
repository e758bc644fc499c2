#pragma once

#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "rdd/ast.hpp"

namespace rdd {

class RddError : public std::runtime_error {
 public:
  enum class Kind { Lexical, Syntax, UnresolvedPrefix, DuplicateClass, Invariant };

  RddError(Kind kind, SourceLoc loc, const std::string& detail);

  Kind kind() const { return kind_; }
  SourceLoc loc() const { return loc_; }
  const std::string& detail() const { return detail_; }

 private:
  Kind kind_;
  SourceLoc loc_;
  std::string detail_;
};

const char* to_string(RddError::Kind kind);

struct ParseOptions {
  // Bindings visible before the first PREFIX line. They become part of the
  // document's prefix table; the document's own declarations override them.
  PrefixMap predeclared;
  // When set, receives the name of every grammar production the parser
  // reduced (see grammar_productions()).
  std::set<std::string>* trace = nullptr;
};

// Bindings for rdf, rdfs, xsd, foaf and owl.
const PrefixMap& well_known_prefixes();

// Names of all productions of the RDD grammar, as reported through
// ParseOptions::trace.
const std::vector<std::string>& grammar_productions();

// Parses an RDD document. Throws RddError on the first problem.
RddDocument parse_rdd(std::string_view text, const ParseOptions& options = {});

// Largest integer accepted in MIN(n)/MAX(n).
inline constexpr std::uint32_t kMaxCardinality = 1u << 16;

}  // namespace rdd
