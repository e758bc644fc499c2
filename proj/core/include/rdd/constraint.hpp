#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "rdd/ast.hpp"

namespace rdd {

// The closed set of checkable constraint shapes. Every compiled constraint
// is one of these, optionally qualified by a class.
namespace ir {

struct RangeTypeC {
  Iri prop;
  RangeType rt;
  friend auto operator<=>(const RangeTypeC&, const RangeTypeC&) = default;
};
struct MinC {
  Iri prop;
  std::uint32_t n = 1;  // positive
  friend auto operator<=>(const MinC&, const MinC&) = default;
};
struct MaxC {
  Iri prop;
  std::uint32_t n = 1;
  friend auto operator<=>(const MaxC&, const MaxC&) = default;
};
struct DomainC {
  Iri prop;
  Iri domain;
  friend auto operator<=>(const DomainC&, const DomainC&) = default;
};
struct RangeC {
  Iri prop;
  Iri range;
  friend auto operator<=>(const RangeC&, const RangeC&) = default;
};
struct PathC {
  Iri prop;
  std::vector<Iri> seq;  // non-empty
  friend auto operator<=>(const PathC&, const PathC&) = default;
};
struct SubPropC {
  Iri super_prop;
  Iri sub_prop;
  friend auto operator<=>(const SubPropC&, const SubPropC&) = default;
};
struct PropClosure {
  std::vector<Iri> props;  // sorted, distinct; may be empty
  friend auto operator<=>(const PropClosure&, const PropClosure&) = default;
};
struct ClassClosure {
  std::vector<Iri> classes;  // sorted, distinct; may be empty
  friend auto operator<=>(const ClassClosure&, const ClassClosure&) = default;
};
struct SingletonExists {
  Iri cls;
  friend auto operator<=>(const SingletonExists&, const SingletonExists&) = default;
};
struct SingletonUnique {
  Iri cls;
  friend auto operator<=>(const SingletonUnique&, const SingletonUnique&) = default;
};
struct KeyC {
  Iri cls;
  std::vector<Iri> props;  // non-empty, distinct, declaration order
  friend auto operator<=>(const KeyC&, const KeyC&) = default;
};

}  // namespace ir

using ConstraintKind = std::variant<ir::RangeTypeC, ir::MinC, ir::MaxC, ir::DomainC, ir::RangeC, ir::PathC,
                                    ir::SubPropC, ir::PropClosure, ir::ClassClosure, ir::SingletonExists,
                                    ir::SingletonUnique, ir::KeyC>;

inline constexpr std::size_t kConstraintKindCount = std::variant_size_v<ConstraintKind>;

// "RangeTypeC", "MinC", ... in variant order.
const char* kind_name(const ConstraintKind& kind);
const char* kind_name(std::size_t index);

struct Provenance {
  std::string file;
  SourceLoc loc;
  // One note per derivation path; several when duplicates were merged.
  std::vector<std::string> derivations;

  std::string derivation() const;
};

struct Constraint {
  std::string id;  // "c0001", ... in canonical order
  ConstraintKind kind;
  std::optional<Iri> qualifier;
  Provenance provenance;
  std::string fol_text;

  // Identity for deduplication: kind parameters plus qualifier.
  bool same_as(const Constraint& other) const { return kind == other.kind && qualifier == other.qualifier; }
};

// Canonical order: kind, then qualifier (unqualified first), then parameters.
bool canonical_less(const Constraint& a, const Constraint& b);

// Short label such as "MaxC @foaf:Person".
std::string label(const Constraint& c, const PrefixMap& prefixes);

}  // namespace rdd
