#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace rdd {

// All IRIs in the AST are absolute; prefixed names are resolved by the parser.
using Iri = std::string;

// Position of a node in its source text (1-based). Locations never take
// part in AST equality, so a reparsed document compares equal to the
// original even though its layout differs.
struct SourceLoc {
  std::uint32_t line = 0;
  std::uint32_t column = 0;

  friend bool operator==(const SourceLoc&, const SourceLoc&) { return true; }
};

enum class RangeKind : std::uint8_t { Iri, BNode, Resource, Literal };

struct RangeType {
  RangeKind kind = RangeKind::Resource;
  std::optional<Iri> datatype;  // LITERAL only

  friend bool operator==(const RangeType&, const RangeType&) = default;
  friend auto operator<=>(const RangeType&, const RangeType&) = default;
};

namespace atom {
struct Min {
  std::uint32_t n = 0;
  friend bool operator==(const Min&, const Min&) = default;
};
struct Max {
  std::uint32_t n = 0;
  friend bool operator==(const Max&, const Max&) = default;
};
struct Domain {
  Iri cls;
  friend bool operator==(const Domain&, const Domain&) = default;
};
struct Range {
  Iri cls;
  friend bool operator==(const Range&, const Range&) = default;
};
struct Path {
  std::vector<Iri> seq;
  friend bool operator==(const Path&, const Path&) = default;
};
struct SubProperty {
  std::vector<Iri> sub_props;
  friend bool operator==(const SubProperty&, const SubProperty&) = default;
};
struct Partial {
  friend bool operator==(const Partial&, const Partial&) = default;
};
struct Total {
  friend bool operator==(const Total&, const Total&) = default;
};
}  // namespace atom

struct ConstraintAtom {
  std::variant<atom::Min, atom::Max, atom::Domain, atom::Range, atom::Path, atom::SubProperty,
               atom::Partial, atom::Total>
      value;
  SourceLoc loc;

  friend bool operator==(const ConstraintAtom&, const ConstraintAtom&) = default;
};

// Keyword used for an atom kind ("MIN", "PATH", ...).
const char* atom_keyword(const ConstraintAtom& a);

struct PropConstraint {
  std::vector<ConstraintAtom> constraints;
  Iri prop;
  std::optional<RangeType> range_type;
  SourceLoc loc;

  friend bool operator==(const PropConstraint&, const PropConstraint&) = default;
};

struct KeyProperty {
  Iri prop;
  std::optional<RangeType> range_type;

  friend bool operator==(const KeyProperty&, const KeyProperty&) = default;
};

struct Key {
  std::vector<KeyProperty> props;  // non-empty, pairwise distinct
  SourceLoc loc;

  friend bool operator==(const Key&, const Key&) = default;
};

struct ClassConstraint {
  Iri cls;
  std::vector<Iri> sub_classes;
  bool is_singleton = false;
  std::vector<Key> keys;
  std::vector<PropConstraint> qpcs;
  bool is_owa = true;
  SourceLoc loc;

  friend bool operator==(const ClassConstraint&, const ClassConstraint&) = default;
};

struct ClassConstraintSec {
  bool is_owa = true;
  std::vector<ClassConstraint> classes;
  SourceLoc loc;

  friend bool operator==(const ClassConstraintSec&, const ClassConstraintSec&) = default;
};

struct PropConstraintSec {
  bool is_owa = true;
  std::vector<PropConstraint> upcs;
  SourceLoc loc;

  friend bool operator==(const PropConstraintSec&, const PropConstraintSec&) = default;
};

using PrefixMap = std::map<std::string, Iri>;

struct RddDocument {
  PrefixMap prefixes;
  ClassConstraintSec class_section;
  PropConstraintSec prop_section;

  friend bool operator==(const RddDocument&, const RddDocument&) = default;
};

}  // namespace rdd
