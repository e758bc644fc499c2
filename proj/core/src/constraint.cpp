#include "rdd/constraint.hpp"

#include <array>

#include "rdd/printer.hpp"

namespace rdd {

namespace {
constexpr std::array<const char*, kConstraintKindCount> kKindNames = {
    "RangeTypeC",   "MinC",         "MaxC",            "DomainC",         "RangeC", "PathC",
    "SubPropC",     "PropClosure",  "ClassClosure",    "SingletonExists", "SingletonUnique",
    "KeyC",
};
}  // namespace

const char* kind_name(std::size_t index) { return index < kKindNames.size() ? kKindNames[index] : "?"; }

const char* kind_name(const ConstraintKind& kind) { return kind_name(kind.index()); }

std::string Provenance::derivation() const {
  std::string out;
  for (const auto& d : derivations) {
    if (!out.empty()) out += "; ";
    out += d;
  }
  return out;
}

bool canonical_less(const Constraint& a, const Constraint& b) {
  if (a.kind.index() != b.kind.index()) return a.kind.index() < b.kind.index();
  if (a.qualifier != b.qualifier) return a.qualifier < b.qualifier;
  return a.kind < b.kind;
}

std::string label(const Constraint& c, const PrefixMap& prefixes) {
  std::string out = kind_name(c.kind);
  if (c.qualifier) out += " @" + compact_iri(*c.qualifier, prefixes);
  return out;
}

}  // namespace rdd
