#pragma once

#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "rdd/ast.hpp"

namespace rdd {

class CycleError : public std::runtime_error {
 public:
  CycleError(std::string relation, std::vector<Iri> cycle);

  // "SUBCLASS" or "SUBPROPERTY".
  const std::string& relation() const { return relation_; }
  // The cycle as a closed walk: first == last.
  const std::vector<Iri>& cycle() const { return cycle_; }

 private:
  std::string relation_;
  std::vector<Iri> cycle_;
};

// Compile-time view of a document's hierarchy declarations.
//
// None of the maps is transitively closed; the compiler walks them.
// Lookups of undeclared IRIs return an empty list.
class Environment {
 public:
  using Map = std::map<Iri, std::vector<Iri>>;

  Environment() = default;
  Environment(Map subclasses, Map subproperties, Map class_properties);

  // E.C: declared direct subclasses of a class.
  const std::vector<Iri>& subclasses(const Iri& cls) const { return lookup(subclasses_, cls); }
  // E.P: declared direct subproperties of a property, from both sections.
  const std::vector<Iri>& subproperties(const Iri& prop) const { return lookup(subproperties_, prop); }
  // E.A: every property mentioned inside a class body, plus rdf:type.
  const std::vector<Iri>& class_properties(const Iri& cls) const { return lookup(class_properties_, cls); }

  const Map& subclass_map() const { return subclasses_; }
  const Map& subproperty_map() const { return subproperties_; }
  const Map& class_property_map() const { return class_properties_; }

  friend bool operator==(const Environment&, const Environment&) = default;

 private:
  static const std::vector<Iri>& lookup(const Map& m, const Iri& key);

  Map subclasses_;
  Map subproperties_;
  Map class_properties_;
};

// Throws CycleError when SUBCLASS or SUBPROPERTY declarations form a cycle.
Environment build_environment(const RddDocument& doc);

// Transitive subclasses of `cls`, excluding `cls` itself.
std::set<Iri> all_subclasses(const Environment& env, const Iri& cls);
// Transitive subproperties of `prop`, excluding `prop` itself.
std::set<Iri> all_subproperties(const Environment& env, const Iri& prop);

// Human-readable dump used by `compile --explain`.
std::string describe(const Environment& env, const PrefixMap& prefixes);

}  // namespace rdd
