#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "rdd/constraint.hpp"
#include "rdd/dataset.hpp"
#include "rdd/fol.hpp"

namespace rdd {

enum class CheckMode {
  Reference,  // nested loops over the active domain, driven by the FOL sentence
  Indexed,    // per-kind evaluators over the SPO/POS/OSP indexes
};

struct CheckOptions {
  CheckMode mode = CheckMode::Indexed;
  // At most this many violations per constraint (the first ones in
  // canonical order). Unset means all.
  std::optional<std::size_t> limit;
  // Restrict Resource(x) to terms in subject or object position.
  bool lenient_resources = false;
  // Constraints are evaluated on up to this many threads.
  unsigned threads = 1;
  // Used to compact IRIs in violation messages.
  PrefixMap prefixes;
};

struct Violation {
  Constraint constraint;
  Witness witness;  // universal variables in quantifier order; empty for SingletonExists
  std::string message;
};

// A constraint that could not be decided (remote checking only).
struct QueryError {
  std::string constraint_id;
  std::string message;
};

struct Report {
  bool consistent = true;  // iff violations is empty
  std::vector<Violation> violations;
  std::vector<QueryError> errors;
  struct Stats {
    std::size_t constraints = 0;
    std::size_t triples = 0;
    double millis = 0;
  } stats;
};

// Checks every constraint independently. Violations come out in canonical
// order: constraint order, then witness terms in N-Triples order.
Report check(const Dataset& d, const std::vector<Constraint>& cs, const CheckOptions& options = {});

// Violations of one constraint, canonical order, limit applied.
std::vector<Violation> evaluate_constraint(const Dataset& d, const Constraint& c, const CheckOptions& options = {});

// Re-substitutes the witness into the constraint's sentence: true when the
// body holds and the conclusion fails.
bool witness_valid(const Dataset& d, const Violation& v, bool lenient_resources = false);

// Human-readable explanation of a failing binding.
std::string violation_message(const Constraint& c, const Witness& w, const PrefixMap& prefixes = {});

}  // namespace rdd
