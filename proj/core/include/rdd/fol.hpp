#pragma once

#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "rdd/ast.hpp"
#include "rdd/constraint.hpp"
#include "rdd/dataset.hpp"
#include "rdd/term.hpp"

namespace rdd {

// Witness bindings of a sentence's universal variables, in quantifier order.
using Witness = std::vector<std::pair<std::string, Term>>;

namespace fol {

struct Var {
  std::string name;
  friend bool operator==(const Var&, const Var&) = default;
};

using Arg = std::variant<Var, Term>;

struct TripleAtom {
  Arg s, p, o;
};
struct UnaryAtom {
  UnaryRelation relation;
  Arg x;
};
struct EqAtom {
  Arg a, b;
  bool negated = false;
};
struct DatatypeAtom {
  Arg x;
  Iri datatype;
};

using Atom = std::variant<TripleAtom, UnaryAtom, EqAtom, DatatypeAtom>;

// A sentence of the form
//   forall universal (body -> exists existential (d_1 or ... or d_k))
// where each d_i is a conjunction of atoms. No disjuncts means falsum.
// An empty `universal` with an empty `body` is a bare existential.
struct Sentence {
  std::vector<std::string> universal;
  std::vector<Atom> body;
  std::vector<std::string> existential;
  std::vector<std::vector<Atom>> disjuncts;

  // Universal variables that can be permuted without changing whether the
  // body holds and the conclusion fails. Failing bindings are reported only
  // with these variables in strictly increasing term order.
  std::vector<std::string> symmetric;
};

// The first-order reading of a constraint.
Sentence to_sentence(const Constraint& c);

// Textual rendering with IRIs compacted under `prefixes`.
std::string render(const Sentence& s, const PrefixMap& prefixes);

struct EvalOptions {
  // Restrict Resource(x) to terms occurring in subject or object position.
  bool lenient_resources = false;
};

// Naive model checking over the active domain: every universal variable
// ranges over all terms of the dataset, atoms are tested by membership.
// Returns every failing binding (modulo `symmetric`), sorted by term order.
std::vector<Witness> failing_bindings(const Dataset& d, const Sentence& s, const EvalOptions& options = {});

// True when the body holds and the conclusion fails under `witness`, i.e.
// the witness certifies a violation. Unknown variables or terms that do not
// occur in the dataset make the witness invalid.
bool witness_refutes(const Dataset& d, const Sentence& s, const Witness& witness,
                     const EvalOptions& options = {});

}  // namespace fol

// Canonical first-order rendering of a constraint.
std::string render_fol(const Constraint& c, const PrefixMap& prefixes = {});

}  // namespace rdd
