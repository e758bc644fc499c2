#pragma once

#include <string>
#include <vector>

#include "rdd/ast.hpp"
#include "rdd/constraint.hpp"
#include "rdd/environment.hpp"

namespace rdd {

struct CompileOptions {
  // Used to compact IRIs in fol_text and derivation notes.
  PrefixMap prefixes;
  // File name recorded in every provenance.
  std::string source;
};

// Every entry point returns a finished set: duplicates merged (provenance
// notes concatenated), sorted canonically, ids assigned, fol_text rendered.
std::vector<Constraint> compile(const RddDocument& doc, const Environment& env, const CompileOptions& options = {});

std::vector<Constraint> compile_prop_section(const PropConstraintSec& sec, const Environment& env,
                                             const CompileOptions& options = {});
std::vector<Constraint> compile_class_section(const ClassConstraintSec& sec, const Environment& env,
                                              const CompileOptions& options = {});
std::vector<Constraint> compile_class_constraint(const ClassConstraint& cc, const Environment& env,
                                                 const CompileOptions& options = {});

// Builds the environment itself and renders with the document's prefixes.
// Throws CycleError like build_environment.
std::vector<Constraint> compile(const RddDocument& doc, const std::string& source = "");

}  // namespace rdd
