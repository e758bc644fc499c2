#pragma once

#include <string>
#include <string_view>

#include "rdd/ast.hpp"

namespace rdd {

// Shortest prefixed form of `iri` under `prefixes`, or "<iri>" when no
// declared namespace yields a safe local name.
std::string compact_iri(std::string_view iri, const PrefixMap& prefixes);

std::string to_string(const RangeType& rt, const PrefixMap& prefixes);

// Canonical RDD text: PREFIX lines in name order, one constraint per line,
// two-space indentation, prefix-form SUBPROPERTY(...). Parsing the output
// yields a document equal to `doc`.
std::string pretty_print(const RddDocument& doc);

}  // namespace rdd
