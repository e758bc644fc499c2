#pragma once

#include <cstddef>
#include <istream>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "rdd/dataset.hpp"
#include "rdd/term.hpp"

namespace rdd {

class NTriplesError : public std::runtime_error {
 public:
  NTriplesError(std::string source, std::size_t line, const std::string& what);

  const std::string& source() const { return source_; }
  std::size_t line() const { return line_; }

 private:
  std::string source_;
  std::size_t line_;
};

// Parses an N-Triples document into its triple list (document order,
// duplicates kept). `source` only labels error messages.
std::vector<Triple> parse_ntriples_triples(std::string_view input, std::string_view source = "<input>");

Dataset parse_ntriples(std::string_view input, std::string_view source = "<input>");
Dataset parse_ntriples(std::istream& in, std::string_view source = "<input>");

// Merges several N-Triples documents into one Dataset. Blank node labels
// are scoped to their document: a label already used by an earlier
// document is renamed with a fresh numeric suffix.
class DatasetBuilder {
 public:
  void add_document(std::string_view text, std::string_view source = "<input>");
  void add_triples(std::vector<Triple> triples);

  Dataset build() const { return Dataset::from_triples(triples_); }

 private:
  std::vector<Triple> triples_;
  std::set<std::string> used_labels_;
};

}  // namespace rdd
