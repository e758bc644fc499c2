#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "rdd/term.hpp"

namespace rdd {

using TermId = std::uint32_t;

// A triple of dictionary ids in (s, p, o) order.
using IdTriple = std::array<TermId, 3>;

// The four unary relations over the active domain.
enum class UnaryRelation { Iri, BNode, Resource, Literal };

// An immutable set of triples with SPO/POS/OSP indexes.
//
// Terms are dictionary-encoded. Ids are assigned in lexicographic order of
// the N-Triples serialization, so sorting by id is the same as sorting by
// serialization; every result that leaves this class is in that order.
// All members are const after construction, so a Dataset may be shared
// between threads freely.
class Dataset {
 public:
  Dataset() = default;

  // Throws std::invalid_argument if a triple has a literal or blank subject
  // position violation (see Triple::well_formed). Duplicates are dropped.
  static Dataset from_triples(std::vector<Triple> triples);

  std::size_t size() const { return spo_.size(); }
  bool empty() const { return spo_.empty(); }

  std::vector<Triple> triples() const;
  bool contains(const Triple& t) const;

  // Triples agreeing with every bound position, in canonical order.
  std::vector<Triple> match(const std::optional<Term>& s, const std::optional<Term>& p,
                            const std::optional<Term>& o) const;

  // Members of a unary relation, in canonical order.
  std::vector<Term> unary(UnaryRelation relation) const;

  // -- Id-level access, used by the evaluators. --

  std::size_t term_count() const { return terms_.size(); }
  const Term& term(TermId id) const { return terms_[id]; }
  std::optional<TermId> find(const Term& t) const;
  Triple decode(const IdTriple& t) const;

  std::span<const IdTriple> all() const { return spo_; }
  std::vector<IdTriple> match_ids(std::optional<TermId> s, std::optional<TermId> p,
                                  std::optional<TermId> o) const;
  bool contains_ids(TermId s, TermId p, TermId o) const;

  std::span<const TermId> relation(UnaryRelation relation) const;
  bool in_relation(TermId id, UnaryRelation relation) const;

  // True when the term occurs in subject or object position of some triple.
  bool occurs_as_node(TermId id) const;

  friend bool operator==(const Dataset& a, const Dataset& b) {
    return a.terms_ == b.terms_ && a.spo_ == b.spo_;
  }

 private:
  enum Position : std::uint8_t { kSubject = 1, kPredicate = 2, kObject = 4 };

  std::vector<Term> terms_;
  std::unordered_map<std::string, TermId> lookup_;
  std::vector<std::uint8_t> positions_;

  std::vector<IdTriple> spo_;  // keys (s, p, o)
  std::vector<IdTriple> pos_;  // keys (p, o, s)
  std::vector<IdTriple> osp_;  // keys (o, s, p)

  std::vector<TermId> iris_;
  std::vector<TermId> bnodes_;
  std::vector<TermId> resources_;
  std::vector<TermId> literals_;
};

// Canonical N-Triples: one line per triple, sorted, LF terminated.
std::string to_ntriples(const Dataset& dataset);

}  // namespace rdd
