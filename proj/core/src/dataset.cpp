#include "rdd/dataset.hpp"

#include <algorithm>
#include <stdexcept>

namespace rdd {

namespace {

// Sorted range of `index` whose first `prefix_len` keys equal `key`.
std::span<const IdTriple> prefix_range(const std::vector<IdTriple>& index, const IdTriple& key,
                                       std::size_t prefix_len) {
  auto less = [prefix_len](const IdTriple& a, const IdTriple& b) {
    for (std::size_t i = 0; i < prefix_len; ++i) {
      if (a[i] != b[i]) return a[i] < b[i];
    }
    return false;
  };
  auto [lo, hi] = std::equal_range(index.begin(), index.end(), key, less);
  return {lo, hi};
}

}  // namespace

Dataset Dataset::from_triples(std::vector<Triple> triples) {
  for (const auto& t : triples) {
    if (!t.well_formed()) {
      throw std::invalid_argument("ill-formed triple: " + t.to_ntriples());
    }
  }

  Dataset d;
  std::vector<std::pair<std::string, Term>> dict;
  dict.reserve(triples.size() * 3);
  for (const auto& t : triples) {
    for (const Term* term : {&t.s, &t.p, &t.o}) dict.emplace_back(term->to_ntriples(), *term);
  }
  std::sort(dict.begin(), dict.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  dict.erase(std::unique(dict.begin(), dict.end(),
                         [](const auto& a, const auto& b) { return a.first == b.first; }),
             dict.end());

  d.terms_.reserve(dict.size());
  for (auto& [key, term] : dict) {
    d.lookup_.emplace(key, static_cast<TermId>(d.terms_.size()));
    d.terms_.push_back(std::move(term));
  }

  d.positions_.assign(d.terms_.size(), 0);
  d.spo_.reserve(triples.size());
  for (const auto& t : triples) {
    IdTriple ids{d.lookup_.at(t.s.to_ntriples()), d.lookup_.at(t.p.to_ntriples()),
                 d.lookup_.at(t.o.to_ntriples())};
    d.positions_[ids[0]] |= kSubject;
    d.positions_[ids[1]] |= kPredicate;
    d.positions_[ids[2]] |= kObject;
    d.spo_.push_back(ids);
  }
  std::sort(d.spo_.begin(), d.spo_.end());
  d.spo_.erase(std::unique(d.spo_.begin(), d.spo_.end()), d.spo_.end());

  d.pos_.reserve(d.spo_.size());
  d.osp_.reserve(d.spo_.size());
  for (const auto& [s, p, o] : d.spo_) {
    d.pos_.push_back({p, o, s});
    d.osp_.push_back({o, s, p});
  }
  std::sort(d.pos_.begin(), d.pos_.end());
  std::sort(d.osp_.begin(), d.osp_.end());

  for (TermId id = 0; id < d.terms_.size(); ++id) {
    switch (d.terms_[id].kind) {
      case TermKind::Iri:
        d.iris_.push_back(id);
        d.resources_.push_back(id);
        break;
      case TermKind::BlankNode:
        d.bnodes_.push_back(id);
        d.resources_.push_back(id);
        break;
      case TermKind::Literal:
        d.literals_.push_back(id);
        break;
    }
  }
  return d;
}

std::vector<Triple> Dataset::triples() const {
  std::vector<Triple> out;
  out.reserve(spo_.size());
  for (const auto& t : spo_) out.push_back(decode(t));
  return out;
}

bool Dataset::contains(const Triple& t) const {
  auto s = find(t.s);
  auto p = find(t.p);
  auto o = find(t.o);
  return s && p && o && contains_ids(*s, *p, *o);
}

std::vector<Triple> Dataset::match(const std::optional<Term>& s, const std::optional<Term>& p,
                                   const std::optional<Term>& o) const {
  std::optional<TermId> sid, pid, oid;
  if (s && !(sid = find(*s))) return {};
  if (p && !(pid = find(*p))) return {};
  if (o && !(oid = find(*o))) return {};
  std::vector<Triple> out;
  for (const auto& t : match_ids(sid, pid, oid)) out.push_back(decode(t));
  return out;
}

std::vector<Term> Dataset::unary(UnaryRelation rel) const {
  std::vector<Term> out;
  for (TermId id : relation(rel)) out.push_back(terms_[id]);
  return out;
}

std::optional<TermId> Dataset::find(const Term& t) const {
  auto it = lookup_.find(t.to_ntriples());
  if (it == lookup_.end()) return std::nullopt;
  return it->second;
}

Triple Dataset::decode(const IdTriple& t) const {
  return Triple{terms_[t[0]], terms_[t[1]], terms_[t[2]]};
}

std::vector<IdTriple> Dataset::match_ids(std::optional<TermId> s, std::optional<TermId> p,
                                         std::optional<TermId> o) const {
  std::vector<IdTriple> out;
  if (s && p) {
    IdTriple key{*s, *p, o.value_or(0)};
    for (const auto& t : prefix_range(spo_, key, o ? 3 : 2)) out.push_back(t);
    return out;
  }
  if (s && o) {
    for (const auto& [ko, ks, kp] : prefix_range(osp_, {*o, *s, 0}, 2)) out.push_back({ks, kp, ko});
  } else if (s) {
    for (const auto& t : prefix_range(spo_, {*s, 0, 0}, 1)) out.push_back(t);
    return out;
  } else if (p) {
    IdTriple key{*p, o.value_or(0), 0};
    for (const auto& [kp, ko, ks] : prefix_range(pos_, key, o ? 2 : 1)) out.push_back({ks, kp, ko});
  } else if (o) {
    for (const auto& [ko, ks, kp] : prefix_range(osp_, {*o, 0, 0}, 1)) out.push_back({ks, kp, ko});
  } else {
    return spo_;
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool Dataset::contains_ids(TermId s, TermId p, TermId o) const {
  return std::binary_search(spo_.begin(), spo_.end(), IdTriple{s, p, o});
}

std::span<const TermId> Dataset::relation(UnaryRelation rel) const {
  switch (rel) {
    case UnaryRelation::Iri: return iris_;
    case UnaryRelation::BNode: return bnodes_;
    case UnaryRelation::Resource: return resources_;
    case UnaryRelation::Literal: return literals_;
  }
  return {};
}

bool Dataset::in_relation(TermId id, UnaryRelation rel) const {
  const Term& t = terms_[id];
  switch (rel) {
    case UnaryRelation::Iri: return t.is_iri();
    case UnaryRelation::BNode: return t.is_blank();
    case UnaryRelation::Resource: return t.is_resource();
    case UnaryRelation::Literal: return t.is_literal();
  }
  return false;
}

bool Dataset::occurs_as_node(TermId id) const {
  return (positions_[id] & (kSubject | kObject)) != 0;
}

std::string to_ntriples(const Dataset& dataset) {
  std::string out;
  for (const auto& t : dataset.all()) {
    out += dataset.decode(t).to_ntriples();
    out += '\n';
  }
  return out;
}

}  // namespace rdd
