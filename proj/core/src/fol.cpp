#include "rdd/fol.hpp"

#include <algorithm>
#include <map>

#include "rdd/printer.hpp"
#include "rdd/vocab.hpp"

namespace rdd::fol {

namespace {

Arg var(std::string name) { return Var{std::move(name)}; }
Arg iri(const Iri& v) { return Term::iri(v); }
Arg rdf_type() { return Term::iri(std::string(vocab::kRdfType)); }

Atom triple(Arg s, Arg p, Arg o) { return TripleAtom{std::move(s), std::move(p), std::move(o)}; }
Atom eq(Arg a, Arg b) { return EqAtom{std::move(a), std::move(b), false}; }
Atom neq(Arg a, Arg b) { return EqAtom{std::move(a), std::move(b), true}; }

std::vector<std::string> numbered(const char* base, std::size_t n) {
  std::vector<std::string> out;
  for (std::size_t i = 1; i <= n; ++i) out.push_back(base + std::to_string(i));
  return out;
}

UnaryRelation relation_of(RangeKind k) {
  switch (k) {
    case RangeKind::Iri: return UnaryRelation::Iri;
    case RangeKind::BNode: return UnaryRelation::BNode;
    case RangeKind::Resource: return UnaryRelation::Resource;
    case RangeKind::Literal: return UnaryRelation::Literal;
  }
  return UnaryRelation::Resource;
}

struct SentenceBuilder {
  const std::optional<Iri>& qualifier;
  Sentence s;

  // Leading T(s, rdf:type, C) for qualified constraints.
  void qualify(const char* subject = "s") {
    if (qualifier) s.body.push_back(triple(var(subject), rdf_type(), iri(*qualifier)));
  }

  Sentence operator()(const ir::RangeTypeC& c) {
    s.universal = {"s", "o"};
    qualify();
    s.body.push_back(triple(var("s"), iri(c.prop), var("o")));
    std::vector<Atom> d{UnaryAtom{relation_of(c.rt.kind), var("o")}};
    if (c.rt.kind == RangeKind::Literal && c.rt.datatype) d.push_back(DatatypeAtom{var("o"), *c.rt.datatype});
    s.disjuncts.push_back(std::move(d));
    return std::move(s);
  }

  Sentence operator()(const ir::MinC& c) {
    s.universal = {"s"};
    if (qualifier) {
      qualify();
    } else {
      s.body.push_back(UnaryAtom{UnaryRelation::Resource, var("s")});
    }
    s.existential = numbered("o", c.n);
    std::vector<Atom> d;
    for (const auto& o : s.existential) d.push_back(triple(var("s"), iri(c.prop), var(o)));
    for (std::size_t i = 0; i < s.existential.size(); ++i) {
      for (std::size_t j = i + 1; j < s.existential.size(); ++j) {
        d.push_back(neq(var(s.existential[i]), var(s.existential[j])));
      }
    }
    s.disjuncts.push_back(std::move(d));
    return std::move(s);
  }

  Sentence operator()(const ir::MaxC& c) {
    auto objects = numbered("o", c.n + 1);
    s.universal = {"s"};
    s.universal.insert(s.universal.end(), objects.begin(), objects.end());
    qualify();
    for (const auto& o : objects) s.body.push_back(triple(var("s"), iri(c.prop), var(o)));
    for (std::size_t i = 0; i < objects.size(); ++i) {
      for (std::size_t j = i + 1; j < objects.size(); ++j) s.disjuncts.push_back({eq(var(objects[i]), var(objects[j]))});
    }
    s.symmetric = objects;
    return std::move(s);
  }

  Sentence operator()(const ir::DomainC& c) {
    s.universal = {"s", "o"};
    qualify();
    s.body.push_back(triple(var("s"), iri(c.prop), var("o")));
    s.disjuncts.push_back({triple(var("s"), rdf_type(), iri(c.domain))});
    return std::move(s);
  }

  Sentence operator()(const ir::RangeC& c) {
    s.universal = {"s", "o"};
    qualify();
    s.body.push_back(triple(var("s"), iri(c.prop), var("o")));
    s.disjuncts.push_back({triple(var("o"), rdf_type(), iri(c.range))});
    return std::move(s);
  }

  Sentence operator()(const ir::PathC& c) {
    s.universal = {"s", "o"};
    qualify();
    s.body.push_back(triple(var("s"), iri(c.prop), var("o")));
    s.existential = numbered("o", c.seq.size() - 1);
    std::vector<Atom> d;
    for (std::size_t i = 0; i < c.seq.size(); ++i) {
      Arg from = i == 0 ? var("s") : var(s.existential[i - 1]);
      Arg to = i + 1 == c.seq.size() ? var("o") : var(s.existential[i]);
      d.push_back(triple(std::move(from), iri(c.seq[i]), std::move(to)));
    }
    s.disjuncts.push_back(std::move(d));
    return std::move(s);
  }

  Sentence operator()(const ir::SubPropC& c) {
    s.universal = {"s", "o"};
    qualify();
    s.body.push_back(triple(var("s"), iri(c.sub_prop), var("o")));
    s.disjuncts.push_back({triple(var("s"), iri(c.super_prop), var("o"))});
    return std::move(s);
  }

  Sentence operator()(const ir::PropClosure& c) {
    s.universal = {"s", "p", "o"};
    qualify();
    s.body.push_back(triple(var("s"), var("p"), var("o")));
    for (const auto& p : c.props) s.disjuncts.push_back({eq(var("p"), iri(p))});
    return std::move(s);
  }

  Sentence operator()(const ir::ClassClosure& c) {
    s.universal = {"s", "c"};
    s.body.push_back(triple(var("s"), rdf_type(), var("c")));
    for (const auto& cls : c.classes) s.disjuncts.push_back({eq(var("c"), iri(cls))});
    return std::move(s);
  }

  Sentence operator()(const ir::SingletonExists& c) {
    s.existential = {"s"};
    s.disjuncts.push_back({triple(var("s"), rdf_type(), iri(c.cls))});
    return std::move(s);
  }

  Sentence operator()(const ir::SingletonUnique& c) {
    s.universal = {"s1", "s2"};
    s.body.push_back(triple(var("s1"), rdf_type(), iri(c.cls)));
    s.body.push_back(triple(var("s2"), rdf_type(), iri(c.cls)));
    s.disjuncts.push_back({eq(var("s1"), var("s2"))});
    s.symmetric = {"s1", "s2"};
    return std::move(s);
  }

  Sentence operator()(const ir::KeyC& c) {
    auto objects = c.props.size() == 1 ? std::vector<std::string>{"o"} : numbered("o", c.props.size());
    s.universal = {"s1", "s2"};
    s.universal.insert(s.universal.end(), objects.begin(), objects.end());
    for (const char* subject : {"s1", "s2"}) {
      s.body.push_back(triple(var(subject), rdf_type(), iri(c.cls)));
      for (std::size_t i = 0; i < c.props.size(); ++i) s.body.push_back(triple(var(subject), iri(c.props[i]), var(objects[i])));
    }
    s.disjuncts.push_back({eq(var("s1"), var("s2"))});
    s.symmetric = {"s1", "s2"};
    return std::move(s);
  }
};

// ---------------------------------------------------------------- rendering

std::string render_arg(const Arg& a, const PrefixMap& prefixes) {
  if (const auto* v = std::get_if<Var>(&a)) return v->name;
  const Term& t = std::get<Term>(a);
  return t.is_iri() ? compact_iri(t.value, prefixes) : t.to_ntriples();
}

std::string render_atom(const Atom& atom, const PrefixMap& prefixes) {
  return std::visit(
      [&](const auto& a) -> std::string {
        using T = std::decay_t<decltype(a)>;
        if constexpr (std::is_same_v<T, TripleAtom>) {
          return "T(" + render_arg(a.s, prefixes) + "," + render_arg(a.p, prefixes) + "," + render_arg(a.o, prefixes) + ")";
        } else if constexpr (std::is_same_v<T, UnaryAtom>) {
          static constexpr const char* names[] = {"IRI", "BNode", "Resource", "Literal"};
          return std::string(names[static_cast<int>(a.relation)]) + "(" + render_arg(a.x, prefixes) + ")";
        } else if constexpr (std::is_same_v<T, EqAtom>) {
          return render_arg(a.a, prefixes) + (a.negated ? "≠" : "=") + render_arg(a.b, prefixes);
        } else {
          return "datatype(" + render_arg(a.x, prefixes) + ")=" + compact_iri(a.datatype, prefixes);
        }
      },
      atom);
}

std::string join_atoms(const std::vector<Atom>& atoms, const PrefixMap& prefixes) {
  std::string out;
  for (const auto& a : atoms) {
    if (!out.empty()) out += " ∧ ";
    out += render_atom(a, prefixes);
  }
  return out;
}

std::string join_names(const std::vector<std::string>& names) {
  std::string out;
  for (const auto& n : names) {
    if (!out.empty()) out += ",";
    out += n;
  }
  return out;
}

// ---------------------------------------------------------------- evaluation

struct Operand {
  int slot = -1;  // variable slot, or -1 for a constant
  std::optional<TermId> id;
  const Term* constant = nullptr;
};

struct CAtom {
  enum class Kind { Triple, Unary, Eq, Datatype } kind;
  std::array<Operand, 3> args{};
  UnaryRelation relation = UnaryRelation::Resource;
  bool negated = false;
  const Iri* datatype = nullptr;
  int last_slot = -1;  // highest variable slot used
};

class Evaluator {
 public:
  Evaluator(const Dataset& d, const Sentence& s, const EvalOptions& options) : d_(d), s_(s), options_(options) {
    for (const auto& v : s.universal) slot_of_.emplace(v, static_cast<int>(slot_of_.size()));
    universal_count_ = static_cast<int>(slot_of_.size());
    for (const auto& v : s.existential) slot_of_.emplace(v, static_cast<int>(slot_of_.size()));
    slots_.assign(slot_of_.size(), 0);

    for (const auto& a : s.body) body_.push_back(compile(a));
    for (const auto& disj : s.disjuncts) {
      std::vector<CAtom> c;
      for (const auto& a : disj) c.push_back(compile(a));
      disjuncts_.push_back(std::move(c));
    }
    symmetric_prev_.assign(slot_of_.size(), -1);
    for (std::size_t i = 1; i < s.symmetric.size(); ++i) {
      symmetric_prev_[slot_of_.at(s.symmetric[i])] = slot_of_.at(s.symmetric[i - 1]);
    }
  }

  std::vector<Witness> failing() {
    std::vector<Witness> out;
    enumerate_universal(0, out);
    return out;
  }

  bool refutes(const Witness& w) {
    std::vector<bool> bound(universal_count_, false);
    for (const auto& [name, term] : w) {
      auto it = slot_of_.find(name);
      if (it == slot_of_.end() || it->second >= universal_count_) return false;
      auto id = d_.find(term);
      if (!id) return false;
      slots_[it->second] = *id;
      bound[it->second] = true;
    }
    if (std::find(bound.begin(), bound.end(), false) != bound.end()) return false;
    for (const auto& a : body_) {
      if (!holds(a)) return false;
    }
    return !conclusion_holds();
  }

 private:
  CAtom compile(const Atom& atom) {
    CAtom c{};
    auto operand = [&](const Arg& a) {
      Operand op;
      if (const auto* v = std::get_if<Var>(&a)) {
        op.slot = slot_of_.at(v->name);
        c.last_slot = std::max(c.last_slot, op.slot);
      } else {
        op.constant = &std::get<Term>(a);
        op.id = d_.find(*op.constant);
      }
      return op;
    };
    std::visit(
        [&](const auto& a) {
          using T = std::decay_t<decltype(a)>;
          if constexpr (std::is_same_v<T, TripleAtom>) {
            c.kind = CAtom::Kind::Triple;
            c.args = {operand(a.s), operand(a.p), operand(a.o)};
          } else if constexpr (std::is_same_v<T, UnaryAtom>) {
            c.kind = CAtom::Kind::Unary;
            c.relation = a.relation;
            c.args[0] = operand(a.x);
          } else if constexpr (std::is_same_v<T, EqAtom>) {
            c.kind = CAtom::Kind::Eq;
            c.negated = a.negated;
            c.args[0] = operand(a.a);
            c.args[1] = operand(a.b);
          } else {
            c.kind = CAtom::Kind::Datatype;
            c.datatype = &a.datatype;
            c.args[0] = operand(a.x);
          }
        },
        atom);
    return c;
  }

  std::optional<TermId> value(const Operand& op) const {
    if (op.slot >= 0) return slots_[op.slot];
    return op.id;
  }

  bool in_relation(TermId id, UnaryRelation rel) const {
    if (!d_.in_relation(id, rel)) return false;
    if (rel == UnaryRelation::Resource && options_.lenient_resources) return d_.occurs_as_node(id);
    return true;
  }

  bool holds(const CAtom& a) const {
    switch (a.kind) {
      case CAtom::Kind::Triple: {
        auto s = value(a.args[0]);
        auto p = value(a.args[1]);
        auto o = value(a.args[2]);
        return s && p && o && d_.contains_ids(*s, *p, *o);
      }
      case CAtom::Kind::Unary: {
        auto x = value(a.args[0]);
        return x && in_relation(*x, a.relation);
      }
      case CAtom::Kind::Eq: {
        bool equal;
        const Operand& l = a.args[0];
        const Operand& r = a.args[1];
        if (l.slot < 0 && r.slot < 0) {
          equal = *l.constant == *r.constant;
        } else {
          auto lv = value(l);
          auto rv = value(r);
          equal = lv && rv && *lv == *rv;
        }
        return equal != a.negated;
      }
      case CAtom::Kind::Datatype: {
        auto x = value(a.args[0]);
        return x && d_.term(*x).effective_datatype() == *a.datatype;
      }
    }
    return false;
  }

  void enumerate_universal(int slot, std::vector<Witness>& out) {
    if (slot == universal_count_) {
      if (!conclusion_holds()) {
        Witness w;
        for (int i = 0; i < universal_count_; ++i) w.emplace_back(s_.universal[i], d_.term(slots_[i]));
        out.push_back(std::move(w));
      }
      return;
    }
    auto n = static_cast<TermId>(d_.term_count());
    TermId start = 0;
    if (int prev = symmetric_prev_[slot]; prev >= 0) start = slots_[prev] + 1;
    for (TermId id = start; id < n; ++id) {
      slots_[slot] = id;
      bool ok = true;
      for (const auto& a : body_) {
        if (a.last_slot == slot && !holds(a)) {
          ok = false;
          break;
        }
      }
      if (ok) enumerate_universal(slot + 1, out);
    }
  }

  bool conclusion_holds() {
    for (const auto& disj : disjuncts_) {
      if (satisfiable(disj, universal_count_)) return true;
    }
    return false;
  }

  // Searches the existential slots from `slot` on for a model of `disj`.
  bool satisfiable(const std::vector<CAtom>& disj, int slot) {
    for (const auto& a : disj) {
      if (a.last_slot < slot && !holds(a)) return false;
    }
    if (slot == static_cast<int>(slots_.size())) return true;
    auto n = static_cast<TermId>(d_.term_count());
    for (TermId id = 0; id < n; ++id) {
      slots_[slot] = id;
      bool ok = true;
      for (const auto& a : disj) {
        if (a.last_slot == slot && !holds(a)) {
          ok = false;
          break;
        }
      }
      if (ok && satisfiable_rest(disj, slot + 1)) return true;
    }
    return false;
  }

  bool satisfiable_rest(const std::vector<CAtom>& disj, int slot) {
    if (slot == static_cast<int>(slots_.size())) return true;
    auto n = static_cast<TermId>(d_.term_count());
    for (TermId id = 0; id < n; ++id) {
      slots_[slot] = id;
      bool ok = true;
      for (const auto& a : disj) {
        if (a.last_slot == slot && !holds(a)) {
          ok = false;
          break;
        }
      }
      if (ok && satisfiable_rest(disj, slot + 1)) return true;
    }
    return false;
  }

  const Dataset& d_;
  const Sentence& s_;
  EvalOptions options_;
  std::map<std::string, int> slot_of_;
  int universal_count_ = 0;
  std::vector<TermId> slots_;
  std::vector<CAtom> body_;
  std::vector<std::vector<CAtom>> disjuncts_;
  std::vector<int> symmetric_prev_;
};

}  // namespace

Sentence to_sentence(const Constraint& c) { return std::visit(SentenceBuilder{c.qualifier, {}}, c.kind); }

std::string render(const Sentence& s, const PrefixMap& prefixes) {
  std::string conclusion;
  if (s.disjuncts.empty()) {
    conclusion = "⊥";
  } else {
    for (const auto& d : s.disjuncts) {
      if (!conclusion.empty()) conclusion += " ∨ ";
      conclusion += join_atoms(d, prefixes);
    }
  }
  if (!s.existential.empty()) conclusion = "∃" + join_names(s.existential) + " (" + conclusion + ")";
  if (s.universal.empty() && s.body.empty()) return conclusion;
  return "∀" + join_names(s.universal) + " (" + join_atoms(s.body, prefixes) + " → " + conclusion + ")";
}

std::vector<Witness> failing_bindings(const Dataset& d, const Sentence& s, const EvalOptions& options) {
  return Evaluator(d, s, options).failing();
}

bool witness_refutes(const Dataset& d, const Sentence& s, const Witness& witness, const EvalOptions& options) {
  return Evaluator(d, s, options).refutes(witness);
}

}  // namespace rdd::fol

namespace rdd {

std::string render_fol(const Constraint& c, const PrefixMap& prefixes) {
  return fol::render(fol::to_sentence(c), prefixes);
}

}  // namespace rdd
