#include "rdd/checker.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <map>
#include <set>
#include <thread>

#include "rdd/printer.hpp"
#include "rdd/vocab.hpp"

namespace rdd {

namespace {

using Tuple = std::vector<TermId>;

class IndexedEvaluator {
 public:
  IndexedEvaluator(const Dataset& d, const Constraint& c, const CheckOptions& options)
      : d_(d), c_(c), options_(options), type_(d.find(Term::iri(std::string(vocab::kRdfType)))) {}

  std::vector<Tuple> run() {
    std::visit([this](const auto& k) { eval(k); }, c_.kind);
    std::sort(out_.begin(), out_.end());
    return std::move(out_);
  }

 private:
  std::optional<TermId> id_of(const Iri& iri) const { return d_.find(Term::iri(iri)); }

  std::vector<TermId> instances(const Iri& cls) const {
    std::vector<TermId> out;
    auto c = id_of(cls);
    if (!type_ || !c) return out;
    for (const auto& t : d_.match_ids(std::nullopt, *type_, *c)) out.push_back(t[0]);
    std::sort(out.begin(), out.end());
    return out;
  }

  bool has_type(TermId s, const Iri& cls) const {
    auto c = id_of(cls);
    return type_ && c && d_.contains_ids(s, *type_, *c);
  }

  // Every (s, o) with T(s, p, o), restricted to instances of the qualifier.
  std::vector<std::pair<TermId, TermId>> edges(const Iri& prop) const {
    std::vector<std::pair<TermId, TermId>> out;
    auto p = id_of(prop);
    if (!p) return out;
    if (c_.qualifier) {
      for (TermId s : instances(*c_.qualifier)) {
        for (const auto& t : d_.match_ids(s, *p, std::nullopt)) out.emplace_back(s, t[2]);
      }
    } else {
      for (const auto& t : d_.match_ids(std::nullopt, *p, std::nullopt)) out.emplace_back(t[0], t[2]);
    }
    return out;
  }

  std::vector<TermId> objects(TermId s, const Iri& prop) const {
    std::vector<TermId> out;
    auto p = id_of(prop);
    if (!p) return out;
    for (const auto& t : d_.match_ids(s, *p, std::nullopt)) out.push_back(t[2]);
    std::sort(out.begin(), out.end());
    return out;
  }

  // Subjects s with some T(s, p, o), restricted to the qualifier.
  std::vector<TermId> subjects(const Iri& prop) const {
    std::vector<TermId> out;
    for (const auto& [s, o] : edges(prop)) out.push_back(s);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

  bool full() const { return options_.limit && out_.size() >= *options_.limit; }

  void eval(const ir::RangeTypeC& k) {
    auto rel = static_cast<UnaryRelation>(static_cast<int>(k.rt.kind));
    for (const auto& [s, o] : edges(k.prop)) {
      bool ok = d_.in_relation(o, rel);
      if (ok && k.rt.kind == RangeKind::Literal && k.rt.datatype) {
        ok = d_.term(o).effective_datatype() == *k.rt.datatype;
      }
      if (!ok) out_.push_back({s, o});
    }
  }

  void eval(const ir::MinC& k) {
    std::vector<TermId> candidates;
    if (c_.qualifier) {
      candidates = instances(*c_.qualifier);
    } else {
      for (TermId r : d_.relation(UnaryRelation::Resource)) {
        if (!options_.lenient_resources || d_.occurs_as_node(r)) candidates.push_back(r);
      }
    }
    auto p = id_of(k.prop);
    for (TermId s : candidates) {
      std::size_t n = p ? d_.match_ids(s, *p, std::nullopt).size() : 0;
      if (n < k.n) out_.push_back({s});
    }
  }

  // Subjects and objects are produced in increasing order, so the first
  // `limit` tuples generated are the first in canonical order.
  void eval(const ir::MaxC& k) {
    std::size_t r = k.n + 1;
    for (TermId s : subjects(k.prop)) {
      auto objs = objects(s, k.prop);
      if (objs.size() < r) continue;
      std::vector<std::size_t> idx(r);
      for (std::size_t i = 0; i < r; ++i) idx[i] = i;
      while (true) {
        if (full()) return;
        Tuple t{s};
        for (auto i : idx) t.push_back(objs[i]);
        out_.push_back(std::move(t));
        // Next r-combination in lexicographic order.
        std::size_t i = r;
        while (i > 0 && idx[i - 1] == objs.size() - r + i - 1) --i;
        if (i == 0) break;
        ++idx[i - 1];
        for (std::size_t j = i; j < r; ++j) idx[j] = idx[j - 1] + 1;
      }
    }
  }

  void eval(const ir::DomainC& k) {
    for (const auto& [s, o] : edges(k.prop)) {
      if (!has_type(s, k.domain)) out_.push_back({s, o});
    }
  }

  void eval(const ir::RangeC& k) {
    for (const auto& [s, o] : edges(k.prop)) {
      if (!has_type(o, k.range)) out_.push_back({s, o});
    }
  }

  void eval(const ir::PathC& k) {
    std::map<TermId, std::set<TermId>> reach;
    for (const auto& [s, o] : edges(k.prop)) {
      auto it = reach.find(s);
      if (it == reach.end()) {
        std::set<TermId> frontier{s};
        for (const auto& q : k.seq) {
          std::set<TermId> next;
          auto qid = id_of(q);
          if (qid) {
            for (TermId x : frontier) {
              for (const auto& t : d_.match_ids(x, *qid, std::nullopt)) next.insert(t[2]);
            }
          }
          frontier = std::move(next);
        }
        it = reach.emplace(s, std::move(frontier)).first;
      }
      if (!it->second.contains(o)) out_.push_back({s, o});
    }
  }

  void eval(const ir::SubPropC& k) {
    auto super = id_of(k.super_prop);
    for (const auto& [s, o] : edges(k.sub_prop)) {
      if (!super || !d_.contains_ids(s, *super, o)) out_.push_back({s, o});
    }
  }

  void eval(const ir::PropClosure& k) {
    std::set<TermId> allowed;
    for (const auto& p : k.props) {
      if (auto id = id_of(p)) allowed.insert(*id);
    }
    auto consider = [&](const IdTriple& t) {
      if (!allowed.contains(t[1])) out_.push_back({t[0], t[1], t[2]});
    };
    if (c_.qualifier) {
      for (TermId s : instances(*c_.qualifier)) {
        for (const auto& t : d_.match_ids(s, std::nullopt, std::nullopt)) consider(t);
      }
    } else {
      for (const auto& t : d_.all()) consider(t);
    }
  }

  void eval(const ir::ClassClosure& k) {
    if (!type_) return;
    std::set<TermId> allowed;
    for (const auto& cls : k.classes) {
      if (auto id = id_of(cls)) allowed.insert(*id);
    }
    for (const auto& t : d_.match_ids(std::nullopt, *type_, std::nullopt)) {
      if (!allowed.contains(t[2])) out_.push_back({t[0], t[2]});
    }
  }

  void eval(const ir::SingletonExists& k) {
    if (instances(k.cls).empty()) out_.push_back({});
  }

  void eval(const ir::SingletonUnique& k) {
    auto inst = instances(k.cls);
    for (std::size_t i = 0; i < inst.size(); ++i) {
      for (std::size_t j = i + 1; j < inst.size(); ++j) out_.push_back({inst[i], inst[j]});
    }
  }

  // Instances are grouped by key tuple; a subject with several values for
  // a key property contributes every combination.
  void eval(const ir::KeyC& k) {
    std::map<Tuple, std::vector<TermId>> groups;
    for (TermId s : instances(k.cls)) {
      std::vector<Tuple> tuples{{}};
      for (const auto& p : k.props) {
        std::vector<Tuple> next;
        for (TermId o : objects(s, p)) {
          for (const auto& t : tuples) {
            next.push_back(t);
            next.back().push_back(o);
          }
        }
        tuples = std::move(next);
      }
      for (auto& t : tuples) groups[std::move(t)].push_back(s);
    }
    for (const auto& [key, members] : groups) {
      std::size_t emitted = 0;
      for (std::size_t i = 0; i < members.size(); ++i) {
        for (std::size_t j = i + 1; j < members.size(); ++j) {
          if (options_.limit && emitted >= *options_.limit) break;
          Tuple t{members[i], members[j]};
          t.insert(t.end(), key.begin(), key.end());
          out_.push_back(std::move(t));
          ++emitted;
        }
      }
    }
  }

  const Dataset& d_;
  const Constraint& c_;
  const CheckOptions& options_;
  std::optional<TermId> type_;
  std::vector<Tuple> out_;
};

bool witness_less(const Witness& a, const Witness& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(), [](const auto& x, const auto& y) {
    return x.second.to_ntriples() < y.second.to_ntriples();
  });
}

std::string show(const Witness& w, const std::string& var) {
  for (const auto& [name, term] : w) {
    if (name == var) return term.to_ntriples();
  }
  return "?";
}

std::string join(const std::vector<Iri>& iris, const PrefixMap& prefixes) {
  std::string out;
  for (const auto& i : iris) {
    if (!out.empty()) out += ", ";
    out += compact_iri(i, prefixes);
  }
  return out;
}

}  // namespace

std::string violation_message(const Constraint& c, const Witness& w, const PrefixMap& prefixes) {
  auto name = [&](const Iri& iri) { return compact_iri(iri, prefixes); };
  std::string where = c.qualifier ? " (instance of " + name(*c.qualifier) + ")" : "";
  return std::visit(
      [&](const auto& k) -> std::string {
        using T = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<T, ir::RangeTypeC>) {
          return show(w, "s") + where + " has " + name(k.prop) + " value " + show(w, "o") + " which is not " +
                 to_string(k.rt, prefixes);
        } else if constexpr (std::is_same_v<T, ir::MinC>) {
          return show(w, "s") + where + " has fewer than " + std::to_string(k.n) + " distinct " + name(k.prop) +
                 " values";
        } else if constexpr (std::is_same_v<T, ir::MaxC>) {
          std::string values;
          for (std::size_t i = 1; i < w.size(); ++i) values += (i > 1 ? ", " : "") + w[i].second.to_ntriples();
          return show(w, "s") + where + " has more than " + std::to_string(k.n) + " " + name(k.prop) +
                 " values: " + values;
        } else if constexpr (std::is_same_v<T, ir::DomainC>) {
          return show(w, "s") + where + " uses " + name(k.prop) + " but is not typed " + name(k.domain);
        } else if constexpr (std::is_same_v<T, ir::RangeC>) {
          return show(w, "o") + ", the " + name(k.prop) + " value of " + show(w, "s") + where + ", is not typed " +
                 name(k.range);
        } else if constexpr (std::is_same_v<T, ir::PathC>) {
          return show(w, "s") + where + " reaches " + show(w, "o") + " via " + name(k.prop) + " but not via the path " +
                 join(k.seq, prefixes);
        } else if constexpr (std::is_same_v<T, ir::SubPropC>) {
          return show(w, "s") + where + " " + name(k.sub_prop) + " " + show(w, "o") + " is not also stated with " +
                 name(k.super_prop);
        } else if constexpr (std::is_same_v<T, ir::PropClosure>) {
          return show(w, "s") + where + " uses property " + show(w, "p") + " outside the closed list";
        } else if constexpr (std::is_same_v<T, ir::ClassClosure>) {
          return show(w, "s") + " is typed " + show(w, "c") + " which is not a declared class";
        } else if constexpr (std::is_same_v<T, ir::SingletonExists>) {
          return "singleton class " + name(k.cls) + " has no instance";
        } else if constexpr (std::is_same_v<T, ir::SingletonUnique>) {
          return "singleton class " + name(k.cls) + " has several instances: " + show(w, "s1") + ", " + show(w, "s2");
        } else {
          return show(w, "s1") + " and " + show(w, "s2") + " share the key (" + join(k.props, prefixes) + ") of " +
                 name(k.cls);
        }
      },
      c.kind);
}

std::vector<Violation> evaluate_constraint(const Dataset& d, const Constraint& c, const CheckOptions& options) {
  auto sentence = fol::to_sentence(c);
  std::vector<Witness> witnesses;
  if (options.mode == CheckMode::Reference) {
    witnesses = fol::failing_bindings(d, sentence, {options.lenient_resources});
  } else {
    for (const auto& tuple : IndexedEvaluator(d, c, options).run()) {
      Witness w;
      for (std::size_t i = 0; i < tuple.size(); ++i) w.emplace_back(sentence.universal[i], d.term(tuple[i]));
      witnesses.push_back(std::move(w));
    }
  }
  std::stable_sort(witnesses.begin(), witnesses.end(), witness_less);
  if (options.limit && witnesses.size() > *options.limit) witnesses.resize(*options.limit);

  std::vector<Violation> out;
  for (auto& w : witnesses) {
    auto message = violation_message(c, w, options.prefixes);
    out.push_back({c, std::move(w), std::move(message)});
  }
  return out;
}

Report check(const Dataset& d, const std::vector<Constraint>& cs, const CheckOptions& options) {
  auto start = std::chrono::steady_clock::now();
  std::vector<std::vector<Violation>> per(cs.size());

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < cs.size(); i = next++) per[i] = evaluate_constraint(d, cs[i], options);
  };
  unsigned n = std::max(1u, std::min<unsigned>(options.threads, static_cast<unsigned>(cs.size())));
  if (n == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned i = 0; i < n; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  Report r;
  for (auto& v : per) {
    for (auto& x : v) r.violations.push_back(std::move(x));
  }
  r.consistent = r.violations.empty();
  r.stats.constraints = cs.size();
  r.stats.triples = d.size();
  r.stats.millis = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return r;
}

bool witness_valid(const Dataset& d, const Violation& v, bool lenient_resources) {
  return fol::witness_refutes(d, fol::to_sentence(v.constraint), v.witness, {lenient_resources});
}

}  // namespace rdd
