#include "rdd/compiler.hpp"

#include <algorithm>
#include <cstdio>

#include "rdd/fol.hpp"
#include "rdd/printer.hpp"

namespace rdd {

namespace {

class Emitter {
 public:
  Emitter(const Environment& env, const CompileOptions& options) : env_(env), options_(options) {}

  std::vector<Constraint> take() { return std::move(out_); }

  void prop_section(const PropConstraintSec& sec) {
    if (!sec.is_owa) {
      std::vector<Iri> props;
      for (const auto& pc : sec.upcs) props.push_back(pc.prop);
      emit(ir::PropClosure{sorted_unique(std::move(props))}, std::nullopt, sec.loc, "CWA PROPERTIES");
    }
    for (const auto& pc : sec.upcs) prop_constraint(pc, std::nullopt, "");
  }

  void class_section(const ClassConstraintSec& sec) {
    if (!sec.is_owa) {
      std::vector<Iri> classes;
      for (const auto& cc : sec.classes) classes.push_back(cc.cls);
      emit(ir::ClassClosure{sorted_unique(std::move(classes))}, std::nullopt, sec.loc, "CWA CLASSES");
    }
    for (const auto& cc : sec.classes) class_constraint(cc, "");
  }

  // `via` is empty for a declared class, otherwise the class whose body is
  // being replicated onto cc.cls.
  void class_constraint(const ClassConstraint& cc, const Iri& via) {
    std::string suffix = via.empty() ? "" : " (inherited from " + name(via) + " via SUBCLASS)";

    if (cc.is_singleton) {
      emit(ir::SingletonExists{cc.cls}, std::nullopt, cc.loc, "SINGLETON " + name(cc.cls));
      emit(ir::SingletonUnique{cc.cls}, std::nullopt, cc.loc, "SINGLETON " + name(cc.cls));
    }

    for (const auto& sub : cc.sub_classes) {
      ClassConstraint replica{sub, env_.subclasses(sub), false, cc.keys, cc.qpcs, true, cc.loc};
      class_constraint(replica, via.empty() ? cc.cls : via);
    }

    for (const auto& key : cc.keys) {
      std::vector<Iri> props;
      std::string note = "KEY of " + name(cc.cls);
      for (const auto& kp : key.props) {
        props.push_back(kp.prop);
        if (kp.range_type) emit(ir::RangeTypeC{kp.prop, *kp.range_type}, cc.cls, key.loc, note + suffix);
        emit(ir::MinC{kp.prop, 1}, cc.cls, key.loc, note + suffix);
        emit(ir::MaxC{kp.prop, 1}, cc.cls, key.loc, note + suffix);
      }
      emit(ir::KeyC{cc.cls, std::move(props)}, cc.cls, key.loc, note + suffix);
    }

    for (const auto& pc : cc.qpcs) prop_constraint(pc, cc.cls, suffix);

    if (!cc.is_owa) {
      emit(ir::PropClosure{sorted_unique(env_.class_properties(cc.cls))}, cc.cls, cc.loc,
           "CWA CLASS " + name(cc.cls) + suffix);
    }
  }

 private:
  void prop_constraint(const PropConstraint& pc, const std::optional<Iri>& qualifier, const std::string& suffix) {
    if (pc.range_type) {
      emit(ir::RangeTypeC{pc.prop, *pc.range_type}, qualifier, pc.loc,
           "range type " + to_string(*pc.range_type, options_.prefixes) + " of " + name(pc.prop) + suffix);
    }
    for (const auto& a : pc.constraints) {
      std::string note = std::string(atom_keyword(a)) + " " + name(pc.prop) + suffix;
      std::visit(
          [&](const auto& v) {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, atom::Min>) {
              if (v.n > 0) emit(ir::MinC{pc.prop, v.n}, qualifier, a.loc, note);
            } else if constexpr (std::is_same_v<T, atom::Max>) {
              emit(ir::MaxC{pc.prop, v.n}, qualifier, a.loc, note);
            } else if constexpr (std::is_same_v<T, atom::Domain>) {
              emit(ir::DomainC{pc.prop, v.cls}, qualifier, a.loc, note);
            } else if constexpr (std::is_same_v<T, atom::Range>) {
              emit(ir::RangeC{pc.prop, v.cls}, qualifier, a.loc, note);
            } else if constexpr (std::is_same_v<T, atom::Path>) {
              emit(ir::PathC{pc.prop, v.seq}, qualifier, a.loc, note);
            } else if constexpr (std::is_same_v<T, atom::SubProperty>) {
              for (const auto& sub : v.sub_props) {
                emit(ir::SubPropC{pc.prop, sub}, qualifier, a.loc, note);
                for (const auto& deeper : all_subproperties(env_, sub)) {
                  emit(ir::SubPropC{pc.prop, deeper}, qualifier, a.loc, note + " via " + name(sub));
                }
              }
            } else if constexpr (std::is_same_v<T, atom::Partial>) {
              emit(ir::MaxC{pc.prop, 1}, qualifier, a.loc, note);
            } else {
              emit(ir::MinC{pc.prop, 1}, qualifier, a.loc, note);
              emit(ir::MaxC{pc.prop, 1}, qualifier, a.loc, note);
            }
          },
          a.value);
    }
  }

  void emit(ConstraintKind kind, std::optional<Iri> qualifier, SourceLoc loc, std::string note) {
    Constraint c;
    c.kind = std::move(kind);
    c.qualifier = std::move(qualifier);
    c.provenance = {options_.source, loc, {std::move(note)}};
    out_.push_back(std::move(c));
  }

  std::string name(const Iri& iri) const { return compact_iri(iri, options_.prefixes); }

  static std::vector<Iri> sorted_unique(std::vector<Iri> v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
  }

  const Environment& env_;
  const CompileOptions& options_;
  std::vector<Constraint> out_;
};

std::vector<Constraint> finalize(std::vector<Constraint> raw, const CompileOptions& options) {
  std::vector<Constraint> out;
  for (auto& c : raw) {
    auto it = std::find_if(out.begin(), out.end(), [&](const Constraint& o) { return o.same_as(c); });
    if (it == out.end()) {
      out.push_back(std::move(c));
      continue;
    }
    for (auto& d : c.provenance.derivations) {
      auto& ds = it->provenance.derivations;
      if (std::find(ds.begin(), ds.end(), d) == ds.end()) ds.push_back(std::move(d));
    }
  }
  std::stable_sort(out.begin(), out.end(), canonical_less);
  for (std::size_t i = 0; i < out.size(); ++i) {
    char id[16];
    std::snprintf(id, sizeof id, "c%04zu", i + 1);
    out[i].id = id;
    out[i].fol_text = render_fol(out[i], options.prefixes);
  }
  return out;
}

}  // namespace

std::vector<Constraint> compile(const RddDocument& doc, const Environment& env, const CompileOptions& options) {
  Emitter e(env, options);
  e.class_section(doc.class_section);
  e.prop_section(doc.prop_section);
  return finalize(e.take(), options);
}

std::vector<Constraint> compile_prop_section(const PropConstraintSec& sec, const Environment& env,
                                             const CompileOptions& options) {
  Emitter e(env, options);
  e.prop_section(sec);
  return finalize(e.take(), options);
}

std::vector<Constraint> compile_class_section(const ClassConstraintSec& sec, const Environment& env,
                                              const CompileOptions& options) {
  Emitter e(env, options);
  e.class_section(sec);
  return finalize(e.take(), options);
}

std::vector<Constraint> compile_class_constraint(const ClassConstraint& cc, const Environment& env,
                                                 const CompileOptions& options) {
  Emitter e(env, options);
  e.class_constraint(cc, "");
  return finalize(e.take(), options);
}

std::vector<Constraint> compile(const RddDocument& doc, const std::string& source) {
  return compile(doc, build_environment(doc), CompileOptions{doc.prefixes, source});
}

}  // namespace rdd
