#include "rdd/printer.hpp"

#include <cctype>
#include <sstream>

#include "rdd/term.hpp"

namespace rdd {

namespace {

bool printable_local(std::string_view local) {
  if (local.empty() || local.back() == '.') return false;
  auto c0 = static_cast<unsigned char>(local.front());
  if (!std::isalnum(c0) && c0 != '_') return false;
  for (unsigned char c : local) {
    if (!std::isalnum(c) && c != '_' && c != '-' && c != '.') return false;
  }
  return true;
}

template <typename Range, typename F>
std::string join(const Range& items, std::string_view sep, F&& render) {
  std::string out;
  bool first = true;
  for (const auto& item : items) {
    if (!first) out += sep;
    first = false;
    out += render(item);
  }
  return out;
}

struct Printer {
  const PrefixMap& prefixes;
  std::ostringstream out;

  std::string iri(std::string_view v) const { return compact_iri(v, prefixes); }

  std::string atom(const ConstraintAtom& a) const {
    return std::visit(
        [&](const auto& v) -> std::string {
          using T = std::decay_t<decltype(v)>;
          if constexpr (std::is_same_v<T, atom::Min>) {
            return "MIN(" + std::to_string(v.n) + ")";
          } else if constexpr (std::is_same_v<T, atom::Max>) {
            return "MAX(" + std::to_string(v.n) + ")";
          } else if constexpr (std::is_same_v<T, atom::Domain>) {
            return "DOMAIN(" + iri(v.cls) + ")";
          } else if constexpr (std::is_same_v<T, atom::Range>) {
            return "RANGE(" + iri(v.cls) + ")";
          } else if constexpr (std::is_same_v<T, atom::Path>) {
            return "PATH(" + join(v.seq, "/", [&](const Iri& i) { return iri(i); }) + ")";
          } else if constexpr (std::is_same_v<T, atom::SubProperty>) {
            return "SUBPROPERTY(" + join(v.sub_props, ", ", [&](const Iri& i) { return iri(i); }) + ")";
          } else if constexpr (std::is_same_v<T, atom::Partial>) {
            return "PARTIAL";
          } else {
            return "TOTAL";
          }
        },
        a.value);
  }

  std::string with_range(const Iri& prop, const std::optional<RangeType>& rt) const {
    std::string s = iri(prop);
    if (rt) s += " : " + to_string(*rt, prefixes);
    return s;
  }

  void prop_constraint(const PropConstraint& pc, std::string_view indent) {
    out << indent;
    if (!pc.constraints.empty()) {
      out << join(pc.constraints, ", ", [&](const ConstraintAtom& a) { return atom(a); }) << ' ';
    }
    out << with_range(pc.prop, pc.range_type) << " ;\n";
  }

  void class_constraint(const ClassConstraint& cc) {
    out << "  " << (cc.is_owa ? "OWA" : "CWA") << (cc.is_singleton ? " SINGLETON" : "") << " CLASS "
        << iri(cc.cls);
    if (!cc.sub_classes.empty()) {
      out << " SUBCLASS " << join(cc.sub_classes, ", ", [&](const Iri& i) { return iri(i); });
    }
    out << " {\n";
    for (const auto& key : cc.keys) {
      out << "    KEY "
          << join(key.props, ", ", [&](const KeyProperty& kp) { return with_range(kp.prop, kp.range_type); })
          << " ;\n";
    }
    for (const auto& pc : cc.qpcs) prop_constraint(pc, "    ");
    out << "  }\n";
  }
};

}  // namespace

std::string compact_iri(std::string_view iri, const PrefixMap& prefixes) {
  const std::string* best_prefix = nullptr;
  std::size_t best_len = 0;
  for (const auto& [prefix, ns] : prefixes) {
    if (ns.empty() || ns.size() < best_len || !iri.starts_with(ns)) continue;
    if (!printable_local(iri.substr(ns.size()))) continue;
    if (!best_prefix || ns.size() > best_len) {
      best_prefix = &prefix;
      best_len = ns.size();
    }
  }
  if (!best_prefix) return "<" + std::string(iri) + ">";
  return *best_prefix + ":" + std::string(iri.substr(best_len));
}

std::string to_string(const RangeType& rt, const PrefixMap& prefixes) {
  switch (rt.kind) {
    case RangeKind::Iri: return "IRI";
    case RangeKind::BNode: return "BNODE";
    case RangeKind::Resource: return "RESOURCE";
    case RangeKind::Literal:
      return rt.datatype ? "LITERAL(" + compact_iri(*rt.datatype, prefixes) + ")" : "LITERAL";
  }
  return {};
}

std::string pretty_print(const RddDocument& doc) {
  Printer p{doc.prefixes, {}};
  for (const auto& [prefix, ns] : doc.prefixes) p.out << "PREFIX " << prefix << ": <" << ns << ">\n";
  if (!doc.prefixes.empty()) p.out << '\n';

  p.out << (doc.class_section.is_owa ? "OWA" : "CWA") << " CLASSES {\n";
  for (const auto& cc : doc.class_section.classes) p.class_constraint(cc);
  p.out << "}\n";

  p.out << (doc.prop_section.is_owa ? "OWA" : "CWA") << " PROPERTIES {\n";
  for (const auto& pc : doc.prop_section.upcs) p.prop_constraint(pc, "  ");
  p.out << "}\n";
  return p.out.str();
}

}  // namespace rdd
