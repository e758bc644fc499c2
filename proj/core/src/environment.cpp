#include "rdd/environment.hpp"

#include <algorithm>
#include <sstream>

#include "rdd/printer.hpp"
#include "rdd/vocab.hpp"

namespace rdd {

namespace {

std::string cycle_message(const std::string& relation, const std::vector<Iri>& cycle) {
  std::string msg = relation + " cycle: ";
  for (std::size_t i = 0; i < cycle.size(); ++i) {
    if (i) msg += " -> ";
    msg += "<" + cycle[i] + ">";
  }
  return msg;
}

void append_unique(std::vector<Iri>& list, const Iri& iri) {
  if (std::find(list.begin(), list.end(), iri) == list.end()) list.push_back(iri);
}

// Depth-first search for a cycle; nodes are visited in map order so the
// reported cycle is deterministic.
void check_acyclic(const Environment::Map& graph, const char* relation) {
  enum class Mark { White, Grey, Black };
  std::map<Iri, Mark> mark;
  std::vector<Iri> stack;

  auto visit = [&](auto&& self, const Iri& node) -> void {
    mark[node] = Mark::Grey;
    stack.push_back(node);
    if (auto it = graph.find(node); it != graph.end()) {
      for (const auto& next : it->second) {
        Mark m = mark.contains(next) ? mark[next] : Mark::White;
        if (m == Mark::Grey) {
          std::vector<Iri> cycle(std::find(stack.begin(), stack.end(), next), stack.end());
          cycle.push_back(next);
          throw CycleError(relation, std::move(cycle));
        }
        if (m == Mark::White) self(self, next);
      }
    }
    stack.pop_back();
    mark[node] = Mark::Black;
  };

  for (const auto& [node, _] : graph) {
    if (!mark.contains(node)) visit(visit, node);
  }
}

std::set<Iri> reachable(const Environment::Map& graph, const Iri& start) {
  std::set<Iri> seen;
  std::vector<Iri> work{start};
  while (!work.empty()) {
    Iri node = std::move(work.back());
    work.pop_back();
    auto it = graph.find(node);
    if (it == graph.end()) continue;
    for (const auto& next : it->second) {
      if (seen.insert(next).second) work.push_back(next);
    }
  }
  seen.erase(start);
  return seen;
}

}  // namespace

CycleError::CycleError(std::string relation, std::vector<Iri> cycle)
    : std::runtime_error(cycle_message(relation, cycle)), relation_(std::move(relation)), cycle_(std::move(cycle)) {}

Environment::Environment(Map subclasses, Map subproperties, Map class_properties)
    : subclasses_(std::move(subclasses)),
      subproperties_(std::move(subproperties)),
      class_properties_(std::move(class_properties)) {}

const std::vector<Iri>& Environment::lookup(const Map& m, const Iri& key) {
  static const std::vector<Iri> empty;
  auto it = m.find(key);
  return it == m.end() ? empty : it->second;
}

Environment build_environment(const RddDocument& doc) {
  Environment::Map subclasses;
  Environment::Map subproperties;
  Environment::Map class_properties;

  auto collect_subprops = [&](const PropConstraint& pc) {
    for (const auto& a : pc.constraints) {
      if (const auto* sp = std::get_if<atom::SubProperty>(&a.value)) {
        auto& list = subproperties[pc.prop];
        for (const auto& sub : sp->sub_props) append_unique(list, sub);
      }
    }
  };

  for (const auto& cc : doc.class_section.classes) {
    if (!cc.sub_classes.empty()) subclasses[cc.cls] = cc.sub_classes;

    auto& props = class_properties[cc.cls];
    for (const auto& key : cc.keys) {
      for (const auto& kp : key.props) append_unique(props, kp.prop);
    }
    for (const auto& pc : cc.qpcs) {
      append_unique(props, pc.prop);
      for (const auto& a : pc.constraints) {
        if (const auto* path = std::get_if<atom::Path>(&a.value)) {
          for (const auto& q : path->seq) append_unique(props, q);
        } else if (const auto* sp = std::get_if<atom::SubProperty>(&a.value)) {
          for (const auto& q : sp->sub_props) append_unique(props, q);
        }
      }
      collect_subprops(pc);
    }
    append_unique(props, std::string(vocab::kRdfType));
  }
  for (const auto& pc : doc.prop_section.upcs) collect_subprops(pc);

  check_acyclic(subclasses, "SUBCLASS");
  check_acyclic(subproperties, "SUBPROPERTY");
  return Environment(std::move(subclasses), std::move(subproperties), std::move(class_properties));
}

std::set<Iri> all_subclasses(const Environment& env, const Iri& cls) {
  return reachable(env.subclass_map(), cls);
}

std::set<Iri> all_subproperties(const Environment& env, const Iri& prop) {
  return reachable(env.subproperty_map(), prop);
}

std::string describe(const Environment& env, const PrefixMap& prefixes) {
  std::ostringstream out;
  auto dump = [&](const char* title, const Environment::Map& m) {
    out << title << ":\n";
    for (const auto& [key, values] : m) {
      out << "  " << compact_iri(key, prefixes) << " ->";
      for (const auto& v : values) out << ' ' << compact_iri(v, prefixes);
      out << '\n';
    }
  };
  dump("E.C (subclasses)", env.subclass_map());
  dump("E.P (subproperties)", env.subproperty_map());
  dump("E.A (class properties)", env.class_property_map());
  return out.str();
}

}  // namespace rdd
