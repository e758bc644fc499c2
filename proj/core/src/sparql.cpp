#include "rdd/sparql.hpp"

#include <cstdio>
#include <fstream>
#include <set>
#include <stdexcept>

#include <json.hpp>

#include "rdd/printer.hpp"
#include "rdd/vocab.hpp"

namespace rdd {

namespace {

class QueryWriter {
 public:
  explicit QueryWriter(const PrefixMap& prefixes) : prefixes_(prefixes) {}

  std::string iri(const Iri& v) {
    if (v == vocab::kRdfType) return "a";
    std::string s = compact_iri(v, prefixes_);
    if (s.front() != '<') used_.insert(s.substr(0, s.find(':')));
    return s;
  }

  // As iri(), but never `a`: rdf:type in object or filter position.
  std::string term(const Iri& v) {
    if (v != vocab::kRdfType) return iri(v);
    std::string s = compact_iri(v, prefixes_);
    if (s.front() != '<') used_.insert(s.substr(0, s.find(':')));
    return s;
  }

  std::string finish(const std::string& body) const {
    std::string out;
    for (const auto& p : used_) out += "PREFIX " + p + ": <" + prefixes_.at(p) + ">\n";
    return out + "ASK { " + body + " }\n";
  }

 private:
  const PrefixMap& prefixes_;
  std::set<std::string> used_;
};

std::vector<std::string> vars(const char* base, std::size_t n) {
  std::vector<std::string> out;
  for (std::size_t i = 1; i <= n; ++i) out.push_back("?" + std::string(base) + std::to_string(i));
  return out;
}

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? sep : "") + parts[i];
  return out;
}

// FILTER(!sameTerm(..)) over all pairs; objects may be literals, for which
// `!=` would compare values rather than terms.
std::string all_distinct(const std::vector<std::string>& v) {
  std::vector<std::string> conds;
  for (std::size_t i = 0; i < v.size(); ++i) {
    for (std::size_t j = i + 1; j < v.size(); ++j) conds.push_back("!sameTerm(" + v[i] + ", " + v[j] + ")");
  }
  return conds.empty() ? "" : " FILTER(" + join(conds, " && ") + ")";
}

std::string range_filter(const RangeType& rt, QueryWriter& w) {
  switch (rt.kind) {
    case RangeKind::Iri: return "!isIRI(?o)";
    case RangeKind::BNode: return "!isBlank(?o)";
    case RangeKind::Resource: return "isLiteral(?o)";
    case RangeKind::Literal:
      if (rt.datatype) return "!isLiteral(?o) || datatype(?o) != " + w.term(*rt.datatype);
      return "!isLiteral(?o)";
  }
  return "true";
}

std::string body(const Constraint& c, QueryWriter& w) {
  std::string q = c.qualifier ? "?s a " + w.term(*c.qualifier) + " . " : "";
  return std::visit(
      [&](const auto& k) -> std::string {
        using T = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<T, ir::RangeTypeC>) {
          return q + "?s " + w.iri(k.prop) + " ?o . FILTER(" + range_filter(k.rt, w) + ")";
        } else if constexpr (std::is_same_v<T, ir::MinC>) {
          auto o = vars("o", k.n);
          std::string bind = c.qualifier ? q
                                         : "{ ?s ?rp ?ro . } UNION { ?rs ?s ?ro . } UNION "
                                           "{ ?rs ?rp ?s . FILTER(!isLiteral(?s)) } ";
          return bind + "FILTER NOT EXISTS { ?s " + w.iri(k.prop) + " " + join(o, " , ") + " ." + all_distinct(o) +
                 " }";
        } else if constexpr (std::is_same_v<T, ir::MaxC>) {
          auto o = vars("o", k.n + 1);
          return q + "?s " + w.iri(k.prop) + " " + join(o, " , ") + " ." + all_distinct(o);
        } else if constexpr (std::is_same_v<T, ir::DomainC>) {
          return q + "?s " + w.iri(k.prop) + " ?o . FILTER NOT EXISTS { ?s a " + w.term(k.domain) + " . }";
        } else if constexpr (std::is_same_v<T, ir::RangeC>) {
          return q + "?s " + w.iri(k.prop) + " ?o . FILTER NOT EXISTS { ?o a " + w.term(k.range) + " . }";
        } else if constexpr (std::is_same_v<T, ir::PathC>) {
          std::string path;
          for (std::size_t i = 0; i < k.seq.size(); ++i) {
            std::string from = i == 0 ? "?s" : "?o" + std::to_string(i);
            std::string to = i + 1 == k.seq.size() ? "?o" : "?o" + std::to_string(i + 1);
            path += from + " " + w.iri(k.seq[i]) + " " + to + " . ";
          }
          return q + "?s " + w.iri(k.prop) + " ?o . FILTER NOT EXISTS { " + path + "}";
        } else if constexpr (std::is_same_v<T, ir::SubPropC>) {
          return q + "?s " + w.iri(k.sub_prop) + " ?o . FILTER NOT EXISTS { ?s " + w.iri(k.super_prop) + " ?o . }";
        } else if constexpr (std::is_same_v<T, ir::PropClosure>) {
          std::vector<std::string> conds;
          for (const auto& p : k.props) conds.push_back("?p != " + w.term(p));
          return q + "?s ?p ?o ." + (conds.empty() ? "" : " FILTER(" + join(conds, " && ") + ")");
        } else if constexpr (std::is_same_v<T, ir::ClassClosure>) {
          std::vector<std::string> conds;
          for (const auto& cls : k.classes) conds.push_back("?c != " + w.term(cls));
          return "?s a ?c ." + (conds.empty() ? "" : " FILTER(" + join(conds, " && ") + ")");
        } else if constexpr (std::is_same_v<T, ir::SingletonExists>) {
          return "FILTER NOT EXISTS { ?s a " + w.term(k.cls) + " . }";
        } else if constexpr (std::is_same_v<T, ir::SingletonUnique>) {
          std::string cls = w.term(k.cls);
          return "?s1 a " + cls + " . ?s2 a " + cls + " . FILTER(?s1 != ?s2)";
        } else {
          std::string cls = w.term(k.cls);
          std::vector<std::string> o = k.props.size() == 1 ? std::vector<std::string>{"?o"} : vars("o", k.props.size());
          auto side = [&](const std::string& s) {
            std::string out = s + " a " + cls;
            for (std::size_t i = 0; i < k.props.size(); ++i) out += " ; " + w.iri(k.props[i]) + " " + o[i];
            return out + " . ";
          };
          return side("?s1") + side("?s2") + "FILTER(?s1 != ?s2)";
        }
      },
      c.kind);
}

}  // namespace

AskQuery to_ask(const Constraint& c, const PrefixMap& prefixes) {
  QueryWriter w(prefixes);
  std::string b = body(c, w);
  return {c, w.finish(b)};
}

std::vector<AskQuery> to_ask(const std::vector<Constraint>& cs, const PrefixMap& prefixes) {
  std::vector<AskQuery> out;
  for (const auto& c : cs) out.push_back(to_ask(c, prefixes));
  return out;
}

std::string bundle_file_name(const Constraint& c) {
  std::string number = c.id.size() > 1 && c.id[0] == 'c' ? c.id.substr(1) : c.id;
  return number + "-" + kind_name(c.kind) + ".rq";
}

std::vector<std::filesystem::path> write_bundle(const std::vector<AskQuery>& queries,
                                                const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  std::vector<std::filesystem::path> written;
  nlohmann::ordered_json manifest = nlohmann::ordered_json::array();
  for (const auto& q : queries) {
    auto path = dir / bundle_file_name(q.constraint);
    std::ofstream out(path, std::ios::binary);
    out << q.text;
    if (!out) throw std::runtime_error("cannot write " + path.string());
    written.push_back(path);
    manifest.push_back({{"file", path.filename().string()},
                        {"constraint", q.constraint_id()},
                        {"kind", kind_name(q.constraint.kind)},
                        {"qualifier", q.constraint.qualifier ? nlohmann::ordered_json(*q.constraint.qualifier)
                                                             : nlohmann::ordered_json(nullptr)},
                        {"fol", q.constraint.fol_text}});
  }
  auto path = dir / "manifest.json";
  std::ofstream out(path, std::ios::binary);
  out << nlohmann::ordered_json{{"queries", manifest}}.dump(2) << "\n";
  if (!out) throw std::runtime_error("cannot write " + path.string());
  written.push_back(path);
  return written;
}

}  // namespace rdd
