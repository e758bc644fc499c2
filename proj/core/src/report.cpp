#include "rdd/report.hpp"

#include <cstdio>
#include <stdexcept>

#include <json.hpp>

#include "rdd/printer.hpp"

namespace rdd {

namespace {

using json = nlohmann::ordered_json;

json to_json(const Report& r, bool with_timing) {
  json violations = json::array();
  for (const auto& v : r.violations) {
    const auto& c = v.constraint;
    json witness = json::object();
    for (const auto& [name, term] : v.witness) witness[name] = term.to_ntriples();
    violations.push_back({
        {"id", c.id},
        {"kind", kind_name(c.kind)},
        {"qualifier", c.qualifier ? json(*c.qualifier) : json(nullptr)},
        {"fol", c.fol_text},
        {"provenance",
         {{"file", c.provenance.file},
          {"line", c.provenance.loc.line},
          {"col", c.provenance.loc.column},
          {"derivation", c.provenance.derivation()}}},
        {"witness", witness},
        {"message", v.message},
    });
  }
  json stats = {{"constraints", r.stats.constraints}, {"triples", r.stats.triples}};
  if (with_timing) stats["millis"] = r.stats.millis;

  json out = {{"consistent", r.consistent}, {"violations", violations}, {"stats", stats}};
  if (!r.errors.empty()) {
    json errors = json::array();
    for (const auto& e : r.errors) errors.push_back({{"constraint", e.constraint_id}, {"message", e.message}});
    out["errors"] = errors;
  }
  return out;
}

std::string location(const Provenance& p) {
  return (p.file.empty() ? std::string("<rdd>") : p.file) + ":" + std::to_string(p.loc.line) + ":" +
         std::to_string(p.loc.column);
}

std::string format_text(const Report& r, const PrefixMap& prefixes) {
  std::string out;
  for (const auto& v : r.violations) {
    out += "VIOLATION " + v.constraint.id + " " + label(v.constraint, prefixes) + " at " +
           location(v.constraint.provenance) + ": " + v.message;
    if (!v.witness.empty()) {
      out += " [";
      for (std::size_t i = 0; i < v.witness.size(); ++i) {
        if (i) out += ", ";
        out += v.witness[i].first + "=" + v.witness[i].second.to_ntriples();
      }
      out += "]";
    }
    out += "\n";
  }
  for (const auto& e : r.errors) out += "ERROR " + e.constraint_id + ": " + e.message + "\n";

  char summary[160];
  if (r.consistent && r.errors.empty()) {
    std::snprintf(summary, sizeof summary, "OK (%zu constraints checked)\n", r.stats.constraints);
  } else if (r.consistent) {
    std::snprintf(summary, sizeof summary, "UNDECIDED (%zu of %zu constraints failed to run)\n", r.errors.size(),
                  r.stats.constraints);
  } else {
    std::snprintf(summary, sizeof summary, "INCONSISTENT (%zu violations, %zu constraints checked)\n",
                  r.violations.size(), r.stats.constraints);
  }
  return out + summary;
}

}  // namespace

ReportFormat parse_report_format(std::string_view name) {
  if (name == "text") return ReportFormat::Text;
  if (name == "json") return ReportFormat::Json;
  throw std::invalid_argument("unknown report format '" + std::string(name) + "' (expected text or json)");
}

std::string format_report(const Report& r, ReportFormat format, const PrefixMap& prefixes) {
  if (format == ReportFormat::Json) return to_json(r, true).dump(2) + "\n";
  return format_text(r, prefixes);
}

std::string canonical_report(const Report& r) { return to_json(r, false).dump(); }

}  // namespace rdd
