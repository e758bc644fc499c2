// rdd — parse, compile and check RDF Data Descriptions.
//
// Exit codes: 0 ok / consistent, 1 violations found, 2 input error,
// 3 remote endpoint error.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "rdd/checker.hpp"
#include "rdd/compiler.hpp"
#include "rdd/environment.hpp"
#include "rdd/ntriples.hpp"
#include "rdd/parser.hpp"
#include "rdd/printer.hpp"
#include "rdd/report.hpp"
#include "rdd/sparql.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kViolations = 1;
constexpr int kInputError = 2;
constexpr int kRemoteError = 3;

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError(path + ": cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct Loaded {
  rdd::RddDocument doc;
  rdd::Environment env;
  std::vector<rdd::Constraint> constraints;
};

rdd::RddDocument load_document(const std::string& path, bool well_known) {
  rdd::ParseOptions options;
  if (well_known) options.predeclared = rdd::well_known_prefixes();
  std::string text = read_file(path);
  try {
    return rdd::parse_rdd(text, options);
  } catch (const rdd::RddError& e) {
    throw InputError(path + ":" + e.what());
  }
}

Loaded load(const std::string& path, bool well_known) {
  Loaded l;
  l.doc = load_document(path, well_known);
  try {
    l.env = rdd::build_environment(l.doc);
  } catch (const rdd::CycleError& e) {
    throw InputError(path + ": " + e.what());
  }
  l.constraints = rdd::compile(l.doc, l.env, {l.doc.prefixes, path});
  return l;
}

rdd::Dataset load_data(const std::vector<std::string>& paths) {
  rdd::DatasetBuilder builder;
  for (const auto& p : paths) {
    std::string text = read_file(p);
    try {
      builder.add_document(text, p == "-" ? "<stdin>" : p);
    } catch (const rdd::NTriplesError& e) {
      throw InputError(e.what());
    }
  }
  return builder.build();
}

nlohmann::ordered_json parameters(const rdd::Constraint& c) {
  using json = nlohmann::ordered_json;
  return std::visit(
      [](const auto& k) -> json {
        using T = std::decay_t<decltype(k)>;
        namespace ir = rdd::ir;
        if constexpr (std::is_same_v<T, ir::RangeTypeC>) {
          static constexpr const char* kinds[] = {"IRI", "BNODE", "RESOURCE", "LITERAL"};
          json rt = {{"kind", kinds[static_cast<int>(k.rt.kind)]}};
          if (k.rt.datatype) rt["datatype"] = *k.rt.datatype;
          return {{"prop", k.prop}, {"range_type", rt}};
        } else if constexpr (std::is_same_v<T, ir::MinC> || std::is_same_v<T, ir::MaxC>) {
          return {{"prop", k.prop}, {"n", k.n}};
        } else if constexpr (std::is_same_v<T, ir::DomainC>) {
          return {{"prop", k.prop}, {"domain", k.domain}};
        } else if constexpr (std::is_same_v<T, ir::RangeC>) {
          return {{"prop", k.prop}, {"range", k.range}};
        } else if constexpr (std::is_same_v<T, ir::PathC>) {
          return {{"prop", k.prop}, {"seq", k.seq}};
        } else if constexpr (std::is_same_v<T, ir::SubPropC>) {
          return {{"super_prop", k.super_prop}, {"sub_prop", k.sub_prop}};
        } else if constexpr (std::is_same_v<T, ir::PropClosure>) {
          return {{"props", k.props}};
        } else if constexpr (std::is_same_v<T, ir::ClassClosure>) {
          return {{"classes", k.classes}};
        } else if constexpr (std::is_same_v<T, ir::KeyC>) {
          return {{"class", k.cls}, {"props", k.props}};
        } else {
          return {{"class", k.cls}};
        }
      },
      c.kind);
}

std::string emit_ir(const std::vector<rdd::Constraint>& cs) {
  nlohmann::ordered_json out = nlohmann::ordered_json::array();
  for (const auto& c : cs) {
    out.push_back({{"id", c.id},
                   {"kind", rdd::kind_name(c.kind)},
                   {"qualifier", c.qualifier ? nlohmann::ordered_json(*c.qualifier) : nlohmann::ordered_json(nullptr)},
                   {"params", parameters(c)},
                   {"fol", c.fol_text},
                   {"provenance",
                    {{"file", c.provenance.file},
                     {"line", c.provenance.loc.line},
                     {"col", c.provenance.loc.column},
                     {"derivation", c.provenance.derivation()}}}});
  }
  return out.dump(2) + "\n";
}

std::string emit_fol(const std::vector<rdd::Constraint>& cs) {
  std::string out;
  for (const auto& c : cs) {
    out += c.fol_text + "  # " + c.provenance.file + ":" + std::to_string(c.provenance.loc.line) + ":" +
           std::to_string(c.provenance.loc.column) + " " + c.provenance.derivation() + "\n";
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"RDF Data Description toolkit"};
  app.require_subcommand(1);
  bool well_known = false;
  app.add_flag("--well-known-prefixes", well_known, "Predeclare rdf, rdfs, xsd, foaf and owl prefixes");

  std::string rdd_path;
  auto* parse_cmd = app.add_subcommand("parse", "Validate an RDD file and print it canonically");
  parse_cmd->add_option("rdd", rdd_path, "RDD file")->required();

  std::string emit = "fol";
  bool explain = false;
  auto* compile_cmd = app.add_subcommand("compile", "Compile an RDD file into constraints");
  compile_cmd->add_option("rdd", rdd_path, "RDD file")->required();
  compile_cmd->add_option("--emit", emit, "Output: fol or ir")->check(CLI::IsMember({"fol", "ir"}));
  compile_cmd->add_flag("--explain", explain, "Print the environment (E.C, E.P, E.A) first");

  std::vector<std::string> data_paths;
  std::string mode = "indexed";
  std::string format = "text";
  std::size_t max_witnesses = 0;
  bool lenient = false;
  unsigned threads = 1;
  auto* check_cmd = app.add_subcommand("check", "Check N-Triples data against an RDD file");
  check_cmd->add_option("rdd", rdd_path, "RDD file")->required();
  check_cmd->add_option("data", data_paths, "N-Triples files ('-' for stdin)")->required();
  check_cmd->add_option("--mode", mode, "reference or indexed")->check(CLI::IsMember({"reference", "indexed"}));
  check_cmd->add_option("--format", format, "text or json");
  check_cmd->add_option("--max-witnesses", max_witnesses, "Violations reported per constraint (0 = all)");
  check_cmd->add_flag("--lenient-resources", lenient,
                      "Deviation: Resource(x) only covers subject/object occurrences");
  check_cmd->add_option("--threads", threads, "Evaluation threads")->check(CLI::PositiveNumber);

  std::string out_dir;
  auto* sparql_cmd = app.add_subcommand("sparql", "Generate SPARQL ASK queries (true = violated)");
  sparql_cmd->add_option("rdd", rdd_path, "RDD file")->required();
  sparql_cmd->add_option("--out", out_dir, "Write a query bundle to this directory instead of stdout");

  rdd::EndpointConfig endpoint;
  long timeout_ms = 10000;
  std::string bearer, basic, default_graph;
  auto* remote_cmd = app.add_subcommand("remote-check", "Run the ASK queries against a SPARQL endpoint");
  remote_cmd->add_option("rdd", rdd_path, "RDD file")->required();
  remote_cmd->add_option("--endpoint", endpoint.url, "SPARQL endpoint URL")->required();
  remote_cmd->add_option("--timeout-ms", timeout_ms, "Per-request timeout")->check(CLI::PositiveNumber);
  remote_cmd->add_option("--parallel", endpoint.parallel, "Concurrent requests")->check(CLI::PositiveNumber);
  remote_cmd->add_option("--bearer-token", bearer, "Bearer token");
  remote_cmd->add_option("--basic-auth", basic, "user:password");
  remote_cmd->add_option("--default-graph", default_graph, "default-graph-uri parameter");
  remote_cmd->add_option("--format", format, "text or json");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kInputError;
  }

  try {
    if (parse_cmd->parsed()) {
      std::cout << rdd::pretty_print(load_document(rdd_path, well_known));
      return kOk;
    }

    Loaded l = load(rdd_path, well_known);

    if (compile_cmd->parsed()) {
      if (explain) std::cout << rdd::describe(l.env, l.doc.prefixes) << "\n";
      std::cout << (emit == "ir" ? emit_ir(l.constraints) : emit_fol(l.constraints));
      return kOk;
    }

    if (sparql_cmd->parsed()) {
      auto queries = rdd::to_ask(l.constraints, l.doc.prefixes);
      if (out_dir.empty()) {
        for (const auto& q : queries) std::cout << "# " << q.constraint_id() << "\n" << q.text << "\n";
      } else {
        rdd::write_bundle(queries, out_dir);
      }
      return kOk;
    }

    rdd::ReportFormat fmt;
    try {
      fmt = rdd::parse_report_format(format);
    } catch (const std::invalid_argument& e) {
      throw InputError(e.what());
    }

    if (check_cmd->parsed()) {
      rdd::Dataset data = load_data(data_paths);
      rdd::CheckOptions options;
      options.mode = mode == "reference" ? rdd::CheckMode::Reference : rdd::CheckMode::Indexed;
      if (max_witnesses > 0) options.limit = max_witnesses;
      options.lenient_resources = lenient;
      options.threads = threads;
      options.prefixes = l.doc.prefixes;
      auto report = rdd::check(data, l.constraints, options);
      std::cout << rdd::format_report(report, fmt, l.doc.prefixes);
      return report.consistent ? kOk : kViolations;
    }

    if (remote_cmd->parsed()) {
      endpoint.timeout = std::chrono::milliseconds(timeout_ms);
      if (!bearer.empty()) endpoint.bearer_token = bearer;
      if (!basic.empty()) {
        auto colon = basic.find(':');
        if (colon == std::string::npos) throw InputError("--basic-auth expects user:password");
        endpoint.basic_auth = std::make_pair(basic.substr(0, colon), basic.substr(colon + 1));
      }
      if (!default_graph.empty()) endpoint.default_graph = default_graph;
      rdd::Report report;
      try {
        report = rdd::run_remote(rdd::to_ask(l.constraints, l.doc.prefixes), endpoint);
      } catch (const std::invalid_argument& e) {
        throw InputError(e.what());
      }
      std::cout << rdd::format_report(report, fmt, l.doc.prefixes);
      for (const auto& e : report.errors) std::cerr << "rdd: query " << e.constraint_id << ": " << e.message << "\n";
      if (!report.errors.empty()) return kRemoteError;
      return report.consistent ? kOk : kViolations;
    }
  } catch (const InputError& e) {
    std::cerr << "rdd: " << e.what() << "\n";
    return kInputError;
  } catch (const std::exception& e) {
    std::cerr << "rdd: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}
