#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>

#include <json.hpp>

#include "random.hpp"
#include "rdd/sparql.hpp"
#include "verify.hpp"

namespace rdd {
namespace {

const std::string kGolden = std::string(RDD_TEST_DATA_DIR) + "/golden/sparql/";
const std::string kFoaf = "http://xmlns.com/foaf/0.1/";
const std::string kEg = "http://www.example.com#";

const PrefixMap kPrefixes{{"ex", kEg},
                          {"foaf", kFoaf},
                          {"rdf", std::string(vocab::kRdfNs)},
                          {"xsd", std::string(vocab::kXsdNs)}};

Constraint make(ConstraintKind k, std::optional<Iri> q = std::nullopt) {
  Constraint c;
  c.id = "c0001";
  c.kind = std::move(k);
  c.qualifier = std::move(q);
  c.fol_text = render_fol(c, kPrefixes);
  return c;
}

struct Case {
  std::string name;
  Constraint c;
};

std::vector<Case> cases() {
  Iri person = kFoaf + "Person";
  Iri student = kEg + "Student";
  Iri age = kFoaf + "age";
  Iri knows = kFoaf + "knows";
  Iri label = "http://www.w3.org/2000/01/rdf-schema#label";  // no prefix: written as <...>
  Iri integer = std::string(vocab::kXsdNs) + "integer";
  return {
      {"RangeTypeC_unqualified", make(ir::RangeTypeC{age, {RangeKind::Literal, integer}})},
      {"RangeTypeC_qualified", make(ir::RangeTypeC{knows, {RangeKind::Iri, {}}}, person)},
      {"RangeTypeC_bnode", make(ir::RangeTypeC{knows, {RangeKind::BNode, {}}})},
      {"RangeTypeC_resource", make(ir::RangeTypeC{kEg + "course", {RangeKind::Resource, {}}}, student)},
      {"RangeTypeC_literal", make(ir::RangeTypeC{kFoaf + "mbox", {RangeKind::Literal, {}}}, person)},
      {"MinC_unqualified", make(ir::MinC{label, 1})},
      {"MinC_qualified", make(ir::MinC{kFoaf + "mbox", 2}, person)},
      {"MaxC_unqualified", make(ir::MaxC{label, 1})},
      {"MaxC_qualified", make(ir::MaxC{age, 1}, person)},
      {"MaxC_zero", make(ir::MaxC{kEg + "deprecated", 0})},
      {"DomainC_unqualified", make(ir::DomainC{kEg + "matricNr", student})},
      {"DomainC_qualified", make(ir::DomainC{kEg + "matricNr", student}, person)},
      {"RangeC_unqualified", make(ir::RangeC{knows, person})},
      {"RangeC_qualified", make(ir::RangeC{kEg + "course", kEg + "Course"}, student)},
      {"PathC_unqualified", make(ir::PathC{kEg + "taughtBy", {kEg + "teaches"}})},
      {"PathC_qualified", make(ir::PathC{kEg + "taughtBy", {kEg + "course", kEg + "givenBy"}}, student)},
      {"SubPropC_unqualified", make(ir::SubPropC{knows, kEg + "taughtBy"})},
      {"SubPropC_qualified", make(ir::SubPropC{knows, kEg + "taughtBy"}, student)},
      {"PropClosure_unqualified", make(ir::PropClosure{{label, knows}})},
      {"PropClosure_qualified", make(ir::PropClosure{{kEg + "course", std::string(vocab::kRdfType)}}, student)},
      {"PropClosure_empty", make(ir::PropClosure{{}})},
      {"ClassClosure_unqualified", make(ir::ClassClosure{{student, person}})},
      {"ClassClosure_empty", make(ir::ClassClosure{{}})},
      {"SingletonExists_unqualified", make(ir::SingletonExists{kEg + "Root"})},
      {"SingletonUnique_unqualified", make(ir::SingletonUnique{kEg + "Root"})},
      {"KeyC_qualified", make(ir::KeyC{person, {label}}, person)},
      {"KeyC_compound", make(ir::KeyC{student, {kEg + "matricNr", kEg + "university"}}, student)},
  };
}

TEST(Sparql, GoldenQueries) {
  bool update = std::getenv("RDD_UPDATE_GOLDEN") != nullptr;
  for (const auto& [name, c] : cases()) {
    auto text = to_ask(c, kPrefixes).text;
    auto path = kGolden + name + ".rq";
    if (update) std::ofstream(path, std::ios::binary) << text;
    EXPECT_EQ(text, testing::slurp(path)) << name;
    // Byte-stable across calls.
    EXPECT_EQ(text, to_ask(c, kPrefixes).text);
  }
}

TEST(Sparql, EveryKindHasAGoldenFile) {
  std::set<std::size_t> kinds;
  for (const auto& [name, c] : cases()) kinds.insert(c.kind.index());
  EXPECT_EQ(kinds.size(), kConstraintKindCount);
}

TEST(Sparql, SpecExamples) {
  auto w = [](const Constraint& c) { return to_ask(c, kPrefixes).text; };
  EXPECT_NE(w(make(ir::MaxC{kFoaf + "age", 1}, kFoaf + "Person"))
                .find("ASK { ?s a foaf:Person . ?s foaf:age ?o1 , ?o2 . FILTER(!sameTerm(?o1, ?o2)) }"),
            std::string::npos);
  EXPECT_NE(w(make(ir::SubPropC{kFoaf + "knows", kEg + "taughtBy"}))
                .find("ASK { ?s ex:taughtBy ?o . FILTER NOT EXISTS { ?s foaf:knows ?o . } }"),
            std::string::npos);
  EXPECT_EQ(to_ask(make(ir::ClassClosure{{"http://c/1", "http://c/2"}})).text,
            "ASK { ?s a ?c . FILTER(?c != <http://c/1> && ?c != <http://c/2>) }\n");
  EXPECT_EQ(to_ask(make(ir::SingletonExists{"http://c/C"})).text, "ASK { FILTER NOT EXISTS { ?s a <http://c/C> . } }\n");
}

TEST(Sparql, OnlyUsedPrefixesAreDeclared) {
  auto text = to_ask(make(ir::SingletonExists{kEg + "Root"}), kPrefixes).text;
  EXPECT_EQ(text, "PREFIX ex: <http://www.example.com#>\nASK { FILTER NOT EXISTS { ?s a ex:Root . } }\n");
}

TEST(Sparql, PolarityIsViolationPositive) {
  // Every query is an ASK over the violation pattern; none encodes
  // satisfaction by wrapping the whole pattern in a negation.
  std::mt19937 rng(3);
  for (int i = 0; i < 200; ++i) {
    auto c = testing::random_ir(rng);
    auto text = to_ask(c).text;
    auto ask = text.find("ASK { ");
    ASSERT_NE(ask, std::string::npos);
    EXPECT_EQ(text.find("ASK { FILTER NOT EXISTS", ask) == ask, std::holds_alternative<ir::SingletonExists>(c.kind))
        << text;
  }
}

TEST(Sparql, Bundle) {
  auto dir = std::filesystem::temp_directory_path() / "rdd_bundle_test";
  std::filesystem::remove_all(dir);
  auto cs = testing::people_constraints();
  auto queries = to_ask(cs, kPrefixes);
  auto written = write_bundle(queries, dir);
  ASSERT_EQ(written.size(), cs.size() + 1);
  EXPECT_EQ(written[0].filename(), "0001-RangeTypeC.rq");
  EXPECT_EQ(testing::slurp(written[0].string()), queries[0].text);
  auto manifest = nlohmann::json::parse(testing::slurp((dir / "manifest.json").string()));
  ASSERT_EQ(manifest["queries"].size(), cs.size());
  for (std::size_t i = 0; i < cs.size(); ++i) {
    EXPECT_EQ(manifest["queries"][i]["constraint"], cs[i].id);
    EXPECT_TRUE(std::filesystem::exists(dir / manifest["queries"][i]["file"].get<std::string>()));
  }
  std::filesystem::remove_all(dir);
}

}  // namespace
}  // namespace rdd
