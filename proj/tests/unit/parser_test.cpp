#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "random.hpp"
#include "rdd/parser.hpp"
#include "rdd/printer.hpp"

namespace rdd {
namespace {

const std::string kFixtures = std::string(RDD_TEST_DATA_DIR) + "/fixtures/rdd/";

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

RddError::Kind error_kind(std::string_view text, SourceLoc* loc = nullptr) {
  try {
    parse_rdd(text);
  } catch (const RddError& e) {
    if (loc) *loc = e.loc();
    EXPECT_GT(e.loc().line, 0u) << e.what();
    return e.kind();
  }
  ADD_FAILURE() << "accepted: " << text;
  return RddError::Kind::Invariant;
}

constexpr const char* kEx = "PREFIX ex: <http://www.example.com#>\n";

std::string with_class_body(const std::string& body) {
  return std::string(kEx) + "OWA CLASSES { OWA CLASS ex:A { " + body + " } } OWA PROPERTIES { }";
}

std::string with_properties(const std::string& body) {
  return std::string(kEx) + "OWA CLASSES { } OWA PROPERTIES { " + body + " }";
}

TEST(Parser, People) {
  auto doc = parse_rdd(slurp(kFixtures + "people.rdd"));
  const auto& cs = doc.class_section;
  EXPECT_FALSE(cs.is_owa);
  ASSERT_EQ(cs.classes.size(), 2u);
  EXPECT_EQ(cs.classes[0].cls, "http://xmlns.com/foaf/0.1/Person");
  EXPECT_EQ(cs.classes[0].sub_classes, std::vector<Iri>{"http://www.example.com#Student"});
  EXPECT_EQ(cs.classes[0].keys.size(), 1u);
  EXPECT_EQ(cs.classes[0].qpcs.size(), 3u);
  EXPECT_EQ(cs.classes[1].cls, "http://www.example.com#Student");
  EXPECT_EQ(cs.classes[1].qpcs.size(), 3u);

  const auto& ps = doc.prop_section;
  EXPECT_TRUE(ps.is_owa);
  ASSERT_EQ(ps.upcs.size(), 2u);
  EXPECT_EQ(ps.upcs[0].prop, "http://www.w3.org/2000/01/rdf-schema#label");
  ASSERT_EQ(ps.upcs[0].constraints.size(), 1u);
  EXPECT_TRUE(std::holds_alternative<atom::Total>(ps.upcs[0].constraints[0].value));
  EXPECT_EQ(ps.upcs[1].prop, "http://xmlns.com/foaf/0.1/knows");
  EXPECT_EQ(std::get<atom::SubProperty>(ps.upcs[1].constraints[0].value).sub_props,
            std::vector<Iri>{"http://www.example.com#taughtBy"});
}

TEST(Parser, UnprefixedPeopleNeedsWellKnownPrefixes) {
  auto text = slurp(kFixtures + "people_unprefixed.rdd");
  EXPECT_EQ(error_kind(text), RddError::Kind::UnresolvedPrefix);
  auto doc = parse_rdd(text, {well_known_prefixes()});
  auto declared = parse_rdd(slurp(kFixtures + "people.rdd"));
  EXPECT_EQ(doc.class_section, declared.class_section);
  EXPECT_EQ(doc.prop_section, declared.prop_section);
}

TEST(Parser, MinimalDocument) {
  auto doc = parse_rdd("OWA CLASSES { } OWA PROPERTIES { }");
  EXPECT_TRUE(doc.prefixes.empty());
  EXPECT_TRUE(doc.class_section.is_owa);
  EXPECT_TRUE(doc.class_section.classes.empty());
  EXPECT_TRUE(doc.prop_section.upcs.empty());
}

TEST(Parser, SingletonClassWithEmptyBody) {
  auto doc = parse_rdd(std::string(kEx) + "CWA CLASSES { OWA SINGLETON CLASS ex:Root { } } OWA PROPERTIES { }");
  ASSERT_EQ(doc.class_section.classes.size(), 1u);
  const auto& cc = doc.class_section.classes[0];
  EXPECT_TRUE(cc.is_singleton);
  EXPECT_TRUE(cc.is_owa);
  EXPECT_TRUE(cc.keys.empty());
  EXPECT_TRUE(cc.qpcs.empty());
  EXPECT_FALSE(doc.class_section.is_owa);
}

TEST(Parser, InfixSubpropertyDesugars) {
  auto infix = parse_rdd(with_properties("ex:a SUBPROPERTY ex:b, ex:c ;"));
  auto prefix = parse_rdd(with_properties("SUBPROPERTY(ex:b, ex:c) ex:a ;"));
  EXPECT_EQ(infix, prefix);
  auto text = pretty_print(parse_rdd(with_properties("ex:knows SUBPROPERTY ex:taughtBy ;")));
  EXPECT_NE(text.find("  SUBPROPERTY(ex:taughtBy) ex:knows ;\n"), std::string::npos) << text;
}

TEST(Parser, RangeTypes) {
  auto doc = parse_rdd(with_class_body(
      "ex:a : IRI; ex:b : BNODE; ex:c : RESOURCE; ex:d : LITERAL; ex:e : LITERAL(<http://t/dt>); ex:f;"));
  const auto& q = doc.class_section.classes[0].qpcs;
  ASSERT_EQ(q.size(), 6u);
  EXPECT_EQ(q[0].range_type, (RangeType{RangeKind::Iri, {}}));
  EXPECT_EQ(q[1].range_type, (RangeType{RangeKind::BNode, {}}));
  EXPECT_EQ(q[2].range_type, (RangeType{RangeKind::Resource, {}}));
  EXPECT_EQ(q[3].range_type, (RangeType{RangeKind::Literal, {}}));
  EXPECT_EQ(q[4].range_type, (RangeType{RangeKind::Literal, std::string("http://t/dt")}));
  EXPECT_EQ(q[5].range_type, std::nullopt);
}

TEST(Parser, CommentsAndCaseInsensitivePrefixKeyword) {
  auto doc = parse_rdd("prefix ex: <http://e/> # a comment\nOWA CLASSES { # x\n } OWA PROPERTIES { ex:p ; }");
  EXPECT_EQ(doc.prefixes.at("ex"), "http://e/");
  EXPECT_EQ(doc.prop_section.upcs[0].prop, "http://e/p");
}

TEST(Parser, LocationsAttached) {
  auto doc = parse_rdd(std::string(kEx) + "OWA CLASSES {\n  OWA CLASS ex:A {\n    MIN(1) ex:p ;\n  }\n}\nOWA PROPERTIES { }");
  const auto& cc = doc.class_section.classes[0];
  EXPECT_EQ(cc.loc.line, 3u);
  EXPECT_EQ(cc.qpcs[0].loc.line, 4u);
  EXPECT_EQ(cc.qpcs[0].constraints[0].loc.line, 4u);
  EXPECT_EQ(cc.qpcs[0].constraints[0].loc.column, 5u);
}

TEST(Parser, LexicalErrors) {
  EXPECT_EQ(error_kind("OWA CLASSES { } OWA PROPERTIES { } $"), RddError::Kind::Lexical);
  EXPECT_EQ(error_kind(with_properties("<http://unterminated ;")), RddError::Kind::Lexical);
  // Bare words are not tokens: keywords are case-sensitive, range types
  // are a closed set, and cardinalities are numerals.
  EXPECT_EQ(error_kind("owa CLASSES { } OWA PROPERTIES { }"), RddError::Kind::Lexical);
  EXPECT_EQ(error_kind(with_class_body("MIN(x) ex:p ;")), RddError::Kind::Lexical);
  EXPECT_EQ(error_kind(with_class_body("ex:p : STRING ;")), RddError::Kind::Lexical);
}

TEST(Parser, SyntaxErrors) {
  SourceLoc loc;
  EXPECT_EQ(error_kind(slurp(kFixtures + "malformed.rdd"), &loc), RddError::Kind::Syntax);
  EXPECT_EQ(loc.line, 5u);
  EXPECT_EQ(error_kind("OWA CLASSES { }"), RddError::Kind::Syntax);
  EXPECT_EQ(error_kind("OWA PROPERTIES { } OWA CLASSES { }"), RddError::Kind::Syntax);
  EXPECT_EQ(error_kind(with_class_body("KEY ;")), RddError::Kind::Syntax);
  EXPECT_EQ(error_kind(with_class_body("PATH() ex:p ;")), RddError::Kind::Syntax);
  EXPECT_EQ(error_kind(with_class_body("MIN(1) ;")), RddError::Kind::Syntax);
}

TEST(Parser, PrefixErrors) {
  EXPECT_EQ(error_kind(with_properties("nope:p ;")), RddError::Kind::UnresolvedPrefix);
  EXPECT_EQ(error_kind("OWA CLASSES { } OWA PROPERTIES { <relative> ; }"), RddError::Kind::Syntax);
}

TEST(Parser, DuplicateClass) {
  EXPECT_EQ(error_kind(std::string(kEx) + "OWA CLASSES { OWA CLASS ex:A { } OWA CLASS ex:A { } } OWA PROPERTIES { }"),
            RddError::Kind::DuplicateClass);
}

TEST(Parser, InvariantViolations) {
  EXPECT_EQ(error_kind(with_class_body("PARTIAL, TOTAL ex:p ;")), RddError::Kind::Invariant);
  EXPECT_EQ(error_kind(with_class_body("MIN(3), MAX(2) ex:p ;")), RddError::Kind::Invariant);
  EXPECT_EQ(error_kind(with_class_body("MIN(1), MIN(2) ex:p ;")), RddError::Kind::Invariant);
  EXPECT_EQ(error_kind(with_class_body("RANGE(ex:A), RANGE(ex:B) ex:p ;")), RddError::Kind::Invariant);
  EXPECT_EQ(error_kind(with_class_body("KEY ex:p, ex:p ;")), RddError::Kind::Invariant);
  EXPECT_EQ(error_kind(with_class_body("MAX(65537) ex:p ;")), RddError::Kind::Invariant);
  EXPECT_EQ(error_kind(std::string(kEx) + "OWA CLASSES { OWA CLASS ex:A SUBCLASS ex:B, ex:B { } } OWA PROPERTIES { }"),
            RddError::Kind::Invariant);
  EXPECT_NO_THROW(parse_rdd(with_class_body("MAX(65536) ex:p ;")));
  // A key and a separate entry for the same property are fine.
  EXPECT_NO_THROW(parse_rdd(with_class_body("KEY ex:p ; TOTAL ex:p : LITERAL ;")));
}

TEST(Parser, MinZeroAndMaxZeroAccepted) {
  auto doc = parse_rdd(with_class_body("MIN(0), MAX(0) ex:p ;"));
  EXPECT_EQ(doc.class_section.classes[0].qpcs[0].constraints.size(), 2u);
}

TEST(Printer, EmptyDocument) {
  auto text = pretty_print(RddDocument{});
  EXPECT_EQ(text, "OWA CLASSES {\n}\nOWA PROPERTIES {\n}\n");
  EXPECT_EQ(parse_rdd(text), RddDocument{});
}

TEST(Printer, CorpusRoundTrips) {
  for (const auto& entry : std::filesystem::directory_iterator(kFixtures)) {
    if (entry.path().extension() != ".rdd" || entry.path().stem() == "malformed") continue;
    SCOPED_TRACE(entry.path().string());
    auto first = parse_rdd(slurp(entry.path()), {well_known_prefixes()});
    auto printed = pretty_print(first);
    auto second = parse_rdd(printed);
    EXPECT_EQ(first, second);
    EXPECT_EQ(pretty_print(second), printed);
  }
}

TEST(Printer, CompactIri) {
  PrefixMap p{{"ex", "http://e/"}, {"exx", "http://e/x/"}};
  EXPECT_EQ(compact_iri("http://e/a", p), "ex:a");
  EXPECT_EQ(compact_iri("http://e/x/b", p), "exx:b");
  EXPECT_EQ(compact_iri("http://e/a b", p), "<http://e/a b>");
  EXPECT_EQ(compact_iri("http://other/a", p), "<http://other/a>");
}

class RoundTripProperty : public ::testing::TestWithParam<int> {};

TEST_P(RoundTripProperty, ParsePrintParseIsIdentity) {
  std::mt19937 rng(GetParam());
  for (int i = 0; i < 20; ++i) {
    auto doc = testing::random_document(rng, false);
    auto printed = pretty_print(doc);
    RddDocument reparsed;
    ASSERT_NO_THROW(reparsed = parse_rdd(printed)) << printed;
    ASSERT_EQ(reparsed, doc) << printed;
    ASSERT_EQ(parse_rdd(pretty_print(reparsed)), reparsed);
  }
}

INSTANTIATE_TEST_SUITE_P(Seeds, RoundTripProperty, ::testing::Range(1, 26));

TEST(Grammar, EveryProductionIsReachableFromTheCorpus) {
  std::set<std::string> seen;
  for (const auto& entry : std::filesystem::directory_iterator(kFixtures)) {
    if (entry.path().extension() != ".rdd" || entry.path().stem() == "malformed") continue;
    ParseOptions options{well_known_prefixes(), &seen};
    parse_rdd(slurp(entry.path()), options);
  }
  for (const auto& production : grammar_productions()) EXPECT_TRUE(seen.contains(production)) << production;
}

}  // namespace
}  // namespace rdd
