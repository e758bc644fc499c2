#include <gtest/gtest.h>

#include "random.hpp"
#include "rdd/report.hpp"
#include "verify.hpp"

namespace rdd {
namespace {

using testing::ex;

const std::string kFoaf = "http://xmlns.com/foaf/0.1/";
const std::string kRdfs = "http://www.w3.org/2000/01/rdf-schema#";
const std::string kEg = "http://www.example.com#";

Term I(const std::string& l) { return Term::iri(ex(l)); }
Term type() { return Term::iri(testing::type_iri()); }

Constraint make(ConstraintKind k, std::optional<Iri> q = std::nullopt) {
  Constraint c;
  c.id = "c0001";
  c.kind = std::move(k);
  c.qualifier = std::move(q);
  c.fol_text = render_fol(c);
  return c;
}

Report both_modes(const Dataset& d, const std::vector<Constraint>& cs) {
  auto indexed = testing::checked(d, cs, {CheckMode::Indexed});
  auto reference = testing::checked(d, cs, {CheckMode::Reference});
  EXPECT_EQ(canonical_report(indexed), canonical_report(reference));
  return indexed;
}

TEST(Checker, EmptyDatasetAgainstPeopleIsConsistent) {
  auto cs = testing::people_constraints();
  auto r = both_modes(Dataset{}, cs);
  EXPECT_TRUE(r.consistent);
  EXPECT_EQ(r.stats.constraints, 35u);
  EXPECT_EQ(r.stats.triples, 0u);
}

TEST(Checker, TwoLabelsViolateMaxLabel) {
  auto cs = testing::people_constraints();
  auto d = testing::load_nt("two_labels.nt");
  auto r = both_modes(d, cs);
  EXPECT_FALSE(r.consistent);

  Witness expected{{"s", Term::iri(kEg + "s1")}, {"o1", Term::literal("A")}, {"o2", Term::literal("B")}};
  auto qualified = std::find_if(r.violations.begin(), r.violations.end(), [&](const Violation& v) {
    const auto* max = std::get_if<ir::MaxC>(&v.constraint.kind);
    return max && max->prop == kRdfs + "label" && v.constraint.qualifier == kFoaf + "Person";
  });
  ASSERT_NE(qualified, r.violations.end());
  EXPECT_EQ(qualified->witness, expected);

  // Unqualified MinC(rdfs:label, 1) flags every unlabeled resource,
  // including IRIs that only occur as predicates.
  std::set<Term> unlabeled;
  for (const auto& v : r.violations) {
    const auto* min = std::get_if<ir::MinC>(&v.constraint.kind);
    if (min && !v.constraint.qualifier) unlabeled.insert(v.witness.at(0).second);
  }
  EXPECT_TRUE(unlabeled.contains(Term::iri(kFoaf + "mbox")));
  EXPECT_TRUE(unlabeled.contains(Term::iri(testing::type_iri())));
  EXPECT_FALSE(unlabeled.contains(Term::iri(kEg + "s1")));
}

TEST(Checker, StudentFlipsPeopleThroughClassClosure) {
  auto cs = testing::people_constraints();
  auto r = both_modes(testing::load_nt("persons_with_student.nt"), cs);
  ASSERT_EQ(r.violations.size(), 1u);
  EXPECT_TRUE(std::holds_alternative<ir::ClassClosure>(r.violations[0].constraint.kind));
  EXPECT_EQ(r.violations[0].witness, (Witness{{"s", Term::iri(kEg + "databases")}, {"c", Term::iri(kEg + "Course")}}));
}

TEST(Checker, RangeTypeLiteralOnIri) {
  auto c = make(ir::RangeTypeC{kFoaf + "mbox", {RangeKind::Literal, {}}});
  auto d = Dataset::from_triples({{I("a"), Term::iri(kFoaf + "mbox"), I("b")}});
  auto r = both_modes(d, {c});
  ASSERT_EQ(r.violations.size(), 1u);
  EXPECT_EQ(r.violations[0].witness, (Witness{{"s", I("a")}, {"o", I("b")}}));
}

TEST(Checker, SubPropertySatisfied) {
  auto c = make(ir::SubPropC{kFoaf + "knows", ex("taughtBy")});
  auto d = Dataset::from_triples({{I("a"), I("taughtBy"), I("b")}, {I("a"), Term::iri(kFoaf + "knows"), I("b")}});
  EXPECT_TRUE(both_modes(d, {c}).consistent);
}

TEST(Checker, SingletonExistsOnEmptyDataset) {
  auto r = both_modes(Dataset{}, {make(ir::SingletonExists{ex("C")})});
  ASSERT_EQ(r.violations.size(), 1u);
  EXPECT_TRUE(r.violations[0].witness.empty());
}

TEST(Checker, SingletonUniqueAndKeys) {
  auto d = Dataset::from_triples({{I("a"), type(), I("C")}, {I("b"), type(), I("C")}, {I("c"), type(), I("C")},
                                  {I("a"), I("k"), Term::literal("1")}, {I("b"), I("k"), Term::literal("1")},
                                  {I("c"), I("k"), Term::literal("2")}, {I("c"), I("k"), Term::literal("1")}});
  auto unique = both_modes(d, {make(ir::SingletonUnique{ex("C")})});
  EXPECT_EQ(unique.violations.size(), 3u);
  auto key = both_modes(d, {make(ir::KeyC{ex("C"), {ex("k")}}, ex("C"))});
  // a, b and c all carry "1".
  EXPECT_EQ(key.violations.size(), 3u);
  EXPECT_EQ(key.violations[0].witness, (Witness{{"s1", I("a")}, {"s2", I("b")}, {"o", Term::literal("1")}}));
}

TEST(Checker, MultiPropertyKeyNeedsAllComponents) {
  auto d = Dataset::from_triples({{I("a"), type(), I("C")}, {I("b"), type(), I("C")},
                                  {I("a"), I("k1"), Term::literal("1")}, {I("b"), I("k1"), Term::literal("1")},
                                  {I("a"), I("k2"), Term::literal("x")}, {I("b"), I("k2"), Term::literal("y")}});
  auto key = make(ir::KeyC{ex("C"), {ex("k1"), ex("k2")}}, ex("C"));
  EXPECT_TRUE(both_modes(d, {key}).consistent);
  auto d2 = Dataset::from_triples({{I("a"), type(), I("C")}, {I("b"), type(), I("C")},
                                   {I("a"), I("k1"), Term::literal("1")}, {I("b"), I("k1"), Term::literal("1")},
                                   {I("a"), I("k2"), Term::literal("x")}, {I("b"), I("k2"), Term::literal("x")}});
  EXPECT_EQ(both_modes(d2, {key}).violations.size(), 1u);
}

TEST(Checker, MaxZeroForbidsTheProperty) {
  auto d = Dataset::from_triples({{I("a"), I("p"), I("b")}, {I("a"), I("q"), I("b")}});
  auto r = both_modes(d, {make(ir::MaxC{ex("p"), 0})});
  ASSERT_EQ(r.violations.size(), 1u);
  EXPECT_EQ(r.violations[0].witness, (Witness{{"s", I("a")}, {"o1", I("b")}}));
}

TEST(Checker, PropertyAndClassClosure) {
  auto d = Dataset::from_triples({{I("a"), type(), I("C")}, {I("a"), I("p"), I("x")}, {I("a"), I("q"), I("x")},
                                  {I("b"), I("q"), I("x")}, {I("b"), type(), I("D")}});
  auto closed = both_modes(d, {make(ir::PropClosure{{ex("p"), testing::type_iri()}}, ex("C"))});
  ASSERT_EQ(closed.violations.size(), 1u);
  EXPECT_EQ(closed.violations[0].witness, (Witness{{"s", I("a")}, {"p", I("q")}, {"o", I("x")}}));
  auto global = both_modes(d, {make(ir::PropClosure{{}})});
  EXPECT_EQ(global.violations.size(), d.size());
  auto classes = both_modes(d, {make(ir::ClassClosure{{ex("C")}})});
  ASSERT_EQ(classes.violations.size(), 1u);
  EXPECT_EQ(classes.violations[0].witness, (Witness{{"s", I("b")}, {"c", I("D")}}));
}

TEST(Checker, DomainRangeAndPath) {
  auto d = Dataset::from_triples({{I("a"), I("p"), I("b")}, {I("a"), type(), I("D")}, {I("c"), I("p"), I("b")},
                                  {I("a"), I("q"), I("m")}, {I("m"), I("r"), I("b")}});
  EXPECT_EQ(both_modes(d, {make(ir::DomainC{ex("p"), ex("D")})}).violations.size(), 1u);
  EXPECT_EQ(both_modes(d, {make(ir::RangeC{ex("p"), ex("R")})}).violations.size(), 2u);
  auto path = both_modes(d, {make(ir::PathC{ex("p"), {ex("q"), ex("r")}})});
  ASSERT_EQ(path.violations.size(), 1u);
  EXPECT_EQ(path.violations[0].witness[0].second, I("c"));
}

TEST(Checker, LimitKeepsFirstWitnessesInCanonicalOrder) {
  std::vector<Triple> triples;
  for (int i = 0; i < 6; ++i) triples.push_back({I("a"), I("p"), Term::literal(std::to_string(i))});
  auto d = Dataset::from_triples(triples);
  auto c = make(ir::MaxC{ex("p"), 1});
  auto all = testing::checked(d, {c});
  EXPECT_EQ(all.violations.size(), 15u);
  for (auto mode : {CheckMode::Indexed, CheckMode::Reference}) {
    CheckOptions o;
    o.mode = mode;
    o.limit = 4;
    auto some = testing::checked(d, {c}, o);
    ASSERT_EQ(some.violations.size(), 4u);
    for (std::size_t i = 0; i < 4; ++i) EXPECT_EQ(some.violations[i].witness, all.violations[i].witness);
  }
}

TEST(Checker, ThreadsDoNotChangeTheReport) {
  auto cs = testing::people_constraints();
  auto d = testing::load_nt("two_labels.nt");
  CheckOptions many;
  many.threads = 8;
  EXPECT_EQ(canonical_report(testing::checked(d, cs)), canonical_report(testing::checked(d, cs, many)));
}

TEST(Checker, LenientResources) {
  auto d = Dataset::from_triples({{I("a"), I("label"), Term::literal("x")}});
  auto c = make(ir::MinC{ex("label"), 1});
  EXPECT_EQ(both_modes(d, {c}).violations.size(), 1u);  // the predicate IRI itself
  CheckOptions lenient;
  lenient.lenient_resources = true;
  EXPECT_TRUE(testing::checked(d, {c}, lenient).consistent);
  lenient.mode = CheckMode::Reference;
  EXPECT_TRUE(testing::checked(d, {c}, lenient).consistent);
}

TEST(Checker, ViolationMessagesNameTheWitness) {
  auto r = both_modes(testing::load_nt("two_labels.nt"), testing::people_constraints());
  for (const auto& v : r.violations) {
    EXPECT_FALSE(v.message.empty());
    EXPECT_NE(v.message.find(v.witness.at(0).second.to_ntriples()), std::string::npos) << v.message;
  }
}

}  // namespace
}  // namespace rdd
