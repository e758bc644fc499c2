// Parse/compile cost of the person description and checking cost of the
// reference and indexed evaluators on synthetic person graphs.

#include <benchmark/benchmark.h>

#include <fstream>
#include <sstream>

#include "rdd/checker.hpp"
#include "rdd/compiler.hpp"
#include "rdd/parser.hpp"
#include "rdd/vocab.hpp"

namespace {

using namespace rdd;

const std::string kFoaf = "http://xmlns.com/foaf/0.1/";
const std::string kEg = "http://www.example.com#";
const std::string kLabel = "http://www.w3.org/2000/01/rdf-schema#label";

std::string people_text() {
  std::ifstream in(std::string(RDD_FIXTURE_DIR) + "/rdd/people.rdd");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// n persons in a ring of foaf:knows, each satisfying the person constraints;
// every vocabulary IRI carries one label.
Dataset persons(std::size_t n) {
  std::vector<Triple> ts;
  auto iri = [](const std::string& s) { return Term::iri(s); };
  for (std::size_t i = 0; i < n; ++i) {
    Term p = iri(kEg + "p" + std::to_string(i));
    ts.push_back({p, iri(std::string(vocab::kRdfType)), iri(kFoaf + "Person")});
    ts.push_back({p, iri(kLabel), Term::literal("person " + std::to_string(i))});
    ts.push_back({p, iri(kFoaf + "mbox"), Term::literal("mailto:p" + std::to_string(i) + "@example.com")});
    ts.push_back({p, iri(kFoaf + "knows"), iri(kEg + "p" + std::to_string((i + 1) % n))});
  }
  for (const auto& v : {kFoaf + "Person", kFoaf + "mbox", kFoaf + "knows", std::string(vocab::kRdfType), kLabel}) {
    ts.push_back({iri(v), iri(kLabel), Term::literal(v)});
  }
  return Dataset::from_triples(ts);
}

void BM_ParseAndCompile(benchmark::State& state) {
  const std::string text = people_text();
  for (auto _ : state) {
    auto cs = compile(parse_rdd(text));
    benchmark::DoNotOptimize(cs);
  }
}
BENCHMARK(BM_ParseAndCompile);

void run_check(benchmark::State& state, CheckMode mode) {
  const auto cs = compile(parse_rdd(people_text()));
  const auto d = persons(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    auto r = check(d, cs, {mode});
    if (!r.consistent) state.SkipWithError("synthetic data should be consistent");
    benchmark::DoNotOptimize(r);
  }
  state.counters["triples"] = static_cast<double>(d.size());
}

void BM_CheckReference(benchmark::State& state) { run_check(state, CheckMode::Reference); }
void BM_CheckIndexed(benchmark::State& state) { run_check(state, CheckMode::Indexed); }
BENCHMARK(BM_CheckReference)->RangeMultiplier(4)->Range(16, 256)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CheckIndexed)->RangeMultiplier(4)->Range(16, 4096)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
