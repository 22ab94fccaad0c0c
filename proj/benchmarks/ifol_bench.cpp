#include <benchmark/benchmark.h>

#include <string>

#include "ifol/parser.hpp"
#include "ifol/report.hpp"
#include "ifol/semantics.hpp"

namespace {

std::string fixture(const char* name) { return std::string(IFOL_FIXTURE_DIR) + "/" + name; }

// n unary predicates over a two-element sort: 4^n candidate worlds.
std::string unary_workspace(int n) {
  std::string text = "sort thing\nextent thing = {a, b}\n";
  for (int i = 0; i < n; ++i) {
    std::string p = "p" + std::to_string(i);
    text += "concept " + p + " arity 1 sorts thing predicate " + p + "\n";
  }
  return text;
}

void BM_LoadAnimals(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(ifol::load_workspace(fixture("animals.ifol")));
}
BENCHMARK(BM_LoadAnimals);

void BM_ParseFormula(benchmark::State& state) {
  const std::string text = "exists x:thing . (p(x) & ~exists y:thing . (q(x, y) & ~r(<< p(y) >>|beta: y)))";
  for (auto _ : state) benchmark::DoNotOptimize(ifol::parse_formula(text));
}
BENCHMARK(BM_ParseFormula);

void BM_EnumerateWorlds(benchmark::State& state) {
  auto ws = ifol::load_workspace_text(unary_workspace(static_cast<int>(state.range(0))));
  for (auto _ : state) {
    ifol::WorldSpace space(*ws);
    benchmark::DoNotOptimize(space.worlds());
  }
}
BENCHMARK(BM_EnumerateWorlds)->DenseRange(2, 6, 2);

// Kripke satisfaction against the ground Tarski evaluator on one formula.
void Evaluate(benchmark::State& state, bool kripke) {
  auto ws = ifol::load_workspace_text(unary_workspace(3));
  ifol::WorldSpace space(*ws);
  auto worlds = space.worlds();
  auto f = ifol::parse_formula("exists x:thing . (p0(x) & ~exists y:thing . (p1(y) & ~p2(x)))");
  for (auto _ : state) {
    std::size_t hits = 0;
    for (const auto& w : worlds) {
      hits += kripke ? ifol::satisfies(space, w, {}, f) : ifol::tarski_eval(space, w, {}, f);
    }
    benchmark::DoNotOptimize(hits);
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * worlds.size()));
}
void BM_Satisfies(benchmark::State& state) { Evaluate(state, true); }
void BM_TarskiEval(benchmark::State& state) { Evaluate(state, false); }
BENCHMARK(BM_Satisfies);
BENCHMARK(BM_TarskiEval);

void BM_Interpret(benchmark::State& state) {
  auto ws = ifol::load_workspace(fixture("sphere.ifol"));
  int i = 0;
  for (auto _ : state) {
    // Normalizes and fingerprints each round; the five bounds soon hit the memo.
    auto f = ifol::parse_formula("leq2(x:reals^2 + y:reals^2 + z:reals^2, " + std::to_string(i++ % 5 - 2) + ")");
    benchmark::DoNotOptimize(ws->interpretation.interpret(f));
  }
}
BENCHMARK(BM_Interpret);

void BM_SubconceptTree(benchmark::State& state) {
  auto ws = ifol::load_workspace(fixture("animals.ifol"));
  for (auto _ : state) benchmark::DoNotOptimize(ws->registry.subconcept_tree("animal"));
}
BENCHMARK(BM_SubconceptTree);

void BM_RunFixture(benchmark::State& state, const char* name) {
  auto ws = ifol::load_workspace(fixture(name));
  ifol::RunOptions options;
  options.threads = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(ifol::run_queries(*ws, options));
}
BENCHMARK_CAPTURE(BM_RunFixture, purrs, "purrs.ifol")->Arg(1);
BENCHMARK_CAPTURE(BM_RunFixture, sphere, "sphere.ifol")->Arg(1)->Arg(4);
BENCHMARK_CAPTURE(BM_RunFixture, en_problem, "en_problem.ifol")->Arg(1)->Arg(4);

}  // namespace

BENCHMARK_MAIN();
