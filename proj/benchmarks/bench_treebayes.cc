#include <benchmark/benchmark.h>

#include "treebayes/dataset.h"
#include "treebayes/ensemble.h"
#include "treebayes/induction.h"
#include "treebayes/pruning.h"
#include "treebayes/synth.h"

namespace {

using namespace treebayes;

TypeCounts concept_counts(std::int64_t train_size) {
  const TreeConcept c = gen_tree_concept(
      {.attrs = 12, .depth = 4, .noise = 0.1, .train_size = train_size,
       .test_size = 1, .seed = 7});
  return count_types(c.train.examples);
}

void BM_CountTypes(benchmark::State& state) {
  const TreeConcept c = gen_tree_concept(
      {.attrs = 12, .depth = 4, .train_size = state.range(0), .test_size = 1});
  for (auto _ : state) {
    benchmark::DoNotOptimize(count_types(c.train.examples));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_CountTypes)->Arg(200)->Arg(2000)->Arg(20000);

void BM_EvaluateSplit(benchmark::State& state) {
  const TypeCounts counts = concept_counts(2000);
  const Path path = {{0, 1}, {3, 0}};
  for (auto _ : state) {
    benchmark::DoNotOptimize(evaluate_split(counts, path, 5));
  }
}
BENCHMARK(BM_EvaluateSplit);

void BM_GrowConcept(benchmark::State& state) {
  const TypeCounts counts = concept_counts(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(grow(counts, {}, {}));
  }
}
BENCHMARK(BM_GrowConcept)->Arg(200)->Arg(2000);

void BM_GrowParity(benchmark::State& state) {
  const TypeCounts counts = count_types(
      gen_parity({.bits = static_cast<int>(state.range(0))}).examples);
  for (auto _ : state) {
    benchmark::DoNotOptimize(grow(counts, {}, {}));
  }
}
BENCHMARK(BM_GrowParity)->Arg(8)->Arg(12);

void BM_PruneOptimal(benchmark::State& state) {
  const DecisionTree grown = grow(concept_counts(2000), {}, {});
  for (auto _ : state) {
    benchmark::DoNotOptimize(prune_optimal(grown, {2.0, 0.0}));
  }
  state.counters["leaves"] = grown.leaf_count();
}
BENCHMARK(BM_PruneOptimal);

void BM_Ensemble(benchmark::State& state) {
  const TypeCounts counts = concept_counts(500);
  EnsembleConfig config;
  config.size = static_cast<int>(state.range(0));
  config.temperature = 0.1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(run_ensemble(counts, {}, {1.0, 1.0}, config, {}));
  }
}
BENCHMARK(BM_Ensemble)->Arg(16);

}  // namespace

BENCHMARK_MAIN();
