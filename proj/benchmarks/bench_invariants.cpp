#include <benchmark/benchmark.h>

#include <map>
#include <string>

#include "primbase/families.hpp"
#include "primbase/invariants.hpp"
#include "primbase/stabilizer_chain.hpp"

using namespace primbase;

namespace {

const ConstructedAction& cached(const char* spec) {
  static std::map<std::string, ConstructedAction> cache;
  auto it = cache.find(spec);
  if (it == cache.end()) it = cache.emplace(spec, build(parse_family_spec(spec))).first;
  return it->second;
}

const char* const kSpecs[] = {"Mathieu24", "SymPartitions a=2 b=4", "GOOnS1 d=8 q=2 sign=-",
                              "LinearOnPk d=5 q=2 k=2"};

void BM_SchreierSims(benchmark::State& state) {
  const auto& act = cached(kSpecs[state.range(0)]);
  const auto& gens = act.group.generators();
  for (auto _ : state) {
    auto chain = StabilizerChain::build(act.n(), gens);
    benchmark::DoNotOptimize(chain.order());
  }
  state.SetLabel(kSpecs[state.range(0)]);
}
BENCHMARK(BM_SchreierSims)->DenseRange(0, 3)->Unit(benchmark::kMillisecond);

void BM_MinimalDegree(benchmark::State& state) {
  const auto& act = cached(kSpecs[state.range(0)]);
  MinimalDegreeOptions opts;
  opts.threads = 1;
  for (auto _ : state) {
    auto r = minimal_degree_exact(act.group, opts);
    benchmark::DoNotOptimize(r.mu);
    state.counters["elements"] = static_cast<double>(r.elements);
  }
  state.SetLabel(kSpecs[state.range(0)]);
}
BENCHMARK(BM_MinimalDegree)->DenseRange(0, 3)->Unit(benchmark::kMillisecond);

void BM_BaseSearch(benchmark::State& state) {
  const auto& act = cached(kSpecs[state.range(0)]);
  for (auto _ : state) {
    auto r = base_size_exact(act.group);
    benchmark::DoNotOptimize(r.size);
    state.counters["nodes"] = static_cast<double>(r.nodes);
  }
  state.SetLabel(kSpecs[state.range(0)]);
}
BENCHMARK(BM_BaseSearch)->DenseRange(0, 3)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
