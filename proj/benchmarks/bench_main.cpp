#include <benchmark/benchmark.h>

#include "pmanip/crosscheck.hpp"
#include "pmanip/gadgets.hpp"
#include "pmanip/poly.hpp"

namespace {

using namespace pmanip;

std::vector<ManipulationInstance> instances(const RuleSpec& rule, int m, int votes, int manipulators) {
  Rng rng(11);
  std::vector<ManipulationInstance> out;
  for (int i = 0; i < 64; ++i) out.push_back(random_instance(rng, rule, m, votes, manipulators));
  return out;
}

void BM_Extensions(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  const PartialVote v = transitive_close({{0, 1}}, m);
  for (auto _ : state) benchmark::DoNotOptimize(count_extensions(v));
}
BENCHMARK(BM_Extensions)->DenseRange(4, 9);

void BM_SmKApproval(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  const auto inst = instances(RuleSpec::k_approval(2), m, 2 * m, 3);
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(sm_kapproval(inst[i++ % inst.size()], 2).answer);
}
BENCHMARK(BM_SmKApproval)->RangeMultiplier(2)->Range(4, 32);

void BM_SmBucklin(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  const auto inst = instances(RuleSpec::bucklin(), m, 2 * m, 3);
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(sm_bucklin(inst[i++ % inst.size()]).answer);
}
BENCHMARK(BM_SmBucklin)->RangeMultiplier(2)->Range(4, 32);

void BM_SmMaximin(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  const auto inst = instances(RuleSpec::maximin(), m, 2 * m, 1);
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(sm_maximin_single(inst[i++ % inst.size()]).answer);
}
BENCHMARK(BM_SmMaximin)->RangeMultiplier(2)->Range(4, 32);

void BM_WmPluralityVeto(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  const auto inst = instances(RuleSpec::plurality(), m, 2 * m, 3);
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(wm_plurality_veto(inst[i++ % inst.size()]).answer);
}
BENCHMARK(BM_WmPluralityVeto)->RangeMultiplier(2)->Range(4, 32);

void BM_OracleWm(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  const auto inst = instances(RuleSpec::borda(), m, 3, 2);
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(solve_wm(inst[i++ % inst.size()]).answer);
}
BENCHMARK(BM_OracleWm)->DenseRange(3, 5);

void BM_McGarvey(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  MarginTarget t{m, std::vector<int>(m * m, 0)};
  for (int a = 0; a < m; ++a)
    for (int b = a + 1; b < m; ++b) {
      t.f[a * m + b] = 2 * ((a + b) % 5) - 4;
      t.f[b * m + a] = -t.f[a * m + b];
    }
  for (auto _ : state) benchmark::DoNotOptimize(mcgarvey(t).n());
}
BENCHMARK(BM_McGarvey)->RangeMultiplier(2)->Range(4, 32);

}  // namespace
BENCHMARK_MAIN();
