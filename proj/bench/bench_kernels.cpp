// Serial reference vs OpenMP kernels on the UAV composites.
#include <benchmark/benchmark.h>

#include "wdsec/fincat.hpp"
#include "wdsec/scenarios.hpp"

using namespace wdsec;

namespace {

const MooreMachine& real_uav() {
  static const auto m = composite(scenarios::build_uav_real());
  return m;
}

const MooreMachine& profile_uav() {
  static const auto m = scenarios::reversed_states(real_uav(), "profile");
  return m;
}

kernels::Exec exec_of(const benchmark::State& st) {
  return st.range(1) == 0 ? kernels::Exec::serial : kernels::Exec::parallel;
}

void BM_OutputWords(benchmark::State& st) {
  const auto v = real_uav().view();
  for (auto _ : st) benchmark::DoNotOptimize(kernels::output_words(v, st.range(0), exec_of(st)));
  st.SetLabel(st.range(1) == 0 ? "serial" : "parallel");
}

void BM_FirstDivergence(benchmark::State& st) {
  const auto a = real_uav().view();
  const auto b = profile_uav().view();
  for (auto _ : st) benchmark::DoNotOptimize(kernels::first_divergence(a, b, st.range(0), exec_of(st)));
  st.SetLabel(st.range(1) == 0 ? "serial" : "parallel");
}

// Nat(F, G) between two four-element constant functors on a two-object
// discrete category: 4^8 candidate assignments.
void BM_EnumerateNat(benchmark::State& st) {
  fincat::FinCategory c;
  c.name = "discrete2";
  c.objects = {"X", "Y"};
  c.morphisms = {{"id_X", "X", "X"}, {"id_Y", "Y", "Y"}};
  c.identity = {{"X", "id_X"}, {"Y", "id_Y"}};
  c.composition = {{"id_X", "id_X", "id_X"}, {"id_Y", "id_Y", "id_Y"}};
  fincat::FinSetFunctor f{"F", {}, {}};
  const std::vector<std::string> elems = {"a", "b", "c", "d"};
  for (const auto& o : c.objects) f.object_map[o] = elems;
  for (const auto& m : c.morphisms)
    for (const auto& x : elems) f.morphism_map[m.id][x] = x;
  for (auto _ : st) benchmark::DoNotOptimize(fincat::enumerate_nat(c, f, f, exec_of(st)));
  st.SetLabel(st.range(1) == 0 ? "serial" : "parallel");
}

}  // namespace

BENCHMARK(BM_OutputWords)->ArgsProduct({{6, 8}, {0, 1}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_FirstDivergence)->ArgsProduct({{6, 8}, {0, 1}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_EnumerateNat)->ArgsProduct({{0}, {0, 1}})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
