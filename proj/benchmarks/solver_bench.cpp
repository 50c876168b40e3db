#include <benchmark/benchmark.h>

#include <random>

#include "hmpack/geometry.hpp"
#include "hmpack/scheduling.hpp"
#include "hmpack/solver.hpp"

using namespace hmpack;

namespace {

BinPackingInstance random_instance(std::size_t d, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  BinPackingInstance inst;
  for (std::size_t i = 0; i < d; ++i) {
    const auto q = std::uniform_int_distribution<std::int64_t>(2, 20)(rng);
    inst.sizes.push_back(Rational(std::uniform_int_distribution<std::int64_t>(1, q)(rng), q));
    inst.multiplicities.push_back(std::uniform_int_distribution<std::int64_t>(1, 4)(rng));
  }
  return inst;
}

void bin_packing_mode(benchmark::State& state, SolverMode mode) {
  const auto inst = random_instance(static_cast<std::size_t>(state.range(0)), 42);
  SolverOptions o;
  o.mode = mode;
  for (auto _ : state) benchmark::DoNotOptimize(bin_packing(inst, o).objective);
}

void BM_BinPackingFaithful(benchmark::State& state) { bin_packing_mode(state, SolverMode::Faithful); }
void BM_BinPackingJoint(benchmark::State& state) { bin_packing_mode(state, SolverMode::Joint); }
BENCHMARK(BM_BinPackingFaithful)->DenseRange(1, 3);
BENCHMARK(BM_BinPackingJoint)->DenseRange(1, 3);

void BM_Cover(benchmark::State& state) {
  const std::int64_t r = state.range(0);
  const Polytope p({{-1, 0}, {0, -1}, {26, 41}}, {0, 0, 200 * r});
  for (auto _ : state) benchmark::DoNotOptimize(build_cover(p).parallelepipeds.size());
}
BENCHMARK(BM_Cover)->Arg(1)->Arg(2)->Arg(4);

void BM_IntCone(benchmark::State& state) {
  const Polytope p({{-1, 0}, {0, -1}, {1, 0}, {0, 1}}, {0, 0, 2, 2});
  const std::int64_t t = state.range(0);
  const Polytope q({{1, 0}, {-1, 0}, {0, 1}, {0, -1}}, {t, -t, t + 1, -(t + 1)});
  for (auto _ : state) benchmark::DoNotOptimize(int_cone_intersect(p, q).found);
}
BENCHMARK(BM_IntCone)->Arg(3)->Arg(9);

void BM_NonpreemptiveAssign(benchmark::State& state) {
  SchedulingInstance inst;
  inst.variant = SchedulingVariant::NonPreemptive;
  inst.windows = {{{0, 300, 150}, {100, 102, 1}, {200, 202, 1}}};
  const std::int64_t a = state.range(0);
  inst.multiplicities = {a, a, a};
  inst.machine_costs = {1};
  for (auto _ : state) benchmark::DoNotOptimize(solve_scheduling(inst).objective);
}
BENCHMARK(BM_NonpreemptiveAssign)->Arg(1)->Arg(2);

}  // namespace

BENCHMARK_MAIN();
