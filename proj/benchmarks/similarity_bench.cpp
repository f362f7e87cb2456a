#include <benchmark/benchmark.h>

#include <algorithm>
#include <random>

#include "arcs/similarity.hpp"

namespace {

arcs::Trajectory make(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> pos(n);
  for (double& p : pos) p = u(rng);
  std::sort(pos.begin(), pos.end());
  arcs::Trajectory t;
  for (double p : pos) t.points.push_back({p, static_cast<int>(rng() % 3) - 1});
  return t;
}

void BM_Dtw(benchmark::State& state) {
  std::mt19937_64 rng(1);
  const auto n = static_cast<std::size_t>(state.range(0));
  const arcs::Trajectory a = make(rng, n);
  const arcs::Trajectory b = make(rng, n);
  for (auto _ : state) benchmark::DoNotOptimize(arcs::dtw(a, b, 7));
}
BENCHMARK(BM_Dtw)->Arg(8)->Arg(32)->Arg(128);

void BM_DistanceMatrix(benchmark::State& state) {
  std::mt19937_64 rng(2);
  std::vector<arcs::Trajectory> ts;
  for (int i = 0; i < state.range(0); ++i) {
    arcs::Trajectory t = make(rng, 4 + rng() % 10);
    t.testimony_id = "t" + std::to_string(i);
    ts.push_back(t);
  }
  for (auto _ : state) benchmark::DoNotOptimize(arcs::distance_matrices(ts, 7));
}
BENCHMARK(BM_DistanceMatrix)->Arg(60)->Arg(250);

}  // namespace
