#include <benchmark/benchmark.h>

#include <cmath>
#include <random>

#include "arcs/clustering.hpp"

namespace {

arcs::DistanceMatrix blobs(std::size_t n) {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> jitter(0.0, 0.4);
  std::vector<std::pair<double, double>> pts;
  for (std::size_t i = 0; i < n; ++i) {
    const double cx = static_cast<double>(i % 3) * 4.0;
    pts.emplace_back(cx + jitter(rng), jitter(rng));
  }
  std::vector<std::string> ids;
  for (std::size_t i = 0; i < n; ++i) ids.push_back("p" + std::to_string(i));
  arcs::DistanceMatrix m(ids);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      m.set(i, j, std::hypot(pts[i].first - pts[j].first, pts[i].second - pts[j].second));
  return m;
}

void BM_Hdbscan(benchmark::State& state) {
  const arcs::DistanceMatrix m = blobs(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(arcs::hdbscan(m, {10, 1, 0.0, 1.0}));
}
BENCHMARK(BM_Hdbscan)->Arg(100)->Arg(400);

void BM_Agglomerative(benchmark::State& state) {
  const arcs::DistanceMatrix m = blobs(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(arcs::build_dendrogram(m, arcs::Linkage::Average));
}
BENCHMARK(BM_Agglomerative)->Arg(100)->Arg(400);

}  // namespace
