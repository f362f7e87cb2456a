#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "arcs/error.hpp"
#include "arcs/eval.hpp"
#include "test_support.hpp"

namespace arcs {
namespace {

double oracle_min_sum(const std::vector<double>& t, const std::vector<double>& r) {
  if (r.empty()) return 0.0;
  if (t.empty()) return static_cast<double>(r.size());
  double sum = 0.0;
  for (double x : r) {
    double best = INFINITY;
    for (double y : t) best = std::min(best, std::abs(x - y));
    sum += best;
  }
  return sum;
}

std::vector<double> uniform_points(std::mt19937_64& rng, std::size_t max_n) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> v(rng() % (max_n + 1));
  for (double& x : v) x = u(rng);
  std::sort(v.begin(), v.end());
  return v;
}

TEST(MinSumDist, Examples) {
  EXPECT_NEAR(min_sum_dist(std::vector<double>{0.1, 0.5}, std::vector<double>{0.2, 0.4, 0.9}), 0.6, 1e-12);
  EXPECT_EQ(min_sum_dist(std::vector<double>{0.1}, std::vector<double>{}), 0.0);
  EXPECT_EQ(min_sum_dist(std::vector<double>{}, std::vector<double>{0.1, 0.2, 0.3}), 3.0);
  EXPECT_EQ(min_sum_dist(std::vector<double>{}, std::vector<double>{}), 0.0);
}

TEST(MinSumDist, MatchesOracleAndProperties) {
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 1000; ++trial) {
    const auto t = uniform_points(rng, 12);
    const auto r = uniform_points(rng, 12);
    const double d = min_sum_dist(t, r);
    EXPECT_NEAR(d, oracle_min_sum(t, r), 1e-12);
    EXPECT_GE(d, 0.0);
    auto superset = t;
    superset.push_back(std::uniform_real_distribution<double>(0, 1)(rng));
    std::sort(superset.begin(), superset.end());
    EXPECT_LE(min_sum_dist(superset, r), d + 1e-12);
    auto contains = t;
    contains.insert(contains.end(), r.begin(), r.end());
    std::sort(contains.begin(), contains.end());
    EXPECT_EQ(min_sum_dist(contains, r), 0.0);
  }
}

TEST(Baselines, EqualScatter) {
  EXPECT_EQ(gen_baseline(BaselineKind::EqualScatter, 4, {}, 1), (std::vector<double>{0.125, 0.375, 0.625, 0.875}));
  EXPECT_EQ(gen_baseline(BaselineKind::EqualScatter, 1, {}, 1), (std::vector<double>{0.5}));
}

TEST(Baselines, EmptyAndErrors) {
  EXPECT_TRUE(gen_baseline(BaselineKind::OriginalScatter, 0, {}, 1).empty());
  for (BaselineKind k : kAllBaselines) {
    if (baseline_needs_empirical(k)) {
      EXPECT_THROW(gen_baseline(k, 3, {}, 1), DomainError) << baseline_id(k);
    }
  }
}

TEST(Baselines, EdgesAndMiddleRespectsThirds) {
  const std::vector<double> first_third{0.05, 0.1, 0.3, 0.2};
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    for (BaselineKind k : {BaselineKind::EdgesAndMiddle, BaselineKind::GaussEdgesAndMiddle}) {
      for (double x : gen_baseline(k, 7, first_third, seed)) EXPECT_LT(x, 1.0 / 3.0) << baseline_id(k);
    }
  }
  const std::vector<double> mixed{0.1, 0.5, 0.6, 0.9};
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto xs = gen_baseline(BaselineKind::EdgesAndMiddle, 8, mixed, seed);
    const auto in = [&](double lo, double hi) {
      return std::count_if(xs.begin(), xs.end(), [&](double x) { return x >= lo && x < hi; });
    };
    EXPECT_EQ(in(0.0, 1.0 / 3), 2);
    EXPECT_EQ(in(1.0 / 3, 2.0 / 3), 4);
    EXPECT_EQ(in(2.0 / 3, 1.0 + 1e-12), 2);
  }
}

TEST(Baselines, TwoGaussianSplitsHalves) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto xs = gen_baseline(BaselineKind::TwoGaussian, 5, {}, seed);
    EXPECT_EQ(std::count_if(xs.begin(), xs.end(), [](double x) { return x <= 0.5; }), 3);
  }
}

TEST(Baselines, SizeRangeSortedDeterministic) {
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 200; ++trial) {
    auto emp = uniform_points(rng, 10);
    if (emp.empty()) emp.push_back(0.5);
    const std::size_t n = rng() % 20;
    const std::uint64_t seed = rng();
    for (BaselineKind k : kAllBaselines) {
      const auto a = gen_baseline(k, n, emp, seed);
      EXPECT_EQ(a.size(), n);
      EXPECT_TRUE(std::is_sorted(a.begin(), a.end()));
      for (double x : a) {
        EXPECT_GE(x, 0.0);
        EXPECT_LE(x, 1.0);
      }
      EXPECT_EQ(a, gen_baseline(k, n, emp, seed));
    }
  }
}

TEST(Baselines, OriginalScatterDrawsFromEmpirical) {
  const std::vector<double> emp{0.11, 0.42, 0.77};
  for (double x : gen_baseline(BaselineKind::OriginalScatter, 30, emp, 9)) {
    EXPECT_TRUE(x == 0.11 || x == 0.42 || x == 0.77);
  }
}

TEST(Baselines, Names) {
  for (BaselineKind k : kAllBaselines) EXPECT_EQ(parse_baseline(baseline_id(k)), k);
  EXPECT_THROW(parse_baseline("nope"), ConfigError);
}

TEST(DeriveSeed, SensitiveToEachPart) {
  EXPECT_EQ(derive_seed(1, "a", "b", "c"), derive_seed(1, "a", "b", "c"));
  EXPECT_NE(derive_seed(1, "a", "b", "c"), derive_seed(2, "a", "b", "c"));
  EXPECT_NE(derive_seed(1, "ab", "", "c"), derive_seed(1, "a", "b", "c"));
}

Trajectory traj(std::string id, Aspect a, std::vector<std::pair<double, int>> pts) {
  Trajectory t{std::move(id), a, {}};
  for (auto [p, v] : pts) t.points.push_back({p, v});
  return t;
}

TEST(Evaluate, IdenticalPredictionsBeatBaselines) {
  std::vector<Trajectory> predicted{traj("T1", Aspect::Belief, {{0.1, 1}, {0.45, 1}, {0.8, 1}}),
                                    traj("T2", Aspect::Belief, {{0.2, 1}, {0.9, 1}})};
  std::vector<ReferenceTrajectory> refs{{"T1", ReferenceClass::BPlus, {0.1, 0.45, 0.8}},
                                        {"T2", ReferenceClass::BPlus, {0.2, 0.9}}};
  EvalOptions opts;
  opts.classes = {ReferenceClass::BPlus};
  const EvalReport r = evaluate_against_references(predicted, refs, opts);
  ASSERT_EQ(r.columns.size(), 1u);
  const ClassEvaluation& c = r.columns[0];
  EXPECT_EQ(c.predicted, 0.0);
  for (auto [k, v] : c.baselines) {
    if (k != BaselineKind::OriginalScatter) EXPECT_GT(v, 0.0) << baseline_id(k);
  }
  EXPECT_EQ(c.reference_paths, 2u);
  EXPECT_EQ(c.reference_points, 5u);
  EXPECT_EQ(c.predicted_paths, 2u);
  EXPECT_EQ(c.predicted_points, 5u);
}

TEST(Evaluate, MissingPredictionCostsReferenceCount) {
  std::vector<Trajectory> predicted{traj("T1", Aspect::Practice, {{0.3, -1}})};
  std::vector<ReferenceTrajectory> refs{{"T1", ReferenceClass::PMinus, {0.3}},
                                        {"T2", ReferenceClass::PMinus, {0.2, 0.4}}};
  EvalOptions opts;
  opts.classes = {ReferenceClass::PMinus};
  const EvalReport r = evaluate_against_references(predicted, refs, opts);
  EXPECT_EQ(r.columns[0].predicted, 2.0);
  EXPECT_NEAR(r.columns[0].baselines.at(BaselineKind::EqualScatter), 2.2, 1e-12);
}

TEST(Evaluate, EmptyReferencesGiveZeros) {
  std::vector<Trajectory> predicted{traj("T1", Aspect::Belief, {{0.3, 1}})};
  const EvalReport r = evaluate_against_references(predicted, {}, {});
  for (const ClassEvaluation& c : r.columns) {
    EXPECT_EQ(c.predicted, 0.0);
    for (auto [k, v] : c.baselines) EXPECT_EQ(v, 0.0);
    EXPECT_EQ(c.reference_paths, 0u);
  }
  EXPECT_FALSE(r.warnings.empty());
}

TEST(Evaluate, DeterministicAndCsvShape) {
  std::mt19937_64 rng(3);
  std::vector<Trajectory> predicted;
  std::vector<ReferenceTrajectory> refs;
  for (int i = 0; i < 10; ++i) {
    Trajectory t = testing::random_trajectory(rng, 1, 8, "T" + std::to_string(i));
    predicted.push_back(t);
    refs.push_back({t.testimony_id, ReferenceClass::B, predicted_positions(t, ReferenceClass::B)});
  }
  EvalOptions opts;
  opts.seed = 99;
  opts.source = "Topic";
  const EvalReport a = evaluate_against_references(predicted, refs, opts);
  const EvalReport b = evaluate_against_references(predicted, refs, opts);
  EXPECT_EQ(a.to_csv(), b.to_csv());
  const std::string csv = a.to_csv();
  const auto lines = std::count(csv.begin(), csv.end(), '\n');
  EXPECT_EQ(lines, 1 + 1 + 6 + 4);
  EXPECT_NE(a.find("Topic", ReferenceClass::B), nullptr);
}

}  // namespace
}  // namespace arcs
