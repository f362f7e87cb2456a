#include <gtest/gtest.h>

#include <cmath>

#include "arcs/error.hpp"
#include "arcs/stats.hpp"

namespace arcs {
namespace {

using V = std::vector<double>;

// t, df and p below were computed with a standard scientific library.
TEST(Welch, ReferenceValues) {
  struct Case {
    V a, b;
    double t, df, p;
  };
  const std::vector<Case> cases{
      {{1, 2, 3}, {2, 3, 4}, -1.224744871391589, 4.0, 0.2878641347266908},
      {{1.5, 2.25, 9, 4}, {0.5, 0.7, 0.2, 1.1, 0.9}, 2.0696704975309967, 3.051462929597223, 0.12874753496997013},
      {{10, 12, 11, 15, 9, 13}, {20, 18, 25, 22}, -5.526547310320447, 5.0870961965280905, 0.002517565529832406},
  };
  for (const Case& c : cases) {
    const WelchResult r = welch_t_test(c.a, c.b);
    EXPECT_NEAR(r.t, c.t, 1e-10);
    EXPECT_NEAR(r.df, c.df, 1e-10);
    EXPECT_NEAR(r.p, c.p, 1e-9);
  }
}

TEST(Welch, HandExampleWithinStatedTolerance) {
  const WelchResult r = welch_t_test(V{1, 2, 3}, V{2, 3, 4});
  EXPECT_NEAR(r.t, -1.2247, 1e-4);
  EXPECT_NEAR(r.df, 4.0, 1e-12);
  EXPECT_NEAR(r.p, 0.2888, 2e-3);
}

TEST(Welch, EqualSamples) {
  const WelchResult r = welch_t_test(V{1, 2, 4}, V{1, 2, 4});
  EXPECT_EQ(r.t, 0.0);
  EXPECT_NEAR(r.p, 1.0, 1e-12);
}

TEST(Welch, ScaleInvariant) {
  const V a{1.5, 2.25, 9, 4}, b{0.5, 0.7, 0.2, 1.1, 0.9};
  const WelchResult r = welch_t_test(a, b);
  for (double c : {0.001, 3.0, 1e4}) {
    V sa = a, sb = b;
    for (double& x : sa) x *= c;
    for (double& x : sb) x *= c;
    const WelchResult s = welch_t_test(sa, sb);
    EXPECT_NEAR(s.t, r.t, 1e-9);
    EXPECT_NEAR(s.p, r.p, 1e-9);
  }
}

TEST(Welch, Degenerate) {
  EXPECT_THROW(welch_t_test(V{1}, V{1, 2}), DomainError);
  EXPECT_THROW(welch_t_test(V{2, 2}, V{3, 3}), DomainError);
}

TEST(GroupStats, MeanAndSampleSd) {
  const GroupStats g = group_stats(V{2, 4, 4, 4, 5, 5, 7, 9});
  EXPECT_EQ(g.n, 8u);
  EXPECT_DOUBLE_EQ(g.mean, 5.0);
  EXPECT_NEAR(g.sd, std::sqrt(32.0 / 7.0), 1e-12);
}

DistanceMatrix four_by_four() {
  DistanceMatrix m({"a", "b", "c", "d"});
  m.set(0, 1, 0.1);
  m.set(2, 3, 0.3);
  m.set(0, 2, 1.0);
  m.set(0, 3, 1.2);
  m.set(1, 2, 0.9);
  m.set(1, 3, 1.1);
  return m;
}

TEST(StructureDtwStats, SplitsPairs) {
  const std::map<std::string, StructureClass> s{{"a", StructureClass::Ascending},
                                                {"b", StructureClass::Ascending},
                                                {"c", StructureClass::Oscillating},
                                                {"d", StructureClass::Oscillating}};
  const StructureDtwStats r = structure_dtw_stats(four_by_four(), s);
  EXPECT_EQ(r.same.n, 2u);
  EXPECT_EQ(r.different.n, 4u);
  EXPECT_NEAR(r.same.mean, 0.2, 1e-12);
  EXPECT_NEAR(r.different.mean, 1.05, 1e-12);
  EXPECT_LT(r.welch.t, 0.0);
}

TEST(StructureDtwStats, Errors) {
  std::map<std::string, StructureClass> all_same{{"a", StructureClass::Ascending},
                                                 {"b", StructureClass::Ascending},
                                                 {"c", StructureClass::Ascending},
                                                 {"d", StructureClass::Ascending}};
  EXPECT_THROW(structure_dtw_stats(four_by_four(), all_same), DomainError);
  all_same.erase("d");
  EXPECT_THROW(structure_dtw_stats(four_by_four(), all_same), DomainError);
}

TEST(Triplets, Accuracy) {
  const DistanceMatrix m = four_by_four();
  std::vector<TripletJudgment> t{{{"a", "b", "c"}, 0}, {{"b", "c", "d"}, 0}, {{"a", "c", "d"}, 2}};
  const TripletAccuracy acc = triplet_accuracy(m, t);
  EXPECT_EQ(acc.total, 3u);
  EXPECT_EQ(acc.correct, 2u);
  EXPECT_NEAR(acc.accuracy, 2.0 / 3.0, 1e-12);
}

TEST(Periods, Means) {
  std::vector<PeriodTag> one{{0.5, Period::During}};
  EXPECT_EQ(period_positions(one), (std::map<Period, double>{{Period::During, 0.5}}));
  std::vector<PeriodTag> two{{0.1, Period::Before}, {0.3, Period::Before}, {0.9, Period::Reflection}};
  const auto m = period_positions(two);
  EXPECT_NEAR(m.at(Period::Before), 0.2, 1e-12);
  EXPECT_EQ(m.count(Period::After), 0u);
  for (Period p : kAllPeriods) EXPECT_EQ(parse_period(period_name(p)), p);
}

}  // namespace
}  // namespace arcs
