#include <gtest/gtest.h>

#include <random>

#include "arcs/error.hpp"
#include "arcs/trajectory.hpp"
#include "test_support.hpp"

namespace arcs {
namespace {

LabeledSegment at(double position, Polarity belief, Polarity practice = Polarity::None,
                  std::size_t seq = 0, std::string id = "T1") {
  LabeledSegment ls;
  ls.segment = {std::move(id), seq, 0, 10, 10, "text", position};
  ls.label.belief = belief;
  ls.label.practice = practice;
  return ls;
}

Trajectory from(std::vector<std::pair<double, int>> pts) {
  Trajectory t;
  t.testimony_id = "T";
  for (auto [p, v] : pts) t.points.push_back({p, v});
  return t;
}

TEST(BuildTrajectory, MapsAndOmitsNone) {
  std::vector<LabeledSegment> ls{at(0.2, Polarity::Plus), at(0.5, Polarity::None), at(0.9, Polarity::Minus)};
  const Trajectory t = build_trajectory(ls, Aspect::Belief);
  EXPECT_EQ(t.testimony_id, "T1");
  EXPECT_EQ(t.points, (std::vector<TrajectoryPoint>{{0.2, 1}, {0.9, -1}}));
}

TEST(BuildTrajectory, AllNoneIsEmpty) {
  std::vector<LabeledSegment> ls{at(0.2, Polarity::None), at(0.7, Polarity::None)};
  EXPECT_TRUE(build_trajectory(ls, Aspect::Belief).empty());
}

TEST(BuildTrajectory, PracticeOtherIsZero) {
  std::vector<LabeledSegment> ls{at(0.1, Polarity::None, Polarity::Plus), at(0.4, Polarity::None, Polarity::Other),
                                 at(0.7, Polarity::None, Polarity::Plus)};
  EXPECT_EQ(build_trajectory(ls, Aspect::Practice).values(), (std::vector<int>{1, 0, 1}));
}

TEST(BuildTrajectory, Errors) {
  std::vector<LabeledSegment> dup{at(0.5, Polarity::Plus), at(0.5, Polarity::Minus)};
  EXPECT_THROW(build_trajectory(dup, Aspect::Belief), DomainError);
  std::vector<LabeledSegment> mixed{at(0.1, Polarity::Plus, Polarity::None, 0, "A"),
                                    at(0.5, Polarity::Plus, Polarity::None, 1, "B")};
  EXPECT_THROW(build_trajectory(mixed, Aspect::Belief), DomainError);
}

TEST(BuildTrajectories, GroupsAndOrdersBySeq) {
  std::vector<LabeledSegment> ls{at(0.75, Polarity::Plus, Polarity::None, 1, "B"),
                                 at(0.25, Polarity::Minus, Polarity::None, 0, "B"),
                                 at(0.5, Polarity::Plus, Polarity::None, 0, "A")};
  const auto ts = build_trajectories(ls, Aspect::Belief);
  ASSERT_EQ(ts.size(), 2u);
  EXPECT_EQ(ts[0].testimony_id, "B");
  EXPECT_EQ(ts[0].values(), (std::vector<int>{-1, 1}));
  EXPECT_EQ(ts[1].testimony_id, "A");
}

TEST(BuildTrajectory, PointCountEqualsNonNoneLabels) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<LabeledSegment> ls;
    const int n = 1 + static_cast<int>(rng() % 30);
    std::size_t expected = 0;
    for (int i = 0; i < n; ++i) {
      const Polarity p = kAllPolarities[rng() % 4];
      expected += p != Polarity::None;
      ls.push_back(at((i + 0.5) / n, p, Polarity::None, static_cast<std::size_t>(i)));
    }
    EXPECT_EQ(build_trajectory(ls, Aspect::Belief).size(), expected);
  }
}

TEST(FilterShrink, Examples) {
  EXPECT_EQ(filter_shrink(std::vector<int>{-1, 1, 0, 1, 1}).values, (std::vector<int>{-1, 1}));
  EXPECT_TRUE(filter_shrink(std::vector<int>{0, 0, 0}).empty());
  EXPECT_EQ(filter_shrink(std::vector<int>{1, -1, -1, 1}).values, (std::vector<int>{1, -1, 1}));
}

TEST(FilterShrink, KeepsRunStartAndSpan) {
  const ShrunkSeries s = filter_shrink(from({{0.1, 0}, {0.2, 1}, {0.3, 1}, {0.5, 0}, {0.6, -1}, {0.8, -1}, {0.9, 0}}));
  EXPECT_EQ(s.values, (std::vector<int>{1, -1}));
  EXPECT_EQ(s.positions, (std::vector<double>{0.2, 0.6}));
  EXPECT_DOUBLE_EQ(s.span, 0.8 - 0.2);
}

TEST(FilterShrink, Properties) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 500; ++trial) {
    const Trajectory t = testing::random_trajectory(rng, 0, 20);
    const ShrunkSeries s = filter_shrink(t);
    for (std::size_t i = 1; i < s.values.size(); ++i) EXPECT_EQ(s.values[i], -s.values[i - 1]);
    EXPECT_EQ(filter_shrink(s.values).values, s.values);
    bool any_nonzero = false;
    for (int v : t.values()) any_nonzero |= v != 0;
    EXPECT_EQ(s.empty(), !any_nonzero);
  }
}

TEST(Coverage, Examples) {
  EXPECT_EQ(coverage(from({{0.05, 1}, {0.95, -1}})), Coverage::High);
  EXPECT_EQ(coverage(from({{0.4, 1}})), Coverage::Low);
  EXPECT_EQ(coverage(from({{0.2, 1}, {0.6, 1}})), Coverage::Medium);
  EXPECT_EQ(coverage(from({{0.0, 0}, {0.2, 1}, {0.6, 1}, {1.0, 0}})), Coverage::Medium);
  EXPECT_THROW(coverage(from({{0.2, 0}})), DomainError);
}

TEST(Coverage, Thresholds) {
  EXPECT_EQ(coverage_of_span(0.33), Coverage::Low);
  EXPECT_EQ(coverage_of_span(0.3301), Coverage::Medium);
  EXPECT_EQ(coverage_of_span(0.67), Coverage::Medium);
  EXPECT_EQ(coverage_of_span(0.6701), Coverage::High);
  EXPECT_EQ(coverage_of_span(0.0), Coverage::Low);
}

TEST(Coverage, MonotoneUnderAddingNonzeroPoints) {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 300; ++trial) {
    Trajectory t = testing::random_trajectory(rng, 1, 10);
    t.points.push_back({t.points.back().position + 0.01, 1});
    const Coverage before = coverage(t);
    Trajectory more = t;
    const double p = u(rng);
    more.points.push_back({p, rng() % 2 ? 1 : -1});
    std::sort(more.points.begin(), more.points.end(),
              [](const TrajectoryPoint& a, const TrajectoryPoint& b) { return a.position < b.position; });
    EXPECT_GE(static_cast<int>(coverage(more)), static_cast<int>(before));
  }
}

TEST(ReferenceClasses, Names) {
  for (ReferenceClass c : kReferenceClasses) {
    EXPECT_EQ(parse_reference_class(reference_class_name(c)), c);
  }
  EXPECT_EQ(parse_reference_class("P⁺"), ReferenceClass::PPlus);
  EXPECT_EQ(parse_reference_class("B⁻"), ReferenceClass::BMinus);
  EXPECT_EQ(reference_aspect(ReferenceClass::BPlus), Aspect::Belief);
  EXPECT_EQ(reference_valence(ReferenceClass::PMinus), std::optional<int>(-1));
  EXPECT_EQ(reference_valence(ReferenceClass::B), std::nullopt);
}

TEST(ExtractReference, ThesaurusExamples) {
  const LabelMapping m = LabelMapping::thesaurus();
  std::vector<IndexEntry> idx{{"T1", 0.3, "synagogue attendance"}, {"T1", 0.5, "Rabbis"}};
  const auto plus = extract_reference(idx, m, ReferenceClass::PPlus);
  ASSERT_EQ(plus.references.size(), 1u);
  EXPECT_EQ(plus.references[0].positions, (std::vector<double>{0.3}));
  const auto p = extract_reference(idx, m, ReferenceClass::P);
  ASSERT_EQ(p.references.size(), 1u);
  EXPECT_EQ(p.references[0].positions, (std::vector<double>{0.3, 0.5}));
  EXPECT_TRUE(extract_reference({}, m, ReferenceClass::PPlus).references.empty());
}

TEST(ExtractReference, UnknownTermsWarnOnce) {
  std::vector<IndexEntry> idx{{"T1", 0.1, "Zionism"}, {"T1", 0.2, "Zionism"}, {"T2", 0.4, "Prayers"}};
  const auto r = extract_reference(idx, LabelMapping::thesaurus(), ReferenceClass::B);
  EXPECT_EQ(r.skipped, 2u);
  EXPECT_EQ(r.warnings.size(), 1u);
  ASSERT_EQ(r.references.size(), 1u);
  EXPECT_EQ(r.references[0].testimony_id, "T2");
}

TEST(ExtractReference, IdentityMappingReturnsIndexedPositions) {
  std::mt19937_64 rng(3);
  const LabelMapping m = LabelMapping::identity();
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<IndexEntry> idx;
    std::map<std::string, std::vector<double>> expected;
    for (int i = 0; i < 40; ++i) {
      const ReferenceClass c = kReferenceClasses[rng() % 6];
      const std::string tid = "T" + std::to_string(rng() % 5);
      const double pos = static_cast<double>(rng() % 1000) / 1000.0;
      idx.push_back({tid, pos, std::string(reference_class_name(c))});
      if (c == ReferenceClass::PMinus) expected[tid].push_back(pos);
    }
    const auto r = extract_reference(idx, m, ReferenceClass::PMinus);
    EXPECT_EQ(r.references.size(), expected.size());
    for (const ReferenceTrajectory& ref : r.references) {
      auto want = expected[ref.testimony_id];
      std::sort(want.begin(), want.end());
      EXPECT_EQ(ref.positions, want);
    }
  }
}

TEST(LabelMapping, TsvRoundTripAndErrors) {
  const LabelMapping m = LabelMapping::thesaurus();
  const LabelMapping back = LabelMapping::parse_tsv(m.to_tsv());
  EXPECT_EQ(back.rows(), m.rows());
  LabelMapping dup;
  dup.add({"a", ReferenceClass::PPlus, MappedValence::Plus});
  EXPECT_THROW(dup.add({"a", ReferenceClass::P, MappedValence::Unvalenced}), DomainError);
  EXPECT_THROW(dup.add({"b", ReferenceClass::PPlus, MappedValence::Minus}), DomainError);
  EXPECT_THROW(LabelMapping::parse_tsv("term_id\tclass_id\tvalence\nx\tQ\tu\n"), ParseError);
}

TEST(PredictedPositions, ValencedClassesFilter) {
  const Trajectory t = from({{0.1, 1}, {0.2, 0}, {0.3, -1}});
  EXPECT_EQ(predicted_positions(t, ReferenceClass::B), (std::vector<double>{0.1, 0.2, 0.3}));
  EXPECT_EQ(predicted_positions(t, ReferenceClass::BPlus), (std::vector<double>{0.1}));
  EXPECT_EQ(predicted_positions(t, ReferenceClass::BMinus), (std::vector<double>{0.3}));
}

}  // namespace
}  // namespace arcs
