#pragma once

#include <array>
#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "arcs/similarity.hpp"
#include "arcs/taxonomy.hpp"

namespace arcs {

struct WelchResult {
  double t = 0.0;
  double df = 0.0;
  /// Two-sided.
  double p = 1.0;
};

/// Throws DomainError when a sample has fewer than two values or both variances are zero.
WelchResult welch_t_test(std::span<const double> a, std::span<const double> b);

struct GroupStats {
  std::size_t n = 0;
  double mean = 0.0;
  /// Sample standard deviation.
  double sd = 0.0;
};

GroupStats group_stats(std::span<const double> xs);

struct StructureDtwStats {
  GroupStats same;
  GroupStats different;
  WelchResult welch;
};

/// Splits every unordered pair of matrix ids by whether their structures match.
/// Throws DomainError when an id has no structure or a group is empty.
StructureDtwStats structure_dtw_stats(const DistanceMatrix& m,
                                      const std::map<std::string, StructureClass>& structures);

/// A human picked the most similar of the three pairs (0,1), (0,2), (1,2).
struct TripletJudgment {
  std::array<std::string, 3> ids;
  int chosen_pair = 0;
};

struct TripletAccuracy {
  std::size_t total = 0;
  std::size_t correct = 0;
  double accuracy = 0.0;
};

/// Fraction of triplets where the smallest matrix distance is the human's pair.
TripletAccuracy triplet_accuracy(const DistanceMatrix& m, std::span<const TripletJudgment> triplets);

enum class Period { Before, During, After, Reflection };

inline constexpr std::array<Period, 4> kAllPeriods = {Period::Before, Period::During, Period::After,
                                                      Period::Reflection};

std::string_view period_name(Period p);
Period parse_period(std::string_view name);

struct PeriodTag {
  double position = 0.0;
  Period period = Period::Before;
};

/// Mean position per period; periods without tags are absent.
std::map<Period, double> period_positions(std::span<const PeriodTag> tags);

}  // namespace arcs
