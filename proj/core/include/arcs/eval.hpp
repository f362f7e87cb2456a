#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "arcs/trajectory.hpp"

namespace arcs {

/// Sum over r in R of the distance to the nearest t in T; |R| when T is empty.
double min_sum_dist(std::span<const double> predicted, std::span<const double> reference);

enum class BaselineKind {
  EqualScatter,
  OriginalScatter,
  EdgesAndMiddle,
  GaussEdgesAndMiddle,
  TwoGaussian,
  NormalOriginal,
};

inline constexpr std::array<BaselineKind, 6> kAllBaselines = {
    BaselineKind::OriginalScatter, BaselineKind::EdgesAndMiddle,
    BaselineKind::EqualScatter,    BaselineKind::NormalOriginal,
    BaselineKind::GaussEdgesAndMiddle, BaselineKind::TwoGaussian};

/// Short id used in config and flags, e.g. "equal-scatter".
std::string_view baseline_id(BaselineKind kind);
/// Row label used in reports, e.g. "Equal scatter".
std::string_view baseline_label(BaselineKind kind);
BaselineKind parse_baseline(std::string_view id);
bool baseline_needs_empirical(BaselineKind kind);

struct BaselineParams {
  /// Standard deviation of the per-third Gaussian, as a fraction of the third's width.
  double third_sigma_fraction = 1.0 / 6.0;
  /// Standard deviation of each half's Gaussian.
  double half_sigma = 1.0 / 12.0;
  /// Out-of-range draws are retried this many times, then clamped.
  int max_redraws = 100;
};

/// `n` sorted positions in [0, 1]. Throws DomainError when n > 0 and `empirical`
/// is empty for a kind that needs it.
std::vector<double> gen_baseline(BaselineKind kind, std::size_t n, std::span<const double> empirical,
                                 std::uint64_t seed, const BaselineParams& params = {});

/// Seed for one (class, kind, testimony) draw, derived from the run seed.
std::uint64_t derive_seed(std::uint64_t seed, std::string_view a, std::string_view b,
                          std::string_view c);

struct ClassEvaluation {
  ReferenceClass class_id = ReferenceClass::B;
  double predicted = 0.0;
  std::map<BaselineKind, double> baselines;
  std::size_t reference_paths = 0;
  std::size_t predicted_paths = 0;
  std::size_t reference_points = 0;
  std::size_t predicted_points = 0;
};

struct EvalOptions {
  std::vector<ReferenceClass> classes{kReferenceClasses.begin(), kReferenceClasses.end()};
  std::vector<BaselineKind> kinds{kAllBaselines.begin(), kAllBaselines.end()};
  std::uint64_t seed = 0;
  BaselineParams params;
  /// Column prefix in the CSV, e.g. "Topic".
  std::string source;
};

struct EvalReport {
  std::vector<std::string> sources;  // parallel to columns
  std::vector<ClassEvaluation> columns;
  std::vector<BaselineKind> kinds;
  std::vector<std::string> warnings;

  const ClassEvaluation* find(std::string_view source, ReferenceClass c) const;
  /// Rows Predicted, one per baseline, then the four count rows; one column per class.
  std::string to_csv() const;
  /// Columns of `other` appended after ours.
  void append(const EvalReport& other);
};

/// Per class: sum over reference testimonies of min_sum_dist for the predicted
/// positions and for each baseline sized to that testimony's prediction. The
/// empirical sample for a class pools predicted positions across testimonies.
EvalReport evaluate_against_references(std::span<const Trajectory> predicted,
                                       std::span<const ReferenceTrajectory> references,
                                       const EvalOptions& options = {});

}  // namespace arcs
