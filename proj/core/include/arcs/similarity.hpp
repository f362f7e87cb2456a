#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "arcs/trajectory.hpp"

namespace arcs {

/// floor(p * 100) / 100, tolerant of representation error just below a hundredth.
double truncate_position(double position);

/// Euclidean distance over (truncated position, value).
double point_distance(const TrajectoryPoint& p, const TrajectoryPoint& q);

struct DtwResult {
  double cost = 0.0;
  /// Steps on the optimal path; among equal-cost paths the shortest is taken.
  std::size_t path_length = 0;

  double normalized() const { return path_length == 0 ? 0.0 : cost / double(path_length); }
};

/// Boundary-anchored DTW with steps (1,1), (1,0), (0,1) and the Sakoe-Chiba band
/// |i - j| <= window. Throws DomainError for an empty input or window 0, and
/// BandInfeasibleError when window < |len a - len b|.
DtwResult dtw_full(const Trajectory& a, const Trajectory& b, std::size_t window);
double dtw(const Trajectory& a, const Trajectory& b, std::size_t window);

/// Exhaustive enumeration of warping paths, for lengths up to kBruteMaxLength.
inline constexpr std::size_t kBruteMaxLength = 8;
double dtw_brute(const Trajectory& a, const Trajectory& b,
                 std::optional<std::size_t> window = std::nullopt);

class DistanceMatrix {
 public:
  DistanceMatrix() = default;
  explicit DistanceMatrix(std::vector<std::string> ids);

  std::size_t size() const { return ids_.size(); }
  const std::vector<std::string>& ids() const { return ids_; }
  double at(std::size_t i, std::size_t j) const { return values_[i * ids_.size() + j]; }
  /// Sets both (i, j) and (j, i).
  void set(std::size_t i, std::size_t j, double v);

  bool imputed(std::size_t i, std::size_t j) const { return imputed_[i * ids_.size() + j] != 0; }
  void mark_imputed(std::size_t i, std::size_t j);
  std::size_t imputed_pairs() const;

  /// Header row of ids, then one row per id.
  std::string to_csv() const;
  /// Throws ParseError when the matrix is not square, symmetric or zero on the diagonal.
  static DistanceMatrix from_csv(std::string_view csv);

  /// Rows and columns reordered so that result.ids()[k] == ids()[order[k]].
  DistanceMatrix permuted(std::span<const std::size_t> order) const;

 private:
  std::vector<std::string> ids_;
  std::vector<double> values_;
  std::vector<char> imputed_;
};

struct DistanceMatrices {
  DistanceMatrix raw;
  /// Cost divided by warping-path length.
  DistanceMatrix normalized;
  std::size_t infeasible_pairs = 0;
};

/// Pairwise DTW. Band-infeasible pairs get the largest feasible distance and are
/// flagged. Throws DomainError for fewer than two or any empty trajectory.
DistanceMatrices distance_matrices(std::span<const Trajectory> trajectories, std::size_t window,
                                   unsigned threads = 1);
DistanceMatrix distance_matrix(std::span<const Trajectory> trajectories, std::size_t window,
                               unsigned threads = 1);

}  // namespace arcs
