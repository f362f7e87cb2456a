#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "arcs/trajectory.hpp"

namespace arcs {

enum class StructureClass {
  ConstantNegative,
  ConstantPositive,
  Ascending,
  Descending,
  Oscillating,
  NeutralOnly,
};

inline constexpr std::array<StructureClass, 6> kAllStructures = {
    StructureClass::ConstantNegative, StructureClass::ConstantPositive, StructureClass::Ascending,
    StructureClass::Descending,       StructureClass::Oscillating,      StructureClass::NeutralOnly};

std::string_view structure_name(StructureClass c);
StructureClass parse_structure_name(std::string_view name);

/// Throws InvariantViolation when `values` contains anything but alternating +1/-1.
StructureClass classify_structure(std::span<const int> values);
StructureClass classify_structure(const ShrunkSeries& series);
/// classify_structure(filter_shrink(t)).
StructureClass classify_trajectory(const Trajectory& trajectory);

/// Image of a class under negating every value.
StructureClass sign_flip(StructureClass c);

struct DistributionRow {
  StructureClass structure = StructureClass::NeutralOnly;
  std::size_t count = 0;
  double proportion = 0.0;
};

/// Trajectory length range, inclusive on both ends; no upper bound when `hi` is empty.
struct LengthBin {
  std::size_t lo = 0;
  std::optional<std::size_t> hi;

  bool contains(std::size_t n) const { return n >= lo && (!hi || n <= *hi); }
  std::string label() const;
};

/// belief 2-3 / 4-8 / >8, practice 2-13 / 14-29 / >29.
std::vector<LengthBin> default_length_bins(Aspect aspect);

struct DistributionOptions {
  /// Count NeutralOnly in the proportion denominator.
  bool include_neutral = false;
  std::optional<LengthBin> length;
};

struct Distribution {
  /// One row per class in kAllStructures order.
  std::vector<DistributionRow> rows;
  /// Trajectories counted in the denominator.
  std::size_t classified = 0;
  /// Trajectories skipped by the length filter.
  std::size_t filtered_out = 0;

  const DistributionRow& row(StructureClass c) const;
};

Distribution taxonomy_distribution(std::span<const Trajectory> trajectories,
                                   DistributionOptions options = {});

struct CrossTab {
  std::vector<std::string> row_labels;
  std::vector<std::string> col_labels;
  std::vector<std::vector<std::size_t>> counts;
  std::size_t total = 0;

  std::vector<std::size_t> row_totals() const;
  std::vector<std::size_t> col_totals() const;
};

/// Structure x coverage. NeutralOnly trajectories have no coverage and are left out.
CrossTab coverage_crosstab(std::span<const Trajectory> trajectories);

/// Belief structure (rows) x practice structure (columns), paired by testimony id.
/// A testimony missing from one side counts as NeutralOnly there.
CrossTab aspect_crosstab(std::span<const Trajectory> belief, std::span<const Trajectory> practice);

/// "class,count,proportion".
std::string distribution_csv(const Distribution& d);
std::string crosstab_csv(const CrossTab& t);

}  // namespace arcs
