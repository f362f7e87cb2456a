#pragma once

#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "arcs/corpus.hpp"
#include "arcs/labels.hpp"

namespace arcs {

struct TrajectoryPoint {
  double position = 0.0;
  int value = 0;  // -1, 0 or +1

  bool operator==(const TrajectoryPoint&) const = default;
};

struct Trajectory {
  std::string testimony_id;
  Aspect aspect = Aspect::Belief;
  std::vector<TrajectoryPoint> points;

  std::size_t size() const { return points.size(); }
  bool empty() const { return points.empty(); }
  std::vector<int> values() const;
  bool operator==(const Trajectory&) const = default;
};

struct LabeledSegment {
  Segment segment;
  ValenceLabel label;
};

/// One testimony's labels in position order. Throws DomainError on mixed
/// testimonies or positions that are not strictly increasing.
Trajectory build_trajectory(std::span<const LabeledSegment> labels, Aspect aspect);

/// Groups by testimony (first-appearance order) and orders each group by seq_index.
std::vector<Trajectory> build_trajectories(std::span<const LabeledSegment> labels, Aspect aspect);

/// Evenly spaced points at (i + 0.5) / n, mainly for tests and synthesized series.
Trajectory trajectory_from_values(std::span<const int> values, Aspect aspect = Aspect::Belief,
                                  std::string testimony_id = {});

struct ShrunkSeries {
  std::vector<int> values;
  std::vector<double> positions;
  double span = 0.0;

  bool empty() const { return values.empty(); }
  bool operator==(const ShrunkSeries&) const = default;
};

/// Drop zeros, then collapse runs of equal values keeping the run's first position.
ShrunkSeries filter_shrink(const Trajectory& trajectory);
ShrunkSeries filter_shrink(std::span<const int> values);

enum class Coverage { Low, Medium, High };

std::string_view coverage_name(Coverage c);

/// Last minus first position over nonzero points. Throws DomainError when there are none.
double nonzero_span(const Trajectory& trajectory);
/// Low for s <= 0.33, Medium for s <= 0.67, High above.
Coverage coverage_of_span(double span);
Coverage coverage(const Trajectory& trajectory);

/// Reference label set, in report column order.
enum class ReferenceClass { B, P, PMinus, PPlus, BPlus, BMinus };

inline constexpr std::array<ReferenceClass, 6> kReferenceClasses = {
    ReferenceClass::B,     ReferenceClass::P,     ReferenceClass::PMinus,
    ReferenceClass::PPlus, ReferenceClass::BPlus, ReferenceClass::BMinus};

std::string_view reference_class_name(ReferenceClass c);
/// Accepts "P+", "P-" and the superscript forms "P⁺", "P⁻".
ReferenceClass parse_reference_class(std::string_view name);
Aspect reference_aspect(ReferenceClass c);
/// +1 / -1 for valenced classes, nullopt for B and P.
std::optional<int> reference_valence(ReferenceClass c);

enum class MappedValence { Plus, Minus, Unvalenced };

struct MappingRow {
  std::string term_id;
  ReferenceClass class_id = ReferenceClass::P;
  MappedValence valence = MappedValence::Unvalenced;

  bool operator==(const MappingRow&) const = default;
};

/// Term or topic id -> class and valence.
class LabelMapping {
 public:
  LabelMapping() = default;

  /// Throws DomainError on a duplicate term id or a valence contradicting the class.
  void add(MappingRow row);
  const MappingRow* find(std::string_view term_id) const;
  const std::vector<MappingRow>& rows() const { return rows_; }
  bool empty() const { return rows_.empty(); }

  /// Does `term_id` count toward `query`? Unvalenced queries (B, P) ignore valence.
  bool matches(std::string_view term_id, ReferenceClass query) const;

  /// TSV with header "term_id\tclass_id\tvalence"; valence is +1, -1 or u.
  static LabelMapping parse_tsv(std::string_view tsv);
  std::string to_tsv() const;

  /// Built-in thesaurus term map.
  static LabelMapping thesaurus();
  /// Built-in topic map.
  static LabelMapping topics();
  /// Each class name maps to itself.
  static LabelMapping identity();

 private:
  std::vector<MappingRow> rows_;
  std::map<std::string, std::size_t, std::less<>> index_;
};

struct IndexEntry {
  std::string testimony_id;
  double position = 0.0;
  std::string term_id;

  bool operator==(const IndexEntry&) const = default;
};

struct ReferenceTrajectory {
  std::string testimony_id;
  ReferenceClass class_id = ReferenceClass::B;
  std::vector<double> positions;

  bool operator==(const ReferenceTrajectory&) const = default;
};

struct ReferenceExtraction {
  /// One per testimony with at least one matching entry, first-appearance order.
  std::vector<ReferenceTrajectory> references;
  std::vector<std::string> warnings;
  std::size_t skipped = 0;
};

/// Unknown terms are skipped with one warning per distinct term.
ReferenceExtraction extract_reference(std::span<const IndexEntry> indexed,
                                      const LabelMapping& mapping, ReferenceClass class_id);

/// Positions of a predicted trajectory that count toward `class_id`: every
/// point for B and P, only +1 / -1 points for the valenced classes.
std::vector<double> predicted_positions(const Trajectory& trajectory, ReferenceClass class_id);

}  // namespace arcs
