#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace arcs {

enum class AnnotationTask { Content, Practice, Belief, Triplet };

std::string_view task_name(AnnotationTask task);
AnnotationTask parse_task(std::string_view name);
/// Content: true/false. Practice and belief: label names. Triplet: 0, 1, 2.
std::vector<std::string> task_labels(AnnotationTask task);

struct AnnotationRecord {
  std::string item_id;
  std::string annotator_id;
  AnnotationTask task = AnnotationTask::Content;
  std::string label;

  bool operator==(const AnnotationRecord&) const = default;
};

/// Throws DomainError on a repeated (item, annotator, task) or an illegal label.
void validate_records(std::span<const AnnotationRecord> records);

/// Nominal alpha over every item with at least two annotations, all coders jointly.
/// Records must share one task. Throws DomainError when nothing is pairable.
double krippendorff_alpha(std::span<const AnnotationRecord> records);

struct PairAlpha {
  std::string annotator_a;
  std::string annotator_b;
  std::size_t shared_items = 0;
  double alpha = 0.0;
};

struct PairwiseAlpha {
  std::vector<PairAlpha> pairs;
  /// Unweighted mean over pairs.
  double mean = 0.0;
  std::vector<std::string> warnings;
};

/// Alpha per annotator pair on their shared items. Throws DomainError when no pair shares an item.
PairwiseAlpha pairwise_alpha(std::span<const AnnotationRecord> records);

struct Adjudication {
  std::optional<std::string> gold;  // empty when discarded
  std::size_t annotators = 0;

  bool discarded() const { return !gold.has_value(); }
};

/// Unanimous -> label; two disagreeing -> discarded; three or more -> strict majority or discarded.
Adjudication adjudicate(std::span<const std::string> labels);

struct AdjudicatedItem {
  std::string item_id;
  AnnotationTask task = AnnotationTask::Content;
  Adjudication result;
};

/// Groups by (task, item) in first-appearance order.
std::vector<AdjudicatedItem> adjudicate_all(std::span<const AnnotationRecord> records);

struct SplitItem {
  std::string item_id;
  std::string label;
  /// Adjudicated from overlapping annotations; only these may enter the test split.
  bool overlap = false;
};

struct SplitRatios {
  double train = 0.8;
  double validation = 0.1;
  double test = 0.1;
};

struct DatasetSplits {
  std::vector<std::string> train;
  std::vector<std::string> validation;
  std::vector<std::string> test;
};

/// Stratified by label. Each class gives max(1, round(n * r)) items to every split
/// with r > 0 other than train, which takes the rest. Throws DomainError naming the
/// class when it is too small or lacks overlap items for the test split.
DatasetSplits split_dataset(std::span<const SplitItem> items, SplitRatios ratios, std::uint64_t seed);

}  // namespace arcs
