#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "arcs/corpus.hpp"
#include "arcs/labeling.hpp"

namespace arcs {

/// Rows are gold labels, columns predictions, both in `labels` order.
class ConfusionMatrix {
 public:
  /// Throws DomainError on a length mismatch or a label outside `labels`.
  ConfusionMatrix(std::span<const std::string> gold, std::span<const std::string> predicted,
                  std::vector<std::string> labels);

  const std::vector<std::string>& labels() const { return labels_; }
  std::size_t count(std::size_t gold, std::size_t predicted) const {
    return counts_[gold * labels_.size() + predicted];
  }
  std::size_t support(std::size_t k) const;
  std::size_t predicted_count(std::size_t k) const;
  std::size_t total() const { return total_; }

  double precision(std::size_t k) const;
  double recall(std::size_t k) const;
  double f1(std::size_t k) const;

  std::string to_csv() const;

 private:
  std::vector<std::string> labels_;
  std::vector<std::size_t> counts_;
  std::size_t total_ = 0;
};

struct MacroF1 {
  double value = 0.0;
  std::vector<double> per_class;
  /// Classes with no gold support; they contribute 0 to the mean.
  std::vector<std::string> zero_support;
};

MacroF1 macro_f1(const ConfusionMatrix& m);

struct CandidateScore {
  std::string name;
  MacroF1 score;
};

struct ModelSelection {
  std::vector<CandidateScore> candidates;
  /// Index of the best macro F1; the earliest candidate wins ties.
  std::size_t best = 0;
};

/// Scores every candidate's predictions against `gold`.
ModelSelection select_model(std::span<const std::string> gold,
                            const std::vector<std::pair<std::string, std::vector<std::string>>>& candidates,
                            const std::vector<std::string>& labels);

/// Label names of one aspect in report order.
std::vector<std::string> aspect_label_names(Aspect aspect);

struct OverpredictionRow {
  Aspect aspect = Aspect::Belief;
  Polarity label = Polarity::Plus;
  std::size_t filtered_count = 0;
  std::size_t all_count = 0;
  double filtered_rate = 0.0;
  double all_rate = 0.0;
  /// all_rate / filtered_rate; infinite when only the unfiltered run predicts the class.
  double ratio = 0.0;
};

struct OverpredictionReport {
  std::size_t segments = 0;
  std::size_t content_segments = 0;
  std::vector<OverpredictionRow> rows;

  std::string to_csv() const;
};

/// Labels every segment and, separately, only the segments the classifier keeps;
/// rates are per corpus segment for each valenced and Other class.
OverpredictionReport overprediction_analysis(std::span<const Segment> segments,
                                             ValenceLabeler& labeler, ContentClassifier& classifier,
                                             unsigned threads = 1);

}  // namespace arcs
