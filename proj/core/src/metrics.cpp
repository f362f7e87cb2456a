#include "arcs/metrics.hpp"

#include <algorithm>
#include <limits>

#include "arcs/csv.hpp"
#include "arcs/error.hpp"

namespace arcs {

ConfusionMatrix::ConfusionMatrix(std::span<const std::string> gold,
                                 std::span<const std::string> predicted,
                                 std::vector<std::string> labels)
    : labels_(std::move(labels)), counts_(labels_.size() * labels_.size(), 0) {
  if (gold.size() != predicted.size()) {
    throw DomainError("gold has " + std::to_string(gold.size()) + " labels, predictions " +
                      std::to_string(predicted.size()));
  }
  auto index = [&](const std::string& l) {
    auto it = std::find(labels_.begin(), labels_.end(), l);
    if (it == labels_.end()) throw DomainError("label '" + l + "' is not in the label set");
    return static_cast<std::size_t>(it - labels_.begin());
  };
  for (std::size_t i = 0; i < gold.size(); ++i) {
    ++counts_[index(gold[i]) * labels_.size() + index(predicted[i])];
  }
  total_ = gold.size();
}

std::size_t ConfusionMatrix::support(std::size_t k) const {
  std::size_t s = 0;
  for (std::size_t j = 0; j < labels_.size(); ++j) s += count(k, j);
  return s;
}

std::size_t ConfusionMatrix::predicted_count(std::size_t k) const {
  std::size_t s = 0;
  for (std::size_t i = 0; i < labels_.size(); ++i) s += count(i, k);
  return s;
}

double ConfusionMatrix::precision(std::size_t k) const {
  const std::size_t p = predicted_count(k);
  return p == 0 ? 0.0 : static_cast<double>(count(k, k)) / static_cast<double>(p);
}

double ConfusionMatrix::recall(std::size_t k) const {
  const std::size_t s = support(k);
  return s == 0 ? 0.0 : static_cast<double>(count(k, k)) / static_cast<double>(s);
}

double ConfusionMatrix::f1(std::size_t k) const {
  const double denom = static_cast<double>(support(k) + predicted_count(k));
  return denom == 0.0 ? 0.0 : 2.0 * static_cast<double>(count(k, k)) / denom;
}

std::string ConfusionMatrix::to_csv() const {
  std::vector<std::string> header{"gold\\predicted"};
  header.insert(header.end(), labels_.begin(), labels_.end());
  std::string out = csv_row(header);
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    std::vector<std::string> row{labels_[i]};
    for (std::size_t j = 0; j < labels_.size(); ++j) row.push_back(std::to_string(count(i, j)));
    out += csv_row(row);
  }
  return out;
}

MacroF1 macro_f1(const ConfusionMatrix& m) {
  MacroF1 r;
  const std::size_t k = m.labels().size();
  if (k == 0) return r;
  double sum = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    const double f = m.support(i) == 0 ? 0.0 : m.f1(i);
    if (m.support(i) == 0) r.zero_support.push_back(m.labels()[i]);
    r.per_class.push_back(f);
    sum += f;
  }
  r.value = sum / static_cast<double>(k);
  return r;
}

ModelSelection select_model(std::span<const std::string> gold,
                            const std::vector<std::pair<std::string, std::vector<std::string>>>& candidates,
                            const std::vector<std::string>& labels) {
  ModelSelection sel;
  for (const auto& [name, pred] : candidates) {
    sel.candidates.push_back({name, macro_f1(ConfusionMatrix(gold, pred, labels))});
    if (sel.candidates.back().score.value > sel.candidates[sel.best].score.value) {
      sel.best = sel.candidates.size() - 1;
    }
  }
  return sel;
}

std::vector<std::string> aspect_label_names(Aspect aspect) {
  std::vector<std::string> out;
  for (Polarity p : kAllPolarities) out.emplace_back(label_name(aspect, p));
  return out;
}

std::string OverpredictionReport::to_csv() const {
  std::string out = "aspect,label,filtered_count,all_count,filtered_rate,all_rate,ratio\n";
  for (const auto& r : rows) {
    out += csv_row({std::string(aspect_name(r.aspect)), std::string(label_name(r.aspect, r.label)),
                    std::to_string(r.filtered_count), std::to_string(r.all_count),
                    format_number(r.filtered_rate), format_number(r.all_rate),
                    format_number(r.ratio)});
  }
  return out;
}

OverpredictionReport overprediction_analysis(std::span<const Segment> segments,
                                             ValenceLabeler& labeler, ContentClassifier& classifier,
                                             unsigned threads) {
  OverpredictionReport rep;
  rep.segments = segments.size();
  const std::vector<bool> keep = classify_all(segments, classifier, threads);
  std::vector<Segment> kept;
  for (std::size_t i = 0; i < segments.size(); ++i) {
    if (keep[i]) kept.push_back(segments[i]);
  }
  rep.content_segments = kept.size();
  const std::vector<ValenceLabel> all = label_all(segments, labeler, threads);
  const std::vector<ValenceLabel> filtered = label_all(kept, labeler, threads);
  const double n = segments.empty() ? 1.0 : static_cast<double>(segments.size());
  for (Aspect aspect : kAllAspects) {
    for (Polarity p : {Polarity::Plus, Polarity::Minus, Polarity::Other}) {
      OverpredictionRow row;
      row.aspect = aspect;
      row.label = p;
      for (const ValenceLabel& l : all) row.all_count += l.get(aspect) == p ? 1 : 0;
      for (const ValenceLabel& l : filtered) row.filtered_count += l.get(aspect) == p ? 1 : 0;
      row.filtered_rate = static_cast<double>(row.filtered_count) / n;
      row.all_rate = static_cast<double>(row.all_count) / n;
      if (row.filtered_count > 0) {
        row.ratio = row.all_rate / row.filtered_rate;
      } else {
        row.ratio = row.all_count > 0 ? std::numeric_limits<double>::infinity()
                                      : std::numeric_limits<double>::quiet_NaN();
      }
      rep.rows.push_back(row);
    }
  }
  return rep;
}

}  // namespace arcs
