#include "arcs/agreement.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <set>

#include "arcs/error.hpp"
#include "arcs/labels.hpp"

namespace arcs {

std::string_view task_name(AnnotationTask task) {
  switch (task) {
    case AnnotationTask::Content: return "content";
    case AnnotationTask::Practice: return "practice";
    case AnnotationTask::Belief: return "belief";
    case AnnotationTask::Triplet: return "triplet";
  }
  return "?";
}

AnnotationTask parse_task(std::string_view name) {
  for (AnnotationTask t : {AnnotationTask::Content, AnnotationTask::Practice, AnnotationTask::Belief,
                           AnnotationTask::Triplet}) {
    if (task_name(t) == name) return t;
  }
  throw ParseError("unknown annotation task '" + std::string(name) + "'");
}

std::vector<std::string> task_labels(AnnotationTask task) {
  switch (task) {
    case AnnotationTask::Content: return {"true", "false"};
    case AnnotationTask::Triplet: return {"0", "1", "2"};
    case AnnotationTask::Practice:
    case AnnotationTask::Belief: {
      const Aspect a = task == AnnotationTask::Practice ? Aspect::Practice : Aspect::Belief;
      std::vector<std::string> out;
      for (Polarity p : kAllPolarities) out.emplace_back(label_name(a, p));
      return out;
    }
  }
  return {};
}

void validate_records(std::span<const AnnotationRecord> records) {
  std::set<std::tuple<std::string, std::string, AnnotationTask>> seen;
  std::map<AnnotationTask, std::vector<std::string>> legal;
  for (const AnnotationRecord& r : records) {
    if (!seen.emplace(r.item_id, r.annotator_id, r.task).second) {
      throw DomainError("annotator '" + r.annotator_id + "' labeled item '" + r.item_id +
                        "' twice for task " + std::string(task_name(r.task)));
    }
    auto [it, inserted] = legal.try_emplace(r.task);
    if (inserted) it->second = task_labels(r.task);
    if (std::find(it->second.begin(), it->second.end(), r.label) == it->second.end()) {
      throw DomainError("label '" + r.label + "' is not legal for task " +
                        std::string(task_name(r.task)));
    }
  }
}

namespace {

/// Nominal alpha from per-unit value lists.
double alpha_from_units(const std::vector<std::vector<std::string>>& units) {
  std::map<std::string, std::size_t> code;
  for (const auto& u : units) {
    for (const auto& v : u) code.try_emplace(v, code.size());
  }
  const std::size_t k = code.size();
  std::vector<double> o(k * k, 0.0);
  bool pairable = false;
  for (const auto& u : units) {
    const std::size_t m = u.size();
    if (m < 2) continue;
    pairable = true;
    std::vector<std::size_t> counts(k, 0);
    for (const auto& v : u) ++counts[code[v]];
    const double w = 1.0 / static_cast<double>(m - 1);
    for (std::size_t c = 0; c < k; ++c) {
      if (counts[c] == 0) continue;
      for (std::size_t d = 0; d < k; ++d) {
        if (counts[d] == 0) continue;
        const double pairs = c == d ? static_cast<double>(counts[c] * (counts[c] - 1))
                                    : static_cast<double>(counts[c] * counts[d]);
        o[c * k + d] += pairs * w;
      }
    }
  }
  if (!pairable) throw DomainError("alpha undefined: no item has two or more annotations");
  std::vector<double> nc(k, 0.0);
  double n = 0.0;
  for (std::size_t c = 0; c < k; ++c) {
    for (std::size_t d = 0; d < k; ++d) nc[c] += o[c * k + d];
    n += nc[c];
  }
  double observed = 0.0;
  double expected = 0.0;
  for (std::size_t c = 0; c < k; ++c) {
    for (std::size_t d = 0; d < k; ++d) {
      if (c == d) continue;
      observed += o[c * k + d];
      expected += nc[c] * nc[d];
    }
  }
  const double d_o = observed / n;
  const double d_e = expected / (n * (n - 1.0));
  if (d_e == 0.0) return 1.0;
  return 1.0 - d_o / d_e;
}

void require_single_task(std::span<const AnnotationRecord> records) {
  for (const auto& r : records) {
    if (r.task != records.front().task) {
      throw DomainError("alpha records mix tasks " + std::string(task_name(records.front().task)) +
                        " and " + std::string(task_name(r.task)));
    }
  }
}

}  // namespace

double krippendorff_alpha(std::span<const AnnotationRecord> records) {
  if (records.empty()) throw DomainError("alpha undefined: no records");
  require_single_task(records);
  std::map<std::string, std::vector<std::string>> by_item;
  for (const auto& r : records) by_item[r.item_id].push_back(r.label);
  std::vector<std::vector<std::string>> units;
  for (auto& [id, labels] : by_item) units.push_back(std::move(labels));
  return alpha_from_units(units);
}

PairwiseAlpha pairwise_alpha(std::span<const AnnotationRecord> records) {
  if (records.empty()) throw DomainError("alpha undefined: no records");
  require_single_task(records);
  std::map<std::string, std::map<std::string, std::string>> by_annotator;
  for (const auto& r : records) by_annotator[r.annotator_id][r.item_id] = r.label;
  PairwiseAlpha out;
  for (auto a = by_annotator.begin(); a != by_annotator.end(); ++a) {
    for (auto b = std::next(a); b != by_annotator.end(); ++b) {
      std::vector<std::vector<std::string>> units;
      for (const auto& [item, label] : a->second) {
        auto it = b->second.find(item);
        if (it != b->second.end()) units.push_back({label, it->second});
      }
      if (units.empty()) {
        out.warnings.push_back("annotators '" + a->first + "' and '" + b->first +
                               "' share no items; pair omitted");
        continue;
      }
      out.pairs.push_back({a->first, b->first, units.size(), alpha_from_units(units)});
    }
  }
  if (out.pairs.empty()) throw DomainError("no annotator pair shares an item");
  double sum = 0.0;
  for (const auto& p : out.pairs) sum += p.alpha;
  out.mean = sum / static_cast<double>(out.pairs.size());
  return out;
}

Adjudication adjudicate(std::span<const std::string> labels) {
  Adjudication r;
  r.annotators = labels.size();
  if (labels.empty()) return r;
  std::map<std::string, std::size_t> counts;
  for (const auto& l : labels) ++counts[l];
  if (counts.size() == 1) {
    r.gold = labels.front();
    return r;
  }
  if (labels.size() <= 2) return r;
  for (const auto& [label, c] : counts) {
    if (2 * c > labels.size()) r.gold = label;
  }
  return r;
}

std::vector<AdjudicatedItem> adjudicate_all(std::span<const AnnotationRecord> records) {
  std::vector<std::pair<AnnotationTask, std::string>> order;
  std::map<std::pair<AnnotationTask, std::string>, std::vector<std::string>> groups;
  for (const auto& r : records) {
    auto key = std::make_pair(r.task, r.item_id);
    auto [it, inserted] = groups.try_emplace(key);
    if (inserted) order.push_back(key);
    it->second.push_back(r.label);
  }
  std::vector<AdjudicatedItem> out;
  for (const auto& key : order) out.push_back({key.second, key.first, adjudicate(groups[key])});
  return out;
}

DatasetSplits split_dataset(std::span<const SplitItem> items, SplitRatios ratios, std::uint64_t seed) {
  if (ratios.train < 0 || ratios.validation < 0 || ratios.test < 0 ||
      std::abs(ratios.train + ratios.validation + ratios.test - 1.0) > 1e-9) {
    throw DomainError("split ratios must be non-negative and sum to 1");
  }
  if (ratios.test > 0 && std::none_of(items.begin(), items.end(),
                                      [](const SplitItem& i) { return i.overlap; })) {
    throw DomainError("test split needs overlap items, and there are none");
  }
  std::map<std::string, std::vector<const SplitItem*>> by_label;
  for (const auto& i : items) by_label[i.label].push_back(&i);
  std::mt19937_64 rng(seed);
  DatasetSplits out;
  auto quota = [](std::size_t n, double r) -> std::size_t {
    if (r <= 0) return 0;
    return std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(static_cast<double>(n) * r)));
  };
  for (auto& [label, group] : by_label) {
    const std::size_t n = group.size();
    const std::size_t n_test = quota(n, ratios.test);
    const std::size_t n_val = quota(n, ratios.validation);
    const std::size_t needed = n_test + n_val + (ratios.train > 0 ? 1 : 0);
    if (n < needed) {
      throw DomainError("class '" + label + "' has " + std::to_string(n) +
                        " items, too few to stratify (needs " + std::to_string(needed) + ")");
    }
    std::vector<const SplitItem*> overlap;
    std::vector<const SplitItem*> rest;
    for (const SplitItem* i : group) (i->overlap ? overlap : rest).push_back(i);
    if (overlap.size() < n_test) {
      throw DomainError("class '" + label + "' has " + std::to_string(overlap.size()) +
                        " overlap items, test split needs " + std::to_string(n_test));
    }
    std::shuffle(overlap.begin(), overlap.end(), rng);
    for (std::size_t k = 0; k < n_test; ++k) out.test.push_back(overlap[k]->item_id);
    rest.insert(rest.end(), overlap.begin() + static_cast<std::ptrdiff_t>(n_test), overlap.end());
    std::shuffle(rest.begin(), rest.end(), rng);
    for (std::size_t k = 0; k < rest.size(); ++k) {
      (k < n_val ? out.validation : out.train).push_back(rest[k]->item_id);
    }
  }
  std::sort(out.train.begin(), out.train.end());
  std::sort(out.validation.begin(), out.validation.end());
  std::sort(out.test.begin(), out.test.end());
  return out;
}

}  // namespace arcs
