#include "arcs/eval.hpp"

#include <algorithm>
#include <cmath>
#include <iterator>
#include <limits>
#include <numeric>
#include <random>

#include "arcs/csv.hpp"
#include "arcs/error.hpp"

namespace arcs {

double min_sum_dist(std::span<const double> predicted, std::span<const double> reference) {
  if (reference.empty()) return 0.0;
  if (predicted.empty()) return static_cast<double>(reference.size());
  std::vector<double> sorted(predicted.begin(), predicted.end());
  std::sort(sorted.begin(), sorted.end());
  double total = 0.0;
  for (double r : reference) {
    auto it = std::lower_bound(sorted.begin(), sorted.end(), r);
    double best = std::numeric_limits<double>::infinity();
    if (it != sorted.end()) best = std::abs(*it - r);
    if (it != sorted.begin()) best = std::min(best, std::abs(*std::prev(it) - r));
    total += best;
  }
  return total;
}

std::string_view baseline_id(BaselineKind kind) {
  switch (kind) {
    case BaselineKind::EqualScatter: return "equal-scatter";
    case BaselineKind::OriginalScatter: return "original-scatter";
    case BaselineKind::EdgesAndMiddle: return "edges-middle";
    case BaselineKind::GaussEdgesAndMiddle: return "gauss-edges-middle";
    case BaselineKind::TwoGaussian: return "two-gaussian";
    case BaselineKind::NormalOriginal: return "normal-original";
  }
  return "?";
}

std::string_view baseline_label(BaselineKind kind) {
  switch (kind) {
    case BaselineKind::EqualScatter: return "Equal scatter";
    case BaselineKind::OriginalScatter: return "Original scatter";
    case BaselineKind::EdgesAndMiddle: return "Edges & middle";
    case BaselineKind::GaussEdgesAndMiddle: return "Gauss edges & middle";
    case BaselineKind::TwoGaussian: return "2-Gaussian";
    case BaselineKind::NormalOriginal: return "Normal-original";
  }
  return "?";
}

BaselineKind parse_baseline(std::string_view id) {
  for (BaselineKind k : kAllBaselines) {
    if (baseline_id(k) == id) return k;
  }
  throw ConfigError("unknown baseline '" + std::string(id) + "'");
}

bool baseline_needs_empirical(BaselineKind kind) {
  return kind != BaselineKind::EqualScatter && kind != BaselineKind::TwoGaussian;
}

namespace {

double clamp01(double x) { return std::clamp(x, 0.0, 1.0); }

double truncated_normal(std::mt19937_64& rng, double mean, double sd, double lo, double hi,
                        int max_redraws) {
  if (!(sd > 0.0)) return std::clamp(mean, lo, hi);
  std::normal_distribution<double> dist(mean, sd);
  double x = dist(rng);
  for (int i = 0; i < max_redraws && (x < lo || x > hi); ++i) x = dist(rng);
  return std::clamp(x, lo, hi);
}

/// Largest-remainder apportionment of n over the empirical thirds.
std::array<std::size_t, 3> third_counts(std::size_t n, std::span<const double> empirical) {
  std::array<double, 3> share{0, 0, 0};
  for (double p : empirical) {
    const std::size_t k = p < 1.0 / 3.0 ? 0 : (p < 2.0 / 3.0 ? 1 : 2);
    share[k] += 1.0;
  }
  std::array<std::size_t, 3> counts{0, 0, 0};
  std::array<double, 3> rem{0, 0, 0};
  std::size_t assigned = 0;
  for (std::size_t k = 0; k < 3; ++k) {
    const double quota = static_cast<double>(n) * share[k] / static_cast<double>(empirical.size());
    counts[k] = static_cast<std::size_t>(std::floor(quota));
    rem[k] = quota - static_cast<double>(counts[k]);
    assigned += counts[k];
  }
  while (assigned < n) {
    std::size_t best = 0;
    for (std::size_t k = 1; k < 3; ++k) {
      if (rem[k] > rem[best]) best = k;
    }
    ++counts[best];
    rem[best] = -1.0;
    ++assigned;
  }
  return counts;
}

std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t seed, std::string_view a, std::string_view b,
                          std::string_view c) {
  std::uint64_t h = splitmix(seed);
  h = splitmix(h ^ fnv1a(a));
  h = splitmix(h ^ fnv1a(b));
  return splitmix(h ^ fnv1a(c));
}

std::vector<double> gen_baseline(BaselineKind kind, std::size_t n, std::span<const double> empirical,
                                 std::uint64_t seed, const BaselineParams& params) {
  std::vector<double> out;
  if (n == 0) return out;
  if (baseline_needs_empirical(kind) && empirical.empty()) {
    throw DomainError(std::string(baseline_id(kind)) + " baseline needs a non-empty empirical sample");
  }
  out.reserve(n);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  switch (kind) {
    case BaselineKind::EqualScatter:
      for (std::size_t i = 1; i <= n; ++i) {
        out.push_back((static_cast<double>(i) - 0.5) / static_cast<double>(n));
      }
      break;
    case BaselineKind::OriginalScatter: {
      std::uniform_int_distribution<std::size_t> pick(0, empirical.size() - 1);
      for (std::size_t i = 0; i < n; ++i) out.push_back(clamp01(empirical[pick(rng)]));
      break;
    }
    case BaselineKind::EdgesAndMiddle:
    case BaselineKind::GaussEdgesAndMiddle: {
      const auto counts = third_counts(n, empirical);
      const double width = 1.0 / 3.0;
      for (std::size_t k = 0; k < 3; ++k) {
        const double lo = static_cast<double>(k) * width;
        const double hi = k == 2 ? 1.0 : lo + width;
        for (std::size_t i = 0; i < counts[k]; ++i) {
          if (kind == BaselineKind::EdgesAndMiddle) {
            out.push_back(std::min(hi, lo + unit(rng) * (hi - lo)));
          } else {
            out.push_back(truncated_normal(rng, lo + width / 2.0, width * params.third_sigma_fraction,
                                           lo, hi, params.max_redraws));
          }
        }
      }
      break;
    }
    case BaselineKind::TwoGaussian: {
      const std::size_t first = (n + 1) / 2;
      for (std::size_t i = 0; i < n; ++i) {
        const bool left = i < first;
        out.push_back(truncated_normal(rng, left ? 0.25 : 0.75, params.half_sigma,
                                       left ? 0.0 : 0.5, left ? 0.5 : 1.0, params.max_redraws));
      }
      break;
    }
    case BaselineKind::NormalOriginal: {
      const double mean = std::accumulate(empirical.begin(), empirical.end(), 0.0) /
                          static_cast<double>(empirical.size());
      double var = 0.0;
      for (double p : empirical) var += (p - mean) * (p - mean);
      var /= static_cast<double>(empirical.size());
      for (std::size_t i = 0; i < n; ++i) {
        out.push_back(truncated_normal(rng, mean, std::sqrt(var), 0.0, 1.0, params.max_redraws));
      }
      break;
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

const ClassEvaluation* EvalReport::find(std::string_view source, ReferenceClass c) const {
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (sources[i] == source && columns[i].class_id == c) return &columns[i];
  }
  return nullptr;
}

void EvalReport::append(const EvalReport& other) {
  sources.insert(sources.end(), other.sources.begin(), other.sources.end());
  columns.insert(columns.end(), other.columns.begin(), other.columns.end());
  for (BaselineKind k : other.kinds) {
    if (std::find(kinds.begin(), kinds.end(), k) == kinds.end()) kinds.push_back(k);
  }
  warnings.insert(warnings.end(), other.warnings.begin(), other.warnings.end());
}

std::string EvalReport::to_csv() const {
  std::vector<std::string> header{""};
  for (std::size_t i = 0; i < columns.size(); ++i) {
    std::string name(reference_class_name(columns[i].class_id));
    header.push_back(sources[i].empty() ? name : sources[i] + ":" + name);
  }
  std::string out = csv_row(header);
  auto number_row = [&](std::string label, auto get) {
    std::vector<std::string> row{std::move(label)};
    for (const auto& c : columns) row.push_back(get(c));
    out += csv_row(row);
  };
  number_row("Predicted", [](const ClassEvaluation& c) { return format_number(c.predicted); });
  for (BaselineKind k : kinds) {
    number_row(std::string(baseline_label(k)), [k](const ClassEvaluation& c) {
      auto it = c.baselines.find(k);
      return it == c.baselines.end() ? std::string() : format_number(it->second);
    });
  }
  number_row("# Reference paths",
             [](const ClassEvaluation& c) { return std::to_string(c.reference_paths); });
  number_row("# predicted paths",
             [](const ClassEvaluation& c) { return std::to_string(c.predicted_paths); });
  number_row("# Reference points",
             [](const ClassEvaluation& c) { return std::to_string(c.reference_points); });
  number_row("# predicted points",
             [](const ClassEvaluation& c) { return std::to_string(c.predicted_points); });
  return out;
}

EvalReport evaluate_against_references(std::span<const Trajectory> predicted,
                                       std::span<const ReferenceTrajectory> references,
                                       const EvalOptions& options) {
  EvalReport report;
  report.kinds = options.kinds;
  for (ReferenceClass cls : options.classes) {
    const std::string cls_name(reference_class_name(cls));
    ClassEvaluation col;
    col.class_id = cls;
    std::map<std::string, std::vector<double>> pred;
    std::vector<double> empirical;
    for (const Trajectory& t : predicted) {
      if (t.aspect != reference_aspect(cls)) continue;
      std::vector<double> pos = predicted_positions(t, cls);
      if (pos.empty()) continue;
      ++col.predicted_paths;
      col.predicted_points += pos.size();
      empirical.insert(empirical.end(), pos.begin(), pos.end());
      auto& slot = pred[t.testimony_id];
      slot.insert(slot.end(), pos.begin(), pos.end());
    }
    for (const ReferenceTrajectory& r : references) {
      if (r.class_id != cls || r.positions.empty()) continue;
      ++col.reference_paths;
      col.reference_points += r.positions.size();
      static const std::vector<double> kNone;
      auto it = pred.find(r.testimony_id);
      const std::vector<double>& t = it == pred.end() ? kNone : it->second;
      col.predicted += min_sum_dist(t, r.positions);
      for (BaselineKind kind : options.kinds) {
        std::vector<double> base;
        if (!t.empty()) {
          base = gen_baseline(kind, t.size(), empirical,
                              derive_seed(options.seed, cls_name, baseline_id(kind), r.testimony_id),
                              options.params);
        }
        col.baselines[kind] += min_sum_dist(base, r.positions);
      }
    }
    for (BaselineKind kind : options.kinds) col.baselines.try_emplace(kind, 0.0);
    if (col.reference_paths == 0) {
      report.warnings.push_back((options.source.empty() ? "" : options.source + " ") +
                                "class " + cls_name + " has no reference paths");
    }
    report.sources.push_back(options.source);
    report.columns.push_back(std::move(col));
  }
  return report;
}

}  // namespace arcs
