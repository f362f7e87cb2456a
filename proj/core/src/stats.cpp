#include "arcs/stats.hpp"

#include <boost/math/distributions/students_t.hpp>
#include <cmath>
#include <limits>

#include "arcs/error.hpp"

namespace arcs {

GroupStats group_stats(std::span<const double> xs) {
  GroupStats g;
  g.n = xs.size();
  if (xs.empty()) return g;
  double sum = 0.0;
  for (double x : xs) sum += x;
  g.mean = sum / static_cast<double>(g.n);
  if (g.n > 1) {
    double ss = 0.0;
    for (double x : xs) ss += (x - g.mean) * (x - g.mean);
    g.sd = std::sqrt(ss / static_cast<double>(g.n - 1));
  }
  return g;
}

WelchResult welch_t_test(std::span<const double> a, std::span<const double> b) {
  if (a.size() < 2 || b.size() < 2) {
    throw DomainError("welch t-test needs at least two values per sample");
  }
  const GroupStats ga = group_stats(a);
  const GroupStats gb = group_stats(b);
  const double va = ga.sd * ga.sd / static_cast<double>(ga.n);
  const double vb = gb.sd * gb.sd / static_cast<double>(gb.n);
  if (va + vb == 0.0) throw DomainError("welch t-test: both samples have zero variance");
  WelchResult r;
  r.t = (ga.mean - gb.mean) / std::sqrt(va + vb);
  r.df = (va + vb) * (va + vb) /
         (va * va / static_cast<double>(ga.n - 1) + vb * vb / static_cast<double>(gb.n - 1));
  const boost::math::students_t dist(r.df);
  r.p = 2.0 * boost::math::cdf(boost::math::complement(dist, std::abs(r.t)));
  r.p = std::min(1.0, r.p);
  return r;
}

StructureDtwStats structure_dtw_stats(const DistanceMatrix& m,
                                      const std::map<std::string, StructureClass>& structures) {
  std::vector<StructureClass> cls;
  for (const std::string& id : m.ids()) {
    auto it = structures.find(id);
    if (it == structures.end()) throw DomainError("no structure for '" + id + "'");
    cls.push_back(it->second);
  }
  std::vector<double> same;
  std::vector<double> diff;
  for (std::size_t i = 0; i < m.size(); ++i) {
    for (std::size_t j = i + 1; j < m.size(); ++j) {
      (cls[i] == cls[j] ? same : diff).push_back(m.at(i, j));
    }
  }
  if (same.empty()) throw DomainError("no same-structure pairs");
  if (diff.empty()) throw DomainError("no different-structure pairs");
  return {group_stats(same), group_stats(diff), welch_t_test(same, diff)};
}

TripletAccuracy triplet_accuracy(const DistanceMatrix& m, std::span<const TripletJudgment> triplets) {
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < m.size(); ++i) index.emplace(m.ids()[i], i);
  auto at = [&](const std::string& id) {
    auto it = index.find(id);
    if (it == index.end()) throw DomainError("triplet id '" + id + "' is not in the matrix");
    return it->second;
  };
  static constexpr std::array<std::array<int, 2>, 3> kPairs = {{{0, 1}, {0, 2}, {1, 2}}};
  TripletAccuracy acc;
  for (const TripletJudgment& t : triplets) {
    if (t.chosen_pair < 0 || t.chosen_pair > 2) throw DomainError("triplet choice must be 0, 1 or 2");
    int best = 0;
    double best_d = std::numeric_limits<double>::infinity();
    for (int k = 0; k < 3; ++k) {
      const double d = m.at(at(t.ids[kPairs[k][0]]), at(t.ids[kPairs[k][1]]));
      if (d < best_d) {
        best_d = d;
        best = k;
      }
    }
    ++acc.total;
    if (best == t.chosen_pair) ++acc.correct;
  }
  if (acc.total > 0) acc.accuracy = static_cast<double>(acc.correct) / static_cast<double>(acc.total);
  return acc;
}

std::string_view period_name(Period p) {
  switch (p) {
    case Period::Before: return "before";
    case Period::During: return "during";
    case Period::After: return "after";
    case Period::Reflection: return "reflection";
  }
  return "?";
}

Period parse_period(std::string_view name) {
  for (Period p : kAllPeriods) {
    if (period_name(p) == name) return p;
  }
  throw ParseError("unknown period '" + std::string(name) + "'");
}

std::map<Period, double> period_positions(std::span<const PeriodTag> tags) {
  std::map<Period, std::pair<double, std::size_t>> acc;
  for (const PeriodTag& t : tags) {
    auto& [sum, n] = acc[t.period];
    sum += t.position;
    ++n;
  }
  std::map<Period, double> out;
  for (const auto& [p, v] : acc) out[p] = v.first / static_cast<double>(v.second);
  return out;
}

}  // namespace arcs
