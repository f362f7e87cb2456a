#include "arcs/similarity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "arcs/csv.hpp"
#include "arcs/error.hpp"
#include "arcs/parallel.hpp"

namespace arcs {

double truncate_position(double position) { return std::floor(position * 100.0 + 1e-9) / 100.0; }

double point_distance(const TrajectoryPoint& p, const TrajectoryPoint& q) {
  const double dx = truncate_position(p.position) - truncate_position(q.position);
  const double dy = static_cast<double>(p.value - q.value);
  return std::sqrt(dx * dx + dy * dy);
}

namespace {

void check_inputs(const Trajectory& a, const Trajectory& b, std::size_t window) {
  if (a.empty() || b.empty()) throw DomainError("dtw: empty trajectory");
  if (window == 0) throw DomainError("dtw: window must be positive");
  const std::size_t diff = a.size() > b.size() ? a.size() - b.size() : b.size() - a.size();
  if (window < diff) {
    throw BandInfeasibleError("dtw: window " + std::to_string(window) +
                              " is narrower than the length difference " + std::to_string(diff));
  }
}

bool in_band(std::size_t i, std::size_t j, std::size_t window) {
  return (i > j ? i - j : j - i) <= window;
}

}  // namespace

DtwResult dtw_full(const Trajectory& a, const Trajectory& b, std::size_t window) {
  check_inputs(a, b, window);
  const std::size_t n = a.size();
  const std::size_t m = b.size();
  constexpr double kInf = std::numeric_limits<double>::infinity();
  struct Cell {
    double cost;
    std::size_t len;
  };
  auto better = [](const Cell& x, const Cell& y) {
    return x.cost < y.cost || (x.cost == y.cost && x.len < y.len);
  };
  std::vector<Cell> prev(m, {kInf, 0});
  std::vector<Cell> cur(m, {kInf, 0});
  for (std::size_t i = 0; i < n; ++i) {
    std::fill(cur.begin(), cur.end(), Cell{kInf, 0});
    const std::size_t jlo = i > window ? i - window : 0;
    const std::size_t jhi = std::min(m - 1, i + window);
    for (std::size_t j = jlo; j <= jhi; ++j) {
      const double d = point_distance(a.points[i], b.points[j]);
      if (i == 0 && j == 0) {
        cur[j] = {d, 1};
        continue;
      }
      Cell best{kInf, 0};
      if (i > 0 && j > 0 && better(prev[j - 1], best)) best = prev[j - 1];
      if (i > 0 && better(prev[j], best)) best = prev[j];
      if (j > 0 && better(cur[j - 1], best)) best = cur[j - 1];
      if (best.cost == kInf) continue;
      cur[j] = {best.cost + d, best.len + 1};
    }
    std::swap(prev, cur);
  }
  return {prev[m - 1].cost, prev[m - 1].len};
}

double dtw(const Trajectory& a, const Trajectory& b, std::size_t window) {
  return dtw_full(a, b, window).cost;
}

double dtw_brute(const Trajectory& a, const Trajectory& b, std::optional<std::size_t> window) {
  if (a.size() > kBruteMaxLength || b.size() > kBruteMaxLength) {
    throw DomainError("dtw_brute: lengths are limited to " + std::to_string(kBruteMaxLength));
  }
  const std::size_t w = window.value_or(std::max(a.size(), b.size()));
  check_inputs(a, b, w);
  const std::size_t n = a.size();
  const std::size_t m = b.size();
  double best = std::numeric_limits<double>::infinity();
  // Depth-first over every monotone path, summing point distances in path order.
  auto walk = [&](auto&& self, std::size_t i, std::size_t j, double acc) -> void {
    acc += point_distance(a.points[i], b.points[j]);
    if (i == n - 1 && j == m - 1) {
      best = std::min(best, acc);
      return;
    }
    if (i + 1 < n && j + 1 < m && in_band(i + 1, j + 1, w)) self(self, i + 1, j + 1, acc);
    if (i + 1 < n && in_band(i + 1, j, w)) self(self, i + 1, j, acc);
    if (j + 1 < m && in_band(i, j + 1, w)) self(self, i, j + 1, acc);
  };
  walk(walk, 0, 0, 0.0);
  return best;
}

DistanceMatrix::DistanceMatrix(std::vector<std::string> ids)
    : ids_(std::move(ids)),
      values_(ids_.size() * ids_.size(), 0.0),
      imputed_(ids_.size() * ids_.size(), 0) {}

void DistanceMatrix::set(std::size_t i, std::size_t j, double v) {
  values_[i * ids_.size() + j] = v;
  values_[j * ids_.size() + i] = v;
}

void DistanceMatrix::mark_imputed(std::size_t i, std::size_t j) {
  imputed_[i * ids_.size() + j] = 1;
  imputed_[j * ids_.size() + i] = 1;
}

std::size_t DistanceMatrix::imputed_pairs() const {
  std::size_t count = 0;
  for (std::size_t i = 0; i < size(); ++i) {
    for (std::size_t j = i + 1; j < size(); ++j) count += imputed(i, j) ? 1 : 0;
  }
  return count;
}

std::string DistanceMatrix::to_csv() const {
  std::vector<std::string> header{"id"};
  header.insert(header.end(), ids_.begin(), ids_.end());
  std::string out = csv_row(header);
  for (std::size_t i = 0; i < size(); ++i) {
    std::vector<std::string> row{ids_[i]};
    for (std::size_t j = 0; j < size(); ++j) row.push_back(format_number(at(i, j)));
    out += csv_row(row);
  }
  return out;
}

namespace {

std::vector<std::string> split_csv_line(std::string_view line, std::size_t lineno) {
  std::vector<std::string> out;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cur += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        cur += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      out.push_back(std::move(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (quoted) throw ParseError("unterminated quote", lineno);
  out.push_back(std::move(cur));
  return out;
}

}  // namespace

DistanceMatrix DistanceMatrix::from_csv(std::string_view csv) {
  std::vector<std::vector<std::string>> rows;
  std::size_t start = 0;
  std::size_t lineno = 0;
  while (start < csv.size()) {
    std::size_t nl = csv.find('\n', start);
    if (nl == std::string_view::npos) nl = csv.size();
    std::string_view line = csv.substr(start, nl - start);
    start = nl + 1;
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;
    rows.push_back(split_csv_line(line, lineno));
  }
  if (rows.empty()) throw ParseError("distance matrix CSV is empty");
  std::vector<std::string> ids(rows[0].begin() + 1, rows[0].end());
  if (rows.size() != ids.size() + 1) throw ParseError("distance matrix is not square");
  DistanceMatrix m(ids);
  for (std::size_t i = 0; i < ids.size(); ++i) {
    const auto& row = rows[i + 1];
    if (row.size() != ids.size() + 1 || row[0] != ids[i]) {
      throw ParseError("row does not match header", i + 2);
    }
    for (std::size_t j = 0; j < ids.size(); ++j) {
      try {
        std::size_t used = 0;
        const double v = std::stod(row[j + 1], &used);
        if (used != row[j + 1].size() || !(v >= 0.0)) throw std::invalid_argument("bad");
        m.values_[i * ids.size() + j] = v;
      } catch (const std::exception&) {
        throw ParseError("bad distance '" + row[j + 1] + "'", i + 2);
      }
    }
  }
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m.at(i, i) != 0.0) throw ParseError("nonzero diagonal for '" + ids[i] + "'");
    for (std::size_t j = i + 1; j < m.size(); ++j) {
      if (std::abs(m.at(i, j) - m.at(j, i)) > 1e-12) {
        throw ParseError("matrix is not symmetric at '" + ids[i] + "', '" + ids[j] + "'");
      }
    }
  }
  return m;
}

DistanceMatrix DistanceMatrix::permuted(std::span<const std::size_t> order) const {
  std::vector<std::string> ids;
  for (std::size_t k : order) ids.push_back(ids_.at(k));
  DistanceMatrix out(std::move(ids));
  for (std::size_t a = 0; a < order.size(); ++a) {
    for (std::size_t b = 0; b < order.size(); ++b) {
      out.values_[a * order.size() + b] = at(order[a], order[b]);
      out.imputed_[a * order.size() + b] = imputed_[order[a] * size() + order[b]];
    }
  }
  return out;
}

DistanceMatrices distance_matrices(std::span<const Trajectory> trajectories, std::size_t window,
                                   unsigned threads) {
  const std::size_t n = trajectories.size();
  if (n < 2) throw DomainError("distance matrix needs at least two trajectories");
  std::vector<std::string> ids;
  for (const Trajectory& t : trajectories) {
    if (t.empty()) throw DomainError("trajectory '" + t.testimony_id + "' is empty");
    ids.push_back(t.testimony_id);
  }
  if (window == 0) throw DomainError("dtw: window must be positive");
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
  }
  std::vector<std::optional<DtwResult>> results(pairs.size());
  detail::parallel_for(pairs.size(), threads, [&](std::size_t k) {
    const auto [i, j] = pairs[k];
    try {
      results[k] = dtw_full(trajectories[i], trajectories[j], window);
    } catch (const BandInfeasibleError&) {
      results[k] = std::nullopt;
    }
  });
  DistanceMatrices out{DistanceMatrix(ids), DistanceMatrix(ids), 0};
  double max_raw = -1.0;
  double max_norm = -1.0;
  for (const auto& r : results) {
    if (!r) continue;
    max_raw = std::max(max_raw, r->cost);
    max_norm = std::max(max_norm, r->normalized());
  }
  if (max_raw < 0.0) {
    throw BandInfeasibleError("no trajectory pair is feasible with window " +
                              std::to_string(window));
  }
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    const auto [i, j] = pairs[k];
    if (results[k]) {
      out.raw.set(i, j, results[k]->cost);
      out.normalized.set(i, j, results[k]->normalized());
    } else {
      out.raw.set(i, j, max_raw);
      out.normalized.set(i, j, max_norm);
      out.raw.mark_imputed(i, j);
      out.normalized.mark_imputed(i, j);
      ++out.infeasible_pairs;
    }
  }
  return out;
}

DistanceMatrix distance_matrix(std::span<const Trajectory> trajectories, std::size_t window,
                               unsigned threads) {
  return distance_matrices(trajectories, window, threads).raw;
}

}  // namespace arcs
