#include "arcs/clustering.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <set>

#include "arcs/csv.hpp"
#include "arcs/error.hpp"

namespace arcs {

std::string_view linkage_name(Linkage l) {
  switch (l) {
    case Linkage::Single: return "single";
    case Linkage::Complete: return "complete";
    case Linkage::Average: return "average";
  }
  return "?";
}

Linkage parse_linkage(std::string_view name) {
  if (name == "single") return Linkage::Single;
  if (name == "complete") return Linkage::Complete;
  if (name == "average") return Linkage::Average;
  throw ConfigError("unknown linkage '" + std::string(name) + "'");
}

namespace {

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  void unite(std::size_t a, std::size_t b) { parent_[find(a)] = find(b); }

 private:
  std::vector<std::size_t> parent_;
};

std::vector<int> first_appearance_labels(UnionFind& uf, std::size_t n) {
  std::map<std::size_t, int> ids;
  std::vector<int> labels(n);
  for (std::size_t i = 0; i < n; ++i) {
    auto [it, inserted] = ids.try_emplace(uf.find(i), static_cast<int>(ids.size()));
    labels[i] = it->second;
  }
  return labels;
}

std::vector<int> apply_merges(const Dendrogram& d, std::size_t count) {
  const std::size_t n = d.leaves;
  UnionFind uf(n);
  // Any leaf of a node stands in for the node.
  std::vector<std::size_t> rep(n + d.merges.size());
  std::iota(rep.begin(), rep.begin() + static_cast<std::ptrdiff_t>(n), 0);
  for (std::size_t k = 0; k < d.merges.size(); ++k) {
    const Merge& m = d.merges[k];
    rep[n + k] = rep[m.left];
    if (k < count) uf.unite(rep[m.left], rep[m.right]);
  }
  return first_appearance_labels(uf, n);
}

}  // namespace

Dendrogram build_dendrogram(const DistanceMatrix& m, Linkage linkage) {
  const std::size_t n = m.size();
  Dendrogram d{n, {}};
  if (n == 0) return d;
  std::vector<double> dist(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) dist[i * n + j] = m.at(i, j);
  }
  std::vector<std::size_t> node(n);
  std::iota(node.begin(), node.end(), 0);
  std::vector<std::size_t> size(n, 1);
  std::vector<char> active(n, 1);
  for (std::size_t step = 0; step + 1 < n; ++step) {
    std::size_t bi = 0;
    std::size_t bj = 0;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
      if (!active[i]) continue;
      for (std::size_t j = i + 1; j < n; ++j) {
        if (active[j] && dist[i * n + j] < best) {
          best = dist[i * n + j];
          bi = i;
          bj = j;
        }
      }
    }
    d.merges.push_back({std::min(node[bi], node[bj]), std::max(node[bi], node[bj]), best,
                        size[bi] + size[bj]});
    for (std::size_t x = 0; x < n; ++x) {
      if (!active[x] || x == bi || x == bj) continue;
      const double a = dist[bi * n + x];
      const double b = dist[bj * n + x];
      double v = 0.0;
      switch (linkage) {
        case Linkage::Single: v = std::min(a, b); break;
        case Linkage::Complete: v = std::max(a, b); break;
        case Linkage::Average: {
          // lo + (hi - lo) * w never rounds below lo, so heights stay monotone.
          const double lo = std::min(a, b);
          const double hi = std::max(a, b);
          const double w_hi = static_cast<double>(a >= b ? size[bi] : size[bj]) /
                              static_cast<double>(size[bi] + size[bj]);
          v = lo + (hi - lo) * w_hi;
          break;
        }
      }
      dist[bi * n + x] = v;
      dist[x * n + bi] = v;
    }
    node[bi] = n + step;
    size[bi] += size[bj];
    active[bj] = 0;
  }
  return d;
}

std::vector<int> cut_clusters(const Dendrogram& d, std::size_t k) {
  if (k == 0 || k > d.leaves) {
    throw DomainError("cannot cut " + std::to_string(d.leaves) + " leaves into " +
                      std::to_string(k) + " clusters");
  }
  return apply_merges(d, d.leaves - k);
}

std::vector<int> cut_height(const Dendrogram& d, double h) {
  std::size_t count = 0;
  while (count < d.merges.size() && d.merges[count].height <= h) ++count;
  return apply_merges(d, count);
}

AgglomerativeResult agglomerative(const DistanceMatrix& m, Linkage linkage, ClusterCut cut) {
  if (cut.k.has_value() == cut.height.has_value()) {
    throw DomainError("cut needs exactly one of k or height");
  }
  if (cut.k && *cut.k > m.size()) {
    throw DomainError("k = " + std::to_string(*cut.k) + " exceeds " + std::to_string(m.size()) +
                      " items");
  }
  AgglomerativeResult r;
  r.dendrogram = build_dendrogram(m, linkage);
  r.labels = cut.k ? cut_clusters(r.dendrogram, *cut.k) : cut_height(r.dendrogram, *cut.height);
  return r;
}

void HdbscanParams::validate() const {
  if (min_cluster_size < 2) throw DomainError("min_cluster_size must be >= 2");
  if (min_samples < 1) throw DomainError("min_samples must be >= 1");
  if (!(alpha > 0.0)) throw DomainError("alpha must be > 0");
  if (!(cluster_selection_epsilon >= 0.0)) {
    throw DomainError("cluster_selection_epsilon must be >= 0");
  }
}

std::size_t HdbscanResult::noise() const {
  return static_cast<std::size_t>(std::count(labels.begin(), labels.end(), kNoise));
}

namespace {

double scaled(const DistanceMatrix& m, std::size_t i, std::size_t j, double alpha) {
  return alpha == 1.0 ? m.at(i, j) : m.at(i, j) / alpha;
}

}  // namespace

std::vector<double> core_distances(const DistanceMatrix& m, std::size_t min_samples, double alpha) {
  const std::size_t n = m.size();
  std::vector<double> core(n, 0.0);
  if (n == 0) return core;
  const std::size_t k = std::min(min_samples, n - 1);
  std::vector<double> row(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) row[j] = scaled(m, i, j, alpha);
    std::nth_element(row.begin(), row.begin() + static_cast<std::ptrdiff_t>(k), row.end());
    core[i] = row[k];
  }
  return core;
}

std::vector<MstEdge> mutual_reachability_mst(const DistanceMatrix& m, std::size_t min_samples,
                                             double alpha) {
  const std::size_t n = m.size();
  std::vector<MstEdge> edges;
  if (n < 2) return edges;
  const std::vector<double> core = core_distances(m, min_samples, alpha);
  auto reach = [&](std::size_t i, std::size_t j) {
    return std::max({core[i], core[j], scaled(m, i, j, alpha)});
  };
  constexpr double kInf = std::numeric_limits<double>::infinity();
  std::vector<char> in_tree(n, 0);
  std::vector<double> best(n, kInf);
  std::vector<std::size_t> from(n, 0);
  std::size_t current = 0;
  in_tree[0] = 1;
  for (std::size_t step = 1; step < n; ++step) {
    std::size_t next = n;
    for (std::size_t j = 0; j < n; ++j) {
      if (in_tree[j]) continue;
      const double r = reach(current, j);
      if (r < best[j]) {
        best[j] = r;
        from[j] = current;
      }
      if (next == n || best[j] < best[next]) next = j;
    }
    edges.push_back({from[next], next, best[next]});
    in_tree[next] = 1;
    current = next;
  }
  std::stable_sort(edges.begin(), edges.end(),
                   [](const MstEdge& a, const MstEdge& b) { return a.weight < b.weight; });
  return edges;
}

namespace {

struct CondensedRow {
  std::size_t parent;
  std::size_t child;
  double lambda;
  std::size_t child_size;
};

double to_lambda(double dist) {
  return dist > 0.0 ? 1.0 / dist : std::numeric_limits<double>::infinity();
}

std::vector<CondensedRow> condense(const std::vector<Merge>& merges, std::size_t n,
                                   std::size_t min_cluster_size) {
  const std::size_t root = 2 * n - 2;
  auto left = [&](std::size_t node) { return merges[node - n].left; };
  auto right = [&](std::size_t node) { return merges[node - n].right; };
  auto count = [&](std::size_t node) { return node < n ? std::size_t{1} : merges[node - n].size; };
  auto subtree = [&](std::size_t top) {
    std::vector<std::size_t> out{top};
    for (std::size_t k = 0; k < out.size(); ++k) {
      if (out[k] >= n) {
        out.push_back(left(out[k]));
        out.push_back(right(out[k]));
      }
    }
    return out;
  };

  std::vector<std::size_t> relabel(root + 1, 0);
  std::vector<char> ignore(root + 1, 0);
  std::size_t next_label = n + 1;
  relabel[root] = n;
  std::vector<CondensedRow> rows;
  for (std::size_t node : subtree(root)) {
    if (ignore[node] || node < n) continue;
    const std::size_t l = left(node);
    const std::size_t r = right(node);
    const double lambda = to_lambda(merges[node - n].height);
    const std::size_t lc = count(l);
    const std::size_t rc = count(r);
    auto fall_out = [&](std::size_t top) {
      for (std::size_t sub : subtree(top)) {
        if (sub < n) rows.push_back({relabel[node], sub, lambda, 1});
        ignore[sub] = 1;
      }
    };
    if (lc >= min_cluster_size && rc >= min_cluster_size) {
      relabel[l] = next_label++;
      rows.push_back({relabel[node], relabel[l], lambda, lc});
      relabel[r] = next_label++;
      rows.push_back({relabel[node], relabel[r], lambda, rc});
    } else if (lc < min_cluster_size && rc < min_cluster_size) {
      fall_out(l);
      fall_out(r);
    } else if (lc < min_cluster_size) {
      relabel[r] = relabel[node];
      fall_out(l);
    } else {
      relabel[l] = relabel[node];
      fall_out(r);
    }
  }
  return rows;
}

}  // namespace

HdbscanResult hdbscan(const DistanceMatrix& m, const HdbscanParams& params) {
  params.validate();
  const std::size_t n = m.size();
  HdbscanResult result;
  result.labels.assign(n, HdbscanResult::kNoise);
  if (n < params.min_cluster_size || n < 2) {
    result.warnings.push_back(std::to_string(n) + " items is fewer than min_cluster_size " +
                              std::to_string(params.min_cluster_size) + "; all labeled noise");
    return result;
  }
  if (params.min_samples >= n) {
    result.warnings.push_back("min_samples clamped to " + std::to_string(n - 1));
  }

  // Single-linkage tree from the sorted spanning tree.
  const std::vector<MstEdge> mst = mutual_reachability_mst(m, params.min_samples, params.alpha);
  std::vector<Merge> merges;
  {
    UnionFind uf(2 * n - 1);
    std::vector<std::size_t> size(2 * n - 1, 1);
    for (std::size_t k = 0; k < mst.size(); ++k) {
      const std::size_t a = uf.find(mst[k].a);
      const std::size_t b = uf.find(mst[k].b);
      const std::size_t node = n + k;
      size[node] = size[a] + size[b];
      merges.push_back({a, b, mst[k].weight, size[node]});
      uf.unite(a, node);
      uf.unite(b, node);
    }
  }

  const std::vector<CondensedRow> tree = condense(merges, n, params.min_cluster_size);
  const std::size_t root = n;
  std::size_t max_cluster = root;
  for (const auto& row : tree) max_cluster = std::max(max_cluster, row.parent);
  for (const auto& row : tree) {
    if (row.child_size > 1) max_cluster = std::max(max_cluster, row.child);
  }
  const std::size_t clusters = max_cluster + 1;

  std::vector<double> birth(clusters, 0.0);
  std::vector<std::size_t> parent_of(clusters, root);
  for (const auto& row : tree) {
    if (row.child_size > 1) birth[row.child] = row.lambda;
    parent_of[row.child] = row.parent;
  }
  std::vector<double> stability(clusters, 0.0);
  for (const auto& row : tree) {
    const double span = row.lambda - birth[row.parent];
    // inf - inf arises from duplicate points; such rows add nothing.
    if (!std::isnan(span)) stability[row.parent] += span * static_cast<double>(row.child_size);
  }

  std::map<std::size_t, std::vector<std::size_t>> children;
  for (const auto& row : tree) {
    if (row.child_size > 1) children[row.parent].push_back(row.child);
  }
  auto cluster_subtree = [&](std::size_t top) {
    std::vector<std::size_t> out{top};
    for (std::size_t k = 0; k < out.size(); ++k) {
      auto it = children.find(out[k]);
      if (it != children.end()) out.insert(out.end(), it->second.begin(), it->second.end());
    }
    return out;
  };

  std::vector<double> eom = stability;
  std::vector<char> selected(clusters, 0);
  for (std::size_t c = root + 1; c < clusters; ++c) selected[c] = 1;
  for (std::size_t c = clusters; c-- > root + 1;) {
    double subtree_stability = 0.0;
    if (auto it = children.find(c); it != children.end()) {
      for (std::size_t child : it->second) subtree_stability += eom[child];
    }
    if (subtree_stability > eom[c]) {
      selected[c] = 0;
      eom[c] = subtree_stability;
    } else {
      for (std::size_t sub : cluster_subtree(c)) {
        if (sub != c) selected[sub] = 0;
      }
    }
  }

  if (params.cluster_selection_epsilon != 0.0 && !children.empty()) {
    const double eps_cut = params.cluster_selection_epsilon;
    auto birth_eps = [&](std::size_t c) { return 1.0 / birth[c]; };
    std::set<std::size_t> chosen;
    std::set<std::size_t> processed;
    for (std::size_t leaf = root + 1; leaf < clusters; ++leaf) {
      if (!selected[leaf]) continue;
      if (birth_eps(leaf) < eps_cut) {
        if (processed.contains(leaf)) continue;
        std::size_t node = leaf;
        while (true) {
          const std::size_t parent = parent_of[node];
          if (parent == root) break;
          if (birth_eps(parent) > eps_cut) {
            node = parent;
            break;
          }
          node = parent;
        }
        chosen.insert(node);
        for (std::size_t sub : cluster_subtree(node)) {
          if (sub != node) processed.insert(sub);
        }
      } else {
        chosen.insert(leaf);
      }
    }
    for (std::size_t c = 0; c < clusters; ++c) selected[c] = chosen.contains(c) ? 1 : 0;
  }

  std::map<std::size_t, int> label_of;
  for (std::size_t c = root + 1; c < clusters; ++c) {
    if (!selected[c]) continue;
    label_of[c] = static_cast<int>(result.stability.size());
    result.stability.push_back(stability[c]);
  }
  std::vector<std::size_t> point_parent(n, root);
  for (const auto& row : tree) {
    if (row.child_size == 1 && row.child < n) point_parent[row.child] = row.parent;
  }
  for (std::size_t p = 0; p < n; ++p) {
    std::size_t c = point_parent[p];
    while (c != root && !selected[c]) c = parent_of[c];
    if (c != root) result.labels[p] = label_of.at(c);
  }
  return result;
}

std::string assignments_csv(const std::vector<std::string>& ids, const std::vector<int>& labels,
                            const std::vector<double>& stability) {
  std::string out = "id,cluster,is_noise,stability\n";
  for (std::size_t i = 0; i < ids.size(); ++i) {
    const int l = labels.at(i);
    const bool noise = l < 0;
    std::string stab;
    if (!noise && static_cast<std::size_t>(l) < stability.size()) {
      stab = format_number(stability[static_cast<std::size_t>(l)]);
    }
    out += csv_row({ids[i], std::to_string(l), noise ? "true" : "false", stab});
  }
  return out;
}

}  // namespace arcs
