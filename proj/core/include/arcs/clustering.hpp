#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "arcs/similarity.hpp"

namespace arcs {

enum class Linkage { Single, Complete, Average };

std::string_view linkage_name(Linkage l);
Linkage parse_linkage(std::string_view name);

/// Leaves are nodes 0..n-1; merge k creates node n + k.
struct Merge {
  std::size_t left = 0;
  std::size_t right = 0;
  double height = 0.0;
  std::size_t size = 0;
};

struct Dendrogram {
  std::size_t leaves = 0;
  std::vector<Merge> merges;
};

/// Lance-Williams agglomeration. Ties go to the lowest index pair.
Dendrogram build_dendrogram(const DistanceMatrix& m, Linkage linkage = Linkage::Average);

/// Flat labels numbered in order of first appearance. Throws DomainError for k == 0 or k > n.
std::vector<int> cut_clusters(const Dendrogram& d, std::size_t k);
/// Applies every merge with height <= h.
std::vector<int> cut_height(const Dendrogram& d, double h);

struct ClusterCut {
  std::optional<std::size_t> k;
  std::optional<double> height;

  static ClusterCut clusters(std::size_t k) { return {k, std::nullopt}; }
  static ClusterCut at_height(double h) { return {std::nullopt, h}; }
};

struct AgglomerativeResult {
  Dendrogram dendrogram;
  std::vector<int> labels;
};

AgglomerativeResult agglomerative(const DistanceMatrix& m, Linkage linkage, ClusterCut cut);

struct HdbscanParams {
  std::size_t min_cluster_size = 30;
  std::size_t min_samples = 1;
  double cluster_selection_epsilon = 1.0;
  double alpha = 1.0;

  /// Throws DomainError when a field is out of range.
  void validate() const;
};

struct HdbscanResult {
  static constexpr int kNoise = -1;

  std::vector<int> labels;
  /// Stability of each selected cluster, indexed by label.
  std::vector<double> stability;
  std::vector<std::string> warnings;

  std::size_t clusters() const { return stability.size(); }
  std::size_t noise() const;
};

struct MstEdge {
  std::size_t a = 0;
  std::size_t b = 0;
  double weight = 0.0;
};

std::vector<double> core_distances(const DistanceMatrix& m, std::size_t min_samples, double alpha);
/// Prim's tree over mutual-reachability distances, edges sorted by weight.
std::vector<MstEdge> mutual_reachability_mst(const DistanceMatrix& m, std::size_t min_samples,
                                             double alpha);

/// Excess-of-mass selection on the condensed tree; the root is never selected.
HdbscanResult hdbscan(const DistanceMatrix& m, const HdbscanParams& params = {});

/// "id,cluster,is_noise,stability".
std::string assignments_csv(const std::vector<std::string>& ids, const std::vector<int>& labels,
                            const std::vector<double>& stability = {});

}  // namespace arcs
