#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "arcs/clustering.hpp"
#include "arcs/corpus.hpp"
#include "arcs/endpoint.hpp"
#include "arcs/eval.hpp"
#include "arcs/synth.hpp"

namespace arcs::cli {

struct ArtifactPaths {
  std::filesystem::path corpus = "corpus.jsonl";
  std::filesystem::path segments = "segments.jsonl";
  std::filesystem::path filtered = "filtered.jsonl";
  std::filesystem::path labels = "labels.jsonl";
  std::filesystem::path trajectories = "trajectories.jsonl";
  std::filesystem::path thesaurus_index = "index_thesaurus.jsonl";
  std::filesystem::path topic_index = "index_topics.jsonl";
  std::filesystem::path references = "references.jsonl";
  std::filesystem::path annotations = "annotations.jsonl";
  std::filesystem::path adjudicated = "adjudicated.jsonl";
  std::filesystem::path periods = "periods.jsonl";
  std::filesystem::path gold = "gold_labels.jsonl";
  std::filesystem::path cache = "label_cache.jsonl";
  std::filesystem::path reports = "reports";
  /// Mapping TSV files; empty selects the built-in tables.
  std::filesystem::path thesaurus_map;
  std::filesystem::path topic_map;
};

struct LabelerConfig {
  /// "oracle" or "endpoint".
  std::string kind = "oracle";
  unsigned threads = 1;
  EndpointConfig endpoint;
  EndpointLabelerOptions options;
};

struct AspectConfig {
  std::size_t window = 7;
  HdbscanParams hdbscan;
  std::size_t k = 2;
  Linkage linkage = Linkage::Average;
};

struct EvaluationConfig {
  std::vector<BaselineKind> baselines{kAllBaselines.begin(), kAllBaselines.end()};
  BaselineParams params;
  /// Reference sources: "thesaurus", "topics".
  std::vector<std::string> sources{"thesaurus", "topics"};
};

struct SynthConfig {
  std::size_t testimonies = 60;
  std::map<StructureClass, double> belief_mix;
  std::map<StructureClass, double> practice_mix;
  /// Testimony list left empty; filled from the mixes at run time.
  SynthSpec spec;
  IndexOptions index;
  AnnotationOptions annotations;
};

struct ReportConfig {
  /// Testimonies drawn as alignment plots, in trajectory order.
  std::size_t alignment_plots = 4;
};

struct PipelineConfig {
  std::uint64_t seed = 7;
  /// Relative artifact paths resolve against this directory.
  std::filesystem::path root = ".";
  ArtifactPaths paths;
  SegmentationOptions segmentation;
  LabelerConfig labeler;
  AspectConfig belief;
  AspectConfig practice;
  EvaluationConfig evaluation;
  SynthConfig synth;
  ReportConfig report;
  /// Canonical JSON of the effective configuration.
  std::string effective;

  std::filesystem::path resolve(const std::filesystem::path& p) const;
  const AspectConfig& aspect(Aspect a) const { return a == Aspect::Belief ? belief : practice; }
};

/// The built-in configuration document.
std::string default_config_json();

/// Merges `user_json` (may be empty) over the defaults, applies "dotted.path=value"
/// overrides and validates. Throws ConfigError on unknown keys or invalid values.
PipelineConfig load_config(const std::string& user_json, const std::vector<std::string>& overrides = {});

/// Reads the file at `path` and calls load_config; relative `root` resolves against its directory.
PipelineConfig load_config_file(const std::filesystem::path& path,
                                const std::vector<std::string>& overrides = {});

}  // namespace arcs::cli
