#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "arcs/agreement.hpp"
#include "arcs/corpus.hpp"
#include "arcs/labels.hpp"
#include "arcs/stats.hpp"
#include "arcs/taxonomy.hpp"
#include "arcs/trajectory.hpp"

namespace arcs {

struct TestimonySpec {
  std::string id;
  /// Planted arc per aspect; nullopt plants nothing for that aspect.
  std::optional<StructureClass> belief;
  std::optional<StructureClass> practice;
};

struct SynthSpec {
  std::vector<TestimonySpec> testimonies;
  /// Question-answer pairs per transcript, inclusive range.
  std::size_t pairs_min = 30;
  std::size_t pairs_max = 45;
  /// Planted valenced points per aspect: round(density * pairs), clamped.
  double density = 0.2;
  std::size_t min_points = 3;
  std::size_t max_points = 12;
  /// Overrides the density rule when set.
  std::optional<std::size_t> fixed_points;
  /// Extra Other points per aspect, as a fraction of the valenced count.
  double other_rate = 0.0;
  /// Fraction of planted points whose sentence comes from a different polarity (gold unchanged).
  double noise_rate = 0.0;
  /// Fraction of unplanted pairs that get a sentence with only weak identity cues.
  double distractor_rate = 0.0;
  /// Runs in an oscillating arc (at least 3).
  std::size_t oscillation_runs = 3;
  /// First sign of oscillating arcs; random per testimony when unset.
  std::optional<int> oscillation_start;
  /// Answer lengths and point placement resembling archive interviews: mostly
  /// 45-95 words per pair, a few very short pairs, long answers mid-interview and
  /// religious content concentrated near the start and end.
  bool paper_like = false;
};

/// Assigns `n` testimonies to arcs in proportion to the given weights
/// (largest remainder, then a seeded shuffle). Ids are T0001, T0002, ...
std::vector<TestimonySpec> plan_testimonies(std::size_t n,
                                            const std::map<StructureClass, double>& belief_mix,
                                            const std::map<StructureClass, double>& practice_mix,
                                            std::uint64_t seed);

/// Valence values realizing `arc` with `points` valenced points.
/// Throws DomainError when `points` is too small for the arc.
std::vector<int> arc_values(StructureClass arc, std::size_t points, std::size_t oscillation_runs,
                            int oscillation_start);

struct PlantedSpan {
  std::size_t start_word = 0;
  std::size_t end_word = 0;
  Aspect aspect = Aspect::Belief;
  Polarity polarity = Polarity::None;
  bool noisy = false;
};

struct PeriodSpan {
  std::size_t start_word = 0;
  std::size_t end_word = 0;
  Period period = Period::Before;
};

struct SynthTestimony {
  Transcript transcript;
  TestimonySpec spec;
  std::vector<int> belief_plan;
  std::vector<int> practice_plan;
  std::vector<PlantedSpan> planted;
  std::vector<PeriodSpan> periods;
};

struct SynthCorpus {
  std::vector<SynthTestimony> testimonies;
};

/// Throws DomainError for rates outside [0, 1] or an empty pair range.
SynthCorpus synthesize_corpus(const SynthSpec& spec, std::uint64_t seed);

/// Gold label per segment from the planted spans it contains; conflicting spans give Other.
std::vector<ValenceLabel> gold_labels(const SynthTestimony& testimony, std::span<const Segment> segments);

/// The period of each segment's first word, at the segment's position.
std::vector<PeriodTag> period_tags(const SynthTestimony& testimony, std::span<const Segment> segments);

struct IndexOptions {
  /// Chance that a gold-labeled segment gets an index entry.
  double reference_rate = 1.0;
  /// Entry position is the segment position plus uniform noise in [-jitter, jitter].
  double jitter = 0.02;
  /// Chance of an extra entry with a term no mapping knows.
  double unknown_rate = 0.0;
};

struct SynthIndex {
  std::vector<IndexEntry> thesaurus;
  std::vector<IndexEntry> topics;
};

SynthIndex synth_index(std::span<const Segment> segments, std::span<const ValenceLabel> gold,
                       const IndexOptions& options, std::uint64_t seed);

struct AnnotationOptions {
  /// Fraction of segments annotated by more than one person.
  double overlap_rate = 0.3;
  /// Among overlap items, the share seen by all three annotators.
  double triple_rate = 0.5;
  double clean_error = 0.05;
  double noisy_error = 0.4;
};

/// Content, practice and belief labels from annotators ann1 and ann2 (careful)
/// and ann3 (noisy). Items outside the overlap get one annotation from ann1.
std::vector<AnnotationRecord> synth_annotations(std::span<const Segment> segments,
                                                std::span<const ValenceLabel> gold,
                                                const AnnotationOptions& options, std::uint64_t seed);

}  // namespace arcs
