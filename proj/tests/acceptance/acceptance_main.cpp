// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "arcs/agreement.hpp"
#include "arcs/clustering.hpp"
#include "arcs/corpus.hpp"
#include "arcs/error.hpp"
#include "arcs/eval.hpp"
#include "arcs/io.hpp"
#include "arcs/keyword_oracle.hpp"
#include "arcs/labeling.hpp"
#include "arcs/metrics.hpp"
#include "arcs/similarity.hpp"
#include "arcs/stats.hpp"
#include "arcs/synth.hpp"
#include "arcs/taxonomy.hpp"
#include "commands.hpp"
#include "config.hpp"
#include "test_support.hpp"

namespace {

using namespace arcs;
namespace fs = std::filesystem;

struct Outcome {
  bool pass = true;
  std::string detail;

  void check(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      if (!detail.empty()) detail += "; ";
      detail += "failed: " + what;
    }
  }
  void note(const std::string& what) {
    if (!detail.empty()) detail += "; ";
    detail += what;
  }
};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::vector<double> random_positions(std::mt19937_64& rng, std::size_t max_n) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> v(rng() % (max_n + 1));
  for (double& x : v) x = u(rng);
  return v;
}

double brute_min_sum(const std::vector<double>& t, const std::vector<double>& r) {
  if (r.empty()) return 0.0;
  if (t.empty()) return static_cast<double>(r.size());
  double total = 0.0;
  for (double x : r) {
    double best = std::numeric_limits<double>::infinity();
    for (double y : t) best = std::min(best, std::abs(y - x));
    total += best;
  }
  return total;
}

Outcome formula_oracle() {
  Outcome o;
  const auto start = std::chrono::steady_clock::now();
  std::mt19937_64 rng(101);
  std::size_t mismatches = 0;
  for (int i = 0; i < 1000; ++i) {
    const auto t = random_positions(rng, 20);
    const auto r = random_positions(rng, 20);
    if (min_sum_dist(t, r) != brute_min_sum(t, r)) ++mismatches;
  }
  o.check(mismatches == 0, std::to_string(mismatches) + " of 1000 pairs differ");
  o.check(min_sum_dist(std::vector<double>{}, std::vector<double>{0.1, 0.2, 0.3}) == 3.0, "T empty gives |R|");
  o.check(min_sum_dist(std::vector<double>{0.4}, std::vector<double>{}) == 0.0, "R empty gives 0");
  const double secs = seconds_since(start);
  o.check(secs < 1.0, "runtime " + num(secs) + " s");
  o.note("1000 pairs, " + num(secs) + " s");
  return o;
}

Outcome dtw_oracle() {
  Outcome o;
  const auto start = std::chrono::steady_clock::now();
  std::mt19937_64 rng(202);
  std::size_t mismatches = 0;
  for (int i = 0; i < 500; ++i) {
    const Trajectory a = testing::random_trajectory(rng, 1, 6);
    const Trajectory b = testing::random_trajectory(rng, 1, 6);
    const std::size_t full = std::max(a.size(), b.size());
    if (dtw(a, b, full) != dtw_brute(a, b)) ++mismatches;
  }
  std::size_t asym = 0, nonzero_self = 0;
  for (int i = 0; i < 1000; ++i) {
    const Trajectory a = testing::random_trajectory(rng, 1, 10);
    const Trajectory b = testing::random_trajectory(rng, 1, 10);
    const std::size_t w = std::max(a.size(), b.size());
    if (dtw(a, b, w) != dtw(b, a, w)) ++asym;
    if (dtw(a, a, 1) != 0.0) ++nonzero_self;
  }
  o.check(mismatches == 0, std::to_string(mismatches) + " brute mismatches");
  o.check(asym == 0, std::to_string(asym) + " asymmetric pairs");
  o.check(nonzero_self == 0, std::to_string(nonzero_self) + " nonzero self distances");
  const double secs = seconds_since(start);
  o.check(secs < 5.0, "runtime " + num(secs) + " s");
  o.note("500 brute pairs, 1000 symmetry pairs, " + num(secs) + " s");
  return o;
}

Trajectory span_trajectory(double lo, double hi) {
  Trajectory t;
  t.points = {{lo, 1}, {hi, 1}};
  return t;
}

Outcome taxonomy_cases() {
  Outcome o;
  const ShrunkSeries worked = filter_shrink(std::vector<int>{-1, 1, 0, 1, 1});
  o.check(worked.values == std::vector<int>{-1, 1}, "worked example shrinks to [-1,1]");
  o.check(classify_structure(worked) == StructureClass::Ascending, "worked example is Ascending");
  const std::vector<std::pair<std::vector<int>, StructureClass>> table{
      {{-1}, StructureClass::ConstantNegative},
      {{1}, StructureClass::ConstantPositive},
      {{-1, 1}, StructureClass::Ascending},
      {{1, -1}, StructureClass::Descending},
      {{1, -1, 1, -1}, StructureClass::Oscillating},
  };
  for (const auto& [values, expected] : table) {
    o.check(classify_structure(values) == expected, "case table row " + std::string(structure_name(expected)));
  }
  o.check(coverage(span_trajectory(0.1, 0.43)) == Coverage::Low, "span 0.33 is Low");
  o.check(coverage_of_span(0.33) == Coverage::Low, "0.33 is Low");
  o.check(coverage_of_span(0.331) == Coverage::Medium, "just above 0.33 is Medium");
  o.check(coverage_of_span(0.67) == Coverage::Medium, "0.67 is Medium");
  o.check(coverage_of_span(0.671) == Coverage::High, "just above 0.67 is High");
  o.check(coverage(span_trajectory(0.05, 0.95)) == Coverage::High, "span 0.9 is High");

  std::mt19937_64 rng(303);
  std::size_t violations = 0;
  for (int i = 0; i < 10000; ++i) {
    std::vector<int> v(rng() % 16);
    for (int& x : v) x = static_cast<int>(rng() % 3) - 1;
    const StructureClass c = classify_structure(filter_shrink(v));
    std::vector<int> zeros = v;
    zeros.insert(zeros.begin() + static_cast<long>(rng() % (zeros.size() + 1)), 0);
    if (classify_structure(filter_shrink(zeros)) != c) ++violations;
    if (!v.empty()) {
      std::vector<int> dup = v;
      const std::size_t k = rng() % dup.size();
      dup.insert(dup.begin() + static_cast<long>(k), dup[k]);
      if (classify_structure(filter_shrink(dup)) != c) ++violations;
    }
  }
  o.check(violations == 0, std::to_string(violations) + " invariance violations");
  o.note("10000 random series");
  return o;
}

std::vector<Trajectory> gold_trajectories(const SynthCorpus& corpus, Aspect aspect) {
  std::vector<Trajectory> out;
  for (const SynthTestimony& t : corpus.testimonies) {
    const std::vector<Segment> segs = segment(t.transcript).segments;
    const std::vector<ValenceLabel> gold = gold_labels(t, segs);
    std::vector<LabeledSegment> ls;
    for (std::size_t i = 0; i < segs.size(); ++i) ls.push_back({segs[i], gold[i]});
    out.push_back(build_trajectory(ls, aspect));
  }
  return out;
}

SynthSpec belief_spec(const std::vector<std::pair<StructureClass, std::size_t>>& groups) {
  SynthSpec spec;
  std::size_t id = 0;
  for (const auto& [cls, n] : groups) {
    for (std::size_t i = 0; i < n; ++i) {
      char buf[16];
      std::snprintf(buf, sizeof buf, "T%04zu", ++id);
      spec.testimonies.push_back({buf, cls, std::nullopt});
    }
  }
  return spec;
}

double purity(const std::vector<int>& labels, const std::vector<int>& truth) {
  std::map<int, std::map<int, std::size_t>> by_cluster;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] >= 0) ++by_cluster[labels[i]][truth[i]];
  }
  std::size_t majority = 0, clustered = 0;
  for (const auto& [c, counts] : by_cluster) {
    std::size_t best = 0;
    for (const auto& [t, n] : counts) {
      best = std::max(best, n);
      clustered += n;
    }
    majority += best;
  }
  return clustered == 0 ? 0.0 : static_cast<double>(majority) / static_cast<double>(clustered);
}

Outcome clustering_recovery() {
  Outcome o;
  const auto start = std::chrono::steady_clock::now();
  SynthSpec spec = belief_spec({{StructureClass::ConstantPositive, 30}, {StructureClass::Oscillating, 30}});
  spec.fixed_points = 6;
  spec.oscillation_runs = 3;
  spec.oscillation_start = 1;
  spec.other_rate = 0.0;
  spec.noise_rate = 0.0;
  const SynthCorpus corpus = synthesize_corpus(spec, 404);
  const std::vector<Trajectory> ts = gold_trajectories(corpus, Aspect::Belief);
  std::vector<int> truth;
  for (std::size_t i = 0; i < ts.size(); ++i) truth.push_back(i < 30 ? 0 : 1);
  const DistanceMatrix m = distance_matrix(ts, 7);
  const HdbscanResult h = hdbscan(m, {30, 1, 1.0, 1.0});
  const double noise = static_cast<double>(h.noise()) / static_cast<double>(ts.size());
  const double hp = purity(h.labels, truth);
  o.check(h.clusters() == 2, "HDBSCAN found " + std::to_string(h.clusters()) + " clusters");
  o.check(hp >= 0.95, "HDBSCAN purity " + num(hp));
  o.check(noise <= 0.05, "HDBSCAN noise " + num(noise));
  const AgglomerativeResult a = agglomerative(m, Linkage::Average, ClusterCut::clusters(2));
  const double ap = purity(a.labels, truth);
  o.check(ap == 1.0, "agglomerative purity " + num(ap));
  const double secs = seconds_since(start);
  o.check(secs < 10.0, "runtime " + num(secs) + " s");
  o.note("clusters=" + std::to_string(h.clusters()) + " purity=" + num(hp) + " noise=" + num(noise) +
         " agglomerative purity=" + num(ap) + ", " + num(secs) + " s");
  return o;
}

Outcome structure_vs_distance() {
  Outcome o;
  SynthSpec spec = belief_spec({{StructureClass::ConstantPositive, 30},
                                {StructureClass::Descending, 30},
                                {StructureClass::Oscillating, 30}});
  spec.other_rate = 0.25;
  const SynthCorpus corpus = synthesize_corpus(spec, 505);
  const std::vector<Trajectory> ts = gold_trajectories(corpus, Aspect::Belief);
  std::map<std::string, StructureClass> structures;
  for (const Trajectory& t : ts) structures[t.testimony_id] = classify_trajectory(t);
  const StructureDtwStats s = structure_dtw_stats(distance_matrix(ts, 7), structures);
  o.check(s.same.mean < s.different.mean, "same-structure mean not below different-structure mean");
  o.check(s.welch.p < 0.01, "Welch p " + num(s.welch.p));
  o.note("n=90 same=" + num(s.same.mean) + " different=" + num(s.different.mean) + " t=" + num(s.welch.t) +
         " p=" + num(s.welch.p));
  return o;
}

/// Filter then label with the oracle, as the pipeline does.
std::vector<Trajectory> predicted_trajectories(const SynthCorpus& corpus, Aspect aspect) {
  KeywordOracle oracle;
  std::vector<Trajectory> out;
  for (const SynthTestimony& t : corpus.testimonies) {
    const std::vector<Segment> segs = segment(t.transcript).segments;
    std::vector<LabeledSegment> ls;
    for (const Segment& s : segs) {
      ValenceLabel l;
      if (oracle.contains_religious_content(s)) l = oracle.label(s);
      ls.push_back({s, l});
    }
    out.push_back(build_trajectory(ls, aspect));
  }
  return out;
}

SynthSpec mixed_spec(std::size_t n, std::uint64_t seed) {
  const std::map<StructureClass, double> belief{
      {StructureClass::ConstantPositive, 4}, {StructureClass::Oscillating, 2}, {StructureClass::Descending, 1.5},
      {StructureClass::Ascending, 1},        {StructureClass::ConstantNegative, 1}, {StructureClass::NeutralOnly, 1}};
  const std::map<StructureClass, double> practice{
      {StructureClass::ConstantPositive, 3}, {StructureClass::Oscillating, 2.5}, {StructureClass::Descending, 2},
      {StructureClass::Ascending, 1},        {StructureClass::ConstantNegative, 1},  {StructureClass::NeutralOnly, 1}};
  SynthSpec spec;
  spec.testimonies = plan_testimonies(n, belief, practice, seed);
  spec.paper_like = true;
  spec.other_rate = 0.25;
  spec.distractor_rate = 0.1;
  return spec;
}

Outcome baseline_dominance() {
  Outcome o;
  double worst_margin = std::numeric_limits<double>::infinity();
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const SynthCorpus corpus = synthesize_corpus(mixed_spec(60, seed), seed);
    std::vector<Trajectory> predicted = predicted_trajectories(corpus, Aspect::Belief);
    const std::vector<Trajectory> practice = predicted_trajectories(corpus, Aspect::Practice);
    predicted.insert(predicted.end(), practice.begin(), practice.end());

    std::vector<IndexEntry> index;
    for (const SynthTestimony& t : corpus.testimonies) {
      const std::vector<Segment> segs = segment(t.transcript).segments;
      const SynthIndex idx = synth_index(segs, gold_labels(t, segs), {1.0, 0.02, 0.0},
                                         derive_seed(seed, "index", t.spec.id, ""));
      index.insert(index.end(), idx.thesaurus.begin(), idx.thesaurus.end());
    }
    std::vector<ReferenceTrajectory> refs;
    for (ReferenceClass c : kReferenceClasses) {
      const ReferenceExtraction x = extract_reference(index, LabelMapping::thesaurus(), c);
      refs.insert(refs.end(), x.references.begin(), x.references.end());
    }
    EvalOptions opts;
    opts.seed = seed;
    const EvalReport report = evaluate_against_references(predicted, refs, opts);
    for (const ClassEvaluation& col : report.columns) {
      const std::string cls(reference_class_name(col.class_id));
      o.check(col.reference_paths > 0, "seed " + std::to_string(seed) + " class " + cls + " has no references");
      for (const auto& [kind, value] : col.baselines) {
        worst_margin = std::min(worst_margin, value - col.predicted);
        o.check(col.predicted < value, "seed " + std::to_string(seed) + " class " + cls + ": predicted " +
                                           num(col.predicted) + " >= " + std::string(baseline_id(kind)) + " " +
                                           num(value));
      }
    }
  }
  o.note("10 seeds x 6 classes x 6 baselines, smallest margin " + num(worst_margin));
  return o;
}

std::vector<AnnotationRecord> grid_records(const std::vector<std::vector<std::string>>& grid) {
  std::vector<AnnotationRecord> out;
  for (std::size_t c = 0; c < grid.size(); ++c) {
    for (std::size_t i = 0; i < grid[c].size(); ++i) {
      out.push_back({"i" + std::to_string(i), "a" + std::to_string(c), AnnotationTask::Content, grid[c][i]});
    }
  }
  return out;
}

Outcome agreement() {
  Outcome o;
  const double unanimous =
      krippendorff_alpha(grid_records({{"true", "false", "true", "false"}, {"true", "false", "true", "false"}}));
  o.check(unanimous == 1.0, "unanimous alpha " + num(unanimous));
  const double hand =
      krippendorff_alpha(grid_records({{"true", "true", "false", "false"}, {"true", "true", "true", "false"}}));
  o.check(std::abs(hand - 0.5333333333333333) <= 1e-9, "four-item alpha " + num(hand));
  std::mt19937_64 rng(707);
  std::vector<std::vector<std::string>> grid(2, std::vector<std::string>(10000));
  for (auto& row : grid)
    for (auto& cell : row) cell = rng() % 2 ? "true" : "false";
  const double random_alpha = krippendorff_alpha(grid_records(grid));
  o.check(std::abs(random_alpha) < 0.05, "random alpha " + num(random_alpha));
  using S = std::vector<std::string>;
  o.check(adjudicate(S{"A", "A"}).gold == std::optional<std::string>("A"), "[A,A] -> A");
  o.check(adjudicate(S{"A", "B"}).discarded(), "[A,B] -> discarded");
  o.check(adjudicate(S{"A", "A", "B"}).gold == std::optional<std::string>("A"), "[A,A,B] -> A");
  o.note("hand=" + num(hand) + " random=" + num(random_alpha));
  return o;
}

Outcome welch() {
  Outcome o;
  const WelchResult r = welch_t_test(std::vector<double>{1, 2, 3}, std::vector<double>{2, 3, 4});
  o.check(std::abs(r.t - -1.2247) <= 1e-4, "t " + num(r.t));
  o.check(std::abs(r.df - 4.0) <= 1e-9, "df " + num(r.df));
  o.check(std::abs(r.p - 0.2888) <= 1e-3, "p " + num(r.p));
  const WelchResult same = welch_t_test(std::vector<double>{1, 2, 3}, std::vector<double>{1, 2, 3});
  o.check(same.t == 0.0, "identical t " + num(same.t));
  o.check(std::abs(same.p - 1.0) <= 1e-12, "identical p " + num(same.p));
  o.note("t=" + num(r.t) + " df=" + num(r.df) + " p=" + num(r.p));
  return o;
}

Outcome segmentation() {
  Outcome o;
  SynthSpec spec = mixed_spec(50, 909);
  const SynthCorpus corpus = synthesize_corpus(spec, 909);
  std::size_t total = 0, in_band = 0, oversized = 0, bad_transcripts = 0, broken = 0;
  for (const SynthTestimony& t : corpus.testimonies) {
    const SegmentationResult r = segment(t.transcript);
    const std::vector<std::string> words = split_words(transcript_text(t.transcript));
    std::size_t small = 0, cursor = 0;
    std::vector<std::string> rebuilt;
    for (const Segment& s : r.segments) {
      ++total;
      if (s.n_words > 100) ++oversized;
      if (s.n_words < 10) ++small;
      if (s.n_words >= 50 && s.n_words <= 100) ++in_band;
      if (s.start_word != cursor || s.end_word - s.start_word != s.n_words) ++broken;
      cursor = s.end_word;
      const auto sw = split_words(s.text);
      if (sw.size() != s.n_words) ++broken;
      rebuilt.insert(rebuilt.end(), sw.begin(), sw.end());
    }
    if (cursor != words.size() || rebuilt != words) ++broken;
    if (small > 1) ++bad_transcripts;
  }
  const double band = static_cast<double>(in_band) / static_cast<double>(total);
  o.check(oversized == 0, std::to_string(oversized) + " segments over 100 words");
  o.check(bad_transcripts == 0, std::to_string(bad_transcripts) + " transcripts with several short segments");
  o.check(broken == 0, std::to_string(broken) + " coverage or reconstruction breaks");
  o.check(band >= 0.6, "50-100 word share " + num(band));
  o.note(std::to_string(total) + " segments, 50-100 word share " + num(band));
  return o;
}

Outcome overprediction() {
  Outcome o;
  const SynthCorpus corpus = synthesize_corpus(mixed_spec(60, 1010), 1010);
  std::vector<Segment> segs;
  for (const SynthTestimony& t : corpus.testimonies) {
    const auto s = segment(t.transcript).segments;
    segs.insert(segs.end(), s.begin(), s.end());
  }
  KeywordOracle oracle;
  const OverpredictionReport r = overprediction_analysis(segs, oracle, oracle);
  std::string ratios;
  for (const OverpredictionRow& row : r.rows) {
    const std::string name(label_name(row.aspect, row.label));
    o.check(row.ratio >= 1.0, name + " ratio " + num(row.ratio));
    ratios += (ratios.empty() ? "" : " ") + name + "=" + num(row.ratio);
  }
  o.note(ratios);
  return o;
}

std::map<std::string, std::string> tree_contents(const fs::path& root) {
  std::map<std::string, std::string> out;
  for (const auto& e : fs::recursive_directory_iterator(root)) {
    if (e.is_regular_file()) out[fs::relative(e.path(), root).string()] = read_file(e.path());
  }
  return out;
}

Outcome determinism() {
  Outcome o;
  const auto start = std::chrono::steady_clock::now();
  const std::vector<std::string> pipeline{"synth",   "segment",  "filter", "label",      "trajectories", "taxonomy",
                                          "cluster", "evaluate", "iaa",    "adjudicate", "report"};
  testing::TempDir a("accept_a"), b("accept_b");
  for (const fs::path& root : {a.path(), b.path()}) {
    cli::PipelineConfig config = cli::load_config("");
    config.root = root;
    std::ostringstream log;
    for (const std::string& cmd : pipeline) {
      const int rc = cli::run_guarded(cmd, config, {}, log);
      o.check(rc == 0, cmd + " exited " + std::to_string(rc) + ": " + log.str());
    }
  }
  const auto ta = tree_contents(a.path());
  const auto tb = tree_contents(b.path());
  o.check(ta.size() == tb.size(), "file counts differ");
  std::size_t differing = 0;
  for (const auto& [name, content] : ta) {
    auto it = tb.find(name);
    if (it == tb.end() || it->second != content) {
      ++differing;
      o.check(false, name + " differs");
    }
  }
  const double secs = seconds_since(start);
  o.check(secs < 60.0, "runtime " + num(secs) + " s");
  o.note(std::to_string(ta.size()) + " files compared, " + num(secs) + " s for two runs");
  return o;
}

/// Majority with ties to Other, computed from counts alone.
std::optional<Polarity> vote_oracle(const std::map<Polarity, int>& counts) {
  int top = 0;
  for (const auto& [p, n] : counts) top = std::max(top, n);
  if (top == 0) return std::nullopt;
  std::vector<Polarity> leaders;
  for (const auto& [p, n] : counts)
    if (n == top) leaders.push_back(p);
  return leaders.size() == 1 ? leaders[0] : Polarity::Other;
}

Outcome voting() {
  Outcome o;
  const std::vector<int> symbols{0, 1, 2, 3, 4};  // Plus, Minus, Other, None, parse failure
  std::size_t multisets = 0, mismatches = 0;
  std::vector<int> pick(5, 0);
  std::function<void(std::size_t, int)> enumerate = [&](std::size_t slot, int from) {
    if (slot == pick.size()) {
      ++multisets;
      std::vector<ParseResult<Polarity>> samples;
      std::map<Polarity, int> counts;
      int failures = 0;
      for (int s : pick) {
        if (s == 4) {
          samples.push_back(ParseResult<Polarity>::failure("unparsed"));
          ++failures;
        } else {
          samples.push_back(ParseResult<Polarity>::success(kAllPolarities[s]));
          ++counts[kAllPolarities[s]];
        }
      }
      const std::optional<Polarity> expected = vote_oracle(counts);
      try {
        const VoteOutcome got = aggregate_votes(samples);
        if (!expected || got.label != *expected || got.tally.parse_failures != failures) ++mismatches;
      } catch (const LabelingError&) {
        if (expected) ++mismatches;
      }
      return;
    }
    for (int s = from; s < static_cast<int>(symbols.size()); ++s) {
      pick[slot] = s;
      enumerate(slot + 1, s);
    }
  };
  enumerate(0, 0);
  o.check(multisets == 126, std::to_string(multisets) + " multisets enumerated");
  o.check(mismatches == 0, std::to_string(mismatches) + " mismatches");
  o.note(std::to_string(multisets) + " multisets");
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"A1 min_sum_dist formula oracle", formula_oracle},
      {"A2 DTW exhaustive-path oracle", dtw_oracle},
      {"A3 taxonomy cases and invariance", taxonomy_cases},
      {"A4 clustering recovery", clustering_recovery},
      {"A5 structure vs distance", structure_vs_distance},
      {"A6 baseline dominance", baseline_dominance},
      {"A7 agreement and adjudication", agreement},
      {"A8 Welch t-test", welch},
      {"A9 segmentation", segmentation},
      {"A10 over-prediction harness", overprediction},
      {"A11 end-to-end determinism", determinism},
      {"A12 self-consistency voting", voting},
  };
  int failures = 0;
  for (const auto& [name, run] : criteria) {
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    if (!o.pass) ++failures;
    std::printf("%s %s: %s\n", o.pass ? "PASS" : "FAIL", name.c_str(), o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
