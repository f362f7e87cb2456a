#include "commands.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <ostream>
#include <set>

#include "arcs/agreement.hpp"
#include "arcs/clustering.hpp"
#include "arcs/csv.hpp"
#include "arcs/digest.hpp"
#include "arcs/error.hpp"
#include "arcs/eval.hpp"
#include "arcs/io.hpp"
#include "arcs/keyword_oracle.hpp"
#include "arcs/label_cache.hpp"
#include "arcs/metrics.hpp"
#include "arcs/similarity.hpp"
#include "arcs/stats.hpp"
#include "arcs/synth.hpp"
#include "arcs/taxonomy.hpp"
#include "arcs/version.hpp"
#include "json.hpp"
#include "svg.hpp"

namespace arcs::cli {

namespace fs = std::filesystem;

namespace {

std::string read_artifact(const PipelineConfig& c, const fs::path& p) { return read_file(c.resolve(p)); }

void write_artifact(const fs::path& path, const std::string& content) {
  FileLock lock(path);
  write_file_atomic(path, content);
}

fs::path report_file(const PipelineConfig& c, const std::string& name) {
  return c.resolve(c.paths.reports) / name;
}

fs::path with_suffix(const fs::path& p, const std::string& suffix) {
  fs::path out = p.parent_path() / (p.stem().string() + "_" + suffix);
  out += p.extension();
  return out;
}

std::string key_of(const std::string& testimony, std::size_t seq) {
  return testimony + "#" + std::to_string(seq);
}

class Labelers {
 public:
  explicit Labelers(const PipelineConfig& c) {
    if (c.labeler.kind == "oracle") {
      oracle_ = std::make_unique<KeywordOracle>();
      return;
    }
    client_ = std::make_unique<HttpCompletionClient>(c.labeler.endpoint);
    cache_ = std::make_unique<LabelCache>(c.resolve(c.paths.cache));
    endpoint_ = std::make_unique<EndpointLabeler>(*client_, c.labeler.options, cache_.get());
  }

  ValenceLabeler& valence() {
    if (oracle_) return *oracle_;
    return *endpoint_;
  }
  ContentClassifier& content() {
    if (oracle_) return *oracle_;
    return *endpoint_;
  }

 private:
  std::unique_ptr<KeywordOracle> oracle_;
  std::unique_ptr<HttpCompletionClient> client_;
  std::unique_ptr<LabelCache> cache_;
  std::unique_ptr<EndpointLabeler> endpoint_;
};

std::vector<Trajectory> of_aspect(const std::vector<Trajectory>& all, Aspect a) {
  std::vector<Trajectory> out;
  for (const Trajectory& t : all) {
    if (t.aspect == a) out.push_back(t);
  }
  return out;
}

void cmd_synth(const PipelineConfig& c, std::ostream& log) {
  SynthSpec spec = c.synth.spec;
  spec.testimonies = plan_testimonies(c.synth.testimonies, c.synth.belief_mix, c.synth.practice_mix, c.seed);
  const SynthCorpus corpus = synthesize_corpus(spec, c.seed);

  std::vector<Transcript> transcripts;
  std::vector<StoredLabel> gold;
  std::vector<Segment> segments;
  std::vector<ValenceLabel> gold_flat;
  std::vector<PeriodTag> periods;
  for (const SynthTestimony& t : corpus.testimonies) {
    transcripts.push_back(t.transcript);
    const std::vector<Segment> segs = segment(t.transcript, c.segmentation).segments;
    const std::vector<ValenceLabel> g = gold_labels(t, segs);
    for (std::size_t i = 0; i < segs.size(); ++i) {
      gold.push_back({segs[i].testimony_id, segs[i].seq_index, g[i]});
    }
    segments.insert(segments.end(), segs.begin(), segs.end());
    gold_flat.insert(gold_flat.end(), g.begin(), g.end());
    const std::vector<PeriodTag> tags = period_tags(t, segs);
    periods.insert(periods.end(), tags.begin(), tags.end());
  }
  const SynthIndex index = synth_index(segments, gold_flat, c.synth.index, derive_seed(c.seed, "index", "", ""));
  const std::vector<AnnotationRecord> annotations =
      synth_annotations(segments, gold_flat, c.synth.annotations, derive_seed(c.seed, "annotations", "", ""));

  write_artifact(c.resolve(c.paths.corpus), transcripts_to_jsonl(transcripts));
  write_artifact(c.resolve(c.paths.gold), labels_to_jsonl(gold));
  write_artifact(c.resolve(c.paths.thesaurus_index), index_to_jsonl(index.thesaurus));
  write_artifact(c.resolve(c.paths.topic_index), index_to_jsonl(index.topics));
  write_artifact(c.resolve(c.paths.annotations), annotations_to_jsonl(annotations));
  write_artifact(c.resolve(c.paths.periods), period_tags_to_jsonl(periods));
  log << "synth: " << transcripts.size() << " transcripts, " << segments.size() << " segments\n";
}

void cmd_segment(const PipelineConfig& c, std::ostream& log) {
  const std::vector<Transcript> transcripts = transcripts_from_jsonl(read_artifact(c, c.paths.corpus));
  std::vector<Segment> all;
  for (const Transcript& t : transcripts) {
    validate(t);
    SegmentationResult r = segment(t, c.segmentation);
    for (const std::string& w : r.warnings) log << "warning: " << t.id << ": " << w << "\n";
    all.insert(all.end(), r.segments.begin(), r.segments.end());
  }
  write_artifact(c.resolve(c.paths.segments), segments_to_jsonl(all));
  log << "segment: " << transcripts.size() << " transcripts, " << all.size() << " segments\n";
}

void cmd_filter(const PipelineConfig& c, std::ostream& log) {
  const std::vector<Segment> segments = segments_from_jsonl(read_artifact(c, c.paths.segments));
  Labelers labelers(c);
  const std::vector<bool> keep = classify_all(segments, labelers.content(), c.labeler.threads);
  std::vector<Segment> kept;
  for (std::size_t i = 0; i < segments.size(); ++i) {
    if (keep[i]) kept.push_back(segments[i]);
  }
  write_artifact(c.resolve(c.paths.filtered), segments_to_jsonl(kept));
  log << "filter: kept " << kept.size() << " of " << segments.size() << " segments\n";
}

void cmd_label(const PipelineConfig& c, const CommandOptions& o, std::ostream& log) {
  const fs::path input = o.all_segments ? c.paths.segments : c.paths.filtered;
  const std::vector<Segment> segments = segments_from_jsonl(read_artifact(c, input));
  std::vector<Segment> all;
  if (o.overprediction) all = segments_from_jsonl(read_artifact(c, c.paths.segments));
  Labelers labelers(c);
  const std::vector<ValenceLabel> labels = label_all(segments, labelers.valence(), c.labeler.threads);
  std::vector<StoredLabel> stored;
  for (std::size_t i = 0; i < segments.size(); ++i) {
    stored.push_back({segments[i].testimony_id, segments[i].seq_index, labels[i]});
  }
  write_artifact(c.resolve(c.paths.labels), labels_to_jsonl(stored));
  log << "label: " << stored.size() << " segments labeled\n";
  if (o.overprediction) {
    const OverpredictionReport r =
        overprediction_analysis(all, labelers.valence(), labelers.content(), c.labeler.threads);
    write_artifact(report_file(c, "overprediction.csv"), r.to_csv());
    for (const OverpredictionRow& row : r.rows) {
      log << "overprediction: " << label_name(row.aspect, row.label) << " ratio "
          << format_number(row.ratio) << "\n";
    }
  }
}

void cmd_trajectories(const PipelineConfig& c, std::ostream& log) {
  const std::vector<Segment> segments = segments_from_jsonl(read_artifact(c, c.paths.segments));
  const std::vector<StoredLabel> labels = labels_from_jsonl(read_artifact(c, c.paths.labels));
  std::map<std::string, ValenceLabel> by_key;
  for (const StoredLabel& l : labels) {
    if (!by_key.emplace(key_of(l.testimony_id, l.seq_index), l.label).second) {
      throw InvariantViolation("duplicate label for segment " + key_of(l.testimony_id, l.seq_index));
    }
  }
  std::set<std::string> known;
  std::vector<LabeledSegment> joined;
  for (const Segment& s : segments) {
    const std::string key = key_of(s.testimony_id, s.seq_index);
    known.insert(key);
    ValenceLabel label;
    if (auto it = by_key.find(key); it != by_key.end()) label = it->second;
    joined.push_back({s, label});
  }
  for (const auto& [key, label] : by_key) {
    if (!known.count(key)) throw InvariantViolation("label for unknown segment " + key);
  }
  std::vector<Trajectory> out;
  for (Aspect a : {Aspect::Belief, Aspect::Practice}) {
    const std::vector<Trajectory> ts = build_trajectories(joined, a);
    out.insert(out.end(), ts.begin(), ts.end());
  }
  write_artifact(c.resolve(c.paths.trajectories), trajectories_to_jsonl(out));
  log << "trajectories: " << out.size() << " trajectories\n";
}

std::string bin_slug(const LengthBin& bin) {
  std::string s;
  for (char ch : bin.label()) {
    if (ch == '>') {
      s += "gt";
    } else if (ch == '<') {
      s += "lt";
    } else {
      s += ch;
    }
  }
  return s;
}

void cmd_taxonomy(const PipelineConfig& c, std::ostream& log) {
  const std::vector<Trajectory> all = trajectories_from_jsonl(read_artifact(c, c.paths.trajectories));
  std::map<Aspect, std::vector<Trajectory>> split;
  for (Aspect a : {Aspect::Belief, Aspect::Practice}) {
    split[a] = of_aspect(all, a);
    const std::string name(aspect_name(a));
    const Distribution d = taxonomy_distribution(split[a]);
    write_artifact(report_file(c, "taxonomy_" + name + ".csv"), distribution_csv(d));
    for (const LengthBin& bin : default_length_bins(a)) {
      const Distribution db = taxonomy_distribution(split[a], {false, bin});
      write_artifact(report_file(c, "taxonomy_" + name + "_len_" + bin_slug(bin) + ".csv"),
                     distribution_csv(db));
    }
    write_artifact(report_file(c, "coverage_" + name + ".csv"), crosstab_csv(coverage_crosstab(split[a])));
    log << "taxonomy: " << name << " " << d.classified << " classified\n";
  }
  write_artifact(report_file(c, "taxonomy_aspects.csv"),
                 crosstab_csv(aspect_crosstab(split[Aspect::Belief], split[Aspect::Practice])));
}

void cmd_cluster(const PipelineConfig& c, std::ostream& log) {
  const std::vector<Trajectory> all = trajectories_from_jsonl(read_artifact(c, c.paths.trajectories));
  for (Aspect a : {Aspect::Belief, Aspect::Practice}) {
    const std::string name(aspect_name(a));
    const AspectConfig& ac = c.aspect(a);
    std::vector<Trajectory> ts;
    for (const Trajectory& t : of_aspect(all, a)) {
      if (!t.empty()) ts.push_back(t);
    }
    if (ts.size() < 2) {
      log << "warning: cluster: " << name << " has " << ts.size() << " non-empty trajectories; skipped\n";
      continue;
    }
    const DistanceMatrices dm = distance_matrices(ts, ac.window, c.labeler.threads);
    if (dm.infeasible_pairs > 0) {
      log << "warning: cluster: " << name << ": " << dm.infeasible_pairs
          << " band-infeasible pairs imputed with the largest distance\n";
    }
    write_artifact(report_file(c, "dtw_" + name + ".csv"), dm.raw.to_csv());
    write_artifact(report_file(c, "dtw_" + name + "_normalized.csv"), dm.normalized.to_csv());

    const HdbscanResult h = hdbscan(dm.raw, ac.hdbscan);
    for (const std::string& w : h.warnings) log << "warning: cluster: " << name << ": " << w << "\n";
    write_artifact(report_file(c, "clusters_" + name + "_hdbscan.csv"),
                   assignments_csv(dm.raw.ids(), h.labels, h.stability));
    const std::size_t k = std::min(ac.k, ts.size());
    const AgglomerativeResult g = agglomerative(dm.raw, ac.linkage, ClusterCut::clusters(k));
    write_artifact(report_file(c, "clusters_" + name + "_agglomerative.csv"),
                   assignments_csv(dm.raw.ids(), g.labels));

    std::string summary = csv_row({"metric", "value"});
    summary += csv_row({"trajectories", std::to_string(ts.size())});
    summary += csv_row({"window", std::to_string(ac.window)});
    summary += csv_row({"infeasible_pairs", std::to_string(dm.infeasible_pairs)});
    summary += csv_row({"hdbscan_clusters", std::to_string(h.clusters())});
    summary += csv_row({"hdbscan_noise", std::to_string(h.noise())});
    std::map<std::string, StructureClass> structures;
    for (const Trajectory& t : ts) structures[t.testimony_id] = classify_trajectory(t);
    try {
      const StructureDtwStats s = structure_dtw_stats(dm.raw, structures);
      summary += csv_row({"same_structure_mean", format_number(s.same.mean)});
      summary += csv_row({"same_structure_sd", format_number(s.same.sd)});
      summary += csv_row({"same_structure_pairs", std::to_string(s.same.n)});
      summary += csv_row({"different_structure_mean", format_number(s.different.mean)});
      summary += csv_row({"different_structure_sd", format_number(s.different.sd)});
      summary += csv_row({"different_structure_pairs", std::to_string(s.different.n)});
      summary += csv_row({"welch_t", format_number(s.welch.t)});
      summary += csv_row({"welch_df", format_number(s.welch.df)});
      summary += csv_row({"welch_p", format_number(s.welch.p)});
    } catch (const DomainError& e) {
      log << "warning: cluster: " << name << ": structure statistics unavailable: " << e.what() << "\n";
    }
    write_artifact(report_file(c, "cluster_summary_" + name + ".csv"), summary);
    log << "cluster: " << name << " " << h.clusters() << " hdbscan clusters, " << h.noise() << " noise\n";
  }
}

LabelMapping mapping_for(const PipelineConfig& c, const std::string& source) {
  const fs::path& file = source == "thesaurus" ? c.paths.thesaurus_map : c.paths.topic_map;
  if (file.empty()) return source == "thesaurus" ? LabelMapping::thesaurus() : LabelMapping::topics();
  return LabelMapping::parse_tsv(read_artifact(c, file));
}

std::vector<ReferenceTrajectory> load_references(const PipelineConfig& c, const std::string& source,
                                                 bool required) {
  const fs::path p = c.resolve(with_suffix(c.paths.references, source));
  if (!required && !fs::exists(p)) return {};
  return references_from_jsonl(read_file(p));
}

std::string source_label(const std::string& source) { return source == "thesaurus" ? "Thesaurus" : "Topic"; }

void cmd_evaluate(const PipelineConfig& c, std::ostream& log) {
  const std::vector<Trajectory> predicted = trajectories_from_jsonl(read_artifact(c, c.paths.trajectories));
  EvalReport combined;
  bool first = true;
  for (const std::string& source : c.evaluation.sources) {
    const fs::path index_path = source == "thesaurus" ? c.paths.thesaurus_index : c.paths.topic_index;
    const std::vector<IndexEntry> index = index_from_jsonl(read_artifact(c, index_path));
    const LabelMapping mapping = mapping_for(c, source);
    std::vector<ReferenceTrajectory> refs;
    std::set<std::string> warned;
    for (ReferenceClass cls : kReferenceClasses) {
      ReferenceExtraction ex = extract_reference(index, mapping, cls);
      for (const std::string& w : ex.warnings) {
        if (warned.insert(w).second) log << "warning: evaluate: " << source << ": " << w << "\n";
      }
      refs.insert(refs.end(), ex.references.begin(), ex.references.end());
    }
    write_artifact(c.resolve(with_suffix(c.paths.references, source)), references_to_jsonl(refs));

    EvalOptions opts;
    opts.kinds = c.evaluation.baselines;
    opts.seed = derive_seed(c.seed, "evaluate", source, "");
    opts.params = c.evaluation.params;
    opts.source = source_label(source);
    EvalReport r = evaluate_against_references(predicted, refs, opts);
    for (const std::string& w : r.warnings) log << "warning: evaluate: " << w << "\n";
    if (first) {
      combined = std::move(r);
      first = false;
    } else {
      combined.append(r);
    }
  }
  if (first) throw ConfigError("'evaluation.sources' is empty");
  write_artifact(report_file(c, "table3.csv"), combined.to_csv());
  log << "evaluate: " << combined.columns.size() << " class columns\n";
}

void cmd_iaa(const PipelineConfig& c, std::ostream& log) {
  const std::vector<AnnotationRecord> records = annotations_from_jsonl(read_artifact(c, c.paths.annotations));
  validate_records(records);
  std::map<AnnotationTask, std::vector<AnnotationRecord>> by_task;
  for (const AnnotationRecord& r : records) by_task[r.task].push_back(r);
  std::string out = csv_row({"task", "mode", "annotator_a", "annotator_b", "shared_items", "alpha"});
  for (const auto& [task, recs] : by_task) {
    const std::string name(task_name(task));
    try {
      const double alpha = krippendorff_alpha(recs);
      out += csv_row({name, "joint", "", "", "", format_number(alpha)});
      log << "iaa: " << name << " joint alpha " << format_number(alpha) << "\n";
    } catch (const DomainError& e) {
      log << "warning: iaa: " << name << ": " << e.what() << "\n";
      continue;
    }
    const PairwiseAlpha p = pairwise_alpha(recs);
    for (const PairAlpha& pa : p.pairs) {
      out += csv_row({name, "pairwise", pa.annotator_a, pa.annotator_b, std::to_string(pa.shared_items),
                      format_number(pa.alpha)});
    }
    out += csv_row({name, "pairwise-mean", "", "", "", format_number(p.mean)});
    for (const std::string& w : p.warnings) log << "warning: iaa: " << name << ": " << w << "\n";
  }
  write_artifact(report_file(c, "agreement.csv"), out);
}

void cmd_adjudicate(const PipelineConfig& c, std::ostream& log) {
  const std::vector<AnnotationRecord> records = annotations_from_jsonl(read_artifact(c, c.paths.annotations));
  validate_records(records);
  const std::vector<AdjudicatedItem> items = adjudicate_all(records);
  write_artifact(c.resolve(c.paths.adjudicated), adjudications_to_jsonl(items));
  std::size_t discarded = 0;
  std::map<AnnotationTask, std::vector<SplitItem>> by_task;
  for (const AdjudicatedItem& a : items) {
    if (a.result.discarded()) {
      ++discarded;
      continue;
    }
    by_task[a.task].push_back({a.item_id, *a.result.gold, a.result.annotators > 1});
  }
  for (const auto& [task, split_items] : by_task) {
    const std::string name(task_name(task));
    try {
      const DatasetSplits s = split_dataset(split_items, {}, derive_seed(c.seed, "split", name, ""));
      std::string out = csv_row({"item_id", "split"});
      for (const std::string& id : s.train) out += csv_row({id, "train"});
      for (const std::string& id : s.validation) out += csv_row({id, "validation"});
      for (const std::string& id : s.test) out += csv_row({id, "test"});
      write_artifact(report_file(c, "splits_" + name + ".csv"), out);
    } catch (const DomainError& e) {
      log << "warning: adjudicate: no " << name << " split: " << e.what() << "\n";
    }
  }
  log << "adjudicate: " << items.size() << " items, " << discarded << " discarded\n";
}

std::string rel(const PipelineConfig& c, const fs::path& p) {
  const fs::path r = p.lexically_relative(c.root);
  return (r.empty() ? p : r).generic_string();
}

void cmd_report(const PipelineConfig& c, std::ostream& log) {
  const std::vector<Trajectory> all = trajectories_from_jsonl(read_artifact(c, c.paths.trajectories));
  std::map<std::string, std::vector<ReferenceTrajectory>> refs;
  for (const std::string& source : c.evaluation.sources) refs[source] = load_references(c, source, false);

  std::vector<std::string> order;
  std::map<std::string, std::map<Aspect, const Trajectory*>> by_id;
  for (const Trajectory& t : all) {
    if (!by_id.count(t.testimony_id)) order.push_back(t.testimony_id);
    by_id[t.testimony_id][t.aspect] = &t;
  }
  // Segment extents by (testimony, position) so predicted marks are drawn at segment width.
  std::map<std::string, std::map<double, std::pair<double, double>>> extents;
  const fs::path segments_path = c.resolve(c.paths.segments);
  if (fs::exists(segments_path)) {
    const std::vector<Segment> segments = segments_from_jsonl(read_file(segments_path));
    std::map<std::string, std::size_t> words;
    for (const Segment& s : segments) words[s.testimony_id] = std::max(words[s.testimony_id], s.end_word);
    for (const Segment& s : segments) {
      const double total = static_cast<double>(words[s.testimony_id]);
      extents[s.testimony_id][s.position] = {static_cast<double>(s.start_word) / total,
                                             static_cast<double>(s.end_word) / total};
    }
  }
  std::size_t drawn = 0;
  for (const std::string& id : order) {
    if (drawn >= c.report.alignment_plots) break;
    std::vector<Lane> lanes;
    for (Aspect a : {Aspect::Belief, Aspect::Practice}) {
      auto it = by_id[id].find(a);
      if (it == by_id[id].end() || it->second->empty()) continue;
      Lane lane{"Predicted " + std::string(aspect_name(a)), {}, false};
      for (const TrajectoryPoint& p : it->second->points) {
        const auto& ext = extents[id];
        auto e = ext.find(p.position);
        if (e != ext.end()) {
          lane.marks.push_back({e->second.first, e->second.second, p.value});
        } else {
          lane.marks.push_back({p.position, p.position, p.value});
        }
      }
      lanes.push_back(std::move(lane));
    }
    if (lanes.empty()) continue;
    for (const std::string& source : c.evaluation.sources) {
      for (const ReferenceTrajectory& r : refs[source]) {
        if (r.testimony_id != id) continue;
        Lane lane{source_label(source) + " " + std::string(reference_class_name(r.class_id)), {}, true};
        for (double p : r.positions) lane.marks.push_back({p, p, 0});
        lanes.push_back(std::move(lane));
      }
    }
    std::string csv = csv_row({"lane", "start", "end", "value"});
    for (const Lane& lane : lanes) {
      for (const Mark& m : lane.marks) {
        csv += csv_row({lane.label, format_number(m.lo), format_number(m.hi),
                        lane.reference ? "" : std::to_string(m.value)});
      }
    }
    write_artifact(report_file(c, "alignment_" + id + ".svg"), alignment_svg("Testimony " + id, lanes));
    write_artifact(report_file(c, "alignment_" + id + ".csv"), csv);
    ++drawn;
  }

  for (Aspect a : {Aspect::Belief, Aspect::Practice}) {
    const std::string name(aspect_name(a));
    const std::vector<Trajectory> ts = of_aspect(all, a);
    std::vector<Panel> panels{{"All", taxonomy_distribution(ts)}};
    std::string csv = csv_row({"panel", "class", "count", "proportion"});
    for (const LengthBin& bin : default_length_bins(a)) {
      panels.push_back({"Length " + bin.label(), taxonomy_distribution(ts, {false, bin})});
    }
    for (const Panel& p : panels) {
      for (const DistributionRow& row : p.distribution.rows) {
        csv += csv_row({p.label, std::string(structure_name(row.structure)), std::to_string(row.count),
                        format_number(row.proportion)});
      }
    }
    write_artifact(report_file(c, "distribution_" + name + ".svg"),
                   distribution_svg("Structure distribution: " + name, panels));
    write_artifact(report_file(c, "distribution_" + name + ".csv"), csv);
  }

  const fs::path periods = c.resolve(c.paths.periods);
  if (fs::exists(periods)) {
    const std::vector<PeriodTag> tags = period_tags_from_jsonl(read_file(periods));
    std::string csv = csv_row({"period", "mean_position"});
    for (const auto& [period, mean] : period_positions(tags)) {
      csv += csv_row({std::string(period_name(period)), format_number(mean)});
    }
    write_artifact(report_file(c, "periods.csv"), csv);
  }

  nlohmann::ordered_json manifest;
  manifest["tool"] = "arcs";
  manifest["version"] = kVersion;
  manifest["config_sha256"] = sha256_hex(c.effective);
  manifest["seed"] = c.seed;
  std::vector<fs::path> inputs = {c.paths.corpus,      c.paths.segments,        c.paths.filtered,
                                  c.paths.labels,      c.paths.trajectories,    c.paths.thesaurus_index,
                                  c.paths.topic_index, c.paths.annotations,     c.paths.adjudicated,
                                  c.paths.periods,     c.paths.gold};
  if (!c.paths.thesaurus_map.empty()) inputs.push_back(c.paths.thesaurus_map);
  if (!c.paths.topic_map.empty()) inputs.push_back(c.paths.topic_map);
  for (const std::string& source : c.evaluation.sources) inputs.push_back(with_suffix(c.paths.references, source));
  std::map<std::string, std::string> input_digests;
  for (const fs::path& p : inputs) {
    const fs::path full = c.resolve(p);
    if (fs::exists(full)) input_digests[rel(c, full)] = sha256_hex(read_file(full));
  }
  manifest["inputs"] = input_digests;
  const fs::path reports = c.resolve(c.paths.reports);
  std::map<std::string, std::string> outputs;
  for (const auto& entry : fs::recursive_directory_iterator(reports)) {
    if (!entry.is_regular_file()) continue;
    const std::string fname = entry.path().filename().string();
    if (fname == "manifest.json" || entry.path().extension() == ".lock" ||
        fname.find(".tmp.") != std::string::npos) {
      continue;
    }
    outputs[rel(c, entry.path())] = sha256_hex(read_file(entry.path()));
  }
  manifest["reports"] = outputs;
  write_artifact(reports / "manifest.json", manifest.dump(2) + "\n");
  log << "report: " << drawn << " alignment plots, " << outputs.size() << " report files\n";
}

}  // namespace

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names = {"segment",  "filter",   "label", "trajectories",
                                                 "taxonomy", "cluster",  "evaluate", "iaa",
                                                 "adjudicate", "synth", "report"};
  return names;
}

void run_command(const std::string& command, const PipelineConfig& config, const CommandOptions& options,
                 std::ostream& log) {
  if (command == "synth") return cmd_synth(config, log);
  if (command == "segment") return cmd_segment(config, log);
  if (command == "filter") return cmd_filter(config, log);
  if (command == "label") return cmd_label(config, options, log);
  if (command == "trajectories") return cmd_trajectories(config, log);
  if (command == "taxonomy") return cmd_taxonomy(config, log);
  if (command == "cluster") return cmd_cluster(config, log);
  if (command == "evaluate") return cmd_evaluate(config, log);
  if (command == "iaa") return cmd_iaa(config, log);
  if (command == "adjudicate") return cmd_adjudicate(config, log);
  if (command == "report") return cmd_report(config, log);
  throw ConfigError("unknown command '" + command + "'");
}

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const ConfigError*>(&e)) return kConfigError;
  if (dynamic_cast<const InputError*>(&e) || dynamic_cast<const ParseError*>(&e)) return kInputError;
  if (dynamic_cast<const TransportError*>(&e)) return kEndpointError;
  return kStageError;
}

int run_guarded(const std::string& command, const PipelineConfig& config, const CommandOptions& options,
                std::ostream& log) {
  try {
    run_command(command, config, options, log);
    return kOk;
  } catch (const std::exception& e) {
    log << "error: " << command << ": " << e.what() << "\n";
    return exit_code_for(e);
  }
}

}  // namespace arcs::cli
