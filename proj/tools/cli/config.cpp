#include "config.hpp"

#include "arcs/error.hpp"
#include "arcs/io.hpp"
#include "json.hpp"

namespace arcs::cli {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

const char* const kDefaults = R"({
  "seed": 7,
  "root": ".",
  "paths": {
    "corpus": "corpus.jsonl",
    "segments": "segments.jsonl",
    "filtered": "filtered.jsonl",
    "labels": "labels.jsonl",
    "trajectories": "trajectories.jsonl",
    "thesaurus_index": "index_thesaurus.jsonl",
    "topic_index": "index_topics.jsonl",
    "references": "references.jsonl",
    "annotations": "annotations.jsonl",
    "adjudicated": "adjudicated.jsonl",
    "periods": "periods.jsonl",
    "gold": "gold_labels.jsonl",
    "cache": "label_cache.jsonl",
    "reports": "reports",
    "thesaurus_map": "",
    "topic_map": ""
  },
  "segmentation": {"min_words": 10, "max_words": 100},
  "labeler": {
    "kind": "oracle",
    "threads": 1,
    "samples": 5,
    "model_id": "",
    "templates": {"belief": "belief-zero", "practice": "practice-zero", "content": "content-zero"},
    "endpoint": {
      "base_url": "",
      "path": "/v1/completions",
      "model": "",
      "temperature": 0.7,
      "max_tokens": 512,
      "reply_pointer": "/choices/0/text",
      "max_attempts": 3,
      "initial_backoff_ms": 250,
      "max_in_flight": 4,
      "timeout_s": 60,
      "api_key_env": "LABELER_API_KEY"
    }
  },
  "belief": {
    "window": 7,
    "hdbscan": {"min_cluster_size": 30, "min_samples": 1, "epsilon": 1.0, "alpha": 1.0},
    "agglomerative": {"k": 2, "linkage": "average"}
  },
  "practice": {
    "window": 6,
    "hdbscan": {"min_cluster_size": 30, "min_samples": 1, "epsilon": 1.0, "alpha": 0.95},
    "agglomerative": {"k": 2, "linkage": "average"}
  },
  "evaluation": {
    "baselines": ["original-scatter", "edges-middle", "equal-scatter",
                  "normal-original", "gauss-edges-middle", "two-gaussian"],
    "sources": ["thesaurus", "topics"],
    "third_sigma_fraction": 0.16666666666666666,
    "half_sigma": 0.08333333333333333,
    "max_redraws": 100
  },
  "synth": {
    "testimonies": 60,
    "belief_mix": {"ConstantPositive": 4, "Oscillating": 2, "Descending": 1.5,
                   "Ascending": 1, "ConstantNegative": 0.5, "NeutralOnly": 1},
    "practice_mix": {"ConstantPositive": 3, "Oscillating": 2.5, "Descending": 2,
                     "Ascending": 1, "ConstantNegative": 0.5, "NeutralOnly": 1},
    "pairs_min": 30,
    "pairs_max": 45,
    "density": 0.2,
    "min_points": 3,
    "max_points": 12,
    "fixed_points": null,
    "other_rate": 0.25,
    "noise_rate": 0.0,
    "distractor_rate": 0.1,
    "oscillation_runs": 3,
    "oscillation_start": null,
    "paper_like": true,
    "index": {"reference_rate": 0.8, "jitter": 0.02, "unknown_rate": 0.05},
    "annotations": {"overlap_rate": 0.3, "triple_rate": 0.5, "clean_error": 0.05, "noisy_error": 0.4}
  },
  "report": {"alignment_plots": 4}
})";

/// Objects whose keys are data rather than schema.
bool free_form(const std::string& path) { return path == "synth.belief_mix" || path == "synth.practice_mix"; }

bool compatible(const json& def, const json& value) {
  if (def.is_null() || value.is_null()) return true;
  if (def.is_number()) return value.is_number();
  return def.type() == value.type();
}

void merge_into(json& base, const json& patch, const std::string& prefix) {
  if (!patch.is_object()) throw ConfigError("configuration must be a JSON object");
  for (const auto& [key, value] : patch.items()) {
    const std::string path = prefix.empty() ? key : prefix + "." + key;
    if (!base.contains(key)) throw ConfigError("unknown configuration key '" + path + "'");
    json& slot = base[key];
    if (!compatible(slot, value)) throw ConfigError("configuration key '" + path + "' has the wrong type");
    if (slot.is_object() && !free_form(path)) {
      merge_into(slot, value, path);
    } else {
      slot = value;
    }
  }
}

void apply_override(json& doc, const std::string& assignment) {
  const std::size_t eq = assignment.find('=');
  if (eq == std::string::npos || eq == 0) {
    throw ConfigError("override '" + assignment + "' must look like dotted.path=value");
  }
  const std::string path = assignment.substr(0, eq);
  const std::string raw = assignment.substr(eq + 1);
  json value = json::parse(raw, nullptr, false);
  if (value.is_discarded()) value = raw;

  json patch = value;
  std::size_t end = path.size();
  while (true) {
    const std::size_t dot = path.rfind('.', end - 1);
    const std::string key = path.substr(dot == std::string::npos ? 0 : dot + 1,
                                        end - (dot == std::string::npos ? 0 : dot + 1));
    if (key.empty()) throw ConfigError("override '" + assignment + "' has an empty path segment");
    patch = json{{key, patch}};
    if (dot == std::string::npos) break;
    end = dot;
  }
  merge_into(doc, patch, "");
}

struct Reader {
  const json& doc;
  std::string prefix;

  const json& at(const char* key) const {
    return doc.at(key);
  }
  std::string where(const char* key) const { return prefix.empty() ? key : prefix + "." + key; }
  Reader sub(const char* key) const { return {doc.at(key), where(key)}; }

  double number(const char* key) const { return at(key).get<double>(); }
  double unit(const char* key) const {
    const double v = number(key);
    if (!(v >= 0.0 && v <= 1.0)) throw ConfigError("'" + where(key) + "' must be in [0, 1]");
    return v;
  }
  double positive(const char* key) const {
    const double v = number(key);
    if (!(v > 0.0)) throw ConfigError("'" + where(key) + "' must be positive");
    return v;
  }
  std::size_t count(const char* key, std::size_t min = 0) const {
    const json& v = at(key);
    if (!v.is_number_integer() || v.get<long long>() < static_cast<long long>(min)) {
      throw ConfigError("'" + where(key) + "' must be an integer >= " + std::to_string(min));
    }
    return v.get<std::size_t>();
  }
  std::string string(const char* key) const { return at(key).get<std::string>(); }
  bool boolean(const char* key) const { return at(key).get<bool>(); }
};

std::map<StructureClass, double> read_mix(const Reader& r, const char* key) {
  std::map<StructureClass, double> mix;
  for (const auto& [name, w] : r.at(key).items()) {
    StructureClass c{};
    try {
      c = parse_structure_name(name);
    } catch (const ParseError&) {
      throw ConfigError("'" + r.where(key) + "': unknown structure class '" + name + "'");
    }
    if (!w.is_number() || w.get<double>() < 0) {
      throw ConfigError("'" + r.where(key) + "." + name + "' must be a non-negative number");
    }
    mix[c] = w.get<double>();
  }
  return mix;
}

AspectConfig read_aspect(const Reader& r) {
  AspectConfig a;
  a.window = r.count("window", 1);
  const Reader h = r.sub("hdbscan");
  a.hdbscan.min_cluster_size = h.count("min_cluster_size", 2);
  a.hdbscan.min_samples = h.count("min_samples", 1);
  a.hdbscan.cluster_selection_epsilon = h.number("epsilon");
  a.hdbscan.alpha = h.positive("alpha");
  try {
    a.hdbscan.validate();
  } catch (const DomainError& e) {
    throw ConfigError("'" + h.prefix + "': " + e.what());
  }
  const Reader g = r.sub("agglomerative");
  a.k = g.count("k", 1);
  try {
    a.linkage = parse_linkage(g.string("linkage"));
  } catch (const Error& e) {
    throw ConfigError("'" + g.where("linkage") + "': " + e.what());
  }
  return a;
}

PipelineConfig extract(const json& doc) {
  const Reader r{doc, ""};
  PipelineConfig c;
  const json& seed = doc.at("seed");
  if (!seed.is_number_unsigned()) throw ConfigError("'seed' must be a non-negative integer");
  c.seed = seed.get<std::uint64_t>();
  c.root = r.string("root");

  const Reader p = r.sub("paths");
  c.paths.corpus = p.string("corpus");
  c.paths.segments = p.string("segments");
  c.paths.filtered = p.string("filtered");
  c.paths.labels = p.string("labels");
  c.paths.trajectories = p.string("trajectories");
  c.paths.thesaurus_index = p.string("thesaurus_index");
  c.paths.topic_index = p.string("topic_index");
  c.paths.references = p.string("references");
  c.paths.annotations = p.string("annotations");
  c.paths.adjudicated = p.string("adjudicated");
  c.paths.periods = p.string("periods");
  c.paths.gold = p.string("gold");
  c.paths.cache = p.string("cache");
  c.paths.reports = p.string("reports");
  c.paths.thesaurus_map = p.string("thesaurus_map");
  c.paths.topic_map = p.string("topic_map");

  const Reader s = r.sub("segmentation");
  c.segmentation.min_words = s.count("min_words", 1);
  c.segmentation.max_words = s.count("max_words", 1);
  if (c.segmentation.min_words >= c.segmentation.max_words) {
    throw ConfigError("'segmentation.min_words' must be below 'segmentation.max_words'");
  }

  const Reader l = r.sub("labeler");
  c.labeler.kind = l.string("kind");
  if (c.labeler.kind != "oracle" && c.labeler.kind != "endpoint") {
    throw ConfigError("'labeler.kind' must be \"oracle\" or \"endpoint\"");
  }
  c.labeler.threads = static_cast<unsigned>(l.count("threads", 1));
  const std::size_t samples = l.count("samples", 1);
  if (samples % 2 == 0) throw ConfigError("'labeler.samples' must be odd");
  c.labeler.options.samples = static_cast<int>(samples);
  c.labeler.options.model_id = l.string("model_id");
  const Reader t = l.sub("templates");
  c.labeler.options.belief_template = t.string("belief");
  c.labeler.options.practice_template = t.string("practice");
  c.labeler.options.content_template = t.string("content");
  const Reader e = l.sub("endpoint");
  EndpointConfig& ep = c.labeler.endpoint;
  ep.base_url = e.string("base_url");
  ep.path = e.string("path");
  ep.model = e.string("model");
  ep.temperature = e.number("temperature");
  ep.max_tokens = static_cast<int>(e.count("max_tokens", 1));
  ep.reply_pointer = e.string("reply_pointer");
  ep.max_attempts = static_cast<int>(e.count("max_attempts", 1));
  ep.initial_backoff = std::chrono::milliseconds(e.count("initial_backoff_ms"));
  ep.max_in_flight = static_cast<unsigned>(e.count("max_in_flight", 1));
  ep.timeout = std::chrono::seconds(e.count("timeout_s", 1));
  ep.api_key_env = e.string("api_key_env");
  if (c.labeler.options.model_id.empty()) c.labeler.options.model_id = ep.model;

  c.belief = read_aspect(r.sub("belief"));
  c.practice = read_aspect(r.sub("practice"));

  const Reader v = r.sub("evaluation");
  c.evaluation.baselines.clear();
  for (const json& b : v.at("baselines")) {
    try {
      c.evaluation.baselines.push_back(parse_baseline(b.get<std::string>()));
    } catch (const Error& err) {
      throw ConfigError(std::string("'evaluation.baselines': ") + err.what());
    }
  }
  c.evaluation.sources.clear();
  for (const json& src : v.at("sources")) {
    const std::string name = src.get<std::string>();
    if (name != "thesaurus" && name != "topics") {
      throw ConfigError("'evaluation.sources' entries must be \"thesaurus\" or \"topics\"");
    }
    c.evaluation.sources.push_back(name);
  }
  c.evaluation.params.third_sigma_fraction = v.positive("third_sigma_fraction");
  c.evaluation.params.half_sigma = v.positive("half_sigma");
  c.evaluation.params.max_redraws = static_cast<int>(v.count("max_redraws", 1));

  const Reader y = r.sub("synth");
  c.synth.testimonies = y.count("testimonies");
  c.synth.belief_mix = read_mix(y, "belief_mix");
  c.synth.practice_mix = read_mix(y, "practice_mix");
  SynthSpec& sp = c.synth.spec;
  sp.pairs_min = y.count("pairs_min", 1);
  sp.pairs_max = y.count("pairs_max", 1);
  if (sp.pairs_min > sp.pairs_max) throw ConfigError("'synth.pairs_min' exceeds 'synth.pairs_max'");
  sp.density = y.unit("density");
  sp.min_points = y.count("min_points", 1);
  sp.max_points = y.count("max_points", 1);
  if (!y.at("fixed_points").is_null()) sp.fixed_points = y.count("fixed_points", 1);
  sp.other_rate = y.unit("other_rate");
  sp.noise_rate = y.unit("noise_rate");
  sp.distractor_rate = y.unit("distractor_rate");
  sp.oscillation_runs = y.count("oscillation_runs", 3);
  if (!y.at("oscillation_start").is_null()) {
    const json& os = y.at("oscillation_start");
    if (!os.is_number_integer() || (os.get<int>() != 1 && os.get<int>() != -1)) {
      throw ConfigError("'synth.oscillation_start' must be 1, -1 or null");
    }
    sp.oscillation_start = os.get<int>();
  }
  sp.paper_like = y.boolean("paper_like");
  const Reader yi = y.sub("index");
  c.synth.index.reference_rate = yi.unit("reference_rate");
  c.synth.index.jitter = yi.unit("jitter");
  c.synth.index.unknown_rate = yi.unit("unknown_rate");
  const Reader ya = y.sub("annotations");
  c.synth.annotations.overlap_rate = ya.unit("overlap_rate");
  c.synth.annotations.triple_rate = ya.unit("triple_rate");
  c.synth.annotations.clean_error = ya.unit("clean_error");
  c.synth.annotations.noisy_error = ya.unit("noisy_error");

  c.report.alignment_plots = r.sub("report").count("alignment_plots");
  c.effective = doc.dump();
  return c;
}

}  // namespace

fs::path PipelineConfig::resolve(const fs::path& p) const {
  return p.is_absolute() ? p : root / p;
}

std::string default_config_json() { return json::parse(kDefaults).dump(2) + "\n"; }

PipelineConfig load_config(const std::string& user_json, const std::vector<std::string>& overrides) {
  json doc = json::parse(kDefaults);
  if (!user_json.empty()) {
    json user = json::parse(user_json, nullptr, false);
    if (user.is_discarded()) throw ConfigError("configuration is not valid JSON");
    merge_into(doc, user, "");
  }
  for (const std::string& o : overrides) apply_override(doc, o);
  try {
    return extract(doc);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("invalid configuration: ") + e.what());
  }
}

PipelineConfig load_config_file(const fs::path& path, const std::vector<std::string>& overrides) {
  std::string text;
  try {
    text = read_file(path);
  } catch (const InputError& e) {
    throw ConfigError(e.what());
  }
  PipelineConfig c = load_config(text, overrides);
  if (c.root.is_relative()) c.root = (path.parent_path() / c.root).lexically_normal();
  if (c.root.empty()) c.root = ".";
  return c;
}

}  // namespace arcs::cli
