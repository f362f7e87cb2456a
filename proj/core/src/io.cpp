#include "arcs/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <system_error>

#include <fcntl.h>
#include <unistd.h>

#include "arcs/csv.hpp"
#include "arcs/error.hpp"
#include "json.hpp"

namespace arcs {

using nlohmann::json;
namespace fs = std::filesystem;

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (v == 0.0) return "0";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string csv_field(std::string_view s) {
  if (s.find_first_of(",\"\n\r") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string csv_row(const std::vector<std::string>& fields) {
  std::string out;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i > 0) out += ',';
    out += csv_field(fields[i]);
  }
  out += '\n';
  return out;
}

std::string read_file(const fs::path& path) {
  std::error_code ec;
  if (!fs::is_regular_file(path, ec)) throw InputError("missing input file: " + path.string());
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file_atomic(const fs::path& path, std::string_view content) {
  std::error_code ec;
  if (path.has_parent_path()) fs::create_directories(path.parent_path(), ec);
  fs::path tmp = path;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw InputError("cannot write " + tmp.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) throw InputError("short write to " + tmp.string());
  }
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw InputError("cannot replace " + path.string());
  }
}

FileLock::FileLock(fs::path target) : lock_(std::move(target)) {
  lock_ += ".lock";
  std::error_code ec;
  if (lock_.has_parent_path()) fs::create_directories(lock_.parent_path(), ec);
  const int fd = ::open(lock_.c_str(), O_CREAT | O_EXCL | O_WRONLY, 0644);
  if (fd < 0) throw InputError("artifact is locked by another writer: " + lock_.string());
  const std::string pid = std::to_string(::getpid()) + "\n";
  [[maybe_unused]] const auto n = ::write(fd, pid.data(), pid.size());
  ::close(fd);
}

FileLock::~FileLock() {
  std::error_code ec;
  fs::remove(lock_, ec);
}

namespace {

struct FieldError {
  std::string what;
};

const json& field(const json& obj, const char* key) {
  if (!obj.is_object() || !obj.contains(key)) throw FieldError{std::string("missing field '") + key + "'"};
  return obj.at(key);
}

std::string get_string(const json& obj, const char* key) {
  const json& v = field(obj, key);
  if (!v.is_string()) throw FieldError{std::string("field '") + key + "' must be a string"};
  return v.get<std::string>();
}

double get_number(const json& obj, const char* key) {
  const json& v = field(obj, key);
  if (!v.is_number()) throw FieldError{std::string("field '") + key + "' must be a number"};
  return v.get<double>();
}

std::size_t get_index(const json& obj, const char* key) {
  const json& v = field(obj, key);
  if (!v.is_number_unsigned()) {
    throw FieldError{std::string("field '") + key + "' must be a non-negative integer"};
  }
  return v.get<std::size_t>();
}

template <class T, class F>
std::vector<T> parse_lines(std::string_view text, F&& decode) {
  std::vector<T> out;
  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const std::size_t nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.find_first_not_of(" \t") == std::string_view::npos) continue;
    try {
      out.push_back(decode(json::parse(line)));
    } catch (const json::exception& e) {
      throw ParseError(e.what(), line_no);
    } catch (const FieldError& e) {
      throw ParseError(e.what, line_no);
    } catch (const ParseError& e) {
      throw ParseError(e.what(), line_no);
    } catch (const Error& e) {
      throw ParseError(e.what(), line_no);
    }
  }
  return out;
}

template <class T, class F>
std::string dump_lines(std::span<const T> items, F&& encode) {
  std::string out;
  for (const T& item : items) {
    out += encode(item).dump();
    out += '\n';
  }
  return out;
}

json encode_tally(const VoteTally& t, Aspect aspect) {
  json counts = json::object();
  for (const auto& [p, n] : t.counts) counts[std::string(label_name(aspect, p))] = n;
  return {{"counts", counts}, {"parse_failures", t.parse_failures}};
}

VoteTally decode_tally(const json& j, Aspect aspect) {
  VoteTally t;
  const json& counts = field(j, "counts");
  if (!counts.is_object()) throw FieldError{"vote 'counts' must be an object"};
  for (const auto& [name, n] : counts.items()) {
    if (!n.is_number_integer()) throw FieldError{"vote counts must be integers"};
    t.counts[parse_label_name(aspect, name)] = n.get<int>();
  }
  const json& pf = field(j, "parse_failures");
  if (!pf.is_number_integer()) throw FieldError{"'parse_failures' must be an integer"};
  t.parse_failures = pf.get<int>();
  return t;
}

}  // namespace

std::string transcripts_to_jsonl(std::span<const Transcript> transcripts) {
  return dump_lines(transcripts, [](const Transcript& t) {
    json doc = json::parse(emit_transcript(t));
    return doc;
  });
}

std::vector<Transcript> transcripts_from_jsonl(std::string_view text) {
  return parse_lines<Transcript>(text, [](const json& j) {
    if (!j.is_object() || !j.contains("id")) throw FieldError{"missing field 'id'"};
    return parse_transcript(j.dump(), TranscriptFormat::Structured);
  });
}

std::string segments_to_jsonl(std::span<const Segment> segments) {
  return dump_lines(segments, [](const Segment& s) {
    return json{{"testimony_id", s.testimony_id}, {"seq_index", s.seq_index},
                {"start_word", s.start_word},     {"end_word", s.end_word},
                {"n_words", s.n_words},           {"text", s.text},
                {"position", s.position}};
  });
}

std::vector<Segment> segments_from_jsonl(std::string_view text) {
  return parse_lines<Segment>(text, [](const json& j) {
    Segment s;
    s.testimony_id = get_string(j, "testimony_id");
    s.seq_index = get_index(j, "seq_index");
    s.start_word = get_index(j, "start_word");
    s.end_word = get_index(j, "end_word");
    s.n_words = get_index(j, "n_words");
    s.text = get_string(j, "text");
    s.position = get_number(j, "position");
    if (s.end_word < s.start_word || s.end_word - s.start_word != s.n_words) {
      throw FieldError{"word span disagrees with n_words"};
    }
    return s;
  });
}

std::string labels_to_jsonl(std::span<const StoredLabel> labels) {
  return dump_lines(labels, [](const StoredLabel& l) {
    json source = {{"kind", source_kind_name(l.label.source.kind)}};
    if (!l.label.source.model_id.empty()) source["model_id"] = l.label.source.model_id;
    if (!l.label.source.template_id.empty()) source["template_id"] = l.label.source.template_id;
    json doc = {{"testimony_id", l.testimony_id},
                {"seg_id", l.seq_index},
                {"practice", label_name(Aspect::Practice, l.label.practice)},
                {"belief", label_name(Aspect::Belief, l.label.belief)},
                {"source", source}};
    if (l.label.practice_votes || l.label.belief_votes) {
      json votes = json::object();
      if (l.label.practice_votes) votes["practice"] = encode_tally(*l.label.practice_votes, Aspect::Practice);
      if (l.label.belief_votes) votes["belief"] = encode_tally(*l.label.belief_votes, Aspect::Belief);
      doc["votes"] = votes;
    }
    return doc;
  });
}

std::vector<StoredLabel> labels_from_jsonl(std::string_view text) {
  return parse_lines<StoredLabel>(text, [](const json& j) {
    StoredLabel l;
    l.testimony_id = get_string(j, "testimony_id");
    l.seq_index = get_index(j, "seg_id");
    l.label.practice = parse_label_name(Aspect::Practice, get_string(j, "practice"));
    l.label.belief = parse_label_name(Aspect::Belief, get_string(j, "belief"));
    const json& source = field(j, "source");
    l.label.source.kind = parse_source_kind(get_string(source, "kind"));
    if (source.contains("model_id")) l.label.source.model_id = get_string(source, "model_id");
    if (source.contains("template_id")) l.label.source.template_id = get_string(source, "template_id");
    if (j.contains("votes")) {
      const json& votes = j.at("votes");
      if (votes.contains("practice")) l.label.practice_votes = decode_tally(votes.at("practice"), Aspect::Practice);
      if (votes.contains("belief")) l.label.belief_votes = decode_tally(votes.at("belief"), Aspect::Belief);
    }
    return l;
  });
}

std::string trajectories_to_jsonl(std::span<const Trajectory> trajectories) {
  return dump_lines(trajectories, [](const Trajectory& t) {
    json points = json::array();
    for (const TrajectoryPoint& p : t.points) points.push_back({{"position", p.position}, {"value", p.value}});
    return json{{"testimony_id", t.testimony_id}, {"aspect", aspect_name(t.aspect)}, {"points", points}};
  });
}

std::vector<Trajectory> trajectories_from_jsonl(std::string_view text) {
  return parse_lines<Trajectory>(text, [](const json& j) {
    Trajectory t;
    t.testimony_id = get_string(j, "testimony_id");
    t.aspect = parse_aspect(get_string(j, "aspect"));
    const json& points = field(j, "points");
    if (!points.is_array()) throw FieldError{"'points' must be an array"};
    for (const json& p : points) {
      const json& v = field(p, "value");
      if (!v.is_number_integer() || v.get<int>() < -1 || v.get<int>() > 1) {
        throw FieldError{"point 'value' must be -1, 0 or 1"};
      }
      t.points.push_back({get_number(p, "position"), v.get<int>()});
    }
    return t;
  });
}

std::string index_to_jsonl(std::span<const IndexEntry> entries) {
  return dump_lines(entries, [](const IndexEntry& e) {
    return json{{"testimony_id", e.testimony_id}, {"position", e.position}, {"term_id", e.term_id}};
  });
}

std::vector<IndexEntry> index_from_jsonl(std::string_view text) {
  return parse_lines<IndexEntry>(text, [](const json& j) {
    return IndexEntry{get_string(j, "testimony_id"), get_number(j, "position"), get_string(j, "term_id")};
  });
}

std::string references_to_jsonl(std::span<const ReferenceTrajectory> references) {
  return dump_lines(references, [](const ReferenceTrajectory& r) {
    return json{{"testimony_id", r.testimony_id},
                {"class", reference_class_name(r.class_id)},
                {"positions", r.positions}};
  });
}

std::vector<ReferenceTrajectory> references_from_jsonl(std::string_view text) {
  return parse_lines<ReferenceTrajectory>(text, [](const json& j) {
    ReferenceTrajectory r;
    r.testimony_id = get_string(j, "testimony_id");
    r.class_id = parse_reference_class(get_string(j, "class"));
    const json& positions = field(j, "positions");
    if (!positions.is_array()) throw FieldError{"'positions' must be an array"};
    for (const json& p : positions) {
      if (!p.is_number()) throw FieldError{"positions must be numbers"};
      r.positions.push_back(p.get<double>());
    }
    return r;
  });
}

std::string annotations_to_jsonl(std::span<const AnnotationRecord> records) {
  return dump_lines(records, [](const AnnotationRecord& r) {
    return json{{"item_id", r.item_id}, {"annotator_id", r.annotator_id},
                {"task", task_name(r.task)}, {"label", r.label}};
  });
}

std::vector<AnnotationRecord> annotations_from_jsonl(std::string_view text) {
  return parse_lines<AnnotationRecord>(text, [](const json& j) {
    return AnnotationRecord{get_string(j, "item_id"), get_string(j, "annotator_id"),
                            parse_task(get_string(j, "task")), get_string(j, "label")};
  });
}

std::string adjudications_to_jsonl(std::span<const AdjudicatedItem> items) {
  return dump_lines(items, [](const AdjudicatedItem& a) {
    json doc = {{"item_id", a.item_id},
                {"task", task_name(a.task)},
                {"annotators", a.result.annotators},
                {"status", a.result.discarded() ? "discarded" : "gold"}};
    doc["gold"] = a.result.gold ? json(*a.result.gold) : json(nullptr);
    return doc;
  });
}

std::vector<AdjudicatedItem> adjudications_from_jsonl(std::string_view text) {
  return parse_lines<AdjudicatedItem>(text, [](const json& j) {
    AdjudicatedItem a;
    a.item_id = get_string(j, "item_id");
    a.task = parse_task(get_string(j, "task"));
    a.result.annotators = get_index(j, "annotators");
    const std::string status = get_string(j, "status");
    const json& gold = field(j, "gold");
    if (status == "gold") {
      if (!gold.is_string()) throw FieldError{"'gold' must be a string when status is gold"};
      a.result.gold = gold.get<std::string>();
    } else if (status == "discarded") {
      if (!gold.is_null()) throw FieldError{"'gold' must be null when status is discarded"};
    } else {
      throw FieldError{"unknown status '" + status + "'"};
    }
    return a;
  });
}

std::string period_tags_to_jsonl(std::span<const PeriodTag> tags) {
  return dump_lines(tags, [](const PeriodTag& t) {
    return json{{"position", t.position}, {"period", period_name(t.period)}};
  });
}

std::vector<PeriodTag> period_tags_from_jsonl(std::string_view text) {
  return parse_lines<PeriodTag>(text, [](const json& j) {
    return PeriodTag{get_number(j, "position"), parse_period(get_string(j, "period"))};
  });
}

}  // namespace arcs
