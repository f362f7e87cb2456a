#include "arcs/trajectory.hpp"

#include <algorithm>
#include <set>

#include "arcs/error.hpp"

namespace arcs {

std::vector<int> Trajectory::values() const {
  std::vector<int> out;
  out.reserve(points.size());
  for (const auto& p : points) out.push_back(p.value);
  return out;
}

Trajectory build_trajectory(std::span<const LabeledSegment> labels, Aspect aspect) {
  Trajectory t;
  t.aspect = aspect;
  if (!labels.empty()) t.testimony_id = labels.front().segment.testimony_id;
  std::optional<double> last;
  for (const LabeledSegment& ls : labels) {
    if (ls.segment.testimony_id != t.testimony_id) {
      throw DomainError("labels span testimonies '" + t.testimony_id + "' and '" +
                        ls.segment.testimony_id + "'");
    }
    if (last && !(ls.segment.position > *last)) {
      throw DomainError("testimony '" + t.testimony_id +
                        "': positions must strictly increase (duplicate or unsorted at " +
                        std::to_string(ls.segment.position) + ")");
    }
    last = ls.segment.position;
    if (auto v = trajectory_value(ls.label.get(aspect))) {
      t.points.push_back({ls.segment.position, *v});
    }
  }
  return t;
}

std::vector<Trajectory> build_trajectories(std::span<const LabeledSegment> labels, Aspect aspect) {
  std::vector<std::string> order;
  std::map<std::string, std::vector<LabeledSegment>> groups;
  for (const LabeledSegment& ls : labels) {
    auto [it, inserted] = groups.try_emplace(ls.segment.testimony_id);
    if (inserted) order.push_back(ls.segment.testimony_id);
    it->second.push_back(ls);
  }
  std::vector<Trajectory> out;
  out.reserve(order.size());
  for (const std::string& id : order) {
    auto& g = groups[id];
    std::stable_sort(g.begin(), g.end(), [](const LabeledSegment& a, const LabeledSegment& b) {
      return a.segment.seq_index < b.segment.seq_index;
    });
    out.push_back(build_trajectory(g, aspect));
  }
  return out;
}

Trajectory trajectory_from_values(std::span<const int> values, Aspect aspect,
                                  std::string testimony_id) {
  Trajectory t{std::move(testimony_id), aspect, {}};
  const double n = static_cast<double>(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    t.points.push_back({(static_cast<double>(i) + 0.5) / n, values[i]});
  }
  return t;
}

ShrunkSeries filter_shrink(const Trajectory& trajectory) {
  ShrunkSeries s;
  std::optional<double> first;
  double last = 0.0;
  for (const TrajectoryPoint& p : trajectory.points) {
    if (p.value == 0) continue;
    if (!first) first = p.position;
    last = p.position;
    if (s.values.empty() || s.values.back() != p.value) {
      s.values.push_back(p.value);
      s.positions.push_back(p.position);
    }
  }
  if (first) s.span = last - *first;
  return s;
}

ShrunkSeries filter_shrink(std::span<const int> values) {
  return filter_shrink(trajectory_from_values(values));
}

std::string_view coverage_name(Coverage c) {
  switch (c) {
    case Coverage::Low: return "Low";
    case Coverage::Medium: return "Medium";
    case Coverage::High: return "High";
  }
  return "?";
}

double nonzero_span(const Trajectory& trajectory) {
  std::optional<double> first;
  double last = 0.0;
  for (const TrajectoryPoint& p : trajectory.points) {
    if (p.value == 0) continue;
    if (!first) first = p.position;
    last = p.position;
  }
  if (!first) {
    throw DomainError("coverage undefined: trajectory '" + trajectory.testimony_id +
                      "' has no nonzero points");
  }
  return last - *first;
}

Coverage coverage_of_span(double span) {
  // Spans are differences of positions, so allow for representation error at the boundary.
  constexpr double kEps = 1e-9;
  if (span <= 0.33 + kEps) return Coverage::Low;
  if (span <= 0.67 + kEps) return Coverage::Medium;
  return Coverage::High;
}

Coverage coverage(const Trajectory& trajectory) { return coverage_of_span(nonzero_span(trajectory)); }

std::string_view reference_class_name(ReferenceClass c) {
  switch (c) {
    case ReferenceClass::B: return "B";
    case ReferenceClass::P: return "P";
    case ReferenceClass::PMinus: return "P-";
    case ReferenceClass::PPlus: return "P+";
    case ReferenceClass::BPlus: return "B+";
    case ReferenceClass::BMinus: return "B-";
  }
  return "?";
}

ReferenceClass parse_reference_class(std::string_view name) {
  if (name == "B") return ReferenceClass::B;
  if (name == "P") return ReferenceClass::P;
  if (name == "P-" || name == "P⁻") return ReferenceClass::PMinus;
  if (name == "P+" || name == "P⁺") return ReferenceClass::PPlus;
  if (name == "B+" || name == "B⁺") return ReferenceClass::BPlus;
  if (name == "B-" || name == "B⁻") return ReferenceClass::BMinus;
  throw ParseError("unknown reference class '" + std::string(name) + "'");
}

Aspect reference_aspect(ReferenceClass c) {
  switch (c) {
    case ReferenceClass::B:
    case ReferenceClass::BPlus:
    case ReferenceClass::BMinus: return Aspect::Belief;
    default: return Aspect::Practice;
  }
}

std::optional<int> reference_valence(ReferenceClass c) {
  switch (c) {
    case ReferenceClass::PPlus:
    case ReferenceClass::BPlus: return 1;
    case ReferenceClass::PMinus:
    case ReferenceClass::BMinus: return -1;
    default: return std::nullopt;
  }
}

namespace {

std::optional<int> valence_int(MappedValence v) {
  if (v == MappedValence::Plus) return 1;
  if (v == MappedValence::Minus) return -1;
  return std::nullopt;
}

std::string_view valence_text(MappedValence v) {
  if (v == MappedValence::Plus) return "+1";
  if (v == MappedValence::Minus) return "-1";
  return "u";
}

MappedValence parse_valence(std::string_view s) {
  if (s == "+1" || s == "1") return MappedValence::Plus;
  if (s == "-1") return MappedValence::Minus;
  if (s == "u" || s.empty()) return MappedValence::Unvalenced;
  throw ParseError("valence must be +1, -1 or u, got '" + std::string(s) + "'");
}

std::vector<std::string_view> split_tabs(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t tab = line.find('\t', start);
    out.push_back(line.substr(start, tab == std::string_view::npos ? tab : tab - start));
    if (tab == std::string_view::npos) break;
    start = tab + 1;
  }
  return out;
}

}  // namespace

void LabelMapping::add(MappingRow row) {
  if (row.term_id.empty()) throw DomainError("mapping term id is empty");
  if (index_.contains(row.term_id)) {
    throw DomainError("duplicate mapping term '" + row.term_id + "'");
  }
  const auto cls = reference_valence(row.class_id);
  if (cls) {
    const MappedValence implied = *cls > 0 ? MappedValence::Plus : MappedValence::Minus;
    if (row.valence == MappedValence::Unvalenced) {
      row.valence = implied;
    } else if (row.valence != implied) {
      throw DomainError("term '" + row.term_id + "': valence " +
                        std::string(valence_text(row.valence)) + " contradicts class " +
                        std::string(reference_class_name(row.class_id)));
    }
  }
  index_.emplace(row.term_id, rows_.size());
  rows_.push_back(std::move(row));
}

const MappingRow* LabelMapping::find(std::string_view term_id) const {
  auto it = index_.find(term_id);
  return it == index_.end() ? nullptr : &rows_[it->second];
}

bool LabelMapping::matches(std::string_view term_id, ReferenceClass query) const {
  const MappingRow* row = find(term_id);
  if (row == nullptr) return false;
  if (reference_aspect(row->class_id) != reference_aspect(query)) return false;
  const auto want = reference_valence(query);
  if (!want) return true;
  return valence_int(row->valence) == want;
}

LabelMapping LabelMapping::parse_tsv(std::string_view tsv) {
  LabelMapping m;
  std::size_t lineno = 0;
  std::size_t start = 0;
  bool header_seen = false;
  while (start <= tsv.size()) {
    std::size_t nl = tsv.find('\n', start);
    if (nl == std::string_view::npos) nl = tsv.size();
    std::string_view line = tsv.substr(start, nl - start);
    start = nl + 1;
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty() || line.front() == '#') continue;
    const auto cols = split_tabs(line);
    if (!header_seen) {
      header_seen = true;
      if (cols.size() >= 2 && cols[0] == "term_id") continue;
    }
    if (cols.size() != 3) {
      throw ParseError("expected 3 tab-separated columns, got " + std::to_string(cols.size()),
                       lineno);
    }
    try {
      m.add({std::string(cols[0]), parse_reference_class(cols[1]), parse_valence(cols[2])});
    } catch (const ParseError& e) {
      throw ParseError(e.what(), lineno);
    } catch (const DomainError& e) {
      throw ParseError(e.what(), lineno);
    }
  }
  return m;
}

std::string LabelMapping::to_tsv() const {
  std::string out = "term_id\tclass_id\tvalence\n";
  for (const MappingRow& r : rows_) {
    out += r.term_id;
    out += '\t';
    out += reference_class_name(r.class_id);
    out += '\t';
    out += valence_text(r.valence);
    out += '\n';
  }
  return out;
}

LabelMapping LabelMapping::thesaurus() {
  LabelMapping m;
  auto add = [&](ReferenceClass c, MappedValence v, std::initializer_list<const char*> terms) {
    for (const char* t : terms) m.add({t, c, v});
  };
  using enum ReferenceClass;
  add(PPlus, MappedValence::Plus,
      {"Ritual circumcision", "(bio) mohelim", "Jewish religious observances", "Jewish schools",
       "synagogue attendance", "mikva'ot", "Yahrzeit", "Jewish dietary laws",
       "ghetto Jewish religious observances", "camp Jewish religious observances",
       "refugee camp Jewish religious observances", "hiding-related Jewish religious observances",
       "Islamic prayers", "yizkor", "Kaddish", "prison Jewish religious observances",
       "Jewish mourning customs", "yeshivot",
       "forced labor battalion Jewish religious observances", "Hasidic rebbes",
       "(bio) synagogue organizations", "(bio) Baalei Keriah", "(bio) Baalei Tefillah",
       "(bio) synagogues' sisterhood", "(bio) synagogues' men's clubs",
       "deportation Jewish religious observances", "Jewish Theological Seminary of America",
       "transfer Jewish religious observances", "Beth Jacob schools", "b'nai mitzvah",
       "b'nai mitzvah (stills)", "Borerim", "Jewish religious observances (stills)",
       "Institute of Jewish Studies", "shamas", "Jewish Institute of Religion", "Mitnagdim",
       "observant/practicing", "Ramah Camping", "Movement", "Shema Yisrael"});
  add(PMinus, MappedValence::Minus,
      {"Christian religious observances", "church attendance", "religious identity",
       "communions (stills)", "confirmations (stills)",
       "Jehovah's Witness missionary activities", "Jehovah's Witness religious observances",
       "Mormon missionary activities", "Jehovah's Witness religious beliefs",
       "camp Jehovah's Witness religious observances", "baptisms",
       "forced labor battalion Jehovah's Witness religious observances",
       "camp Christian religious observances", "Eucharist", "Islamic religious observances",
       "baptisms (stills)", "prison Jehovah's Witness religious observances",
       "ghetto Christian religious observances", "Christian religious observances (stills)",
       "confirmations", "Islamic dietary laws", "Seventh-Day Adventist missionary activities",
       "non-observant/non-practicing", "Buddhist religious observances", "Buddhist lunar days",
       "karma", "Christian missionary activities", "Christian prayers"});
  add(P, MappedValence::Unvalenced, {"Rabbis"});
  add(BPlus, MappedValence::Plus,
      {"Prayers", "Jewish prayers", "camp Jewish prayers", "Jewish religious beliefs",
       "prison Jewish prayers", "forced labor battalion Jewish prayers", "camp prayers",
       "ghetto prayers", "deportation Jewish prayers", "hiding-related prayers",
       "forced march Jewish prayers"});
  add(BMinus, MappedValence::Minus,
      {"Christian religious beliefs", "camp Jehovah's Witness prayers",
       "Jehovah's Witness prayers", "Islamic identity", "Buddhist religious beliefs",
       "Islamic religious beliefs", "Armenian Genocide faith issues",
       "Bosnian War and Genocide faith issues", "Guatemalan Genocide faith issues",
       "Holocaust faith issues", "Rwandan Tutsi Genocide faith issues"});
  return m;
}

LabelMapping LabelMapping::topics() {
  LabelMapping m;
  m.add({"synagogue_holidays_shabbos", ReferenceClass::P, MappedValence::Unvalenced});
  m.add({"bar_mitzvah_torah", ReferenceClass::P, MappedValence::Unvalenced});
  m.add({"god_believe_faith", ReferenceClass::B, MappedValence::Unvalenced});
  m.add({"catholic_church_priest", ReferenceClass::PMinus, MappedValence::Minus});
  return m;
}

LabelMapping LabelMapping::identity() {
  LabelMapping m;
  for (ReferenceClass c : kReferenceClasses) {
    m.add({std::string(reference_class_name(c)), c, MappedValence::Unvalenced});
  }
  return m;
}

ReferenceExtraction extract_reference(std::span<const IndexEntry> indexed,
                                      const LabelMapping& mapping, ReferenceClass class_id) {
  ReferenceExtraction out;
  std::map<std::string, std::size_t> slot;
  std::set<std::string> warned;
  for (const IndexEntry& e : indexed) {
    if (mapping.find(e.term_id) == nullptr) {
      ++out.skipped;
      if (warned.insert(e.term_id).second) {
        out.warnings.push_back("unknown term '" + e.term_id + "' skipped");
      }
      continue;
    }
    if (!mapping.matches(e.term_id, class_id)) continue;
    auto [it, inserted] = slot.try_emplace(e.testimony_id, out.references.size());
    if (inserted) out.references.push_back({e.testimony_id, class_id, {}});
    out.references[it->second].positions.push_back(e.position);
  }
  for (ReferenceTrajectory& r : out.references) std::sort(r.positions.begin(), r.positions.end());
  return out;
}

std::vector<double> predicted_positions(const Trajectory& trajectory, ReferenceClass class_id) {
  std::vector<double> out;
  if (trajectory.aspect != reference_aspect(class_id)) return out;
  const auto want = reference_valence(class_id);
  for (const TrajectoryPoint& p : trajectory.points) {
    if (!want || p.value == *want) out.push_back(p.position);
  }
  return out;
}

}  // namespace arcs
