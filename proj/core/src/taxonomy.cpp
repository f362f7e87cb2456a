#include "arcs/taxonomy.hpp"

#include <algorithm>
#include <map>

#include "arcs/csv.hpp"
#include "arcs/error.hpp"

namespace arcs {

std::string_view structure_name(StructureClass c) {
  switch (c) {
    case StructureClass::ConstantNegative: return "ConstantNegative";
    case StructureClass::ConstantPositive: return "ConstantPositive";
    case StructureClass::Ascending: return "Ascending";
    case StructureClass::Descending: return "Descending";
    case StructureClass::Oscillating: return "Oscillating";
    case StructureClass::NeutralOnly: return "NeutralOnly";
  }
  return "?";
}

StructureClass parse_structure_name(std::string_view name) {
  for (StructureClass c : kAllStructures) {
    if (structure_name(c) == name) return c;
  }
  throw ParseError("unknown structure class '" + std::string(name) + "'");
}

StructureClass classify_structure(std::span<const int> values) {
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i] != 1 && values[i] != -1) {
      throw InvariantViolation("shrunk series holds value " + std::to_string(values[i]));
    }
    if (i > 0 && values[i] == values[i - 1]) {
      throw InvariantViolation("shrunk series repeats a value at index " + std::to_string(i));
    }
  }
  switch (values.size()) {
    case 0: return StructureClass::NeutralOnly;
    case 1: return values[0] > 0 ? StructureClass::ConstantPositive : StructureClass::ConstantNegative;
    case 2: return values[0] < 0 ? StructureClass::Ascending : StructureClass::Descending;
    default: return StructureClass::Oscillating;
  }
}

StructureClass classify_structure(const ShrunkSeries& series) {
  return classify_structure(std::span<const int>(series.values));
}

StructureClass classify_trajectory(const Trajectory& trajectory) {
  return classify_structure(filter_shrink(trajectory));
}

StructureClass sign_flip(StructureClass c) {
  switch (c) {
    case StructureClass::ConstantNegative: return StructureClass::ConstantPositive;
    case StructureClass::ConstantPositive: return StructureClass::ConstantNegative;
    case StructureClass::Ascending: return StructureClass::Descending;
    case StructureClass::Descending: return StructureClass::Ascending;
    default: return c;
  }
}

std::string LengthBin::label() const {
  if (!hi) return ">" + std::to_string(lo == 0 ? 0 : lo - 1);
  return std::to_string(lo) + "-" + std::to_string(*hi);
}

std::vector<LengthBin> default_length_bins(Aspect aspect) {
  if (aspect == Aspect::Belief) return {{2, 3}, {4, 8}, {9, std::nullopt}};
  return {{2, 13}, {14, 29}, {30, std::nullopt}};
}

const DistributionRow& Distribution::row(StructureClass c) const {
  for (const auto& r : rows) {
    if (r.structure == c) return r;
  }
  throw DomainError("distribution has no row for " + std::string(structure_name(c)));
}

Distribution taxonomy_distribution(std::span<const Trajectory> trajectories,
                                   DistributionOptions options) {
  Distribution d;
  for (StructureClass c : kAllStructures) d.rows.push_back({c, 0, 0.0});
  for (const Trajectory& t : trajectories) {
    if (options.length && !options.length->contains(t.size())) {
      ++d.filtered_out;
      continue;
    }
    const StructureClass c = classify_trajectory(t);
    ++d.rows[static_cast<std::size_t>(c)].count;
    if (c != StructureClass::NeutralOnly || options.include_neutral) ++d.classified;
  }
  if (d.classified > 0) {
    for (auto& r : d.rows) {
      if (r.structure == StructureClass::NeutralOnly && !options.include_neutral) continue;
      r.proportion = static_cast<double>(r.count) / static_cast<double>(d.classified);
    }
  }
  return d;
}

std::vector<std::size_t> CrossTab::row_totals() const {
  std::vector<std::size_t> out;
  for (const auto& row : counts) {
    std::size_t s = 0;
    for (std::size_t v : row) s += v;
    out.push_back(s);
  }
  return out;
}

std::vector<std::size_t> CrossTab::col_totals() const {
  std::vector<std::size_t> out(col_labels.size(), 0);
  for (const auto& row : counts) {
    for (std::size_t j = 0; j < row.size(); ++j) out[j] += row[j];
  }
  return out;
}

CrossTab coverage_crosstab(std::span<const Trajectory> trajectories) {
  CrossTab t;
  for (StructureClass c : kAllStructures) {
    if (c != StructureClass::NeutralOnly) t.row_labels.emplace_back(structure_name(c));
  }
  for (Coverage c : {Coverage::Low, Coverage::Medium, Coverage::High}) {
    t.col_labels.emplace_back(coverage_name(c));
  }
  t.counts.assign(t.row_labels.size(), std::vector<std::size_t>(t.col_labels.size(), 0));
  for (const Trajectory& tr : trajectories) {
    const StructureClass c = classify_trajectory(tr);
    if (c == StructureClass::NeutralOnly) continue;
    ++t.counts[static_cast<std::size_t>(c)][static_cast<std::size_t>(coverage(tr))];
    ++t.total;
  }
  return t;
}

CrossTab aspect_crosstab(std::span<const Trajectory> belief, std::span<const Trajectory> practice) {
  CrossTab t;
  for (StructureClass c : kAllStructures) {
    t.row_labels.emplace_back(structure_name(c));
    t.col_labels.emplace_back(structure_name(c));
  }
  t.counts.assign(kAllStructures.size(), std::vector<std::size_t>(kAllStructures.size(), 0));
  std::vector<std::string> order;
  std::map<std::string, std::pair<StructureClass, StructureClass>> pairs;
  auto slot = [&](const std::string& id) -> std::pair<StructureClass, StructureClass>& {
    auto [it, inserted] =
        pairs.try_emplace(id, StructureClass::NeutralOnly, StructureClass::NeutralOnly);
    if (inserted) order.push_back(id);
    return it->second;
  };
  for (const Trajectory& tr : belief) slot(tr.testimony_id).first = classify_trajectory(tr);
  for (const Trajectory& tr : practice) slot(tr.testimony_id).second = classify_trajectory(tr);
  for (const std::string& id : order) {
    const auto [b, p] = pairs[id];
    ++t.counts[static_cast<std::size_t>(b)][static_cast<std::size_t>(p)];
    ++t.total;
  }
  return t;
}

std::string distribution_csv(const Distribution& d) {
  std::string out = "class,count,proportion\n";
  for (const auto& r : d.rows) {
    out += csv_row({std::string(structure_name(r.structure)), std::to_string(r.count),
                    format_number(r.proportion)});
  }
  return out;
}

std::string crosstab_csv(const CrossTab& t) {
  std::vector<std::string> header{""};
  header.insert(header.end(), t.col_labels.begin(), t.col_labels.end());
  std::string out = csv_row(header);
  for (std::size_t i = 0; i < t.row_labels.size(); ++i) {
    std::vector<std::string> row{t.row_labels[i]};
    for (std::size_t v : t.counts[i]) row.push_back(std::to_string(v));
    out += csv_row(row);
  }
  return out;
}

}  // namespace arcs
