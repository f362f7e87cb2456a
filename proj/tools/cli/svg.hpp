#pragma once

#include <string>
#include <vector>

#include "arcs/taxonomy.hpp"
#include "arcs/trajectory.hpp"

namespace arcs::cli {

/// Extent of one segment on the [0, 1] timeline; lo == hi draws a thin tick.
struct Mark {
  double lo = 0.0;
  double hi = 0.0;
  int value = 0;
};

/// One horizontal lane of the alignment plot.
struct Lane {
  std::string label;
  /// Predicted marks are coloured by valence; reference marks share one colour.
  std::vector<Mark> marks;
  bool reference = false;
};

/// Predicted trajectories and reference positions on a shared [0, 1] timeline.
std::string alignment_svg(const std::string& title, const std::vector<Lane>& lanes);

struct Panel {
  std::string label;
  Distribution distribution;
};

/// Side-by-side bar charts of structure proportions, one panel each.
std::string distribution_svg(const std::string& title, const std::vector<Panel>& panels);

}  // namespace arcs::cli
