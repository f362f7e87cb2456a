#include "svg.hpp"

#include <algorithm>
#include <cstdio>

namespace arcs::cli {

namespace {

std::string fixed(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string one_decimal(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.1f", v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

const char* valence_colour(int v) {
  if (v > 0) return "#1b9e77";
  if (v < 0) return "#d95f02";
  return "#7f7f7f";
}

std::string header(double width, double height) {
  return "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fixed(width) + "\" height=\"" +
         fixed(height) + "\" viewBox=\"0 0 " + fixed(width) + " " + fixed(height) +
         "\" font-family=\"sans-serif\" font-size=\"12\">\n"
         "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
}

std::string text(double x, double y, const std::string& s, const char* anchor = "start") {
  return "<text x=\"" + fixed(x) + "\" y=\"" + fixed(y) + "\" text-anchor=\"" + anchor + "\">" +
         escape(s) + "</text>\n";
}

std::string line(double x1, double y1, double x2, double y2, const char* stroke, double w = 1.0) {
  return "<line x1=\"" + fixed(x1) + "\" y1=\"" + fixed(y1) + "\" x2=\"" + fixed(x2) + "\" y2=\"" +
         fixed(y2) + "\" stroke=\"" + stroke + "\" stroke-width=\"" + fixed(w) + "\"/>\n";
}

}  // namespace

std::string alignment_svg(const std::string& title, const std::vector<Lane>& lanes) {
  const double left = 150, right = 30, top = 40, lane_h = 36, axis_h = 40;
  const double plot_w = 600;
  const double width = left + plot_w + right;
  const double height = top + lane_h * static_cast<double>(lanes.size()) + axis_h;
  std::string out = header(width, height);
  out += text(left, 22, title);
  for (std::size_t i = 0; i < lanes.size(); ++i) {
    const Lane& lane = lanes[i];
    const double y = top + lane_h * (static_cast<double>(i) + 0.5);
    out += text(left - 10, y + 4, lane.label, "end");
    out += line(left, y, left + plot_w, y, "#dddddd");
    for (const Mark& m : lane.marks) {
      const double x = left + m.lo * plot_w;
      const double w = std::max(2.0, (m.hi - m.lo) * plot_w);
      out += "<rect x=\"" + fixed(x) + "\" y=\"" + fixed(y - 10) + "\" width=\"" + fixed(w) +
             "\" height=\"20\" fill=\"" + (lane.reference ? "#3a3a98" : valence_colour(m.value)) + "\"/>\n";
    }
  }
  const double axis_y = top + lane_h * static_cast<double>(lanes.size()) + 8;
  out += line(left, axis_y, left + plot_w, axis_y, "black");
  for (int k = 0; k <= 10; ++k) {
    const double x = left + plot_w * k / 10.0;
    out += line(x, axis_y, x, axis_y + 5, "black");
    out += text(x, axis_y + 18, one_decimal(k / 10.0), "middle");
  }
  out += "</svg>\n";
  return out;
}

std::string distribution_svg(const std::string& title, const std::vector<Panel>& panels) {
  const double panel_w = 260, panel_h = 220, gap = 40, top = 50, bottom = 100, left = 100;
  const double width = left + (panel_w + gap) * static_cast<double>(panels.size()) + gap;
  const double height = top + panel_h + bottom;
  std::string out = header(width, height);
  out += text(left, 24, title);
  const double bar_slot = panel_w / static_cast<double>(kAllStructures.size());
  for (std::size_t p = 0; p < panels.size(); ++p) {
    const Panel& panel = panels[p];
    const double x0 = left + (panel_w + gap) * static_cast<double>(p);
    const double base = top + panel_h;
    out += text(x0 + panel_w / 2, top - 8,
                panel.label + " (n=" + std::to_string(panel.distribution.classified) + ")", "middle");
    out += line(x0, base, x0 + panel_w, base, "black");
    out += line(x0, top, x0, base, "black");
    for (int tick = 0; tick <= 4; ++tick) {
      const double y = base - panel_h * tick / 4.0;
      out += line(x0 - 4, y, x0, y, "black");
      if (p == 0) out += text(x0 - 6, y + 4, std::to_string(tick * 25) + "%", "end");
    }
    for (std::size_t b = 0; b < panel.distribution.rows.size(); ++b) {
      const DistributionRow& row = panel.distribution.rows[b];
      const double h = panel_h * row.proportion;
      const double x = x0 + bar_slot * static_cast<double>(b) + bar_slot * 0.15;
      out += "<rect x=\"" + fixed(x) + "\" y=\"" + fixed(base - h) + "\" width=\"" +
             fixed(bar_slot * 0.7) + "\" height=\"" + fixed(h) + "\" fill=\"#4c72b0\"/>\n";
      out += text(x + bar_slot * 0.35, base - h - 4, one_decimal(row.proportion * 100) + "%",
                  "middle");
      const double lx = x + bar_slot * 0.35, ly = base + 12;
      out += "<text x=\"" + fixed(lx) + "\" y=\"" + fixed(ly) + "\" text-anchor=\"end\" transform=\"rotate(-45 " +
             fixed(lx) + " " + fixed(ly) + ")\">" + std::string(structure_name(row.structure)) + "</text>\n";
    }
  }
  out += "</svg>\n";
  return out;
}

}  // namespace arcs::cli
