#pragma once

// Minimal static SVG line plots: stacked panels with lines, shaded x-ranges
// and lo/mid/hi bands.

#include <string>
#include <vector>

namespace rwm::svg {

struct Line {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
  std::string color = "#1f77b4";
};

struct Band {
  std::string label;
  std::vector<double> x;
  std::vector<double> lo;
  std::vector<double> mid;
  std::vector<double> hi;
  std::string color = "#1f77b4";
};

struct Shade {
  double x0 = 0.0;
  double x1 = 0.0;
};

struct Panel {
  std::string title;
  std::string xlabel;
  std::string ylabel;
  std::vector<Line> lines;
  std::vector<Band> bands;
  std::vector<Shade> shades;
};

std::string escape(const std::string& text);

/// Panels are stacked vertically. Non-finite points are skipped.
std::string render(const std::vector<Panel>& panels, int width = 860, int panel_height = 280);

/// Colors cycled by series index.
const std::string& palette(std::size_t i);

}  // namespace rwm::svg
