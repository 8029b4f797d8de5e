#pragma once

#include <string>
#include <vector>

#include "ellint/ellipsoid.hpp"

namespace ellint {

// Self-contained SVG output for 2D ellipsoids and line charts. Ellipse
// boundaries are polylines of 256 points computed from Cholesky factors, so
// the files stay diffable and free of renderer-specific arc handling.

struct SvgEllipse {
  Ellipsoid ellipsoid;
  std::string color = "#1f77b4";
  bool dashed = false;
  std::string label;
};

std::string render_ellipses_svg(const std::vector<SvgEllipse>& ellipses,
                                int width = 640, int height = 640);

struct SvgSeries {
  std::vector<double> values;  // plotted against 1..N
  std::string color = "#1f77b4";
  std::string label;
};

std::string render_line_chart_svg(const std::vector<SvgSeries>& series,
                                  const std::string& x_label,
                                  const std::string& y_label, int width = 720,
                                  int height = 480);

}  // namespace ellint
