#include "ellint/svg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "ellint/json_io.hpp"

namespace ellint {

namespace {

constexpr int kBoundaryPoints = 256;

struct Box {
  double xmin = std::numeric_limits<double>::infinity();
  double xmax = -std::numeric_limits<double>::infinity();
  double ymin = std::numeric_limits<double>::infinity();
  double ymax = -std::numeric_limits<double>::infinity();

  void include(double x, double y) {
    xmin = std::min(xmin, x);
    xmax = std::max(xmax, x);
    ymin = std::min(ymin, y);
    ymax = std::max(ymax, y);
  }

  void pad(double fraction) {
    const double dx = std::max(1e-9, (xmax - xmin) * fraction);
    const double dy = std::max(1e-9, (ymax - ymin) * fraction);
    xmin -= dx;
    xmax += dx;
    ymin -= dy;
    ymax += dy;
  }
};

std::vector<std::pair<double, double>> boundary(const Ellipsoid& e) {
  std::vector<std::pair<double, double>> pts;
  pts.reserve(kBoundaryPoints + 1);
  const Eigen::MatrixXd& l = e.cholesky();
  for (int k = 0; k <= kBoundaryPoints; ++k) {
    const double a = 2.0 * std::numbers::pi * k / kBoundaryPoints;
    const Eigen::Vector2d u(std::cos(a), std::sin(a));
    const Eigen::Vector2d p = e.center() + l * u;
    pts.emplace_back(p.x(), p.y());
  }
  return pts;
}

std::string polyline(const std::vector<std::pair<double, double>>& pts,
                     const Box& box, int width, int height,
                     const std::string& color, bool dashed) {
  std::ostringstream ss;
  ss << "  <polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\"";
  if (dashed) ss << " stroke-dasharray=\"6 4\"";
  ss << " points=\"";
  const double sx = width / (box.xmax - box.xmin);
  const double sy = height / (box.ymax - box.ymin);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (i) ss << ' ';
    ss << format_number((pts[i].first - box.xmin) * sx) << ','
       << format_number(height - (pts[i].second - box.ymin) * sy);
  }
  ss << "\"/>\n";
  return ss.str();
}

std::string escape_xml(const std::string& s) {
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

std::string svg_open(int width, int height) {
  std::ostringstream ss;
  ss << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
     << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
     << "\" height=\"" << height << "\" viewBox=\"0 0 " << width << ' '
     << height << "\">\n";
  return ss.str();
}

}  // namespace

std::string render_ellipses_svg(const std::vector<SvgEllipse>& ellipses,
                                int width, int height) {
  std::vector<std::vector<std::pair<double, double>>> curves;
  Box box;
  for (const SvgEllipse& e : ellipses) {
    if (e.ellipsoid.dimension() != 2)
      throw InvalidArgument("render_ellipses_svg: 2D ellipsoids only");
    curves.push_back(boundary(e.ellipsoid));
    for (const auto& [x, y] : curves.back()) box.include(x, y);
  }
  if (curves.empty()) box.include(0.0, 0.0);
  box.pad(0.08);

  std::ostringstream ss;
  ss << svg_open(width, height);
  ss << "  <rect width=\"" << width << "\" height=\"" << height
     << "\" fill=\"white\"/>\n";
  for (std::size_t i = 0; i < curves.size(); ++i)
    ss << polyline(curves[i], box, width, height, ellipses[i].color,
                   ellipses[i].dashed);
  int legend_y = 20;
  for (const SvgEllipse& e : ellipses) {
    if (e.label.empty()) continue;
    ss << "  <text x=\"12\" y=\"" << legend_y << "\" font-size=\"13\" fill=\""
       << e.color << "\">" << escape_xml(e.label) << "</text>\n";
    legend_y += 18;
  }
  ss << "</svg>\n";
  return ss.str();
}

std::string render_line_chart_svg(const std::vector<SvgSeries>& series,
                                  const std::string& x_label,
                                  const std::string& y_label, int width,
                                  int height) {
  const int margin = 48;
  const int plot_w = width - 2 * margin;
  const int plot_h = height - 2 * margin;
  Box box;
  for (const SvgSeries& s : series)
    for (std::size_t i = 0; i < s.values.size(); ++i)
      box.include(static_cast<double>(i + 1), s.values[i]);
  if (!std::isfinite(box.xmin)) box.include(0.0, 0.0);
  box.pad(0.05);

  std::ostringstream ss;
  ss << svg_open(width, height);
  ss << "  <rect width=\"" << width << "\" height=\"" << height
     << "\" fill=\"white\"/>\n";
  ss << "  <line x1=\"" << margin << "\" y1=\"" << height - margin << "\" x2=\""
     << width - margin << "\" y2=\"" << height - margin
     << "\" stroke=\"black\"/>\n";
  ss << "  <line x1=\"" << margin << "\" y1=\"" << margin << "\" x2=\"" << margin
     << "\" y2=\"" << height - margin << "\" stroke=\"black\"/>\n";
  ss << "  <text x=\"" << width / 2 << "\" y=\"" << height - 10
     << "\" font-size=\"13\" text-anchor=\"middle\">" << escape_xml(x_label)
     << "</text>\n";
  ss << "  <text x=\"14\" y=\"" << height / 2
     << "\" font-size=\"13\" text-anchor=\"middle\" transform=\"rotate(-90 14 "
     << height / 2 << ")\">" << escape_xml(y_label) << "</text>\n";

  for (const SvgSeries& s : series) {
    std::ostringstream pts;
    for (std::size_t i = 0; i < s.values.size(); ++i) {
      const double x =
          margin + (static_cast<double>(i + 1) - box.xmin) /
                       (box.xmax - box.xmin) * plot_w;
      const double y = height - margin -
                       (s.values[i] - box.ymin) / (box.ymax - box.ymin) * plot_h;
      if (i) pts << ' ';
      pts << format_number(x) << ',' << format_number(y);
    }
    ss << "  <polyline fill=\"none\" stroke=\"" << s.color
       << "\" stroke-width=\"1.5\" points=\"" << pts.str() << "\"/>\n";
  }
  int legend_y = margin + 6;
  for (const SvgSeries& s : series) {
    if (s.label.empty()) continue;
    ss << "  <text x=\"" << margin + 8 << "\" y=\"" << legend_y
       << "\" font-size=\"13\" fill=\"" << s.color << "\">"
       << escape_xml(s.label) << "</text>\n";
    legend_y += 18;
  }
  ss << "</svg>\n";
  return ss.str();
}

}  // namespace ellint
