#include "hrz/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <stdexcept>

namespace hrz::svg {

namespace {

constexpr double kWidth = 800, kHeight = 520;
constexpr double kMarginL = 70, kMarginR = 20, kMarginT = 40, kMarginB = 50;

struct Scale {
  double min, max;
  double lo_px, hi_px;
  double operator()(double v) const {
    double t = (max > min) ? (v - min) / (max - min) : 0.5;
    return lo_px + t * (hi_px - lo_px);
  }
};

std::string esc(const std::string& s) {
  std::string o;
  for (char c : s) {
    switch (c) {
      case '<': o += "&lt;"; break;
      case '>': o += "&gt;"; break;
      case '&': o += "&amp;"; break;
      default: o += c;
    }
  }
  return o;
}

void axes(std::ofstream& out, const Scale& sx, const Scale& sy, const std::string& title,
          const std::string& xlabel, const std::string& ylabel) {
  out << "<rect x='0' y='0' width='" << kWidth << "' height='" << kHeight
      << "' fill='white'/>\n";
  out << "<line x1='" << kMarginL << "' y1='" << kHeight - kMarginB << "' x2='"
      << kWidth - kMarginR << "' y2='" << kHeight - kMarginB
      << "' stroke='black' stroke-width='1'/>\n";
  out << "<line x1='" << kMarginL << "' y1='" << kMarginT << "' x2='" << kMarginL << "' y2='"
      << kHeight - kMarginB << "' stroke='black' stroke-width='1'/>\n";
  out << "<text x='" << kWidth / 2 << "' y='" << kMarginT - 15
      << "' text-anchor='middle' font-size='16'>" << esc(title) << "</text>\n";
  out << "<text x='" << kWidth / 2 << "' y='" << kHeight - 10
      << "' text-anchor='middle' font-size='13'>" << esc(xlabel) << "</text>\n";
  out << "<text x='18' y='" << kHeight / 2 << "' text-anchor='middle' font-size='13' "
      << "transform='rotate(-90 18 " << kHeight / 2 << ")'>" << esc(ylabel) << "</text>\n";
  // tick labels at the extremes
  out << std::setprecision(6);
  out << "<text x='" << kMarginL << "' y='" << kHeight - kMarginB + 18
      << "' text-anchor='middle' font-size='11'>" << sx.min << "</text>\n";
  out << "<text x='" << kWidth - kMarginR << "' y='" << kHeight - kMarginB + 18
      << "' text-anchor='middle' font-size='11'>" << sx.max << "</text>\n";
  out << "<text x='" << kMarginL - 6 << "' y='" << kHeight - kMarginB
      << "' text-anchor='end' font-size='11'>" << sy.min << "</text>\n";
  out << "<text x='" << kMarginL - 6 << "' y='" << kMarginT + 4
      << "' text-anchor='end' font-size='11'>" << sy.max << "</text>\n";
}

Scale make_x(double mn, double mx) {
  return {mn, mx, kMarginL, kWidth - kMarginR};
}
Scale make_y(double mn, double mx) {
  return {mn, mx, kHeight - kMarginB, kMarginT};
}

}  // namespace

void scatter_plot(const std::string& path, std::span<const double> x,
                  std::span<const double> y, const std::string& title,
                  const std::string& xlabel, const std::string& ylabel) {
  if (x.size() != y.size()) throw std::invalid_argument("scatter_plot: size mismatch");
  std::ofstream out(path);
  if (!out) throw std::runtime_error("scatter_plot: cannot open " + path);
  double xmn = 0, xmx = 1, ymn = 0, ymx = 1;
  if (!x.empty()) {
    xmn = *std::min_element(x.begin(), x.end());
    xmx = *std::max_element(x.begin(), x.end());
    ymn = *std::min_element(y.begin(), y.end());
    ymx = *std::max_element(y.begin(), y.end());
    if (ymn == ymx) {
      ymn -= 1;
      ymx += 1;
    }
    if (xmn == xmx) {
      xmn -= 1;
      xmx += 1;
    }
  }
  Scale sx = make_x(xmn, xmx), sy = make_y(ymn, ymx);
  out << "<?xml version='1.0' encoding='UTF-8'?>\n";
  out << "<svg xmlns='http://www.w3.org/2000/svg' width='" << kWidth << "' height='"
      << kHeight << "'>\n";
  axes(out, sx, sy, title, xlabel, ylabel);
  out << std::setprecision(8);
  for (std::size_t i = 0; i < x.size(); ++i)
    out << "<circle cx='" << sx(x[i]) << "' cy='" << sy(y[i])
        << "' r='1.6' fill='steelblue'/>\n";
  out << "</svg>\n";
}

void histogram(const std::string& path, std::span<const double> bin_edges,
               std::span<const uint64_t> counts, const std::string& title,
               std::span<const double> overlay_x, std::span<const double> overlay_y) {
  if (bin_edges.size() != counts.size() + 1)
    throw std::invalid_argument("histogram: edges must be counts+1");
  std::ofstream out(path);
  if (!out) throw std::runtime_error("histogram: cannot open " + path);
  double cmax = 1.0;
  for (uint64_t c : counts) cmax = std::max(cmax, static_cast<double>(c));
  for (double v : overlay_y) cmax = std::max(cmax, v);
  Scale sx = make_x(bin_edges.front(), bin_edges.back());
  Scale sy = make_y(0.0, cmax * 1.05);
  out << "<?xml version='1.0' encoding='UTF-8'?>\n";
  out << "<svg xmlns='http://www.w3.org/2000/svg' width='" << kWidth << "' height='"
      << kHeight << "'>\n";
  axes(out, sx, sy, title, "theta", "count");
  out << std::setprecision(8);
  for (std::size_t k = 0; k < counts.size(); ++k) {
    double x0 = sx(bin_edges[k]), x1 = sx(bin_edges[k + 1]);
    double y1 = sy(static_cast<double>(counts[k])), y0 = sy(0.0);
    out << "<rect x='" << x0 << "' y='" << y1 << "' width='" << (x1 - x0) << "' height='"
        << (y0 - y1) << "' fill='lightsteelblue' stroke='black' stroke-width='0.5'/>\n";
  }
  if (!overlay_x.empty() && overlay_x.size() == overlay_y.size()) {
    out << "<polyline fill='none' stroke='crimson' stroke-width='1.5' points='";
    for (std::size_t i = 0; i < overlay_x.size(); ++i)
      out << sx(overlay_x[i]) << "," << sy(overlay_y[i]) << " ";
    out << "'/>\n";
  }
  out << "</svg>\n";
}

}  // namespace hrz::svg
