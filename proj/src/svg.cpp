// Part of specboltz, a spectral solver for the homogeneous relativistic
// Boltzmann equation with dynamical effective temperature and fugacity.
// SPDX-License-Identifier: Apache-2.0
#include "specboltz/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace specboltz {

namespace {

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                          "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f",
                          "#bcbd22", "#e377c2"};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

// tick positions: decades in log mode, otherwise a 1/2/5 ladder
std::vector<double> linear_ticks(double lo, double hi) {
  const double span = hi - lo;
  if (!(span > 0.0)) return {lo};
  double step = std::pow(10.0, std::floor(std::log10(span / 4.0)));
  if (span / step > 8.0) step *= 2.0;
  if (span / step > 8.0) step *= 2.5;
  std::vector<double> ticks;
  for (double v = std::ceil(lo / step) * step; v <= hi + 1e-12 * span; v += step)
    ticks.push_back(v);
  return ticks;
}

}  // namespace

std::string render_svg_plot(const PlotSpec& spec,
                            std::span<const PlotSeries> series) {
  const double ml = 72, mr = 150, mt = 40, mb = 52;
  const double pw = spec.width - ml - mr, ph = spec.height - mt - mb;

  double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
  double ymin = xmin, ymax = -xmin;
  for (const auto& s : series)
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      const double y = s.y[i];
      if (!std::isfinite(s.x[i]) || !std::isfinite(y)) continue;
      if (spec.log_y && y <= 0.0) continue;
      xmin = std::min(xmin, s.x[i]);
      xmax = std::max(xmax, s.x[i]);
      ymin = std::min(ymin, y);
      ymax = std::max(ymax, y);
    }
  if (!(xmax > xmin)) { xmin -= 0.5; xmax = xmin + 1.0; }
  if (!(ymax > ymin)) { ymin /= 2.0; ymax = ymin > 0 ? ymin * 4 : ymin + 1; }

  double lo_y = ymin, hi_y = ymax;
  if (spec.log_y) {
    lo_y = std::floor(std::log10(ymin));
    hi_y = std::ceil(std::log10(ymax));
    if (hi_y <= lo_y) hi_y = lo_y + 1;
  }

  auto px = [&](double x) { return ml + (x - xmin) / (xmax - xmin) * pw; };
  auto py = [&](double y) {
    const double v = spec.log_y ? std::log10(y) : y;
    return mt + ph - (v - lo_y) / (hi_y - lo_y) * ph;
  };

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << spec.width
     << "\" height=\"" << spec.height << "\" viewBox=\"0 0 " << spec.width
     << ' ' << spec.height << "\">\n";
  if (!spec.metadata.empty()) os << "<!-- " << spec.metadata << " -->\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<text x=\"" << ml + pw / 2 << "\" y=\"22\" text-anchor=\"middle\" "
        "font-family=\"sans-serif\" font-size=\"15\">" << spec.title
     << "</text>\n";

  // frame
  os << "<rect x=\"" << ml << "\" y=\"" << mt << "\" width=\"" << pw
     << "\" height=\"" << ph << "\" fill=\"none\" stroke=\"black\"/>\n";

  // y ticks
  os << "<g font-family=\"sans-serif\" font-size=\"11\">\n";
  if (spec.log_y) {
    int stride = std::max(1, int((hi_y - lo_y) / 10.0 + 0.5));
    for (int d = int(lo_y); d <= int(hi_y); d += stride) {
      const double yy = py(std::pow(10.0, d));
      os << "<line x1=\"" << ml - 4 << "\" y1=\"" << yy << "\" x2=\"" << ml + pw
         << "\" y2=\"" << yy << "\" stroke=\"#dddddd\"/>\n";
      os << "<text x=\"" << ml - 8 << "\" y=\"" << yy + 4
         << "\" text-anchor=\"end\">1e" << d << "</text>\n";
    }
  } else {
    for (double v : linear_ticks(lo_y, hi_y)) {
      const double yy = py(v);
      os << "<line x1=\"" << ml - 4 << "\" y1=\"" << yy << "\" x2=\"" << ml + pw
         << "\" y2=\"" << yy << "\" stroke=\"#dddddd\"/>\n";
      os << "<text x=\"" << ml - 8 << "\" y=\"" << yy + 4
         << "\" text-anchor=\"end\">" << num(v) << "</text>\n";
    }
  }
  // x ticks
  for (double v : linear_ticks(xmin, xmax)) {
    const double xx = px(v);
    os << "<line x1=\"" << xx << "\" y1=\"" << mt + ph << "\" x2=\"" << xx
       << "\" y2=\"" << mt + ph + 4 << "\" stroke=\"black\"/>\n";
    os << "<text x=\"" << xx << "\" y=\"" << mt + ph + 16
       << "\" text-anchor=\"middle\">" << num(v) << "</text>\n";
  }
  os << "</g>\n";

  os << "<text x=\"" << ml + pw / 2 << "\" y=\"" << spec.height - 10
     << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">"
     << spec.x_label << "</text>\n";
  os << "<text x=\"18\" y=\"" << mt + ph / 2
     << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" "
        "transform=\"rotate(-90 18 " << mt + ph / 2 << ")\">" << spec.y_label
     << "</text>\n";

  for (std::size_t si = 0; si < series.size(); ++si) {
    const auto& s = series[si];
    const char* color = kPalette[si % (sizeof kPalette / sizeof *kPalette)];
    os << "<polyline fill=\"none\" stroke=\"" << color
       << "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (!std::isfinite(s.y[i]) || (spec.log_y && s.y[i] <= 0.0)) continue;
      os << num(px(s.x[i])) << ',' << num(py(s.y[i])) << ' ';
    }
    os << "\"/>\n";
    const double ly = mt + 14 + 16 * double(si);
    os << "<line x1=\"" << ml + pw + 8 << "\" y1=\"" << ly << "\" x2=\""
       << ml + pw + 28 << "\" y2=\"" << ly << "\" stroke=\"" << color
       << "\" stroke-width=\"2\"/>\n";
    os << "<text x=\"" << ml + pw + 32 << "\" y=\"" << ly + 4
       << "\" font-family=\"sans-serif\" font-size=\"11\">" << s.label
       << "</text>\n";
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace specboltz
