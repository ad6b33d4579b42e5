// Part of specboltz, a spectral solver for the homogeneous relativistic
// Boltzmann equation with dynamical effective temperature and fugacity.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <span>
#include <string>
#include <vector>

namespace specboltz {

struct PlotSeries {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
};

struct PlotSpec {
  std::string title;
  std::string x_label;
  std::string y_label;
  bool log_y = true;
  std::string metadata;  // embedded as an SVG comment (config hash etc.)
  int width = 720;
  int height = 480;
};

// Standalone SVG line plot (static result display).  Non-positive values are
// skipped in log mode.
std::string render_svg_plot(const PlotSpec& spec,
                            std::span<const PlotSeries> series);

}  // namespace specboltz
