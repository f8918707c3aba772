// plot.hpp — static SVG scatter plots: per-series point clouds with
// bin-average polylines, dashed fitting lines, optional bold markers,
// axis ticks and a legend.

#pragma once

#include "jclab/sweep.hpp"

#include <string>
#include <utility>
#include <vector>

namespace jclab {

struct PlotSeries {
    std::string label;
    std::vector<std::pair<double, double>> points;
    std::vector<std::pair<double, double>> curve;     // bin means
    bool has_fit = false;
    double fit_slope = 0.0;
    double fit_intercept = 0.0;
    std::vector<std::pair<double, double>> emphasis;  // bold markers
};

struct PlotSpec {
    std::string title;
    std::string xlabel;
    std::string ylabel;
    std::vector<PlotSeries> series;
    // Scatter clouds larger than this are thinned with a uniform stride.
    std::size_t max_points_per_series = 4000;
};

void write_svg_plot(const std::string& path, const PlotSpec& spec);

// Scatter of (entanglement, primary response) with overlaid bin means and
// fit line, one color per result. Constant-x reference ensembles collapse
// to a bold mean marker; fixed-mixedness ensembles add a bold mean dot.
void emit_plot(const std::vector<SweepResult>& results, const std::string& path);
void emit_plot(const SweepResult& result, const std::string& path);

} // namespace jclab
