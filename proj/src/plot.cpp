#include "jclab/plot.hpp"

#include "jclab/io.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <stdexcept>

namespace jclab {

namespace {

constexpr double kWidth = 760.0, kHeight = 540.0;
constexpr double kLeft = 72.0, kRight = 24.0, kTop = 40.0, kBottom = 56.0;

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                          "#ff7f0e", "#17becf", "#8c564b", "#7f7f7f"};

struct Range {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    void include(double v) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    void pad() {
        if (!(lo < hi)) {
            lo -= 0.5;
            hi += 0.5;
        }
        double margin = 0.05 * (hi - lo);
        lo -= margin;
        hi += margin;
    }
};

// Tick step of the form {1,2,5}·10^k giving roughly `target` divisions.
double nice_step(double span, int target = 6) {
    double raw = span / target;
    double mag = std::pow(10.0, std::floor(std::log10(raw)));
    for (double m : {1.0, 2.0, 5.0, 10.0})
        if (raw <= m * mag) return m * mag;
    return 10.0 * mag;
}

std::string fmt_tick(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%g", v);
    return buf;
}

} // namespace

void write_svg_plot(const std::string& path, const PlotSpec& spec) {
    if (spec.series.empty()) throw std::invalid_argument("write_svg_plot: no series");
    Range xr, yr;
    for (const auto& s : spec.series) {
        for (auto [x, y] : s.points) {
            xr.include(x);
            yr.include(y);
        }
        for (auto [x, y] : s.curve) {
            xr.include(x);
            yr.include(y);
        }
        for (auto [x, y] : s.emphasis) {
            xr.include(x);
            yr.include(y);
        }
    }
    if (!std::isfinite(xr.lo) || !std::isfinite(yr.lo))
        throw std::invalid_argument("write_svg_plot: series contain no points");
    xr.pad();
    yr.pad();
    auto px = [&](double x) { return kLeft + (x - xr.lo) / (xr.hi - xr.lo) * (kWidth - kLeft - kRight); };
    auto py = [&](double y) { return kHeight - kBottom - (y - yr.lo) / (yr.hi - yr.lo) * (kHeight - kTop - kBottom); };

    std::filesystem::path p(path);
    if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open plot file for writing: " + path);

    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
        << kHeight << "\" viewBox=\"0 0 " << kWidth << " " << kHeight << "\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out << "<text x=\"" << kWidth / 2 << "\" y=\"22\" font-family=\"sans-serif\" font-size=\"15\" "
           "text-anchor=\"middle\">"
        << spec.title << "</text>\n";

    // axes and ticks
    out << "<g stroke=\"black\" stroke-width=\"1\">\n";
    out << "<line x1=\"" << kLeft << "\" y1=\"" << kHeight - kBottom << "\" x2=\"" << kWidth - kRight
        << "\" y2=\"" << kHeight - kBottom << "\"/>\n";
    out << "<line x1=\"" << kLeft << "\" y1=\"" << kTop << "\" x2=\"" << kLeft << "\" y2=\""
        << kHeight - kBottom << "\"/>\n";
    out << "</g>\n";
    double xstep = nice_step(xr.hi - xr.lo);
    for (double v = std::ceil(xr.lo / xstep) * xstep; v <= xr.hi + 1e-12; v += xstep) {
        out << "<line x1=\"" << px(v) << "\" y1=\"" << kHeight - kBottom << "\" x2=\"" << px(v)
            << "\" y2=\"" << kHeight - kBottom + 5 << "\" stroke=\"black\"/>\n";
        out << "<text x=\"" << px(v) << "\" y=\"" << kHeight - kBottom + 20
            << "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"middle\">" << fmt_tick(v)
            << "</text>\n";
    }
    double ystep = nice_step(yr.hi - yr.lo);
    for (double v = std::ceil(yr.lo / ystep) * ystep; v <= yr.hi + 1e-12; v += ystep) {
        out << "<line x1=\"" << kLeft - 5 << "\" y1=\"" << py(v) << "\" x2=\"" << kLeft << "\" y2=\""
            << py(v) << "\" stroke=\"black\"/>\n";
        out << "<text x=\"" << kLeft - 9 << "\" y=\"" << py(v) + 4
            << "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"end\">" << fmt_tick(v)
            << "</text>\n";
    }
    out << "<text x=\"" << (kLeft + kWidth - kRight) / 2 << "\" y=\"" << kHeight - 14
        << "\" font-family=\"sans-serif\" font-size=\"13\" text-anchor=\"middle\">" << spec.xlabel
        << "</text>\n";
    out << "<text x=\"18\" y=\"" << (kTop + kHeight - kBottom) / 2
        << "\" font-family=\"sans-serif\" font-size=\"13\" text-anchor=\"middle\" transform=\"rotate(-90 18 "
        << (kTop + kHeight - kBottom) / 2 << ")\">" << spec.ylabel << "</text>\n";

    for (std::size_t s = 0; s < spec.series.size(); ++s) {
        const auto& series = spec.series[s];
        const char* color = kPalette[s % (sizeof(kPalette) / sizeof(kPalette[0]))];
        std::size_t stride = 1;
        if (series.points.size() > spec.max_points_per_series)
            stride = series.points.size() / spec.max_points_per_series + 1;
        out << "<g fill=\"" << color << "\" fill-opacity=\"0.35\">\n";
        for (std::size_t i = 0; i < series.points.size(); i += stride)
            out << "<circle cx=\"" << px(series.points[i].first) << "\" cy=\""
                << py(series.points[i].second) << "\" r=\"1.6\"/>\n";
        out << "</g>\n";
        if (series.curve.size() >= 2) {
            out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"2\" points=\"";
            for (auto [x, y] : series.curve) out << px(x) << ',' << py(y) << ' ';
            out << "\"/>\n";
        }
        if (series.has_fit) {
            double y0 = series.fit_intercept + series.fit_slope * xr.lo;
            double y1 = series.fit_intercept + series.fit_slope * xr.hi;
            out << "<line x1=\"" << px(xr.lo) << "\" y1=\"" << py(y0) << "\" x2=\"" << px(xr.hi)
                << "\" y2=\"" << py(y1) << "\" stroke=\"" << color
                << "\" stroke-width=\"1.5\" stroke-dasharray=\"6,4\"/>\n";
        }
        for (auto [x, y] : series.emphasis)
            out << "<circle cx=\"" << px(x) << "\" cy=\"" << py(y) << "\" r=\"5\" fill=\"" << color
                << "\" stroke=\"black\" stroke-width=\"1\"/>\n";
    }

    // legend
    double ly = kTop + 6;
    for (std::size_t s = 0; s < spec.series.size(); ++s) {
        const char* color = kPalette[s % (sizeof(kPalette) / sizeof(kPalette[0]))];
        out << "<rect x=\"" << kWidth - kRight - 170 << "\" y=\"" << ly - 9
            << "\" width=\"12\" height=\"12\" fill=\"" << color << "\"/>\n";
        out << "<text x=\"" << kWidth - kRight - 152 << "\" y=\"" << ly + 2
            << "\" font-family=\"sans-serif\" font-size=\"12\">" << spec.series[s].label
            << "</text>\n";
        ly += 18;
    }
    out << "</svg>\n";
    if (!out) throw std::runtime_error("plot write failed: " + path);
}

void emit_plot(const std::vector<SweepResult>& results, const std::string& path) {
    if (results.empty()) throw std::invalid_argument("emit_plot: no results");
    PlotSpec spec;
    spec.title = results.front().config.name;
    spec.xlabel = ent_measure_name(results.front().config.measure);
    spec.ylabel =
        results.front().primary_y == Field::DeltaS ? "delta_s_bits" : "s_t_bits";
    for (const auto& result : results) {
        if (result.records.empty()) continue;
        PlotSeries series;
        series.label = result.config.name;
        double ent_lo = result.records.front().ent_value, ent_hi = ent_lo;
        for (const auto& r : result.records) {
            double y = field_value(r, result.primary_y);
            series.points.push_back({r.ent_value, y});
            ent_lo = std::min(ent_lo, r.ent_value);
            ent_hi = std::max(ent_hi, r.ent_value);
        }
        bool degenerate_x = (ent_hi - ent_lo) < 1e-9;
        if (degenerate_x) {
            // reference ensembles (e.g. exactly separable states) render as a
            // single bold mean marker
            double my = result.primary_y == Field::DeltaS ? result.stats.mean_delta
                                                          : result.stats.mean_st;
            series.points.clear();
            series.emphasis.push_back({result.stats.mean_ent, my});
        } else {
            for (const auto& b : result.stats.bins) series.curve.push_back({b.center, b.mean});
            const LineFit& fit = result.primary_y == Field::DeltaS ? result.stats.fit_delta
                                                                   : result.stats.fit_st;
            series.has_fit = true;
            series.fit_slope = fit.slope;
            series.fit_intercept = fit.intercept;
            if (result.config.ensemble.constraint.kind == Constraint::Kind::InitialEntropy) {
                double my = result.primary_y == Field::DeltaS ? result.stats.mean_delta
                                                              : result.stats.mean_st;
                series.emphasis.push_back({result.stats.mean_ent, my});
            }
        }
        spec.series.push_back(std::move(series));
    }
    write_svg_plot(path, spec);
}

void emit_plot(const SweepResult& result, const std::string& path) {
    emit_plot(std::vector<SweepResult>{result}, path);
}

} // namespace jclab
