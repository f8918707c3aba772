// stats.hpp — per-sample records and ensemble statistics: OLS fitting
// lines with slope angles, Pearson correlation, fractional entanglement
// contribution η, and fixed-width bin averages.

#pragma once

#include "jclab/parallel.hpp"

#include <cmath>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace jclab {

enum class EntMeasure { MeyerWallachQ, EntanglementEntropyBits, Concurrence };

inline std::string ent_measure_name(EntMeasure m) {
    switch (m) {
        case EntMeasure::MeyerWallachQ: return "meyer_wallach_q";
        case EntMeasure::EntanglementEntropyBits: return "entanglement_entropy_bits";
        case EntMeasure::Concurrence: return "concurrence";
    }
    return "unknown";
}

inline EntMeasure ent_measure_from_name(const std::string& name) {
    if (name == "meyer_wallach_q") return EntMeasure::MeyerWallachQ;
    if (name == "entanglement_entropy_bits") return EntMeasure::EntanglementEntropyBits;
    if (name == "concurrence") return EntMeasure::Concurrence;
    throw std::invalid_argument("unknown entanglement measure: " + name);
}

struct SampleRecord {
    double ent_value = 0.0;   // initial entanglement (tagged by the sweep's measure)
    double s_in_bits = 0.0;   // initial atomic entropy
    double s_t_bits = 0.0;    // time-averaged entropy
    double delta_s_bits = 0.0; // s_t - s_in, stored exactly as that difference
    bool has_energies = false;
    double e_mean = 0.0;
    std::vector<double> e_i;  // per-atom normalized mean energies
};

enum class Field { Ent, SIn, STime, DeltaS, EMean };

inline double field_value(const SampleRecord& r, Field f) {
    switch (f) {
        case Field::Ent: return r.ent_value;
        case Field::SIn: return r.s_in_bits;
        case Field::STime: return r.s_t_bits;
        case Field::DeltaS: return r.delta_s_bits;
        case Field::EMean: return r.e_mean;
    }
    return 0.0;
}

inline std::string field_name(Field f) {
    switch (f) {
        case Field::Ent: return "ent_value";
        case Field::SIn: return "s_in_bits";
        case Field::STime: return "s_t_bits";
        case Field::DeltaS: return "delta_s_bits";
        case Field::EMean: return "e_mean";
    }
    return "unknown";
}

inline double mean_of(const std::vector<SampleRecord>& records, Field f) {
    if (records.empty()) throw std::invalid_argument("mean_of: no records");
    double s = pairwise_sum(0, static_cast<std::int64_t>(records.size()),
                            [&](std::int64_t i) { return field_value(records[i], f); });
    return s / static_cast<double>(records.size());
}

struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
    double slope_angle_deg = 0.0;  // arctan(slope), x and y on the same scale
};

// Ordinary least squares over all sample points (not bin means).
inline LineFit fit_line(const std::vector<SampleRecord>& records, Field x_field, Field y_field) {
    const std::int64_t n = static_cast<std::int64_t>(records.size());
    if (n < 2) throw std::invalid_argument("fit_line: need at least two samples");
    double mx = mean_of(records, x_field);
    double my = mean_of(records, y_field);
    double sxx = pairwise_sum(0, n, [&](std::int64_t i) {
        double dx = field_value(records[i], x_field) - mx;
        return dx * dx;
    });
    double sxy = pairwise_sum(0, n, [&](std::int64_t i) {
        return (field_value(records[i], x_field) - mx) * (field_value(records[i], y_field) - my);
    });
    if (sxx <= 0.0) throw std::invalid_argument("fit_line: degenerate x variance");
    LineFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    fit.slope_angle_deg = std::atan(fit.slope) * 180.0 / std::numbers::pi;
    return fit;
}

// Product-moment correlation coefficient.
inline double pearson(const std::vector<SampleRecord>& records, Field x_field, Field y_field) {
    const std::int64_t n = static_cast<std::int64_t>(records.size());
    if (n < 2) throw std::invalid_argument("pearson: need at least two samples");
    double mx = mean_of(records, x_field);
    double my = mean_of(records, y_field);
    double sxx = pairwise_sum(0, n, [&](std::int64_t i) {
        double dx = field_value(records[i], x_field) - mx;
        return dx * dx;
    });
    double syy = pairwise_sum(0, n, [&](std::int64_t i) {
        double dy = field_value(records[i], y_field) - my;
        return dy * dy;
    });
    double sxy = pairwise_sum(0, n, [&](std::int64_t i) {
        return (field_value(records[i], x_field) - mx) * (field_value(records[i], y_field) - my);
    });
    if (sxx <= 0.0 || syy <= 0.0) throw std::invalid_argument("pearson: zero variance");
    return sxy / std::sqrt(sxx * syy);
}

// η = (ȳ - ȳ(x=0)) / ȳ with ȳ(x=0) the fitted intercept. The ensemble mean
// may be replaced (e.g. by the maximally-entangled ensemble mean).
inline double eta_ent(double mean_y, const LineFit& fit) {
    if (mean_y <= 0.0) throw std::invalid_argument("eta_ent: nonpositive mean response");
    return (mean_y - fit.intercept) / mean_y;
}

inline double eta_ent(const std::vector<SampleRecord>& records, const LineFit& fit, Field y_field) {
    return eta_ent(mean_of(records, y_field), fit);
}

struct Bin {
    double center = 0.0;
    double mean = 0.0;
    std::int64_t count = 0;
};

// Mean response per half-open bin [k·width, (k+1)·width); empty bins omitted.
inline std::vector<Bin> bin_average(const std::vector<SampleRecord>& records, Field x_field,
                                    Field y_field, double width = 0.1) {
    if (width <= 0.0) throw std::invalid_argument("bin_average: width must be > 0");
    std::vector<std::int64_t> keys;
    std::vector<double> sums;
    std::vector<std::int64_t> counts;
    for (const auto& r : records) {
        auto k = static_cast<std::int64_t>(std::floor(field_value(r, x_field) / width));
        std::size_t slot = 0;
        for (; slot < keys.size(); ++slot)
            if (keys[slot] == k) break;
        if (slot == keys.size()) {
            keys.push_back(k);
            sums.push_back(0.0);
            counts.push_back(0);
        }
        sums[slot] += field_value(r, y_field);
        counts[slot] += 1;
    }
    std::vector<Bin> bins;
    for (std::size_t i = 0; i < keys.size(); ++i)
        bins.push_back({(keys[i] + 0.5) * width, sums[i] / counts[i], counts[i]});
    std::sort(bins.begin(), bins.end(), [](const Bin& a, const Bin& b) { return a.center < b.center; });
    return bins;
}

} // namespace jclab
