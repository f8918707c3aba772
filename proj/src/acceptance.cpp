#include "jclab/acceptance.hpp"

#include "jclab/io.hpp"
#include "jclab/measures.hpp"
#include "jclab/parallel.hpp"
#include "jclab/sweep.hpp"
#include "jclab/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace jclab {

namespace {

// Collects sub-check lines; a criterion passes when every line does.
struct Checker {
    std::vector<std::string> lines;
    bool ok = true;

    void value(const std::string& label, double measured, double target, double tol) {
        bool pass = std::abs(measured - target) <= tol;
        ok = ok && pass;
        char buf[160];
        std::snprintf(buf, sizeof(buf), "  [%s] %s: %.4f (reference %.4g +/- %.4g)",
                      pass ? "ok" : "FAIL", label.c_str(), measured, target, tol);
        lines.push_back(buf);
    }

    void bound(const std::string& label, double measured, double limit) {
        bool pass = measured <= limit;
        ok = ok && pass;
        char buf[160];
        std::snprintf(buf, sizeof(buf), "  [%s] %s: %.3e (bound %.3e)", pass ? "ok" : "FAIL",
                      label.c_str(), measured, limit);
        lines.push_back(buf);
    }

    void flag(const std::string& label, bool pass, const std::string& detail = "") {
        ok = ok && pass;
        lines.push_back(std::string("  [") + (pass ? "ok" : "FAIL") + "] " + label +
                        (detail.empty() ? "" : ": " + detail));
    }
};

struct Tol {
    double paper;
    double desk;
    double at(int scale) const { return scale > 1 ? desk : paper; }
};

constexpr Tol kAngleTol{2.0, 3.0};
constexpr Tol kPearsonTol{0.05, 0.07};
constexpr Tol kEtaTol{0.03, 0.05};
constexpr Tol kTableAngleTol{2.0, 3.0};
constexpr Tol kTablePearsonTol{0.05, 0.08};
constexpr Tol kTableEtaTol{0.05, 0.07};
constexpr Tol kGapTol{0.04, 0.06};
constexpr Tol kMixedAngleTol{3.0, 4.0};
constexpr Tol kMixedEtaTol{0.05, 0.07};
constexpr Tol kMixednessAngleTol{2.0, 3.0};

std::int64_t scaled(std::int64_t size, int scale) {
    return std::max<std::int64_t>(200, size / scale);
}

ExperimentConfig haar_sweep_config(int n_subsystems, int photons, AtomKind kind,
                                   EntMeasure measure, std::int64_t size, std::uint64_t seed,
                                   int workers) {
    ExperimentConfig cfg;
    cfg.model = kind == AtomKind::TwoLevel ? ModelSpec::two_level(n_subsystems, photons)
                                           : ModelSpec::three_level(n_subsystems, photons);
    cfg.ensemble = {Sampler::HaarPure, size, seed, Constraint{}, cfg.model.atom_levels(),
                    n_subsystems};
    cfg.measure = measure;
    cfg.workers = workers;
    cfg.name = "acceptance";
    return cfg;
}

struct HaarBaseline {
    SweepResult sweep;
    double intercept = 0.0;
};

} // namespace

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& options) {
    const int scale = std::max(1, options.scale);
    const int workers = options.workers > 0 ? options.workers : default_workers();
    auto wanted = [&](int index) {
        return options.only.empty() ||
               std::find(options.only.begin(), options.only.end(), index) != options.only.end();
    };
    std::vector<CriterionResult> results;

    // ---- 1: photonless Haar ensembles, Q measure, N = 2, 3, 4 -----------
    std::vector<HaarBaseline> baselines;  // shared with criterion 2
    const int kNs[] = {2, 3, 4};
    const double kHaarAngle[] = {13.0, 14.0, 14.0};
    const double kHaarPearson[] = {0.28, 0.28, 0.24};
    const double kHaarEta[] = {0.15, 0.23, 0.28};
    if (wanted(1) || wanted(2)) {
        Checker c;
        for (int i = 0; i < 3; ++i) {
            ExperimentConfig cfg =
                haar_sweep_config(kNs[i], 0, AtomKind::TwoLevel, EntMeasure::MeyerWallachQ,
                                  scaled(100000, scale), derive_seed(options.seed, 10 + i), workers);
            SweepResult r = run_sweep(cfg);
            std::string tag = std::to_string(kNs[i]) + "-JC";
            c.value(tag + " slope angle (deg)", r.stats.fit_st.slope_angle_deg, kHaarAngle[i],
                    kAngleTol.at(scale));
            c.value(tag + " Pearson", r.stats.pearson_st, kHaarPearson[i], kPearsonTol.at(scale));
            c.value(tag + " eta_ent", r.stats.eta, kHaarEta[i], kEtaTol.at(scale));
            baselines.push_back({std::move(r), 0.0});
            baselines.back().intercept = baselines.back().sweep.stats.fit_st.intercept;
        }
        if (wanted(1))
            results.push_back({1, "Haar pure states, photonless environment (N = 2, 3, 4)", c.ok,
                               std::move(c.lines)});
    }

    // ---- 2: maximally entangled / separable reference ensembles ---------
    if (wanted(2)) {
        Checker c;
        const double kEtaMax[] = {0.30, 0.32, 0.33};
        const double kGap[] = {0.23, 0.36, 0.51};
        std::vector<double> separable_means;
        for (int i = 0; i < 3; ++i) {
            ExperimentConfig maxent =
                haar_sweep_config(kNs[i], 0, AtomKind::TwoLevel, EntMeasure::MeyerWallachQ,
                                  scaled(20000, scale), derive_seed(options.seed, 20 + i), workers);
            maxent.ensemble.sampler = Sampler::MaxEntangled;
            SweepResult rm = run_sweep(maxent);

            ExperimentConfig sep = maxent;
            sep.ensemble.sampler = Sampler::SeparableHaarProduct;
            sep.ensemble.seed = derive_seed(options.seed, 30 + i);
            SweepResult rs = run_sweep(sep);
            separable_means.push_back(rs.stats.mean_st);

            std::string tag = std::to_string(kNs[i]) + "-JC";
            double gap = rm.stats.mean_st - baselines[i].intercept;
            c.value(tag + " mean gap maxent - fit(Q=0) (bits)", gap, kGap[i], kGapTol.at(scale));
            c.value(tag + " eta_ent via maxent mean", gap / rm.stats.mean_st, kEtaMax[i],
                    kEtaTol.at(scale));
        }
        c.value("separable increment N=2->3 (bits)", separable_means[1] - separable_means[0], 0.27,
                kEtaTol.at(scale));
        c.value("separable increment N=3->4 (bits)", separable_means[2] - separable_means[1], 0.27,
                kEtaTol.at(scale));
        results.push_back(
            {2, "maximally entangled and separable reference ensembles", c.ok, std::move(c.lines)});
    }

    // ---- 3: energy-constrained tables ------------------------------------
    if (wanted(3)) {
        Checker c;
        const double values[] = {-0.4, -0.2, 0.0, 0.2, 0.4};

        TableConfig per_atom;
        per_atom.name = "per_atom";
        per_atom.family = Constraint::Kind::PerAtomEnergy;
        per_atom.n_subsystems = {2, 3};
        for (double v : values)
            per_atom.cells.push_back({v, {0.005, std::abs(v) > 0.3 ? 0.02 : 0.01}});
        per_atom.target_size = scaled(2000, scale);
        per_atom.seed = derive_seed(options.seed, 40);
        per_atom.workers = workers;
        TableResult t1 = run_table(per_atom);

        const double kT1Angle[2][5] = {{28, 21, 16, 16, 14}, {28, 21, 18, 17, 14}};
        const double kT1Pearson[2][5] = {{1.00, 0.99, 0.94, 1.00, 1.00},
                                         {0.98, 0.94, 0.93, 0.97, 0.80}};
        const double kT1Eta[2][5] = {{0.72, 0.47, 0.28, 0.15, 0.04},
                                     {0.76, 0.53, 0.36, 0.19, 0.05}};
        for (int row = 0; row < 5; ++row)
            for (int col = 0; col < 2; ++col) {
                const SweepResult& r = t1.rows[row].per_n[col];
                char tag[64];
                std::snprintf(tag, sizeof(tag), "<E_i>=%+.1f %d-JC", values[row], col + 2);
                c.value(std::string(tag) + " angle", r.stats.fit_st.slope_angle_deg,
                        kT1Angle[col][row], kTableAngleTol.at(scale));
                c.value(std::string(tag) + " Pearson", r.stats.pearson_st, kT1Pearson[col][row],
                        kTablePearsonTol.at(scale));
                c.value(std::string(tag) + " eta", r.stats.eta, kT1Eta[col][row],
                        kTableEtaTol.at(scale));
            }

        TableConfig total;
        total.name = "total";
        total.family = Constraint::Kind::TotalEnergy;
        total.n_subsystems = {2, 3};
        for (double v : values) {
            double tol2 = std::abs(v) > 0.3 ? 2e-4 : 1e-4;
            double tol3 = std::abs(v) > 0.3 ? 0.01 : (std::abs(v) > 0.1 ? 5e-5 : 1e-5);
            total.cells.push_back({v, {tol2, tol3}});
        }
        total.target_size = scaled(2000, scale);
        total.seed = derive_seed(options.seed, 41);
        total.workers = workers;
        TableResult t2 = run_table(total);

        const double kT2Angle[2][5] = {{28, 19, 12, 15, 14}, {26, 18, 14, 15, 15}};
        const double kT2Pearson[2][5] = {{1.00, 0.97, 0.87, 1.00, 1.00},
                                         {0.99, 0.94, 0.92, 0.91, 0.98}};
        const double kT2Eta[2][5] = {{0.62, 0.33, 0.16, 0.10, 0.03},
                                     {0.67, 0.40, 0.25, 0.15, 0.05}};
        for (int row = 0; row < 5; ++row)
            for (int col = 0; col < 2; ++col) {
                const SweepResult& r = t2.rows[row].per_n[col];
                char tag[64];
                std::snprintf(tag, sizeof(tag), "<E>=%+.1f %d-JC", values[row], col + 2);
                c.value(std::string(tag) + " angle", r.stats.fit_st.slope_angle_deg,
                        kT2Angle[col][row], kTableAngleTol.at(scale));
                c.value(std::string(tag) + " Pearson", r.stats.pearson_st, kT2Pearson[col][row],
                        kTablePearsonTol.at(scale));
                c.value(std::string(tag) + " eta", r.stats.eta, kT2Eta[col][row],
                        kTableEtaTol.at(scale));
            }
        results.push_back({3, "energy-constrained ensembles (fixed <E_i> and fixed <E>)", c.ok,
                           std::move(c.lines)});
    }

    // ---- 4: initial photon number sweep, two-level atoms -----------------
    if (wanted(4)) {
        Checker c;
        const double kAngle[] = {14, 15, 14, 13};
        const double kPearson[] = {0.28, 0.79, 0.81, 0.84};
        const double kEta[] = {0.18, 0.10, 0.09, 0.08};
        for (int n = 0; n <= 3; ++n) {
            ExperimentConfig cfg = haar_sweep_config(
                2, n, AtomKind::TwoLevel, EntMeasure::EntanglementEntropyBits,
                scaled(n == 0 ? 50000 : 10000, scale), derive_seed(options.seed, 50 + n), workers);
            SweepResult r = run_sweep(cfg);
            std::string tag = "n=" + std::to_string(n);
            c.value(tag + " angle", r.stats.fit_st.slope_angle_deg, kAngle[n], kAngleTol.at(scale));
            c.value(tag + " Pearson", r.stats.pearson_st, kPearson[n], kPearsonTol.at(scale));
            c.value(tag + " eta", r.stats.eta, kEta[n], kEtaTol.at(scale));
        }
        results.push_back({4, "initial photon number sweep (two-level, n = 0..3)", c.ok,
                           std::move(c.lines)});
    }

    // ---- 5: three-level cascade sweep -------------------------------------
    if (wanted(5)) {
        Checker c;
        const double kAngle[] = {12, 17, 16, 15};
        const double kPearson[] = {0.26, 0.63, 0.83, 0.89};
        const double kEta[] = {0.17, 0.13, 0.12, 0.11};
        for (int n = 0; n <= 3; ++n) {
            ExperimentConfig cfg = haar_sweep_config(
                2, n, AtomKind::ThreeLevelCascade, EntMeasure::EntanglementEntropyBits,
                scaled(n == 0 ? 50000 : 10000, scale), derive_seed(options.seed, 60 + n), workers);
            SweepResult r = run_sweep(cfg);
            std::string tag = "n=" + std::to_string(n);
            c.value(tag + " angle", r.stats.fit_st.slope_angle_deg, kAngle[n], kAngleTol.at(scale));
            c.value(tag + " Pearson", r.stats.pearson_st, kPearson[n], kPearsonTol.at(scale));
            c.value(tag + " eta", r.stats.eta, kEta[n], kEtaTol.at(scale));
        }
        results.push_back(
            {5, "three-level cascade sweep (qutrits, n = 0..3)", c.ok, std::move(c.lines)});
    }

    // ---- 6: Ginibre mixed states -------------------------------------------
    if (wanted(6)) {
        Checker c;
        const double kStAngle[] = {-25, -11, -8};
        const double kDsAngle[] = {21, 33, 35};
        const double kEta[] = {0.39, 0.25, 0.29};
        for (int n = 0; n <= 2; ++n) {
            ExperimentConfig cfg =
                haar_sweep_config(2, n, AtomKind::TwoLevel, EntMeasure::Concurrence,
                                  scaled(50000, scale), derive_seed(options.seed, 70 + n), workers);
            cfg.ensemble.sampler = Sampler::GinibreMixed;
            SweepResult r = run_sweep(cfg);
            std::string tag = "n=" + std::to_string(n);
            c.value(tag + " S_t-vs-C angle", r.stats.fit_st.slope_angle_deg, kStAngle[n],
                    kMixedAngleTol.at(scale));
            c.value(tag + " dS_t-vs-C angle", r.stats.fit_delta.slope_angle_deg, kDsAngle[n],
                    kMixedAngleTol.at(scale));
            c.value(tag + " eta", r.stats.eta, kEta[n], kMixedEtaTol.at(scale));
        }

        TableConfig mixedness;
        mixedness.name = "fixed_mixedness";
        mixedness.family = Constraint::Kind::InitialEntropy;
        mixedness.n_subsystems = {2};
        mixedness.cells = {{1.0, {0.002}}, {1.2, {0.0005}}, {1.4, {0.0005}}, {1.6, {0.002}}};
        mixedness.target_size = scaled(10000, scale);
        mixedness.initial_photons = 2;
        mixedness.seed = derive_seed(options.seed, 80);
        mixedness.workers = workers;
        TableResult tm = run_table(mixedness);
        const double kMixAngle[] = {10, 8, 6, 6};
        for (int row = 0; row < 4; ++row) {
            char tag[64];
            std::snprintf(tag, sizeof(tag), "S_in=%.1f angle", mixedness.cells[row].value);
            c.value(tag, tm.rows[row].per_n[0].stats.fit_delta.slope_angle_deg, kMixAngle[row],
                    kMixednessAngleTol.at(scale));
        }
        results.push_back({6, "Ginibre mixed states (raw and fixed-mixedness)", c.ok,
                           std::move(c.lines)});
    }

    // ---- 7: property suite (always full strength) --------------------------
    if (wanted(7)) {
        Checker c;
        VerifyReport report = run_verification(VerifyLevel::Full, workers, options.seed);
        for (const auto& check : report.checks) {
            if (check.name.rfind("determinism", 0) == 0) continue;  // criterion 8
            c.flag(check.name, check.pass, check.detail);
        }
        results.push_back({7, "property suite (oracles and invariants)", c.ok, std::move(c.lines)});
    }

    // ---- 8: determinism ------------------------------------------------------
    if (wanted(8)) {
        Checker c;
        ExperimentConfig pure_cfg =
            haar_sweep_config(2, 0, AtomKind::TwoLevel, EntMeasure::MeyerWallachQ, 400,
                              derive_seed(options.seed, 90), workers);
        ExperimentConfig mixed_cfg =
            haar_sweep_config(2, 0, AtomKind::TwoLevel, EntMeasure::Concurrence, 150,
                              derive_seed(options.seed, 91), workers);
        mixed_cfg.ensemble.sampler = Sampler::GinibreMixed;
        mixed_cfg.ensemble.constraint = {Constraint::Kind::InitialEntropy, 1.2, 0.01};
        for (auto cfg : {pure_cfg, mixed_cfg}) {
            std::string reference;
            SweepStats ref_stats;
            bool identical = true;
            double stat_gap = 0.0;
            for (int w : {1, 2, 4, 1}) {  // repeat w=1 to cover run-to-run
                cfg.workers = w;
                SweepResult r = run_sweep(cfg);
                std::string csv = csv_to_string(r);
                if (reference.empty()) {
                    reference = csv;
                    ref_stats = r.stats;
                    continue;
                }
                identical = identical && (csv == reference);
                stat_gap = std::max(stat_gap,
                                    std::abs(r.stats.fit_st.slope - ref_stats.fit_st.slope));
                stat_gap = std::max(stat_gap, std::abs(r.stats.pearson_st - ref_stats.pearson_st));
                stat_gap = std::max(stat_gap, std::abs(r.stats.eta - ref_stats.eta));
                stat_gap = std::max(stat_gap, std::abs(r.stats.mean_st - ref_stats.mean_st));
            }
            c.flag("byte-identical CSV across runs and worker counts (" +
                       sampler_name(cfg.ensemble.sampler) + ")",
                   identical);
            c.bound("statistics drift across worker counts", stat_gap, 1e-12);
        }
        results.push_back({8, "determinism (seed and worker-count independence)", c.ok,
                           std::move(c.lines)});
    }

    return results;
}

} // namespace jclab
