#include "jclab/verify.hpp"

#include "jclab/dynamics.hpp"
#include "jclab/ensembles.hpp"
#include "jclab/expm.hpp"
#include "jclab/measures.hpp"
#include "jclab/parallel.hpp"
#include "jclab/rng.hpp"
#include "jclab/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace jclab {

namespace {

std::string bound_detail(double measured, double bound) {
    char buf[96];
    std::snprintf(buf, sizeof(buf), "measured %.3e, bound %.3e", measured, bound);
    return buf;
}

Eigen::VectorXcd random_state(std::int64_t dim, Rng& rng) {
    std::normal_distribution<double> normal;
    Eigen::VectorXcd psi(dim);
    for (std::int64_t i = 0; i < dim; ++i) psi(i) = Complex(normal(rng), normal(rng));
    return psi / psi.norm();
}

Eigen::VectorXcd embed_atomic(const Eigen::VectorXcd& psi_atoms, const CompositeBasis& basis,
                              int photons) {
    Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(basis.dim_composite);
    for (std::int64_t a = 0; a < basis.dim_atoms; ++a)
        psi(basis.embed_with_fock(a, photons)) = psi_atoms(a);
    return psi;
}

double binary_entropy(double p) {
    double s = 0.0;
    if (p > 0) s -= p * std::log2(p);
    if (p < 1) s -= (1 - p) * std::log2(1 - p);
    return s;
}

CheckResult check_spectral_invariants() {
    double worst = 0.0;
    for (auto spec : {ModelSpec::two_level(1, 0), ModelSpec::two_level(1, 3),
                      ModelSpec::three_level(1, 0), ModelSpec::three_level(1, 2)}) {
        Eigen::MatrixXd h = build_subsystem_hamiltonian(spec);
        worst = std::max(worst, (h - h.transpose()).cwiseAbs().maxCoeff());
        auto sectors = sector_decompose(spec);  // throws on off-sector leakage
        std::size_t covered = 0;
        for (const auto& s : sectors) covered += s.basis_labels.size();
        if (covered != static_cast<std::size_t>(spec.subsystem_dim()))
            return {"spectral invariants", false, "sector cover mismatch"};
        SubsystemSpectrum sub = diagonalize_subsystem(spec);
        worst = std::max(worst, (sub.eigenvectors.transpose() * sub.eigenvectors -
                                 Eigen::MatrixXd::Identity(h.rows(), h.cols()))
                                    .cwiseAbs()
                                    .maxCoeff());
        Eigen::MatrixXd rebuilt =
            sub.eigenvectors * sub.eigenvalues.asDiagonal() * sub.eigenvectors.transpose();
        worst = std::max(worst, (rebuilt - h).cwiseAbs().maxCoeff());
    }
    return {"spectral invariants (hermiticity, sectors, reconstruction)", worst < 1e-10,
            bound_detail(worst, 1e-10)};
}

CheckResult check_expm_equivalence(std::uint64_t seed, int trials) {
    double worst = 0.0;
    for (auto spec : {ModelSpec::two_level(2, 0), ModelSpec::two_level(3, 0),
                      ModelSpec::three_level(1, 1)}) {
        Evolver evolver(build_composite_spectrum(spec));
        Eigen::MatrixXcd h = composite_hamiltonian(spec).cast<Complex>();
        auto rng = stream_rng(seed, spec.composite_dim());
        std::uniform_real_distribution<double> time_dist(0.0, 80.0);
        for (int trial = 0; trial < trials; ++trial) {
            Eigen::VectorXcd psi0 = random_state(evolver.dim(), rng);
            double t = time_dist(rng);
            worst = std::max(worst, (evolver.evolve_pure(psi0, t) - expm_evolve(h, psi0, t))
                                        .cwiseAbs()
                                        .maxCoeff());
        }
    }
    return {"eigenbasis evolution vs matrix-exponential oracle (dims <= 64)", worst < 1e-8,
            bound_detail(worst, 1e-8)};
}

CheckResult check_pure_density_consistency(std::uint64_t seed, int trials) {
    ModelSpec spec = ModelSpec::two_level(2, 0);
    Evolver evolver(build_composite_spectrum(spec));
    auto rng = stream_rng(seed, 17);
    std::uniform_real_distribution<double> time_dist(0.0, 120.0);
    double worst = 0.0;
    for (int trial = 0; trial < trials; ++trial) {
        Eigen::VectorXcd psi0 = random_state(evolver.dim(), rng);
        double t = time_dist(rng);
        Eigen::MatrixXcd rho_t = evolver.evolve_density(psi0 * psi0.adjoint(), t);
        Eigen::VectorXcd psi_t = evolver.evolve_pure(psi0, t);
        worst = std::max(worst, (rho_t - psi_t * psi_t.adjoint()).cwiseAbs().maxCoeff());
    }
    return {"pure/density evolution consistency", worst < 1e-10, bound_detail(worst, 1e-10)};
}

CheckResult check_unitary_invariants(std::uint64_t seed) {
    ModelSpec spec = ModelSpec::two_level(2, 0);
    Evolver evolver(build_composite_spectrum(spec));
    auto rng = stream_rng(seed, 23);
    Eigen::MatrixXcd rho0 = sample_ginibre_mixed(static_cast<int>(evolver.dim()), rng);
    double s0 = von_neumann_entropy_bits(rho0);
    double p0 = purity(rho0);
    double worst = 0.0;
    for (double t : {1.3, 17.0, 64.2}) {
        Eigen::MatrixXcd rho_t = evolver.evolve_density(rho0, t);
        worst = std::max(worst, std::abs(purity(rho_t) - p0));
        worst = std::max(worst, std::abs(von_neumann_entropy_bits(rho_t) - s0));
        worst = std::max(worst, std::abs(rho_t.trace().real() - 1.0));
        worst = std::max(worst,
                         std::abs(trace_out_fields(rho_t, evolver.basis()).trace().real() - 1.0));
    }
    return {"unitarity (global purity/entropy constant, traces preserved)", worst < 1e-10,
            bound_detail(worst, 1e-10)};
}

CheckResult check_single_excitation_invariance(std::uint64_t seed) {
    double worst_spread = 0.0;
    double worst_structure = 0.0;
    for (int n : {2, 3}) {
        ModelSpec spec = ModelSpec::two_level(n, 0);
        Evolver evolver(build_composite_spectrum(spec));
        TimeGrid grid = default_grid(spec, 128);
        EntropyEngine engine(evolver, grid);
        double reference = 0.0;
        for (int member = 0; member < 8; ++member) {
            auto rng = stream_rng(seed + n, member);
            Eigen::VectorXcd psi_atoms = sample_single_excitation(n, rng);
            double st = engine.run_pure(embed_atomic(psi_atoms, evolver.basis(), 0));
            if (member == 0)
                reference = st;
            else
                worst_spread = std::max(worst_spread, std::abs(st - reference));
        }
        // structure: components with two or more atomic excitations stay empty
        auto rng = stream_rng(seed + n, 99);
        Eigen::VectorXcd psi0 = embed_atomic(sample_single_excitation(n, rng), evolver.basis(), 0);
        for (double t : {0.0, 5.5, 19.0}) {
            Eigen::MatrixXcd rho = trace_out_fields(evolver.evolve_pure(psi0, t), evolver.basis());
            for (std::int64_t a = 0; a < rho.rows(); ++a) {
                int bits = 0;
                for (int i = 0; i < n; ++i) bits += (a >> i) & 1;
                if (bits < 2) continue;
                worst_structure = std::max(worst_structure, rho.row(a).cwiseAbs().maxCoeff());
                worst_structure = std::max(worst_structure, rho.col(a).cwiseAbs().maxCoeff());
            }
        }
    }
    bool pass = worst_spread < 1e-8 && worst_structure < 1e-10;
    std::ostringstream detail;
    detail << "S_t spread " << worst_spread << " (bound 1e-8), residual population "
           << worst_structure << " (bound 1e-10)";
    return {"single-excitation family: S_t independent of amplitudes, structure preserved", pass,
            detail.str()};
}

CheckResult check_measure_identities(std::uint64_t seed, int trials) {
    auto rng = stream_rng(seed, 31);
    double worst_identity = 0.0, worst_lu = 0.0;
    for (int trial = 0; trial < trials; ++trial) {
        Eigen::VectorXcd psi = sample_haar_pure(4, rng);
        double c = concurrence(psi);
        double s = entanglement_entropy_bits(psi, 2);
        double expected = binary_entropy(0.5 * (1.0 + std::sqrt(std::max(0.0, 1.0 - c * c))));
        worst_identity = std::max(worst_identity, std::abs(s - expected));

        Eigen::VectorXcd rotated = psi;
        for (int i = 0; i < 2; ++i) {
            Eigen::MatrixXcd u = haar_unitary(2, rng);
            std::int64_t right = 1 << (1 - i);
            for (std::int64_t l = 0; l < 4 / (2 * right); ++l)
                for (std::int64_t r = 0; r < right; ++r) {
                    Complex a0 = rotated((l * 2 + 0) * right + r);
                    Complex a1 = rotated((l * 2 + 1) * right + r);
                    rotated((l * 2 + 0) * right + r) = u(0, 0) * a0 + u(0, 1) * a1;
                    rotated((l * 2 + 1) * right + r) = u(1, 0) * a0 + u(1, 1) * a1;
                }
        }
        worst_lu = std::max(worst_lu, std::abs(meyer_wallach_q(rotated, 2) - meyer_wallach_q(psi, 2)));
        worst_lu = std::max(worst_lu, std::abs(concurrence(rotated) - c));
    }
    bool pass = worst_identity < 1e-8 && worst_lu < 1e-10;
    std::ostringstream detail;
    detail << "concurrence-entropy gap " << worst_identity << " (bound 1e-8), LU drift " << worst_lu
           << " (bound 1e-10)";
    return {"measure identities (concurrence-entropy, local-unitary invariance)", pass, detail.str()};
}

CheckResult check_haar_distribution(std::uint64_t seed, int samples, int workers) {
    const int dim = 4;
    std::vector<double> overlaps(samples);
    parallel_for(samples, workers, [&](std::int64_t i) {
        auto rng = stream_rng(seed + 41, i);
        Eigen::VectorXcd psi = sample_haar_pure(dim, rng);
        overlaps[i] = std::norm(psi(0));  // overlap with a fixed basis vector
    });
    std::sort(overlaps.begin(), overlaps.end());
    double d = 0.0;
    for (int i = 0; i < samples; ++i) {
        double cdf = 1.0 - std::pow(1.0 - overlaps[i], dim - 1);
        d = std::max(d, std::abs(cdf - (i + 1.0) / samples));
        d = std::max(d, std::abs(cdf - static_cast<double>(i) / samples));
    }
    double critical = 1.628 / std::sqrt(static_cast<double>(samples));
    std::ostringstream detail;
    detail << "KS statistic " << d << ", 1% critical value " << critical << " (n=" << samples << ")";
    return {"Haar overlap distribution (KS vs Beta(1, l-1))", d < critical, detail.str()};
}

CheckResult check_sampler_moments(std::uint64_t seed, int samples, int workers) {
    // Gurvitz purity moment against the Gaussian-orthonormalization oracle,
    // and Ginibre purity against its Hilbert-Schmidt value 2l/(l²+1).
    std::vector<double> haar_p(samples), oracle_p(samples), gin_p(samples);
    parallel_for(samples, workers, [&](std::int64_t i) {
        auto rng = stream_rng(seed + 43, i);
        Eigen::VectorXcd psi = sample_haar_pure(4, rng);
        haar_p[i] = purity(reduce_to_atom(Eigen::MatrixXcd(psi * psi.adjoint()), 0, 2, 2));
        auto rng2 = stream_rng(seed + 44, i);
        Eigen::VectorXcd phi = random_state(4, rng2);
        oracle_p[i] = purity(reduce_to_atom(Eigen::MatrixXcd(phi * phi.adjoint()), 0, 2, 2));
        auto rng3 = stream_rng(seed + 45, i);
        gin_p[i] = purity(sample_ginibre_mixed(4, rng3));
    });
    auto mean_sd = [&](const std::vector<double>& v) {
        double m = 0.0;
        for (double x : v) m += x;
        m /= v.size();
        double var = 0.0;
        for (double x : v) var += (x - m) * (x - m);
        return std::make_pair(m, std::sqrt(var / v.size() / v.size()));
    };
    auto [haar_mean, haar_se] = mean_sd(haar_p);
    auto [oracle_mean, oracle_se] = mean_sd(oracle_p);
    auto [gin_mean, gin_se] = mean_sd(gin_p);
    double gap_haar = std::abs(haar_mean - oracle_mean);
    double gap_gin = std::abs(gin_mean - 8.0 / 17.0);
    bool pass = gap_haar < 3.0 * std::hypot(haar_se, oracle_se) + 1e-6 && gap_gin < 3.0 * gin_se + 1e-6;
    std::ostringstream detail;
    detail << "Gurvitz-vs-oracle gap " << gap_haar << " (3 s.e. " << 3.0 * std::hypot(haar_se, oracle_se)
           << "), Ginibre purity gap " << gap_gin << " (3 s.e. " << 3.0 * gin_se << ")";
    return {"sampler moments (Gurvitz vs Gaussian oracle, Ginibre purity)", pass, detail.str()};
}

CheckResult check_grid_convergence(std::uint64_t seed) {
    double worst = 0.0;
    struct Case {
        ModelSpec spec;
        int base_points;
    };
    for (auto [spec, base] : {Case{ModelSpec::two_level(2, 0), 256},
                              Case{ModelSpec::two_level(2, 1), 4096},
                              Case{ModelSpec::three_level(2, 0), 4096}}) {
        Evolver evolver(build_composite_spectrum(spec));
        auto rng = stream_rng(seed, 53 + spec.initial_photons + spec.atom_levels());
        Eigen::VectorXcd psi_atoms = sample_haar_pure(static_cast<int>(evolver.basis().dim_atoms), rng);
        Eigen::VectorXcd psi0 = embed_atomic(psi_atoms, evolver.basis(), spec.initial_photons);
        double s1 = time_averaged_entropy(evolver, psi0, default_grid(spec, base));
        double s2 = time_averaged_entropy(evolver, psi0, default_grid(spec, 2 * base));
        worst = std::max(worst, std::abs(s1 - s2));
    }
    return {"grid convergence (doubling the time points moves S_t by < 1e-4)", worst < 1e-4,
            bound_detail(worst, 1e-4)};
}

CheckResult check_scale_covariance(std::uint64_t seed) {
    auto rng = stream_rng(seed, 61);
    Eigen::VectorXcd psi_atoms = sample_haar_pure(4, rng);
    double values[2];
    int idx = 0;
    for (double lambda : {1.0, 7.0}) {
        ModelSpec spec = ModelSpec::two_level(2, 0, 0.1 * lambda, 1.0 * lambda);
        Evolver evolver(build_composite_spectrum(spec));
        values[idx++] = time_averaged_entropy(
            evolver, embed_atomic(psi_atoms, evolver.basis(), 0), default_grid(spec, 128));
    }
    double gap = std::abs(values[0] - values[1]);
    return {"scale covariance (common frequency scaling leaves S_t fixed)", gap < 1e-12,
            bound_detail(gap, 1e-12)};
}

CheckResult check_determinism(std::uint64_t seed, int workers) {
    ExperimentConfig cfg;
    cfg.name = "determinism";
    cfg.model = ModelSpec::two_level(2, 0);
    cfg.ensemble = {Sampler::HaarPure, 200, seed, Constraint{}, 2, 2};
    cfg.measure = EntMeasure::MeyerWallachQ;
    double worst = 0.0;
    SweepResult base;
    for (int w : {1, workers, 2 * workers}) {
        cfg.workers = w;
        SweepResult r = run_sweep(cfg);
        if (w == 1) {
            base = std::move(r);
            continue;
        }
        if (r.records.size() != base.records.size())
            return {"determinism across worker counts", false, "record count mismatch"};
        for (std::size_t i = 0; i < r.records.size(); ++i) {
            worst = std::max(worst, std::abs(r.records[i].ent_value - base.records[i].ent_value));
            worst = std::max(worst, std::abs(r.records[i].s_t_bits - base.records[i].s_t_bits));
        }
        worst = std::max(worst, std::abs(r.stats.fit_st.slope - base.stats.fit_st.slope));
    }
    return {"determinism across worker counts", worst == 0.0, bound_detail(worst, 0.0)};
}

} // namespace

VerifyReport run_verification(VerifyLevel level, int workers, std::uint64_t seed) {
    const bool full = level == VerifyLevel::Full;
    VerifyReport report;
    report.checks.push_back(check_spectral_invariants());
    report.checks.push_back(check_expm_equivalence(seed, full ? 20 : 6));
    report.checks.push_back(check_pure_density_consistency(seed, full ? 100 : 30));
    report.checks.push_back(check_unitary_invariants(seed));
    report.checks.push_back(check_single_excitation_invariance(seed));
    report.checks.push_back(check_measure_identities(seed, full ? 10000 : 1000));
    report.checks.push_back(check_haar_distribution(seed, full ? 100000 : 1000, workers));
    report.checks.push_back(check_sampler_moments(seed, full ? 100000 : 1000, workers));
    report.checks.push_back(check_grid_convergence(seed));
    report.checks.push_back(check_scale_covariance(seed));
    report.checks.push_back(check_determinism(seed, workers));
    return report;
}

} // namespace jclab
