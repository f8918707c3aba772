#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "jclab/ensembles.hpp"
#include "jclab/measures.hpp"
#include "jclab/parallel.hpp"
#include "jclab/rng.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>

using namespace jclab;

namespace {

// Gaussian-vector Haar oracle, independent of the Gurvitz parametrization.
Eigen::VectorXcd gaussian_haar_state(int dim, Rng& rng) {
    std::normal_distribution<double> normal;
    Eigen::VectorXcd psi(dim);
    for (int i = 0; i < dim; ++i) psi(i) = Complex(normal(rng), normal(rng));
    return psi / psi.norm();
}

// Composite Simpson quadrature of the θ_k density on [0, θ].
double theta_density_cdf(int k, double theta) {
    auto p = [&](double x) {
        return k * std::sin(2 * x) * std::pow(std::sin(x), 2 * k - 2);
    };
    const int segments = 4000;
    double integral = 0.0;
    for (int s = 0; s < segments; ++s) {
        double a = theta * s / segments;
        double b = theta * (s + 1) / segments;
        integral += (b - a) / 6.0 * (p(a) + 4.0 * p(0.5 * (a + b)) + p(b));
    }
    return integral;
}

} // namespace

TEST_CASE("theta inverse CDF matches the quadrature of the stated density") {
    // F(θ) = ∫_0^θ P(θ_k) dθ_k should equal sin^{2k}(θ)
    for (int k : {1, 2, 3, 5, 8})
        for (double theta : {0.2, 0.7, 1.1, 1.5}) {
            double quad = theta_density_cdf(k, theta);
            double closed = std::pow(std::sin(theta), 2 * k);
            CHECK(quad == doctest::Approx(closed).epsilon(1e-8));
        }
}

TEST_CASE("Haar samples are normalized and deterministic per (seed, index)") {
    for (int dim : {2, 4, 8, 16, 9}) {
        auto rng = stream_rng(100, 7);
        Eigen::VectorXcd psi = sample_haar_pure(dim, rng);
        CHECK(std::abs(psi.norm() - 1.0) < 1e-12);
        auto rng2 = stream_rng(100, 7);
        Eigen::VectorXcd again = sample_haar_pure(dim, rng2);
        CHECK((psi - again).cwiseAbs().maxCoeff() == 0.0);
        auto rng3 = stream_rng(100, 8);
        CHECK((psi - sample_haar_pure(dim, rng3)).cwiseAbs().maxCoeff() > 1e-6);
    }
}

TEST_CASE("haar_moduli_squared matches the squared amplitudes of the full draw") {
    for (int dim : {4, 8}) {
        auto rng_a = stream_rng(55, 3);
        double moduli2[16];
        haar_moduli_squared(dim, rng_a, moduli2);
        auto rng_b = stream_rng(55, 3);
        Eigen::VectorXcd psi = sample_haar_pure(dim, rng_b);
        for (int i = 0; i < dim; ++i)
            CHECK(moduli2[i] == doctest::Approx(std::norm(psi(i))).epsilon(1e-12));
    }
}

TEST_CASE("Gurvitz sampler reproduces Haar purity moments (Gaussian oracle)") {
    const int samples = 20000;
    const int dim = 4;
    double mean_gurvitz = 0.0, mean_oracle = 0.0, var_acc = 0.0;
    for (int i = 0; i < samples; ++i) {
        auto rng = stream_rng(200, i);
        Eigen::VectorXcd psi = sample_haar_pure(dim, rng);
        double p = purity(reduce_to_atom(Eigen::MatrixXcd(psi * psi.adjoint()), 0, 2, 2));
        mean_gurvitz += p;
        auto rng2 = stream_rng(201, i);
        Eigen::VectorXcd phi = gaussian_haar_state(dim, rng2);
        double q = purity(reduce_to_atom(Eigen::MatrixXcd(phi * phi.adjoint()), 0, 2, 2));
        mean_oracle += q;
        var_acc += (p - 0.8) * (p - 0.8);
    }
    mean_gurvitz /= samples;
    mean_oracle /= samples;
    double se = std::sqrt(var_acc / samples / samples);
    // Haar expectation of Tr ρ_1² for dA = dB = 2 is (dA + dB)/(dA dB + 1) = 4/5
    CHECK(std::abs(mean_gurvitz - 0.8) < 3 * se + 1e-4);
    CHECK(std::abs(mean_gurvitz - mean_oracle) < 4 * se);
}

TEST_CASE("Haar overlap distribution: Kolmogorov-Smirnov against Beta(1, l-1)") {
    const int samples = 20000;
    const int dim = 4;
    Eigen::VectorXcd reference = Eigen::VectorXcd::Zero(dim);
    reference(0) = 1.0;
    std::vector<double> overlaps(samples);
    for (int i = 0; i < samples; ++i) {
        auto rng = stream_rng(300, i);
        Eigen::VectorXcd psi = sample_haar_pure(dim, rng);
        overlaps[i] = std::norm(reference.dot(psi));
    }
    std::sort(overlaps.begin(), overlaps.end());
    double d = 0.0;
    for (int i = 0; i < samples; ++i) {
        double cdf = 1.0 - std::pow(1.0 - overlaps[i], dim - 1);
        d = std::max(d, std::abs(cdf - (i + 1.0) / samples));
        d = std::max(d, std::abs(cdf - static_cast<double>(i) / samples));
    }
    // 1% critical value of the KS statistic
    CHECK(d < 1.628 / std::sqrt(static_cast<double>(samples)));
}

TEST_CASE("Ginibre states are valid, full-rank density matrices") {
    double min_eig = 1.0;
    for (int i = 0; i < 500; ++i) {
        auto rng = stream_rng(400, i);
        Eigen::MatrixXcd rho = sample_ginibre_mixed(4, rng);
        CHECK(std::abs(rho.trace().real() - 1.0) < 1e-12);
        CHECK((rho - rho.adjoint()).cwiseAbs().maxCoeff() < 1e-14);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(rho);
        min_eig = std::min(min_eig, eig.eigenvalues().minCoeff());
    }
    CHECK(min_eig > 1e-12);
}

TEST_CASE("Ginibre ensemble purity matches an independent oracle") {
    // oracle: separately coded construction (column-major fill, different
    // stream root) of rho = MM†/Tr(MM†)
    const int samples = 20000;
    double mean_purity = 0.0, mean_oracle = 0.0, var_acc = 0.0;
    for (int i = 0; i < samples; ++i) {
        auto rng = stream_rng(500, i);
        double p = purity(sample_ginibre_mixed(4, rng));
        mean_purity += p;
        var_acc += (p - 8.0 / 17.0) * (p - 8.0 / 17.0);

        auto rng2 = stream_rng(501, i);
        std::normal_distribution<double> normal;
        Eigen::MatrixXcd m(4, 4);
        for (int col = 0; col < 4; ++col)
            for (int row = 0; row < 4; ++row) {
                double re = normal(rng2);
                double im = normal(rng2);
                m(row, col) = Complex(re, im);
            }
        Eigen::MatrixXcd rho = m * m.adjoint();
        rho /= rho.trace().real();
        mean_oracle += purity(rho);
    }
    mean_purity /= samples;
    mean_oracle /= samples;
    double se = std::sqrt(var_acc / samples / samples);
    // Hilbert-Schmidt mean purity for dimension l is 2l/(l²+1) = 8/17
    CHECK(std::abs(mean_purity - 8.0 / 17.0) < 3 * se + 1e-4);
    CHECK(std::abs(mean_purity - mean_oracle) < 4 * se);
}

TEST_CASE("single-excitation family carries exactly one atomic excitation") {
    for (int n : {2, 3, 4}) {
        auto rng = stream_rng(600, n);
        Eigen::VectorXcd psi = sample_single_excitation(n, rng);
        CHECK(std::abs(psi.norm() - 1.0) < 1e-12);
        double excitation = 0.0;
        for (std::int64_t a = 0; a < psi.size(); ++a) {
            int bits = 0;
            for (int i = 0; i < n; ++i) bits += (a >> i) & 1;
            excitation += bits * std::norm(psi(a));
            if (bits != 1) CHECK(std::norm(psi(a)) == 0.0);
        }
        CHECK(excitation == doctest::Approx(1.0).epsilon(1e-12));
    }

    // N=2 members take the cos α |eg> + e^{iφ} sin α |ge> form
    auto rng = stream_rng(601, 0);
    Eigen::VectorXcd psi = sample_single_excitation(2, rng);
    CHECK(std::norm(psi(0)) == 0.0);
    CHECK(std::norm(psi(3)) == 0.0);
    CHECK(std::norm(psi(1)) + std::norm(psi(2)) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("reference families hit exact Q values") {
    for (int n : {2, 3, 4}) {
        auto rng = stream_rng(700, n);
        Eigen::VectorXcd sep = make_reference_state(Sampler::SeparableHaarProduct, n, 2, rng);
        CHECK(std::abs(meyer_wallach_q(sep, n)) < 1e-12);
        Eigen::VectorXcd maxent = make_reference_state(Sampler::MaxEntangled, n, 2, rng);
        CHECK(meyer_wallach_q(maxent, n) == doctest::Approx(n / 2.0).epsilon(1e-12));
        CHECK(std::abs(maxent.norm() - 1.0) < 1e-12);
    }
}

TEST_CASE("separable qutrit products have zero entanglement entropy") {
    auto rng = stream_rng(701, 0);
    Eigen::VectorXcd sep = make_reference_state(Sampler::SeparableHaarProduct, 2, 3, rng);
    CHECK(std::abs(sep.norm() - 1.0) < 1e-12);
    CHECK(entanglement_entropy_bits(sep, 3) < 1e-10);
}

TEST_CASE("haar_unitary produces unitaries") {
    for (int dim : {2, 4}) {
        auto rng = stream_rng(800, dim);
        Eigen::MatrixXcd u = haar_unitary(dim, rng);
        CHECK((u.adjoint() * u - Eigen::MatrixXcd::Identity(dim, dim)).cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("constraint filters select what they claim") {
    SUBCASE("per-atom energy: every atom simultaneously") {
        EnsembleSpec spec{Sampler::HaarPure, 50, 42,
                          Constraint{Constraint::Kind::PerAtomEnergy, -0.4, 0.005}, 2, 2};
        auto states = generate_pure_ensemble(spec, 2);
        REQUIRE(states.size() == 50);
        for (const auto& psi : states)
            for (int i = 0; i < 2; ++i)
                CHECK(std::abs(mean_energy_per_atom(psi, i, 2) + 0.4) <= 0.005 + 1e-12);
    }

    SUBCASE("total energy") {
        EnsembleSpec spec{Sampler::HaarPure, 50, 43,
                          Constraint{Constraint::Kind::TotalEnergy, 0.2, 0.001}, 2, 2};
        auto states = generate_pure_ensemble(spec, 2);
        for (const auto& psi : states)
            CHECK(std::abs(mean_energy_total(psi, 2) - 0.2) <= 0.001 + 1e-12);
    }

    SUBCASE("initial entropy of mixed states") {
        EnsembleSpec spec{Sampler::GinibreMixed, 30, 44,
                          Constraint{Constraint::Kind::InitialEntropy, 1.2, 0.0005}, 2, 2};
        auto states = generate_mixed_ensemble(spec, 2);
        for (const auto& rho : states)
            CHECK(std::abs(von_neumann_entropy_bits(rho) - 1.2) <= 0.0005 + 1e-10);
    }

    SUBCASE("empty constraint is the identity filter") {
        EnsembleSpec spec{Sampler::HaarPure, 20, 45, Constraint{}, 2, 2};
        auto plan = plan_ensemble(spec, 2);
        CHECK(plan.candidate_indices.size() == 20);
        CHECK(plan.acceptance_rate == 1.0);
        for (std::size_t i = 0; i < plan.candidate_indices.size(); ++i)
            CHECK(plan.candidate_indices[i] == static_cast<std::int64_t>(i));
    }

    SUBCASE("impossible tolerance signals failure") {
        EnsembleSpec spec{Sampler::GinibreMixed, 10, 46,
                          Constraint{Constraint::Kind::InitialEntropy, 10.0, 1e-6}, 2, 2};
        CHECK_THROWS_AS(plan_ensemble(spec, 2, 1e-6, 100000), std::runtime_error);
    }
}

TEST_CASE("materialized filter matches the plan-based filter") {
    EnsembleSpec unconstrained{Sampler::HaarPure, 4000, 47, Constraint{}, 2, 2};
    auto all = generate_pure_ensemble(unconstrained, 2);
    Constraint c{Constraint::Kind::TotalEnergy, 0.0, 0.02};
    double rate = 0.0;
    auto kept = filter_constraint(all, c, 2, &rate);
    CHECK(rate == doctest::Approx(static_cast<double>(kept.size()) / all.size()));

    EnsembleSpec constrained = unconstrained;
    constrained.size = static_cast<std::int64_t>(kept.size());
    constrained.constraint = c;
    auto planned = generate_pure_ensemble(constrained, 2);
    REQUIRE(planned.size() == kept.size());
    for (std::size_t i = 0; i < kept.size(); ++i)
        CHECK((planned[i] - kept[i]).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("plans are independent of worker count and chunking") {
    EnsembleSpec spec{Sampler::HaarPure, 200, 48,
                      Constraint{Constraint::Kind::TotalEnergy, 0.1, 0.01}, 2, 2};
    auto plan1 = plan_ensemble(spec, 1);
    auto plan2 = plan_ensemble(spec, 4);
    CHECK(plan1.candidate_indices == plan2.candidate_indices);
    CHECK(plan1.candidates_scanned == plan2.candidates_scanned);
    CHECK(plan1.acceptance_rate == plan2.acceptance_rate);
}

TEST_CASE("ensemble spec validation") {
    EnsembleSpec bad{Sampler::GinibreMixed, 10, 1, Constraint{}, 2, 3};
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    EnsembleSpec qutrit_energy{Sampler::HaarPure, 10, 1,
                               Constraint{Constraint::Kind::PerAtomEnergy, 0.0, 0.1}, 3, 2};
    CHECK_THROWS_AS(qutrit_energy.validate(), std::invalid_argument);
    EnsembleSpec single{Sampler::SingleExcitation, 10, 1, Constraint{}, 2, 1};
    CHECK_THROWS_AS(single.validate(), std::invalid_argument);
}
