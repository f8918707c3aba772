#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "jclab/ensembles.hpp"
#include "jclab/measures.hpp"
#include "jclab/rng.hpp"

#include <Eigen/Dense>

#include <cmath>

using namespace jclab;

namespace {

Eigen::VectorXcd random_state(std::int64_t dim, Rng& rng) {
    std::normal_distribution<double> normal;
    Eigen::VectorXcd psi(dim);
    for (std::int64_t i = 0; i < dim; ++i) psi(i) = Complex(normal(rng), normal(rng));
    return psi / psi.norm();
}

Eigen::VectorXcd bell_state() {
    Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(4);
    psi(0) = psi(3) = 1.0 / std::sqrt(2.0);
    return psi;
}

Eigen::VectorXcd ghz_state(int n) {
    Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(std::int64_t{1} << n);
    psi(0) = psi(psi.size() - 1) = 1.0 / std::sqrt(2.0);
    return psi;
}

double binary_entropy(double p) {
    double s = 0.0;
    if (p > 0) s -= p * std::log2(p);
    if (p < 1) s -= (1 - p) * std::log2(1 - p);
    return s;
}

// Local (single-atom) unitaries applied to every qubit.
Eigen::VectorXcd random_local_rotation(const Eigen::VectorXcd& psi, int n_atoms, Rng& rng) {
    Eigen::VectorXcd out = psi;
    for (int i = 0; i < n_atoms; ++i) {
        Eigen::MatrixXcd u = haar_unitary(2, rng);
        std::int64_t right = std::int64_t{1} << (n_atoms - 1 - i);
        for (std::int64_t l = 0; l < out.size() / (2 * right); ++l)
            for (std::int64_t r = 0; r < right; ++r) {
                std::int64_t i0 = (l * 2 + 0) * right + r;
                std::int64_t i1 = (l * 2 + 1) * right + r;
                Complex a0 = out(i0), a1 = out(i1);
                out(i0) = u(0, 0) * a0 + u(0, 1) * a1;
                out(i1) = u(1, 0) * a0 + u(1, 1) * a1;
            }
    }
    return out;
}

} // namespace

TEST_CASE("Meyer-Wallach Q reference values") {
    auto rng = stream_rng(1, 0);

    // any product pure state -> 0
    Eigen::VectorXcd a = random_state(2, rng), b = random_state(2, rng);
    Eigen::VectorXcd product(4);
    product << a(0) * b(0), a(0) * b(1), a(1) * b(0), a(1) * b(1);
    CHECK(meyer_wallach_q(product, 2) == doctest::Approx(0.0).epsilon(1e-12));

    CHECK(meyer_wallach_q(bell_state(), 2) == doctest::Approx(1.0).epsilon(1e-12));

    for (int n : {2, 3, 4})
        CHECK(meyer_wallach_q(ghz_state(n), n) == doctest::Approx(n / 2.0).epsilon(1e-12));

    // density-matrix form agrees with the pure form
    Eigen::VectorXcd psi = random_state(8, rng);
    CHECK(meyer_wallach_q(Eigen::MatrixXcd(psi * psi.adjoint()), 3) ==
          doctest::Approx(meyer_wallach_q(psi, 3)).epsilon(1e-12));

    // rejected for qutrits
    CHECK_THROWS_AS(meyer_wallach_q(random_state(9, rng), 2), std::invalid_argument);
}

TEST_CASE("entanglement entropy reference values") {
    auto rng = stream_rng(2, 0);

    Eigen::VectorXcd a = random_state(2, rng), b = random_state(2, rng);
    Eigen::VectorXcd product(4);
    product << a(0) * b(0), a(0) * b(1), a(1) * b(0), a(1) * b(1);
    CHECK(entanglement_entropy_bits(product, 2) == doctest::Approx(0.0).epsilon(1e-10));

    CHECK(entanglement_entropy_bits(bell_state(), 2) == doctest::Approx(1.0).epsilon(1e-10));

    // two-qutrit maximally entangled: log2(3) bits
    Eigen::VectorXcd qutrit = Eigen::VectorXcd::Zero(9);
    qutrit(0) = qutrit(4) = qutrit(8) = 1.0 / std::sqrt(3.0);
    CHECK(entanglement_entropy_bits(qutrit, 3) == doctest::Approx(std::log2(3.0)).epsilon(1e-10));

    // density form: pure input required
    Eigen::MatrixXcd rho = bell_state() * bell_state().adjoint();
    CHECK(entanglement_entropy_bits(rho, 2) == doctest::Approx(1.0).epsilon(1e-10));
    Eigen::MatrixXcd mixed = 0.5 * rho + 0.125 * Eigen::MatrixXcd::Identity(4, 4);
    CHECK_THROWS_AS(entanglement_entropy_bits(mixed, 2), std::invalid_argument);
}

TEST_CASE("concurrence reference values") {
    auto rng = stream_rng(3, 0);

    Eigen::MatrixXcd bell = bell_state() * bell_state().adjoint();
    CHECK(concurrence(bell) == doctest::Approx(1.0).epsilon(1e-10));

    Eigen::VectorXcd a = random_state(2, rng), b = random_state(2, rng);
    Eigen::VectorXcd product(4);
    product << a(0) * b(0), a(0) * b(1), a(1) * b(0), a(1) * b(1);
    CHECK(concurrence(Eigen::MatrixXcd(product * product.adjoint())) ==
          doctest::Approx(0.0).epsilon(1e-8));
    CHECK(concurrence(product) == doctest::Approx(0.0).epsilon(1e-12));

    SUBCASE("Werner states against the closed form") {
        // C(p) = max{0, (3p-1)/2}, checked here by the eigenvalue route
        for (double p : {0.2, 0.4, 0.5, 0.8, 1.0}) {
            Eigen::MatrixXcd werner = p * bell + (1 - p) * 0.25 * Eigen::MatrixXcd::Identity(4, 4);
            double expected = std::max(0.0, (3 * p - 1) / 2);
            CHECK(concurrence(werner) == doctest::Approx(expected).epsilon(1e-10));
        }
    }

    SUBCASE("non-positive input is rejected") {
        Eigen::MatrixXcd bad = bell;
        bad(0, 0) += 0.2;
        bad(1, 1) -= 0.2;
        CHECK_THROWS(concurrence(bad));
    }
}

TEST_CASE("mean energies") {
    Eigen::VectorXcd ground(2), excited(2), plus(2);
    ground << 1, 0;   // |g>
    excited << 0, 1;  // |e>
    plus << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);

    CHECK(mean_energy_per_atom(Eigen::MatrixXcd(ground * ground.adjoint()), 0, 1) ==
          doctest::Approx(-0.5));
    CHECK(mean_energy_per_atom(Eigen::MatrixXcd(excited * excited.adjoint()), 0, 1) ==
          doctest::Approx(0.5));
    CHECK(mean_energy_per_atom(Eigen::MatrixXcd(plus * plus.adjoint()), 0, 1) ==
          doctest::Approx(0.0).epsilon(1e-12));

    Eigen::MatrixXcd bell = bell_state() * bell_state().adjoint();
    CHECK(mean_energy_per_atom(bell, 0, 2) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(mean_energy_per_atom(bell, 1, 2) == doctest::Approx(0.0).epsilon(1e-12));

    // |g g ... g> -> -1/2; |e g> -> 0; GHZ -> 0
    Eigen::VectorXcd gg = Eigen::VectorXcd::Zero(4);
    gg(0) = 1.0;
    CHECK(mean_energy_total(gg, 2) == doctest::Approx(-0.5));
    Eigen::VectorXcd eg = Eigen::VectorXcd::Zero(4);
    eg(2) = 1.0;
    CHECK(mean_energy_total(eg, 2) == doctest::Approx(0.0));
    CHECK(mean_energy_total(ghz_state(3), 3) == doctest::Approx(0.0).epsilon(1e-12));

    // pure and density forms agree
    auto rng = stream_rng(4, 0);
    Eigen::VectorXcd psi = random_state(8, rng);
    for (int i = 0; i < 3; ++i)
        CHECK(mean_energy_per_atom(psi, i, 3) ==
              doctest::Approx(mean_energy_per_atom(Eigen::MatrixXcd(psi * psi.adjoint()), i, 3))
                  .epsilon(1e-12));
}

TEST_CASE("initial entropy") {
    Eigen::MatrixXcd pure = bell_state() * bell_state().adjoint();
    CHECK(initial_entropy(pure) == doctest::Approx(0.0).epsilon(1e-10));
    CHECK(initial_entropy(Eigen::MatrixXcd::Identity(4, 4) / 4.0) == doctest::Approx(2.0));
    Eigen::MatrixXcd rank2 = Eigen::MatrixXcd::Zero(4, 4);
    rank2(0, 0) = rank2(3, 3) = 0.5;
    CHECK(initial_entropy(rank2) == doctest::Approx(1.0));
}

TEST_CASE("local-unitary invariance of the measures") {
    auto rng = stream_rng(5, 0);
    for (int trial = 0; trial < 10; ++trial) {
        Eigen::VectorXcd psi = random_state(4, rng);
        Eigen::VectorXcd rotated = random_local_rotation(psi, 2, rng);
        CHECK(meyer_wallach_q(rotated, 2) ==
              doctest::Approx(meyer_wallach_q(psi, 2)).epsilon(1e-10));
        CHECK(entanglement_entropy_bits(rotated, 2) ==
              doctest::Approx(entanglement_entropy_bits(psi, 2)).epsilon(1e-10));
        CHECK(concurrence(Eigen::MatrixXcd(rotated * rotated.adjoint())) ==
              doctest::Approx(concurrence(Eigen::MatrixXcd(psi * psi.adjoint()))).epsilon(1e-8));
    }
}

TEST_CASE("concurrence-entropy identity on pure two-qubit states") {
    auto rng = stream_rng(6, 0);
    for (int trial = 0; trial < 50; ++trial) {
        Eigen::VectorXcd psi = random_state(4, rng);
        double c = concurrence(psi);
        double s = entanglement_entropy_bits(psi, 2);
        double expected = binary_entropy(0.5 * (1.0 + std::sqrt(std::max(0.0, 1.0 - c * c))));
        CHECK(std::abs(s - expected) < 1e-8);
        // the density-matrix route agrees up to its eigensolver floor
        double c_density = concurrence(Eigen::MatrixXcd(psi * psi.adjoint()));
        CHECK(std::abs(c_density - c) < 1e-7);
    }
}

TEST_CASE("exchange symmetry for two atoms") {
    auto rng = stream_rng(7, 0);
    for (int trial = 0; trial < 10; ++trial) {
        Eigen::VectorXcd psi = random_state(4, rng);
        Eigen::VectorXcd swapped(4);
        swapped << psi(0), psi(2), psi(1), psi(3);
        CHECK(meyer_wallach_q(swapped, 2) ==
              doctest::Approx(meyer_wallach_q(psi, 2)).epsilon(1e-12));
        CHECK(entanglement_entropy_bits(swapped, 2) ==
              doctest::Approx(entanglement_entropy_bits(psi, 2)).epsilon(1e-10));
        CHECK(concurrence(Eigen::MatrixXcd(swapped * swapped.adjoint())) ==
              doctest::Approx(concurrence(Eigen::MatrixXcd(psi * psi.adjoint()))).epsilon(1e-8));
    }
}

TEST_CASE("measure ranges on random states") {
    auto rng = stream_rng(8, 0);
    for (int trial = 0; trial < 2000; ++trial) {
        Eigen::VectorXcd psi = sample_haar_pure(4, rng);
        double q = meyer_wallach_q(psi, 2);
        CHECK(q >= -1e-12);
        CHECK(q <= 1.0 + 1e-12);
        double s = entanglement_entropy_bits(psi, 2);
        CHECK(s >= -1e-12);
        CHECK(s <= 1.0 + 1e-10);
        for (int i = 0; i < 2; ++i) {
            double e = mean_energy_per_atom(psi, i, 2);
            CHECK(e >= -0.5 - 1e-12);
            CHECK(e <= 0.5 + 1e-12);
        }
        Eigen::MatrixXcd rho = sample_ginibre_mixed(4, rng);
        double c = concurrence(rho);
        CHECK(c >= 0.0);
        CHECK(c <= 1.0 + 1e-10);
        double p = purity(rho);
        CHECK(p >= 0.25 - 1e-12);
        CHECK(p <= 1.0 + 1e-12);
    }
}
