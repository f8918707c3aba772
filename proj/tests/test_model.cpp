#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "jclab/model.hpp"
#include "jclab/spectrum.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <set>

using namespace jclab;

namespace {

// Independent dense construction of the ladder Hamiltonian from the
// operator definitions (a, a†, projectors), used as an oracle against the
// element-wise builder.
Eigen::MatrixXd dense_from_operators(const ModelSpec& spec) {
    const int levels = spec.atom_levels();
    const int f = spec.fock_cutoff;
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(f, f);
    for (int m = 1; m < f; ++m) a(m - 1, m) = std::sqrt(static_cast<double>(m));
    Eigen::MatrixXd number = a.transpose() * a;

    Eigen::MatrixXd h_atom = Eigen::MatrixXd::Zero(levels, levels);
    for (int l = 0; l < levels; ++l) h_atom(l, l) = atomic_level_energy(spec, l);
    Eigen::MatrixXd raise = Eigen::MatrixXd::Zero(levels, levels);
    for (int l = 0; l + 1 < levels; ++l) raise(l + 1, l) = 1.0;  // Σ |lvl+1⟩⟨lvl|

    auto kron = [](const Eigen::MatrixXd& x, const Eigen::MatrixXd& y) {
        Eigen::MatrixXd out(x.rows() * y.rows(), x.cols() * y.cols());
        for (Eigen::Index i = 0; i < x.rows(); ++i)
            for (Eigen::Index j = 0; j < x.cols(); ++j)
                out.block(i * y.rows(), j * y.cols(), y.rows(), y.cols()) = x(i, j) * y;
        return out;
    };
    Eigen::MatrixXd eye_f = Eigen::MatrixXd::Identity(f, f);
    Eigen::MatrixXd eye_a = Eigen::MatrixXd::Identity(levels, levels);
    Eigen::MatrixXd h = kron(h_atom, eye_f);
    h += kron(eye_a, spec.field_frequency * (number + 0.5 * eye_f));
    Eigen::MatrixXd interaction = kron(raise, a);  // a ⊗ Σ|lvl+1⟩⟨lvl|
    h += spec.coupling_g * (interaction + interaction.transpose());
    return h;
}

} // namespace

TEST_CASE("two-level Hamiltonian matrix elements") {
    ModelSpec spec = ModelSpec::two_level(1, 0, 1.0, 1.0);  // g = 1, δ = 2g
    Eigen::MatrixXd h = build_subsystem_hamiltonian(spec);

    // ⟨g,0|H|g,0⟩ = -ω_A/2 + ω/2
    int g0 = subsystem_index(spec, 0, 0);
    CHECK(h(g0, g0) == doctest::Approx(-spec.atom_frequency / 2 + spec.field_frequency / 2).epsilon(1e-14));

    // excitation-1 coupling is g·√1 = 1
    int g1 = subsystem_index(spec, 0, 1);
    int e0 = subsystem_index(spec, 1, 0);
    CHECK(h(g1, e0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(h(e0, g1) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("two-level Hamiltonian equals dense operator construction") {
    for (int n : {0, 1, 3}) {
        ModelSpec spec = ModelSpec::two_level(2, n);
        Eigen::MatrixXd h = build_subsystem_hamiltonian(spec);
        Eigen::MatrixXd oracle = dense_from_operators(spec);
        CHECK((h - oracle).cwiseAbs().maxCoeff() < 1e-14);
    }
}

TEST_CASE("three-level cascade excitation-2 block") {
    ModelSpec spec = ModelSpec::three_level(2, 0);
    Eigen::MatrixXd h = build_subsystem_hamiltonian(spec);

    int g2 = subsystem_index(spec, 0, 2);
    int e1_1 = subsystem_index(spec, 1, 1);
    int e2_0 = subsystem_index(spec, 2, 0);
    CHECK(h(g2, g2) == doctest::Approx(-1.2 + 2.5).epsilon(1e-14));
    CHECK(h(e1_1, e1_1) == doctest::Approx(0.0 + 1.5).epsilon(1e-14));
    CHECK(h(e2_0, e2_0) == doctest::Approx(1.2 + 0.5).epsilon(1e-14));
    CHECK(h(g2, e1_1) == doctest::Approx(0.1 * std::sqrt(2.0)).epsilon(1e-14));
    CHECK(h(e1_1, e2_0) == doctest::Approx(0.1 * 1.0).epsilon(1e-14));
    CHECK(h(g2, e2_0) == 0.0);

    Eigen::MatrixXd oracle = dense_from_operators(spec);
    CHECK((h - oracle).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("Hamiltonians are Hermitian") {
    for (auto spec : {ModelSpec::two_level(2, 2), ModelSpec::three_level(2, 1)}) {
        Eigen::MatrixXd h = build_subsystem_hamiltonian(spec);
        CHECK((h - h.transpose()).cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("cutoff below the reachability bound is rejected") {
    ModelSpec spec = ModelSpec::two_level(1, 2);
    spec.fock_cutoff = 3;  // needs n + 2 = 4
    CHECK_THROWS_AS(build_subsystem_hamiltonian(spec), std::invalid_argument);
    ModelSpec spec3 = ModelSpec::three_level(1, 1);
    spec3.fock_cutoff = 3;  // needs n + 3 = 4
    CHECK_THROWS_AS(spec3.validate(), std::invalid_argument);
}

TEST_CASE("sector decomposition enumerates excitation sectors") {
    ModelSpec spec = ModelSpec::two_level(1, 1);  // cutoff 3
    auto sectors = sector_decompose(spec);
    REQUIRE(sectors.size() == 4);
    using Labels = std::vector<std::pair<int, int>>;
    CHECK(sectors[0].basis_labels == Labels{{0, 0}});
    CHECK(sectors[1].basis_labels == Labels{{0, 1}, {1, 0}});
    CHECK(sectors[2].basis_labels == Labels{{0, 2}, {1, 1}});
    CHECK(sectors[3].basis_labels == Labels{{1, 2}});

    // every basis state appears exactly once
    std::set<int> seen;
    for (const auto& s : sectors)
        for (auto [lvl, m] : s.basis_labels) {
            CHECK(lvl + m == s.excitation);
            CHECK(seen.insert(subsystem_index(spec, lvl, m)).second);
        }
    CHECK(seen.size() == static_cast<std::size_t>(spec.subsystem_dim()));
}

TEST_CASE("three-level sector at excitation 2") {
    ModelSpec spec = ModelSpec::three_level(1, 0);  // cutoff 3
    auto sectors = sector_decompose(spec);
    using Labels = std::vector<std::pair<int, int>>;
    CHECK(sectors[2].basis_labels == Labels{{0, 2}, {1, 1}, {2, 0}});
}

TEST_CASE("off-sector matrix elements vanish") {
    ModelSpec spec = ModelSpec::two_level(1, 2);
    Eigen::MatrixXd h = build_subsystem_hamiltonian(spec);
    auto sectors = sector_decompose(spec);
    std::vector<int> sector_of(spec.subsystem_dim());
    for (const auto& s : sectors)
        for (auto [lvl, m] : s.basis_labels) sector_of[subsystem_index(spec, lvl, m)] = s.excitation;
    for (int r = 0; r < h.rows(); ++r)
        for (int c = 0; c < h.cols(); ++c)
            if (sector_of[r] != sector_of[c]) CHECK(std::abs(h(r, c)) < 1e-12);
}

TEST_CASE("one-excitation splitting equals the generalized Rabi frequency") {
    ModelSpec spec = ModelSpec::two_level(1, 0);
    SubsystemSpectrum sub = diagonalize_subsystem(spec);
    // sector order: {g0}, {g1, e0}, {e1}; columns 1,2 are the dressed pair
    double split = sub.eigenvalues(2) - sub.eigenvalues(1);
    CHECK(split == doctest::Approx(std::sqrt(8.0) * spec.coupling_g).epsilon(1e-12));

    // analytic 2×2 eigenvalues: centered on ω (the ±ω_A/2 cancel in the mean)
    double mean = sub.eigenvalues(1) + 0.5 * split;
    CHECK(mean == doctest::Approx(spec.field_frequency).epsilon(1e-12));
}

TEST_CASE("|g,0> is an exact eigenvector") {
    ModelSpec spec = ModelSpec::two_level(1, 0);
    Eigen::MatrixXd h = build_subsystem_hamiltonian(spec);
    Eigen::VectorXd g0 = Eigen::VectorXd::Zero(spec.subsystem_dim());
    g0(subsystem_index(spec, 0, 0)) = 1.0;
    Eigen::VectorXd hg0 = h * g0;
    double e0 = -spec.atom_frequency / 2 + spec.field_frequency / 2;
    CHECK((hg0 - e0 * g0).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("composite eigenvalues are pairwise sums for N=2") {
    ModelSpec spec = ModelSpec::two_level(2, 0);
    SpectralModel model = build_composite_spectrum(spec);
    const auto& sub = model.subsystem.eigenvalues;
    std::vector<double> sums;
    for (int i = 0; i < sub.size(); ++i)
        for (int j = 0; j < sub.size(); ++j) sums.push_back(sub(i) + sub(j));
    std::vector<double> composite(model.composite_eigenvalues.data(),
                                  model.composite_eigenvalues.data() + model.dim());
    std::sort(sums.begin(), sums.end());
    std::sort(composite.begin(), composite.end());
    for (std::size_t i = 0; i < sums.size(); ++i)
        CHECK(composite[i] == doctest::Approx(sums[i]).epsilon(1e-12));
}

TEST_CASE("subsystem spectral decomposition is unitary and reconstructs H") {
    for (auto spec : {ModelSpec::two_level(1, 2), ModelSpec::three_level(1, 1)}) {
        Eigen::MatrixXd h = build_subsystem_hamiltonian(spec);
        SubsystemSpectrum sub = diagonalize_subsystem(spec);
        const auto& u = sub.eigenvectors;
        CHECK((u.transpose() * u - Eigen::MatrixXd::Identity(u.rows(), u.cols()))
                  .cwiseAbs()
                  .maxCoeff() < 1e-10);
        Eigen::MatrixXd rebuilt = u * sub.eigenvalues.asDiagonal() * u.transpose();
        CHECK((rebuilt - h).cwiseAbs().maxCoeff() < 1e-10);
    }
}

TEST_CASE("composite spectral decomposition reconstructs the dense Hamiltonian") {
    ModelSpec spec = ModelSpec::two_level(2, 0);
    SpectralModel model = build_composite_spectrum(spec);
    Eigen::MatrixXd u = composite_unitary(model);
    CHECK((u.transpose() * u - Eigen::MatrixXd::Identity(u.rows(), u.cols())).cwiseAbs().maxCoeff() <
          1e-10);
    Eigen::MatrixXd h = composite_hamiltonian(spec);
    Eigen::MatrixXd rebuilt = u * model.composite_eigenvalues.asDiagonal() * u.transpose();
    CHECK((rebuilt - h).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("scaling all frequencies scales eigenvalues and fixes eigenvectors") {
    ModelSpec base = ModelSpec::two_level(1, 1);
    ModelSpec scaled = base;
    const double lambda = 3.7;
    scaled.coupling_g *= lambda;
    scaled.atom_frequency *= lambda;
    scaled.field_frequency *= lambda;
    SubsystemSpectrum a = diagonalize_subsystem(base);
    SubsystemSpectrum b = diagonalize_subsystem(scaled);
    CHECK((b.eigenvalues - lambda * a.eigenvalues).cwiseAbs().maxCoeff() < 1e-10);
    for (int col = 0; col < a.eigenvectors.cols(); ++col) {
        double same = (a.eigenvectors.col(col) - b.eigenvectors.col(col)).norm();
        double flipped = (a.eigenvectors.col(col) + b.eigenvectors.col(col)).norm();
        CHECK(std::min(same, flipped) < 1e-10);
    }
}
