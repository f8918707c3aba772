// measures.hpp — entanglement and state-characterization measures on the
// atomic space: Meyer–Wallach Q, bipartite entanglement entropy, Wootters
// concurrence, purity, normalized mean energies, initial entropy.

#pragma once

#include "jclab/dynamics.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <stdexcept>

namespace jclab {

// Q = N - Σ_i Tr ρ_i², the unnormalized Meyer–Wallach measure; range
// [0, N/2]. Qubits only.
inline double meyer_wallach_q(const Eigen::MatrixXcd& rho_atoms, int n_atoms) {
    std::int64_t dim = 1;
    for (int i = 0; i < n_atoms; ++i) dim *= 2;
    if (rho_atoms.rows() != dim)
        throw std::invalid_argument("meyer_wallach_q: defined for qubit systems only");
    double q = n_atoms;
    for (int i = 0; i < n_atoms; ++i)
        q -= purity(reduce_to_atom(rho_atoms, i, n_atoms, 2));
    return q;
}

inline double meyer_wallach_q(const Eigen::VectorXcd& psi_atoms, int n_atoms) {
    std::int64_t dim = 1;
    for (int i = 0; i < n_atoms; ++i) dim *= 2;
    if (psi_atoms.size() != dim)
        throw std::invalid_argument("meyer_wallach_q: defined for qubit systems only");
    double q = n_atoms;
    for (int i = 0; i < n_atoms; ++i) {
        std::int64_t right = 1;
        for (int j = i + 1; j < n_atoms; ++j) right *= 2;
        std::int64_t left = dim / (2 * right);
        // ρ_i entries from the pure state directly.
        std::array<Complex, 4> r{};
        for (std::int64_t l = 0; l < left; ++l)
            for (std::int64_t s = 0; s < right; ++s) {
                Complex a0 = psi_atoms((l * 2 + 0) * right + s);
                Complex a1 = psi_atoms((l * 2 + 1) * right + s);
                r[0] += a0 * std::conj(a0);
                r[1] += a0 * std::conj(a1);
                r[2] += a1 * std::conj(a0);
                r[3] += a1 * std::conj(a1);
            }
        q -= std::norm(r[0]) + std::norm(r[1]) + std::norm(r[2]) + std::norm(r[3]);
    }
    return q;
}

// Entanglement entropy in bits of a pure two-subsystem atomic state:
// S(ρ_1) with ρ_1 the reduction to the first atom.
inline double entanglement_entropy_bits(const Eigen::VectorXcd& psi_atoms, int atom_dim_each) {
    if (psi_atoms.size() != static_cast<std::int64_t>(atom_dim_each) * atom_dim_each)
        throw std::invalid_argument("entanglement_entropy_bits: expects a two-subsystem state");
    Eigen::Map<const Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>
        m(psi_atoms.data(), atom_dim_each, atom_dim_each);
    Eigen::MatrixXcd rho1 = m * m.adjoint();
    return von_neumann_entropy_bits(rho1);
}

inline double entanglement_entropy_bits(const Eigen::MatrixXcd& rho_atoms, int atom_dim_each) {
    if (purity(rho_atoms) < 1.0 - 1e-8)
        throw std::invalid_argument("entanglement_entropy_bits: input state is not pure");
    return von_neumann_entropy_bits(
        trace_out_one_atom(rho_atoms, 1, 2, atom_dim_each));
}

// Concurrence of a pure two-qubit state: C = |ψᵀ(σ_y⊗σ_y)ψ|, the rank-1
// specialization of the density-matrix form below (exact, no eigensolve).
inline double concurrence(const Eigen::VectorXcd& psi) {
    if (psi.size() != 4) throw std::invalid_argument("concurrence: expects a two-qubit state");
    // σ_y ⊗ σ_y is antidiagonal (-1, 1, 1, -1) in the product basis
    Complex flip = -psi(0) * psi(3) + psi(1) * psi(2) + psi(2) * psi(1) - psi(3) * psi(0);
    return std::abs(flip);
}

// Wootters concurrence of a two-qubit density matrix:
// C = max{0, √λ₁ - √λ₂ - √λ₃ - √λ₄}, λ eigenvalues of ρ(σ_y⊗σ_y)ρ*(σ_y⊗σ_y)
// with conjugation in the computational product basis.
inline double concurrence(const Eigen::MatrixXcd& rho) {
    if (rho.rows() != 4 || rho.cols() != 4)
        throw std::invalid_argument("concurrence: expects a two-qubit density matrix");
    {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> check;
        check.compute(rho, Eigen::EigenvaluesOnly);
        if (check.eigenvalues().minCoeff() < -1e-8)
            throw std::runtime_error("concurrence: density matrix is not positive semidefinite");
    }
    Eigen::Matrix4cd yy = Eigen::Matrix4cd::Zero();
    // σ_y ⊗ σ_y is antidiagonal (-1, 1, 1, -1) in the product basis.
    yy(0, 3) = -1.0;
    yy(1, 2) = 1.0;
    yy(2, 1) = 1.0;
    yy(3, 0) = -1.0;
    Eigen::Matrix4cd r = rho * yy * rho.conjugate() * yy;
    Eigen::ComplexEigenSolver<Eigen::Matrix4cd> solver(r, false);
    std::array<double, 4> roots{};
    for (int i = 0; i < 4; ++i)
        roots[i] = std::sqrt(std::max(0.0, solver.eigenvalues()(i).real()));
    std::sort(roots.begin(), roots.end(), std::greater<double>());
    return std::max(0.0, roots[0] - roots[1] - roots[2] - roots[3]);
}

// Mean energy of atom i normalized to ω_A: ⟨E_i⟩ = Tr(ρ_i r₃)/2 ∈ [-1/2, 1/2].
// Two-level atoms only.
inline double mean_energy_per_atom(const Eigen::MatrixXcd& rho_atoms, int which, int n_atoms) {
    Eigen::MatrixXcd rho_i = reduce_to_atom(rho_atoms, which, n_atoms, 2);
    return 0.5 * (rho_i(1, 1).real() - rho_i(0, 0).real());
}

inline double mean_energy_per_atom(const Eigen::VectorXcd& psi_atoms, int which, int n_atoms) {
    std::int64_t dim = psi_atoms.size();
    std::int64_t right = 1;
    for (int j = which + 1; j < n_atoms; ++j) right *= 2;
    std::int64_t left = dim / (2 * right);
    double p_excited = 0.0;
    for (std::int64_t l = 0; l < left; ++l)
        for (std::int64_t s = 0; s < right; ++s)
            p_excited += std::norm(psi_atoms((l * 2 + 1) * right + s));
    return p_excited - 0.5;
}

// ⟨E⟩ = (1/N) Σ_i ⟨E_i⟩.
inline double mean_energy_total(const Eigen::MatrixXcd& rho_atoms, int n_atoms) {
    double sum = 0.0;
    for (int i = 0; i < n_atoms; ++i) sum += mean_energy_per_atom(rho_atoms, i, n_atoms);
    return sum / n_atoms;
}

inline double mean_energy_total(const Eigen::VectorXcd& psi_atoms, int n_atoms) {
    double sum = 0.0;
    for (int i = 0; i < n_atoms; ++i) sum += mean_energy_per_atom(psi_atoms, i, n_atoms);
    return sum / n_atoms;
}

// Initial mixedness: entropy (bits) of the initial atomic density matrix.
inline double initial_entropy(const Eigen::MatrixXcd& rho_atoms) {
    return von_neumann_entropy_bits(rho_atoms);
}

} // namespace jclab
