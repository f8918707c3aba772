// spectrum.hpp — spectral decomposition of one subsystem and of the
// composite of N identical non-interacting subsystems.
//
// The subsystem is diagonalized per excitation sector (blocks of size
// ≤ atom_dim); composite eigenpairs are tensor products of subsystem
// eigenvectors with eigenvalue sums, so the composite unitary is never
// formed densely on the hot path.

#pragma once

#include "jclab/model.hpp"

#include <Eigen/Dense>

#include <stdexcept>
#include <string>
#include <vector>

namespace jclab {

struct SubsystemSpectrum {
    Eigen::VectorXd eigenvalues;  // sector-ordered
    Eigen::MatrixXd eigenvectors; // columns, real orthogonal
};

inline SubsystemSpectrum diagonalize_subsystem(const ModelSpec& spec) {
    const auto sectors = sector_decompose(spec);
    const int dim = spec.subsystem_dim();
    SubsystemSpectrum out;
    out.eigenvalues.resize(dim);
    out.eigenvectors = Eigen::MatrixXd::Zero(dim, dim);

    int col = 0;
    for (const auto& sector : sectors) {
        const int bdim = static_cast<int>(sector.basis_labels.size());
        Eigen::VectorXd vals;
        Eigen::MatrixXd vecs;
        if (bdim == 1) {
            vals = Eigen::VectorXd::Constant(1, sector.block(0, 0));
            vecs = Eigen::MatrixXd::Identity(1, 1);
        } else {
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(sector.block);
            if (solver.info() != Eigen::Success)
                throw std::runtime_error("diagonalize_subsystem: eigensolver failed on sector " +
                                         std::to_string(sector.excitation));
            vals = solver.eigenvalues();
            vecs = solver.eigenvectors();
        }
        for (int j = 0; j < bdim; ++j, ++col) {
            out.eigenvalues(col) = vals(j);
            for (int r = 0; r < bdim; ++r) {
                int ri = subsystem_index(spec, sector.basis_labels[r].first,
                                         sector.basis_labels[r].second);
                out.eigenvectors(ri, col) = vecs(r, j);
            }
        }
    }
    return out;
}

struct SpectralModel {
    ModelSpec spec;
    SubsystemSpectrum subsystem;
    // Composite eigenvalues in tensor (kron) order, subsystem 0 most
    // significant: E[j_1…j_N] = Σ_i e_sub[j_i].
    Eigen::VectorXd composite_eigenvalues;

    std::int64_t dim() const { return spec.composite_dim(); }
};

inline SpectralModel build_composite_spectrum(const ModelSpec& spec) {
    spec.validate();
    SpectralModel model;
    model.spec = spec;
    model.subsystem = diagonalize_subsystem(spec);

    const int sub_dim = spec.subsystem_dim();
    const std::int64_t dim = spec.composite_dim();
    model.composite_eigenvalues.resize(dim);
    model.composite_eigenvalues.setZero();
    std::int64_t block = dim;
    for (int i = 0; i < spec.n_subsystems; ++i) {
        block /= sub_dim;
        for (std::int64_t c = 0; c < dim; ++c) {
            int j = static_cast<int>((c / block) % sub_dim);
            model.composite_eigenvalues(c) += model.subsystem.eigenvalues(j);
        }
    }
    return model;
}

// Dense composite Hamiltonian Σ_i 1⊗…⊗H_sub⊗…⊗1 (diagnostic use).
inline Eigen::MatrixXd composite_hamiltonian(const ModelSpec& spec, std::int64_t max_dim = 4096) {
    if (spec.composite_dim() > max_dim)
        throw std::invalid_argument("composite_hamiltonian: dimension too large for dense form");
    const Eigen::MatrixXd h_sub = build_subsystem_hamiltonian(spec);
    const int d = spec.subsystem_dim();
    const std::int64_t dim = spec.composite_dim();
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(dim, dim);
    for (int i = 0; i < spec.n_subsystems; ++i) {
        std::int64_t right = 1;
        for (int j = i + 1; j < spec.n_subsystems; ++j) right *= d;
        std::int64_t left = dim / (right * d);
        for (std::int64_t l = 0; l < left; ++l)
            for (std::int64_t r = 0; r < right; ++r)
                for (int a = 0; a < d; ++a)
                    for (int b = 0; b < d; ++b)
                        h((l * d + a) * right + r, (l * d + b) * right + r) += h_sub(a, b);
    }
    return h;
}

// Dense composite eigenvector matrix (kron power of the subsystem one).
// Test/diagnostic use only; guarded against exponential blowup.
inline Eigen::MatrixXd composite_unitary(const SpectralModel& model, std::int64_t max_dim = 4096) {
    if (model.dim() > max_dim)
        throw std::invalid_argument("composite_unitary: dimension too large for dense form");
    Eigen::MatrixXd u = Eigen::MatrixXd::Identity(1, 1);
    for (int i = 0; i < model.spec.n_subsystems; ++i) {
        Eigen::MatrixXd next(u.rows() * model.subsystem.eigenvectors.rows(),
                             u.cols() * model.subsystem.eigenvectors.cols());
        for (Eigen::Index r = 0; r < u.rows(); ++r)
            for (Eigen::Index c = 0; c < u.cols(); ++c)
                next.block(r * model.subsystem.eigenvectors.rows(),
                           c * model.subsystem.eigenvectors.cols(),
                           model.subsystem.eigenvectors.rows(),
                           model.subsystem.eigenvectors.cols()) = u(r, c) * model.subsystem.eigenvectors;
        u = std::move(next);
    }
    return u;
}

} // namespace jclab
