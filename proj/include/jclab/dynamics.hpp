// dynamics.hpp — exact time evolution in the eigenbasis, field partial
// traces, base-2 von Neumann entropy, and time-grid averaging.
//
// Pure states evolve as Σ_j ⟨v_j|ψ0⟩ e^{-i t E_j} |v_j⟩; density matrices
// as ρ_ij(t) = e^{-i t (E_i - E_j)} ρ_ij(0) in the eigenbasis. Because the
// composite eigenvector matrix is a tensor power of the (real) subsystem
// one, basis changes are applied mode by mode at O(dim · sub_dim) cost.

#pragma once

#include "jclab/basis.hpp"
#include "jclab/model.hpp"
#include "jclab/spectrum.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <utility>
#include <vector>

namespace jclab {

using Complex = std::complex<double>;

// Generalized Rabi frequency of the k-excitation two-state block.
inline double rabi_frequency(const ModelSpec& spec, int excitation) {
    double delta = spec.detuning();
    return std::sqrt(delta * delta +
                     4.0 * spec.coupling_g * spec.coupling_g * excitation);
}

// ----------------------------- time grids -----------------------------

struct TimeGrid {
    enum class Kind { SinglePeriod, LongInterval };
    Kind kind = Kind::SinglePeriod;
    int n_points = 0;
    double step = 0.0;  // endpoint-exclusive uniform samples t_j = j·step
    double span = 0.0;  // one period, or the long-interval length

    double point(int j) const { return j * step; }
};

inline TimeGrid single_period_grid(double period, int n_points = 256) {
    if (period <= 0 || n_points < 1) throw std::invalid_argument("single_period_grid: bad parameters");
    return TimeGrid{TimeGrid::Kind::SinglePeriod, n_points, period / n_points, period};
}

inline TimeGrid long_interval_grid(double span, int n_points = 4096) {
    if (span <= 0 || n_points < 1) throw std::invalid_argument("long_interval_grid: bad parameters");
    return TimeGrid{TimeGrid::Kind::LongInterval, n_points, span / n_points, span};
}

// Default averaging grid. Photonless two-level systems have a single
// oscillation |e0⟩↔|g1⟩, and the reduced-state spectrum is exactly
// periodic with 2π/Ω₁ (the fast ω-scale phases act as local unitaries),
// so one period suffices. Everything else mixes incommensurate block
// frequencies and is averaged over a long window.
inline TimeGrid default_grid(const ModelSpec& spec, int n_points = 0, double span_over_g = 400.0) {
    if (spec.atom_kind == AtomKind::TwoLevel && spec.initial_photons == 0) {
        double period = 2.0 * std::numbers::pi / rabi_frequency(spec, 1);
        return single_period_grid(period, n_points > 0 ? n_points : 256);
    }
    return long_interval_grid(span_over_g / spec.coupling_g, n_points > 0 ? n_points : 4096);
}

// --------------------------- state validation --------------------------

inline void check_normalized(const Eigen::VectorXcd& psi, double tol = 1e-10) {
    if (std::abs(psi.norm() - 1.0) > tol)
        throw std::invalid_argument("state vector is not normalized");
}

inline double purity(const Eigen::MatrixXcd& rho) {
    return rho.squaredNorm();  // Tr ρ² for Hermitian ρ
}

inline void check_density_matrix(const Eigen::MatrixXcd& rho, double tol = 1e-10) {
    if (rho.rows() != rho.cols()) throw std::invalid_argument("density matrix must be square");
    if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > tol)
        throw std::invalid_argument("density matrix is not Hermitian");
    if (std::abs(rho.trace().real() - 1.0) > tol || std::abs(rho.trace().imag()) > tol)
        throw std::invalid_argument("density matrix trace is not 1");
}

// ------------------------------- entropy -------------------------------

// S = -Σ λ log2 λ with 0·log 0 := 0; eigenvalues below 1e-12 contribute
// zero, eigenvalues below -1e-8 signal an invalid density matrix.
inline double von_neumann_entropy_bits(const Eigen::MatrixXcd& rho) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver;
    solver.compute(rho, Eigen::EigenvaluesOnly);
    double s = 0.0;
    for (Eigen::Index i = 0; i < rho.rows(); ++i) {
        double lambda = solver.eigenvalues()(i);
        if (lambda < -1e-8)
            throw std::runtime_error("von_neumann_entropy: negative eigenvalue " +
                                     std::to_string(lambda));
        if (lambda > 1e-12) s -= lambda * std::log2(lambda);
    }
    return s;
}

// ------------------------------- evolver -------------------------------

class Evolver {
  public:
    explicit Evolver(SpectralModel model)
        : model_(std::move(model)),
          basis_(model_.spec),
          u_(model_.subsystem.eigenvectors),
          ut_(model_.subsystem.eigenvectors.transpose()) {}

    const ModelSpec& spec() const { return model_.spec; }
    const SpectralModel& spectral() const { return model_; }
    const CompositeBasis& basis() const { return basis_; }
    const Eigen::VectorXd& eigenvalues() const { return model_.composite_eigenvalues; }
    std::int64_t dim() const { return model_.dim(); }

    // Applies the (real) subsystem matrix m on every tensor mode of psi,
    // using scratch as ping-pong storage. Thread-safe: no shared scratch.
    void apply_modes(const Eigen::MatrixXd& m, Eigen::VectorXcd& psi,
                     Eigen::VectorXcd& scratch) const {
        const int d = model_.spec.subsystem_dim();
        const std::int64_t dim = psi.size();
        if (dim != model_.dim()) throw std::invalid_argument("apply_modes: dimension mismatch");
        if (scratch.size() != dim) scratch.resize(dim);
        const int n = model_.spec.n_subsystems;
        Eigen::VectorXcd* src = &psi;
        Eigen::VectorXcd* dst = &scratch;
        std::int64_t left = 1;
        std::int64_t right = dim / d;
        for (int mode = 0; mode < n; ++mode) {
            // Block l is a d×right row-major complex matrix; viewing it as a
            // d×2·right real matrix lets the real GEMM act on both parts.
            for (std::int64_t l = 0; l < left; ++l) {
                const double* in = reinterpret_cast<const double*>(src->data() + l * d * right);
                double* out = reinterpret_cast<double*>(dst->data() + l * d * right);
                Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>
                    x(in, d, 2 * right);
                Eigen::Map<Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>
                    y(out, d, 2 * right);
                y.noalias() = m * x;
            }
            std::swap(src, dst);
            left *= d;
            right /= d;
        }
        if (src != &psi) psi = *src;
    }

    Eigen::VectorXcd to_eigenbasis(Eigen::VectorXcd psi) const {
        Eigen::VectorXcd scratch;
        apply_modes(ut_, psi, scratch);
        return psi;
    }

    Eigen::VectorXcd from_eigenbasis(Eigen::VectorXcd z) const {
        Eigen::VectorXcd scratch;
        apply_modes(u_, z, scratch);
        return z;
    }

    const Eigen::MatrixXd& subsystem_u() const { return u_; }
    const Eigen::MatrixXd& subsystem_ut() const { return ut_; }

    Eigen::VectorXcd phases(double t) const {
        const auto& e = model_.composite_eigenvalues;
        Eigen::VectorXcd p(e.size());
        for (Eigen::Index j = 0; j < e.size(); ++j)
            p(j) = std::polar(1.0, -e(j) * t);
        return p;
    }

    Eigen::VectorXcd evolve_pure(const Eigen::VectorXcd& psi0, double t) const {
        check_normalized(psi0);
        Eigen::VectorXcd z = to_eigenbasis(psi0);
        z.array() *= phases(t).array();
        return from_eigenbasis(z);
    }

    Eigen::MatrixXcd evolve_density(const Eigen::MatrixXcd& rho0, double t) const {
        check_density_matrix(rho0);
        Eigen::MatrixXcd rho = basis_change_columns(ut_, rho0);          // U†ρ U
        Eigen::VectorXcd p = phases(t);
        for (Eigen::Index j = 0; j < rho.cols(); ++j)
            for (Eigen::Index i = 0; i < rho.rows(); ++i)
                rho(i, j) *= p(i) * std::conj(p(j));
        return basis_change_columns(u_, rho);                            // U ρ U†
    }

  private:
    // Returns M_N ρ M_N† where M_N is the tensor power of m.
    Eigen::MatrixXcd basis_change_columns(const Eigen::MatrixXd& m,
                                          const Eigen::MatrixXcd& rho) const {
        Eigen::MatrixXcd work = rho;
        Eigen::VectorXcd col(work.rows()), scratch;
        for (int pass = 0; pass < 2; ++pass) {
            for (Eigen::Index j = 0; j < work.cols(); ++j) {
                col = work.col(j);
                apply_modes(m, col, scratch);
                work.col(j) = col;
            }
            work.adjointInPlace();
        }
        return work;
    }

    SpectralModel model_;
    CompositeBasis basis_;
    Eigen::MatrixXd u_;
    Eigen::MatrixXd ut_;
};

// --------------------------- partial traces ----------------------------

// Reduced atomic density matrix of a pure composite state: with ψ reshaped
// into Ψ(a, f), ρ_atoms = Ψ Ψ†.
inline Eigen::MatrixXcd trace_out_fields(const Eigen::VectorXcd& psi, const CompositeBasis& basis) {
    if (psi.size() != basis.dim_composite)
        throw std::invalid_argument("trace_out_fields: dimension mismatch");
    Eigen::MatrixXcd big(basis.dim_atoms, basis.dim_fields);
    for (std::int64_t c = 0; c < basis.dim_composite; ++c)
        big(basis.atom_of[c], basis.field_of[c]) = psi(c);
    return big * big.adjoint();
}

inline Eigen::MatrixXcd trace_out_fields(const Eigen::MatrixXcd& rho, const CompositeBasis& basis) {
    if (rho.rows() != basis.dim_composite || rho.cols() != basis.dim_composite)
        throw std::invalid_argument("trace_out_fields: dimension mismatch");
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(basis.dim_atoms, basis.dim_atoms);
    for (std::int64_t a = 0; a < basis.dim_atoms; ++a)
        for (std::int64_t b = 0; b < basis.dim_atoms; ++b) {
            Complex acc(0.0, 0.0);
            for (std::int64_t f = 0; f < basis.dim_fields; ++f)
                acc += rho(basis.composite_of[a * basis.dim_fields + f],
                           basis.composite_of[b * basis.dim_fields + f]);
            out(a, b) = acc;
        }
    return out;
}

// Traces out atom `which` from a state on (atom_dim)^n, leaving the other
// n-1 atoms in tensor order.
inline Eigen::MatrixXcd trace_out_one_atom(const Eigen::MatrixXcd& rho_atoms, int which,
                                           int n_atoms, int atom_dim_each) {
    if (which < 0 || which >= n_atoms) throw std::out_of_range("trace_out_one_atom: atom index");
    std::int64_t dim = 1;
    for (int i = 0; i < n_atoms; ++i) dim *= atom_dim_each;
    if (rho_atoms.rows() != dim) throw std::invalid_argument("trace_out_one_atom: dimension mismatch");
    std::int64_t right = 1;
    for (int i = which + 1; i < n_atoms; ++i) right *= atom_dim_each;
    std::int64_t left = dim / (right * atom_dim_each);
    std::int64_t out_dim = dim / atom_dim_each;
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(out_dim, out_dim);
    for (std::int64_t la = 0; la < left; ++la)
        for (std::int64_t ra = 0; ra < right; ++ra)
            for (std::int64_t lb = 0; lb < left; ++lb)
                for (std::int64_t rb = 0; rb < right; ++rb) {
                    Complex acc(0.0, 0.0);
                    for (int k = 0; k < atom_dim_each; ++k)
                        acc += rho_atoms((la * atom_dim_each + k) * right + ra,
                                         (lb * atom_dim_each + k) * right + rb);
                    out(la * right + ra, lb * right + rb) = acc;
                }
    return out;
}

// Single-atom reduction ρ_i (traces out every other atom).
inline Eigen::MatrixXcd reduce_to_atom(const Eigen::MatrixXcd& rho_atoms, int which,
                                       int n_atoms, int atom_dim_each) {
    if (which < 0 || which >= n_atoms) throw std::out_of_range("reduce_to_atom: atom index");
    std::int64_t right = 1;
    for (int i = which + 1; i < n_atoms; ++i) right *= atom_dim_each;
    std::int64_t dim = 1;
    for (int i = 0; i < n_atoms; ++i) dim *= atom_dim_each;
    if (rho_atoms.rows() != dim) throw std::invalid_argument("reduce_to_atom: dimension mismatch");
    std::int64_t left = dim / (right * atom_dim_each);
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(atom_dim_each, atom_dim_each);
    for (int ka = 0; ka < atom_dim_each; ++ka)
        for (int kb = 0; kb < atom_dim_each; ++kb) {
            Complex acc(0.0, 0.0);
            for (std::int64_t l = 0; l < left; ++l)
                for (std::int64_t r = 0; r < right; ++r)
                    acc += rho_atoms((l * atom_dim_each + ka) * right + r,
                                     (l * atom_dim_each + kb) * right + r);
            out(ka, kb) = acc;
        }
    return out;
}

// --------------------------- entropy engine ----------------------------

// Streams a state over a uniform time grid via the phase recurrence
// z(t+Δ) = z(t) ⊙ e^{-iEΔ} and accumulates the reduced-state entropy.
// Owns all scratch buffers; use one engine per worker thread.
class EntropyEngine {
  public:
    EntropyEngine(const Evolver& evolver, const TimeGrid& grid)
        : evolver_(evolver), grid_(grid) {
        const auto& e = evolver.eigenvalues();
        step_phase_.resize(e.size());
        for (Eigen::Index j = 0; j < e.size(); ++j)
            step_phase_(j) = std::polar(1.0, -e(j) * grid.step);
        const auto& b = evolver.basis();
        big_.resize(b.dim_atoms, b.dim_fields);
        rho_.resize(b.dim_atoms, b.dim_atoms);
    }

    const TimeGrid& grid() const { return grid_; }

    // Time-averaged entropy of a pure composite state.
    double run_pure(const Eigen::VectorXcd& psi0) {
        components_.assign(1, {1.0, evolver_.to_eigenbasis(psi0)});
        return run_components();
    }

    // Time-averaged entropy of ρ(0) = Σ_k p_k |ψ_k⟩⟨ψ_k| given composite
    // component vectors (typically the eigendecomposition of the initial
    // density matrix embedded with the field state).
    double run_mixed(const std::vector<std::pair<double, Eigen::VectorXcd>>& parts) {
        components_.clear();
        for (const auto& [weight, psi] : parts)
            components_.push_back({weight, evolver_.to_eigenbasis(psi)});
        return run_components();
    }

  private:
    double run_components() {
        const auto& basis = evolver_.basis();
        double sum = 0.0;
        for (int j = 0; j < grid_.n_points; ++j) {
            rho_.setZero();
            for (auto& [weight, z] : components_) {
                if (j > 0) z.array() *= step_phase_.array();
                prod_ = z;
                evolver_.apply_modes(evolver_.subsystem_u(), prod_, scratch_);
                for (std::int64_t c = 0; c < basis.dim_composite; ++c)
                    big_(basis.atom_of[c], basis.field_of[c]) = prod_(c);
                rho_.noalias() += weight * (big_ * big_.adjoint());
            }
            solver_.compute(rho_, Eigen::EigenvaluesOnly);
            double s = 0.0;
            for (Eigen::Index i = 0; i < rho_.rows(); ++i) {
                double lambda = solver_.eigenvalues()(i);
                if (lambda > 1e-12) s -= lambda * std::log2(lambda);
            }
            sum += s;
        }
        return sum / grid_.n_points;
    }

    const Evolver& evolver_;
    TimeGrid grid_;
    Eigen::VectorXcd step_phase_;
    std::vector<std::pair<double, Eigen::VectorXcd>> components_;
    Eigen::VectorXcd prod_, scratch_;
    Eigen::MatrixXcd big_, rho_;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver_;
};

// Mean over grid points of the entropy of the reduced atomic state.
inline double time_averaged_entropy(const Evolver& evolver, const Eigen::VectorXcd& psi0,
                                    const TimeGrid& grid) {
    check_normalized(psi0);
    EntropyEngine engine(evolver, grid);
    return engine.run_pure(psi0);
}

inline double time_averaged_entropy(const Evolver& evolver, const Eigen::MatrixXcd& rho0,
                                    const TimeGrid& grid) {
    check_density_matrix(rho0);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(rho0);
    std::vector<std::pair<double, Eigen::VectorXcd>> parts;
    for (Eigen::Index k = 0; k < rho0.rows(); ++k) {
        double p = solver.eigenvalues()(k);
        if (p > 1e-14) parts.push_back({p, solver.eigenvectors().col(k)});
    }
    EntropyEngine engine(evolver, grid);
    return engine.run_mixed(parts);
}

} // namespace jclab
