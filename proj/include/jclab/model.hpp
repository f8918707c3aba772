// model.hpp — Jaynes–Cummings subsystem Hamiltonians and excitation sectors.
//
// A subsystem is one atom (two-level {g,e} or three-level ladder {g,e1,e2})
// coupled to a single truncated field mode. The interaction conserves the
// total excitation number (atomic level index + photon count), so the
// subsystem Hamiltonian is block diagonal over excitation sectors of size
// at most atom_dim.

#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace jclab {

enum class AtomKind { TwoLevel, ThreeLevelCascade };

inline int atom_dim(AtomKind kind) {
    return kind == AtomKind::TwoLevel ? 2 : 3;
}

// Smallest field truncation containing every state reachable from
// (any atomic state) ⊗ |n⟩: the top sector n + atom_dim - 1 holds
// |g, n + atom_dim - 1⟩.
inline int min_fock_cutoff(AtomKind kind, int initial_photons) {
    return initial_photons + atom_dim(kind);
}

struct ModelSpec {
    AtomKind atom_kind = AtomKind::TwoLevel;
    int n_subsystems = 2;
    double coupling_g = 0.1;
    double atom_frequency = 1.2;   // ω_A
    double field_frequency = 1.0;  // ω
    int initial_photons = 0;       // per subsystem
    int fock_cutoff = 2;           // field dimension per subsystem

    int atom_levels() const { return atom_dim(atom_kind); }
    int subsystem_dim() const { return atom_levels() * fock_cutoff; }
    double detuning() const { return std::abs(atom_frequency - field_frequency); }

    std::int64_t composite_dim() const {
        std::int64_t d = 1;
        for (int i = 0; i < n_subsystems; ++i) d *= subsystem_dim();
        return d;
    }
    std::int64_t atomic_dim() const {
        std::int64_t d = 1;
        for (int i = 0; i < n_subsystems; ++i) d *= atom_levels();
        return d;
    }

    void validate() const {
        if (n_subsystems < 1) throw std::invalid_argument("ModelSpec: n_subsystems must be >= 1");
        if (coupling_g <= 0) throw std::invalid_argument("ModelSpec: coupling g must be > 0");
        if (atom_frequency <= 0 || field_frequency <= 0)
            throw std::invalid_argument("ModelSpec: frequencies must be > 0");
        if (initial_photons < 0) throw std::invalid_argument("ModelSpec: initial_photons must be >= 0");
        if (fock_cutoff < min_fock_cutoff(atom_kind, initial_photons))
            throw std::invalid_argument(
                "ModelSpec: fock_cutoff " + std::to_string(fock_cutoff) +
                " below reachability bound " +
                std::to_string(min_fock_cutoff(atom_kind, initial_photons)));
    }

    // Two-level defaults: ω = 1, g = 0.1, δ = 2g (only δ/g matters for
    // time-averaged quantities).
    static ModelSpec two_level(int n_subsystems, int initial_photons = 0,
                               double g = 0.1, double omega = 1.0) {
        ModelSpec s;
        s.atom_kind = AtomKind::TwoLevel;
        s.n_subsystems = n_subsystems;
        s.coupling_g = g;
        s.field_frequency = omega;
        s.atom_frequency = omega + 2.0 * g;
        s.initial_photons = initial_photons;
        s.fock_cutoff = min_fock_cutoff(AtomKind::TwoLevel, initial_photons);
        s.validate();
        return s;
    }

    // Three-level ladder defaults: ω_A = 1.2, ω = 1, g = 0.1.
    static ModelSpec three_level(int n_subsystems, int initial_photons = 0) {
        ModelSpec s;
        s.atom_kind = AtomKind::ThreeLevelCascade;
        s.n_subsystems = n_subsystems;
        s.coupling_g = 0.1;
        s.atom_frequency = 1.2;
        s.field_frequency = 1.0;
        s.initial_photons = initial_photons;
        s.fock_cutoff = min_fock_cutoff(AtomKind::ThreeLevelCascade, initial_photons);
        s.validate();
        return s;
    }
};

// Atomic level energies. Two-level: ±ω_A/2 on {g,e}. Three-level ladder:
// {-ω_A, 0, +ω_A} on {g,e1,e2} (equal gaps ω_A).
inline double atomic_level_energy(const ModelSpec& spec, int level) {
    if (spec.atom_kind == AtomKind::TwoLevel)
        return (level == 1 ? 0.5 : -0.5) * spec.atom_frequency;
    return (level - 1) * spec.atom_frequency;
}

// Subsystem basis index for |level, m⟩.
inline int subsystem_index(const ModelSpec& spec, int level, int photons) {
    return level * spec.fock_cutoff + photons;
}

// H = H_atom + ω(a†a + 1/2) + g Σ (a |lvl+1⟩⟨lvl| + a† |lvl⟩⟨lvl+1|)
// in the product basis |level, m⟩. Real symmetric.
inline Eigen::MatrixXd build_subsystem_hamiltonian(const ModelSpec& spec) {
    spec.validate();
    const int levels = spec.atom_levels();
    const int cutoff = spec.fock_cutoff;
    const int dim = spec.subsystem_dim();
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(dim, dim);
    for (int level = 0; level < levels; ++level) {
        for (int m = 0; m < cutoff; ++m) {
            int idx = subsystem_index(spec, level, m);
            h(idx, idx) = atomic_level_energy(spec, level) + spec.field_frequency * (m + 0.5);
        }
    }
    // a |lvl+1⟩⟨lvl| takes |lvl, m⟩ → √m |lvl+1, m-1⟩.
    for (int level = 0; level + 1 < levels; ++level) {
        for (int m = 1; m < cutoff; ++m) {
            int lo = subsystem_index(spec, level, m);
            int hi = subsystem_index(spec, level + 1, m - 1);
            double amp = spec.coupling_g * std::sqrt(static_cast<double>(m));
            h(lo, hi) = amp;
            h(hi, lo) = amp;
        }
    }
    return h;
}

struct SectorBlock {
    int excitation = 0;
    // (level, photons) pairs, level ascending; all share the same
    // excitation number level + photons.
    std::vector<std::pair<int, int>> basis_labels;
    Eigen::MatrixXd block;
};

// Partition of the subsystem basis into excitation sectors. Covers every
// basis state exactly once; off-sector elements of H vanish by construction
// and are asserted to below 1e-12.
inline std::vector<SectorBlock> sector_decompose(const ModelSpec& spec) {
    const Eigen::MatrixXd h = build_subsystem_hamiltonian(spec);
    const int levels = spec.atom_levels();
    const int cutoff = spec.fock_cutoff;
    const int max_excitation = (levels - 1) + (cutoff - 1);

    std::vector<SectorBlock> sectors;
    std::vector<int> sector_of(spec.subsystem_dim(), -1);
    for (int k = 0; k <= max_excitation; ++k) {
        SectorBlock sector;
        sector.excitation = k;
        for (int level = 0; level < levels; ++level) {
            int m = k - level;
            if (m >= 0 && m < cutoff) sector.basis_labels.emplace_back(level, m);
        }
        const int bdim = static_cast<int>(sector.basis_labels.size());
        sector.block.resize(bdim, bdim);
        for (int r = 0; r < bdim; ++r) {
            int ri = subsystem_index(spec, sector.basis_labels[r].first, sector.basis_labels[r].second);
            sector_of[ri] = k;
            for (int c = 0; c < bdim; ++c) {
                int ci = subsystem_index(spec, sector.basis_labels[c].first, sector.basis_labels[c].second);
                sector.block(r, c) = h(ri, ci);
            }
        }
        sectors.push_back(std::move(sector));
    }
    for (int r = 0; r < h.rows(); ++r)
        for (int c = 0; c < h.cols(); ++c)
            if (sector_of[r] != sector_of[c] && std::abs(h(r, c)) > 1e-12)
                throw std::logic_error("sector_decompose: nonzero off-sector matrix element");
    return sectors;
}

} // namespace jclab
