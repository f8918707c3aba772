// basis.hpp — index bookkeeping for the composite (atom ⊗ field)^⊗N space.
//
// Composite indices are tensor (kron) order with subsystem 0 most
// significant; within a subsystem, |level, m⟩ ↦ level·cutoff + m. The maps
// here split a composite index into its atomic and field multi-indices,
// which turns the field partial trace into a reshape.

#pragma once

#include "jclab/model.hpp"

#include <cstdint>
#include <vector>

namespace jclab {

struct CompositeBasis {
    int n_subsystems = 0;
    int atom_levels = 0;
    int cutoff = 0;
    std::int64_t dim_composite = 0;
    std::int64_t dim_atoms = 0;
    std::int64_t dim_fields = 0;

    std::vector<std::int32_t> atom_of;   // composite → atomic multi-index
    std::vector<std::int32_t> field_of;  // composite → field multi-index
    std::vector<std::int64_t> composite_of; // (a·dim_fields + f) → composite

    explicit CompositeBasis(const ModelSpec& spec) {
        n_subsystems = spec.n_subsystems;
        atom_levels = spec.atom_levels();
        cutoff = spec.fock_cutoff;
        dim_composite = spec.composite_dim();
        dim_atoms = spec.atomic_dim();
        dim_fields = 1;
        for (int i = 0; i < n_subsystems; ++i) dim_fields *= cutoff;

        atom_of.resize(dim_composite);
        field_of.resize(dim_composite);
        composite_of.resize(dim_composite);
        const int sub_dim = spec.subsystem_dim();
        for (std::int64_t c = 0; c < dim_composite; ++c) {
            std::int64_t rest = c;
            std::int64_t a = 0, f = 0;
            for (int i = 0; i < n_subsystems; ++i) {
                std::int64_t place = 1;
                for (int j = i + 1; j < n_subsystems; ++j) place *= sub_dim;
                int s = static_cast<int>(rest / place);
                rest %= place;
                a = a * atom_levels + s / cutoff;
                f = f * cutoff + s % cutoff;
            }
            atom_of[c] = static_cast<std::int32_t>(a);
            field_of[c] = static_cast<std::int32_t>(f);
            composite_of[a * dim_fields + f] = c;
        }
    }

    // Composite index of (atomic multi-index a) ⊗ |m m … m⟩.
    std::int64_t embed_with_fock(std::int64_t a, int m) const {
        std::int64_t f = 0;
        for (int i = 0; i < n_subsystems; ++i) f = f * cutoff + m;
        return composite_of[a * dim_fields + f];
    }

    // Atomic multi-index digits (level per subsystem, subsystem 0 first).
    std::vector<int> atomic_digits(std::int64_t a) const {
        std::vector<int> digits(n_subsystems);
        for (int i = n_subsystems - 1; i >= 0; --i) {
            digits[i] = static_cast<int>(a % atom_levels);
            a /= atom_levels;
        }
        return digits;
    }
};

} // namespace jclab
