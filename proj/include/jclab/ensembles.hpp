// ensembles.hpp — initial-state ensembles: Haar-random pure states via the
// Gurvitz hyperspherical parametrization, Ginibre-random mixed states,
// single-excitation states, separable and maximally entangled reference
// families, and rejection filters for fixed ⟨E_i⟩ / ⟨E⟩ / S_in.
//
// Every candidate has a global index with its own RNG stream, so accepted
// ensembles are reproducible for any worker count and chunking.

#pragma once

#include "jclab/rng.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace jclab {

enum class Sampler {
    HaarPure,
    GinibreMixed,
    SingleExcitation,
    SeparableHaarProduct,
    MaxEntangled,
};

std::string sampler_name(Sampler s);
Sampler sampler_from_name(const std::string& name);

struct Constraint {
    enum class Kind { None, PerAtomEnergy, TotalEnergy, InitialEntropy };
    Kind kind = Kind::None;
    double value = 0.0;
    double tol = 0.0;
};

std::string constraint_kind_name(Constraint::Kind k);
Constraint::Kind constraint_kind_from_name(const std::string& name);

struct EnsembleSpec {
    Sampler sampler = Sampler::HaarPure;
    std::int64_t size = 0;
    std::uint64_t seed = 0;
    Constraint constraint;
    int atom_dim = 2;
    int n_subsystems = 2;

    bool is_pure() const { return sampler != Sampler::GinibreMixed; }
    std::int64_t state_dim() const {
        std::int64_t d = 1;
        for (int i = 0; i < n_subsystems; ++i) d *= atom_dim;
        return d;
    }
    void validate() const;
};

// ------------------------------ samplers -------------------------------

// Haar state on C^dim: amplitudes from θ_k with density
// P(θ_k) = k sin(2θ_k) sin^{2k-2}θ_k (inverse CDF: sin²θ_k = u^{1/k}) and
// uniform phases. Draw order is fixed: u_1..u_{dim-1}, then φ_1..φ_{dim-1}.
Eigen::VectorXcd sample_haar_pure(int dim, Rng& rng);

// Squared amplitude moduli of the same parametrization, consuming only the
// u-draw prefix of the stream (used by energy filters).
void haar_moduli_squared(int dim, Rng& rng, double* moduli2);

// ρ = MM†/Tr(MM†) with M an l×l matrix of iid standard-normal real and
// imaginary parts (Hilbert–Schmidt-uniform mixed states).
Eigen::MatrixXcd sample_ginibre_mixed(int dim, Rng& rng);

// Σ_i m_i |g…e_i…g⟩ with m isotropic on the complex unit sphere of C^N;
// meant to sit on top of photonless fields.
Eigen::VectorXcd sample_single_excitation(int n_atoms, Rng& rng);

// Haar-distributed unitary (QR of a Ginibre matrix with phase fixing).
Eigen::MatrixXcd haar_unitary(int dim, Rng& rng);

// SeparableHaarProduct: ⊗_i Haar single-atom states (entanglement exactly
// zero). MaxEntangled (qubits only): independent local unitaries applied to
// the N-qubit GHZ state (every single-qubit reduction stays I/2, Q = N/2).
Eigen::VectorXcd make_reference_state(Sampler kind, int n_atoms, int atom_dim, Rng& rng);

// ----------------------------- generation ------------------------------

// Accepted candidate indices for an ensemble; states are re-materialized
// from their index on demand.
struct EnsemblePlan {
    EnsembleSpec spec;
    std::vector<std::int64_t> candidate_indices;
    std::int64_t candidates_scanned = 0;  // index of last accepted + 1
    double acceptance_rate = 1.0;
};

// Scans candidates in index order until spec.size are accepted. Throws if
// the measured acceptance rate is below rate_floor once min_scan candidates
// have been examined.
EnsemblePlan plan_ensemble(const EnsembleSpec& spec, int workers,
                           double rate_floor = 1e-6, std::int64_t min_scan = 50'000'000);

Eigen::VectorXcd materialize_pure(const EnsembleSpec& spec, std::int64_t candidate_index);
Eigen::MatrixXcd materialize_mixed(const EnsembleSpec& spec, std::int64_t candidate_index);

bool candidate_accepted(const EnsembleSpec& spec, std::int64_t candidate_index);

// Materialized convenience forms (small ensembles, tests).
std::vector<Eigen::VectorXcd> generate_pure_ensemble(const EnsembleSpec& spec, int workers = 1);
std::vector<Eigen::MatrixXcd> generate_mixed_ensemble(const EnsembleSpec& spec, int workers = 1);

// Rejection filter over already-materialized samples; reports the
// acceptance rate if requested.
std::vector<Eigen::VectorXcd> filter_constraint(const std::vector<Eigen::VectorXcd>& samples,
                                                const Constraint& constraint, int n_atoms,
                                                double* acceptance_rate = nullptr);
std::vector<Eigen::MatrixXcd> filter_constraint(const std::vector<Eigen::MatrixXcd>& samples,
                                                const Constraint& constraint, int n_atoms,
                                                double* acceptance_rate = nullptr);

} // namespace jclab
