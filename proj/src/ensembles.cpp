#include "jclab/ensembles.hpp"

#include "jclab/measures.hpp"
#include "jclab/parallel.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

namespace jclab {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double uniform01(Rng& rng) {
    return std::uniform_real_distribution<double>(0.0, 1.0)(rng);
}

// u^{1/k} with cheap special cases for the common small k.
double root(double u, int k) {
    switch (k) {
        case 1: return u;
        case 2: return std::sqrt(u);
        case 3: return std::cbrt(u);
        case 4: return std::sqrt(std::sqrt(u));
        case 6: return std::sqrt(std::cbrt(u));
        default: return std::pow(u, 1.0 / k);
    }
}

void moduli_from_u(const std::vector<double>& u, int dim, double* moduli2) {
    // sin²θ_k = u_k^{1/k}; component i carries Π_{k>dim-1-i} sin²θ_k times
    // cos²θ_{dim-1-i} (the last component has no cosine factor).
    double prefix = 1.0;
    for (int i = 0; i < dim - 1; ++i) {
        double s = root(u[dim - 1 - i], dim - 1 - i);
        moduli2[i] = prefix * (1.0 - s);
        prefix *= s;
    }
    moduli2[dim - 1] = prefix;
}

} // namespace

std::string sampler_name(Sampler s) {
    switch (s) {
        case Sampler::HaarPure: return "haar_pure";
        case Sampler::GinibreMixed: return "ginibre_mixed";
        case Sampler::SingleExcitation: return "single_excitation";
        case Sampler::SeparableHaarProduct: return "separable_haar_product";
        case Sampler::MaxEntangled: return "max_entangled";
    }
    return "unknown";
}

Sampler sampler_from_name(const std::string& name) {
    if (name == "haar_pure") return Sampler::HaarPure;
    if (name == "ginibre_mixed") return Sampler::GinibreMixed;
    if (name == "single_excitation") return Sampler::SingleExcitation;
    if (name == "separable_haar_product") return Sampler::SeparableHaarProduct;
    if (name == "max_entangled") return Sampler::MaxEntangled;
    throw std::invalid_argument("unknown sampler: " + name);
}

std::string constraint_kind_name(Constraint::Kind k) {
    switch (k) {
        case Constraint::Kind::None: return "none";
        case Constraint::Kind::PerAtomEnergy: return "fixed_per_atom_energy";
        case Constraint::Kind::TotalEnergy: return "fixed_total_energy";
        case Constraint::Kind::InitialEntropy: return "fixed_initial_entropy";
    }
    return "unknown";
}

Constraint::Kind constraint_kind_from_name(const std::string& name) {
    if (name == "none") return Constraint::Kind::None;
    if (name == "fixed_per_atom_energy") return Constraint::Kind::PerAtomEnergy;
    if (name == "fixed_total_energy") return Constraint::Kind::TotalEnergy;
    if (name == "fixed_initial_entropy") return Constraint::Kind::InitialEntropy;
    throw std::invalid_argument("unknown constraint kind: " + name);
}

void EnsembleSpec::validate() const {
    if (size < 1) throw std::invalid_argument("EnsembleSpec: size must be >= 1");
    if (n_subsystems < 1) throw std::invalid_argument("EnsembleSpec: n_subsystems must be >= 1");
    if (atom_dim != 2 && atom_dim != 3) throw std::invalid_argument("EnsembleSpec: atom_dim must be 2 or 3");
    if (sampler == Sampler::GinibreMixed && (atom_dim != 2 || n_subsystems != 2))
        throw std::invalid_argument("EnsembleSpec: Ginibre mixed states are restricted to two qubits");
    if (sampler == Sampler::SingleExcitation && (atom_dim != 2 || n_subsystems < 2))
        throw std::invalid_argument("EnsembleSpec: single-excitation family needs >= 2 two-level atoms");
    if (sampler == Sampler::MaxEntangled && atom_dim != 2)
        throw std::invalid_argument("EnsembleSpec: the maximally entangled family is defined for qubits");
    switch (constraint.kind) {
        case Constraint::Kind::None:
            break;
        case Constraint::Kind::PerAtomEnergy:
        case Constraint::Kind::TotalEnergy:
            if (atom_dim != 2)
                throw std::invalid_argument("EnsembleSpec: energy constraints are defined for two-level atoms");
            if (sampler != Sampler::HaarPure)
                throw std::invalid_argument("EnsembleSpec: energy constraints select from Haar pure states");
            if (constraint.tol <= 0) throw std::invalid_argument("EnsembleSpec: constraint tol must be > 0");
            if (state_dim() > 256)
                throw std::invalid_argument("EnsembleSpec: energy-constrained ensembles support up to 8 qubits");
            break;
        case Constraint::Kind::InitialEntropy:
            if (sampler != Sampler::GinibreMixed)
                throw std::invalid_argument("EnsembleSpec: mixedness constraint selects from Ginibre states");
            if (constraint.tol <= 0) throw std::invalid_argument("EnsembleSpec: constraint tol must be > 0");
            break;
    }
}

void haar_moduli_squared(int dim, Rng& rng, double* moduli2) {
    std::vector<double> u(dim);
    for (int k = 1; k < dim; ++k) u[k] = uniform01(rng);
    moduli_from_u(u, dim, moduli2);
}

Eigen::VectorXcd sample_haar_pure(int dim, Rng& rng) {
    if (dim < 2) throw std::invalid_argument("sample_haar_pure: dim must be >= 2");
    std::vector<double> u(dim);
    for (int k = 1; k < dim; ++k) u[k] = uniform01(rng);
    std::vector<double> moduli2(dim);
    moduli_from_u(u, dim, moduli2.data());
    std::vector<double> phi(dim);
    for (int k = 1; k < dim; ++k) phi[k] = kTwoPi * uniform01(rng);
    Eigen::VectorXcd psi(dim);
    psi(0) = std::sqrt(moduli2[0]);
    for (int i = 1; i < dim; ++i)
        psi(i) = std::polar(std::sqrt(moduli2[i]), phi[dim - i]);
    return psi;
}

Eigen::MatrixXcd sample_ginibre_mixed(int dim, Rng& rng) {
    Eigen::MatrixXcd m(dim, dim);
    double trace = 0.0;
    do {
        std::normal_distribution<double> normal(0.0, 1.0);
        for (int i = 0; i < dim; ++i)
            for (int j = 0; j < dim; ++j) {
                double re = normal(rng);
                double im = normal(rng);
                m(i, j) = Complex(re, im);
            }
        trace = m.squaredNorm();  // Tr MM†
    } while (trace < 1e-300);
    Eigen::MatrixXcd rho = m * m.adjoint();
    return rho / trace;
}

Eigen::VectorXcd sample_single_excitation(int n_atoms, Rng& rng) {
    if (n_atoms < 2) throw std::invalid_argument("sample_single_excitation: need N >= 2");
    std::normal_distribution<double> normal(0.0, 1.0);
    Eigen::VectorXcd m(n_atoms);
    double norm2 = 0.0;
    do {
        for (int i = 0; i < n_atoms; ++i) {
            double re = normal(rng);
            double im = normal(rng);
            m(i) = Complex(re, im);
        }
        norm2 = m.squaredNorm();
    } while (norm2 < 1e-300);
    m /= std::sqrt(norm2);
    std::int64_t dim = std::int64_t{1} << n_atoms;
    Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(dim);
    for (int i = 0; i < n_atoms; ++i)
        psi(std::int64_t{1} << (n_atoms - 1 - i)) = m(i);
    return psi;
}

Eigen::MatrixXcd haar_unitary(int dim, Rng& rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    Eigen::MatrixXcd z(dim, dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) {
            double re = normal(rng);
            double im = normal(rng);
            z(i, j) = Complex(re, im);
        }
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(z);
    Eigen::MatrixXcd q = qr.householderQ() * Eigen::MatrixXcd::Identity(dim, dim);
    Eigen::MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int j = 0; j < dim; ++j) {
        Complex d = r(j, j);
        double mag = std::abs(d);
        q.col(j) *= (mag > 0 ? d / mag : Complex(1.0, 0.0));
    }
    return q;
}

Eigen::VectorXcd make_reference_state(Sampler kind, int n_atoms, int atom_dim, Rng& rng) {
    if (kind == Sampler::SeparableHaarProduct) {
        Eigen::VectorXcd psi = Eigen::VectorXcd::Constant(1, Complex(1.0, 0.0));
        for (int i = 0; i < n_atoms; ++i) {
            Eigen::VectorXcd q = sample_haar_pure(atom_dim, rng);
            Eigen::VectorXcd next(psi.size() * atom_dim);
            for (Eigen::Index a = 0; a < psi.size(); ++a)
                for (int l = 0; l < atom_dim; ++l) next(a * atom_dim + l) = psi(a) * q(l);
            psi = std::move(next);
        }
        return psi;
    }
    if (kind == Sampler::MaxEntangled) {
        if (atom_dim != 2)
            throw std::invalid_argument("make_reference_state: MaxEntangled is qubit-only");
        std::int64_t dim = std::int64_t{1} << n_atoms;
        Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(dim);
        psi(0) = 1.0 / std::sqrt(2.0);
        psi(dim - 1) = 1.0 / std::sqrt(2.0);
        for (int i = 0; i < n_atoms; ++i) {
            Eigen::MatrixXcd u = haar_unitary(2, rng);
            std::int64_t right = std::int64_t{1} << (n_atoms - 1 - i);
            for (std::int64_t l = 0; l < dim / (2 * right); ++l)
                for (std::int64_t r = 0; r < right; ++r) {
                    std::int64_t i0 = (l * 2 + 0) * right + r;
                    std::int64_t i1 = (l * 2 + 1) * right + r;
                    Complex a0 = psi(i0), a1 = psi(i1);
                    psi(i0) = u(0, 0) * a0 + u(0, 1) * a1;
                    psi(i1) = u(1, 0) * a0 + u(1, 1) * a1;
                }
        }
        return psi;
    }
    throw std::invalid_argument("make_reference_state: not a reference-family sampler");
}

namespace {

bool energies_within(const double* moduli2, int n_atoms, const Constraint& c) {
    // p_e of atom j is the mass on basis states with bit (n_atoms-1-j) set.
    double mean = 0.0;
    std::int64_t dim = std::int64_t{1} << n_atoms;
    for (int j = 0; j < n_atoms; ++j) {
        std::int64_t bit = std::int64_t{1} << (n_atoms - 1 - j);
        double p = 0.0;
        for (std::int64_t a = 0; a < dim; ++a)
            if (a & bit) p += moduli2[a];
        double e = p - 0.5;
        if (c.kind == Constraint::Kind::PerAtomEnergy && std::abs(e - c.value) > c.tol) return false;
        mean += e;
    }
    if (c.kind == Constraint::Kind::TotalEnergy)
        return std::abs(mean / n_atoms - c.value) <= c.tol;
    return true;
}

} // namespace

bool candidate_accepted(const EnsembleSpec& spec, std::int64_t candidate_index) {
    if (spec.constraint.kind == Constraint::Kind::None) return true;
    Rng rng = stream_rng(spec.seed, static_cast<std::uint64_t>(candidate_index));
    if (spec.constraint.kind == Constraint::Kind::InitialEntropy) {
        Eigen::MatrixXcd rho = sample_ginibre_mixed(static_cast<int>(spec.state_dim()), rng);
        double s = von_neumann_entropy_bits(rho);
        return std::abs(s - spec.constraint.value) <= spec.constraint.tol;
    }
    // Energy constraints depend on amplitude moduli only.
    double moduli2[1 << 8];
    haar_moduli_squared(static_cast<int>(spec.state_dim()), rng, moduli2);
    return energies_within(moduli2, spec.n_subsystems, spec.constraint);
}

Eigen::VectorXcd materialize_pure(const EnsembleSpec& spec, std::int64_t candidate_index) {
    Rng rng = stream_rng(spec.seed, static_cast<std::uint64_t>(candidate_index));
    switch (spec.sampler) {
        case Sampler::HaarPure:
            return sample_haar_pure(static_cast<int>(spec.state_dim()), rng);
        case Sampler::SingleExcitation:
            return sample_single_excitation(spec.n_subsystems, rng);
        case Sampler::SeparableHaarProduct:
        case Sampler::MaxEntangled:
            return make_reference_state(spec.sampler, spec.n_subsystems, spec.atom_dim, rng);
        case Sampler::GinibreMixed:
            break;
    }
    throw std::invalid_argument("materialize_pure: sampler produces mixed states");
}

Eigen::MatrixXcd materialize_mixed(const EnsembleSpec& spec, std::int64_t candidate_index) {
    if (spec.sampler != Sampler::GinibreMixed)
        throw std::invalid_argument("materialize_mixed: sampler produces pure states");
    Rng rng = stream_rng(spec.seed, static_cast<std::uint64_t>(candidate_index));
    return sample_ginibre_mixed(static_cast<int>(spec.state_dim()), rng);
}

EnsemblePlan plan_ensemble(const EnsembleSpec& spec, int workers, double rate_floor,
                           std::int64_t min_scan) {
    spec.validate();
    EnsemblePlan plan;
    plan.spec = spec;
    plan.candidate_indices.reserve(spec.size);

    if (spec.constraint.kind == Constraint::Kind::None) {
        for (std::int64_t i = 0; i < spec.size; ++i) plan.candidate_indices.push_back(i);
        plan.candidates_scanned = spec.size;
        plan.acceptance_rate = 1.0;
        return plan;
    }

    const std::int64_t chunk =
        spec.constraint.kind == Constraint::Kind::InitialEntropy ? (1 << 16) : (1 << 20);
    std::vector<std::uint8_t> mask(chunk);
    std::int64_t next = 0;
    while (static_cast<std::int64_t>(plan.candidate_indices.size()) < spec.size) {
        parallel_for(chunk, workers, [&](std::int64_t i) {
            mask[i] = candidate_accepted(spec, next + i) ? 1 : 0;
        });
        for (std::int64_t i = 0;
             i < chunk && static_cast<std::int64_t>(plan.candidate_indices.size()) < spec.size; ++i)
            if (mask[i]) plan.candidate_indices.push_back(next + i);
        next += chunk;
        if (static_cast<std::int64_t>(plan.candidate_indices.size()) < spec.size && next >= min_scan) {
            double rate = static_cast<double>(plan.candidate_indices.size()) / next;
            if (rate < rate_floor)
                throw std::runtime_error(
                    "plan_ensemble: acceptance rate " + std::to_string(rate) +
                    " below floor; constraint tolerance too tight to fill the ensemble");
        }
    }
    plan.candidates_scanned = plan.candidate_indices.back() + 1;
    plan.acceptance_rate = static_cast<double>(spec.size) / plan.candidates_scanned;
    return plan;
}

std::vector<Eigen::VectorXcd> generate_pure_ensemble(const EnsembleSpec& spec, int workers) {
    EnsemblePlan plan = plan_ensemble(spec, workers);
    std::vector<Eigen::VectorXcd> out(plan.candidate_indices.size());
    parallel_for(static_cast<std::int64_t>(out.size()), workers, [&](std::int64_t i) {
        out[i] = materialize_pure(spec, plan.candidate_indices[i]);
    });
    return out;
}

std::vector<Eigen::MatrixXcd> generate_mixed_ensemble(const EnsembleSpec& spec, int workers) {
    EnsemblePlan plan = plan_ensemble(spec, workers);
    std::vector<Eigen::MatrixXcd> out(plan.candidate_indices.size());
    parallel_for(static_cast<std::int64_t>(out.size()), workers, [&](std::int64_t i) {
        out[i] = materialize_mixed(spec, plan.candidate_indices[i]);
    });
    return out;
}

namespace {

bool state_within(const Eigen::VectorXcd& psi, const Constraint& c, int n_atoms) {
    switch (c.kind) {
        case Constraint::Kind::None: return true;
        case Constraint::Kind::PerAtomEnergy:
            for (int i = 0; i < n_atoms; ++i)
                if (std::abs(mean_energy_per_atom(psi, i, n_atoms) - c.value) > c.tol) return false;
            return true;
        case Constraint::Kind::TotalEnergy:
            return std::abs(mean_energy_total(psi, n_atoms) - c.value) <= c.tol;
        case Constraint::Kind::InitialEntropy:
            throw std::invalid_argument("filter_constraint: mixedness constraint needs density matrices");
    }
    return false;
}

bool state_within(const Eigen::MatrixXcd& rho, const Constraint& c, int n_atoms) {
    switch (c.kind) {
        case Constraint::Kind::None: return true;
        case Constraint::Kind::PerAtomEnergy:
            for (int i = 0; i < n_atoms; ++i)
                if (std::abs(mean_energy_per_atom(rho, i, n_atoms) - c.value) > c.tol) return false;
            return true;
        case Constraint::Kind::TotalEnergy:
            return std::abs(mean_energy_total(rho, n_atoms) - c.value) <= c.tol;
        case Constraint::Kind::InitialEntropy:
            return std::abs(von_neumann_entropy_bits(rho) - c.value) <= c.tol;
    }
    return false;
}

template <typename StateT>
std::vector<StateT> filter_impl(const std::vector<StateT>& samples, const Constraint& c,
                                int n_atoms, double* acceptance_rate) {
    std::vector<StateT> accepted;
    for (const auto& s : samples)
        if (state_within(s, c, n_atoms)) accepted.push_back(s);
    if (acceptance_rate)
        *acceptance_rate = samples.empty() ? 0.0
                                           : static_cast<double>(accepted.size()) / samples.size();
    return accepted;
}

} // namespace

std::vector<Eigen::VectorXcd> filter_constraint(const std::vector<Eigen::VectorXcd>& samples,
                                                const Constraint& constraint, int n_atoms,
                                                double* acceptance_rate) {
    return filter_impl(samples, constraint, n_atoms, acceptance_rate);
}

std::vector<Eigen::MatrixXcd> filter_constraint(const std::vector<Eigen::MatrixXcd>& samples,
                                                const Constraint& constraint, int n_atoms,
                                                double* acceptance_rate) {
    return filter_impl(samples, constraint, n_atoms, acceptance_rate);
}

} // namespace jclab
