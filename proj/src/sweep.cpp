#include "jclab/sweep.hpp"

#include "jclab/measures.hpp"
#include "jclab/parallel.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace jclab {

TimeGrid resolve_grid(const ModelSpec& model, const GridParams& params) {
    if (params.kind == "auto")
        return default_grid(model, params.n_points, params.span_over_g);
    if (params.kind == "single_period") {
        if (!(model.atom_kind == AtomKind::TwoLevel && model.initial_photons == 0))
            throw std::invalid_argument(
                "single-period averaging is only valid for photonless two-level systems");
        double period = 2.0 * std::numbers::pi / rabi_frequency(model, 1);
        return single_period_grid(period, params.n_points > 0 ? params.n_points : 256);
    }
    if (params.kind == "long_interval")
        return long_interval_grid(params.span_over_g / model.coupling_g,
                                  params.n_points > 0 ? params.n_points : 4096);
    throw std::invalid_argument("unknown grid kind: " + params.kind);
}

Field primary_response(Sampler sampler) {
    return sampler == Sampler::GinibreMixed ? Field::DeltaS : Field::STime;
}

void ExperimentConfig::validate() const {
    model.validate();
    ensemble.validate();
    if (ensemble.atom_dim != model.atom_levels() || ensemble.n_subsystems != model.n_subsystems)
        throw std::invalid_argument("config: ensemble dimensions disagree with the model");
    if (ensemble.sampler == Sampler::SingleExcitation && model.initial_photons != 0)
        throw std::invalid_argument("config: single-excitation states require a photonless environment");
    switch (measure) {
        case EntMeasure::MeyerWallachQ:
            if (model.atom_kind != AtomKind::TwoLevel)
                throw std::invalid_argument("config: Meyer-Wallach Q is defined for qubits only");
            break;
        case EntMeasure::EntanglementEntropyBits:
            if (model.n_subsystems != 2)
                throw std::invalid_argument("config: entanglement entropy needs exactly two subsystems");
            if (!ensemble.is_pure())
                throw std::invalid_argument("config: entanglement entropy needs pure states");
            break;
        case EntMeasure::Concurrence:
            if (model.n_subsystems != 2 || model.atom_kind != AtomKind::TwoLevel)
                throw std::invalid_argument("config: concurrence is defined for two qubits");
            break;
    }
    (void)resolve_grid(model, grid);
}

namespace {

double pure_entanglement(EntMeasure measure, const Eigen::VectorXcd& psi_atoms,
                         const ModelSpec& model) {
    switch (measure) {
        case EntMeasure::MeyerWallachQ:
            return meyer_wallach_q(psi_atoms, model.n_subsystems);
        case EntMeasure::EntanglementEntropyBits:
            return entanglement_entropy_bits(psi_atoms, model.atom_levels());
        case EntMeasure::Concurrence:
            return concurrence(psi_atoms);
    }
    return 0.0;
}

} // namespace

SweepStats compute_stats(const std::vector<SampleRecord>& records, Field primary_y) {
    SweepStats stats;
    stats.mean_st = mean_of(records, Field::STime);
    stats.mean_sin = mean_of(records, Field::SIn);
    stats.mean_delta = mean_of(records, Field::DeltaS);
    stats.mean_ent = mean_of(records, Field::Ent);

    stats.fit_st = fit_line(records, Field::Ent, Field::STime);
    stats.fit_delta = fit_line(records, Field::Ent, Field::DeltaS);

    const std::int64_t n = static_cast<std::int64_t>(records.size());
    auto variance = [&](Field f) {
        double m = mean_of(records, f);
        return pairwise_sum(0, n, [&](std::int64_t i) {
                   double d = field_value(records[i], f) - m;
                   return d * d;
               }) /
               n;
    };
    stats.flat_response = variance(primary_y) < 1e-18;
    if (stats.flat_response) {
        stats.pearson_st = 0.0;
        stats.pearson_delta = 0.0;
    } else {
        stats.pearson_st = pearson(records, Field::Ent, Field::STime);
        stats.pearson_delta = pearson(records, Field::Ent, Field::DeltaS);
    }

    const LineFit& primary_fit = (primary_y == Field::DeltaS) ? stats.fit_delta : stats.fit_st;
    double primary_mean = (primary_y == Field::DeltaS) ? stats.mean_delta : stats.mean_st;
    stats.eta = primary_mean > 0.0 ? eta_ent(primary_mean, primary_fit)
                                   : std::numeric_limits<double>::quiet_NaN();
    stats.bins = bin_average(records, Field::Ent, primary_y, 0.1);
    return stats;
}

SweepResult run_sweep(const ExperimentConfig& config) {
    auto t0 = std::chrono::steady_clock::now();
    config.validate();

    SweepResult result;
    result.config = config;
    result.grid = resolve_grid(config.model, config.grid);
    result.primary_y = primary_response(config.ensemble.sampler);

    const int workers = config.workers > 0 ? config.workers : default_workers();
    EnsemblePlan plan = plan_ensemble(config.ensemble, workers);
    result.acceptance_rate = plan.acceptance_rate;
    result.candidates_scanned = plan.candidates_scanned;

    const Evolver evolver(build_composite_spectrum(config.model));
    const CompositeBasis& basis = evolver.basis();
    const ModelSpec& model = config.model;
    const int n_atoms = model.n_subsystems;
    const bool record_energies = model.atom_kind == AtomKind::TwoLevel;
    const std::int64_t total = static_cast<std::int64_t>(plan.candidate_indices.size());

    result.records.assign(total, SampleRecord{});
    parallel_for_blocks(total, workers, [&](std::int64_t begin, std::int64_t end) {
        EntropyEngine engine(evolver, result.grid);
        Eigen::VectorXcd psi_comp(basis.dim_composite);
        std::vector<std::pair<double, Eigen::VectorXcd>> parts;
        for (std::int64_t i = begin; i < end; ++i) {
            SampleRecord rec;
            if (config.ensemble.is_pure()) {
                Eigen::VectorXcd psi_atoms =
                    materialize_pure(config.ensemble, plan.candidate_indices[i]);
                rec.ent_value = pure_entanglement(config.measure, psi_atoms, model);
                rec.s_in_bits = 0.0;
                if (record_energies) {
                    rec.has_energies = true;
                    rec.e_i.resize(n_atoms);
                    for (int a = 0; a < n_atoms; ++a)
                        rec.e_i[a] = mean_energy_per_atom(psi_atoms, a, n_atoms);
                    rec.e_mean = 0.0;
                    for (double e : rec.e_i) rec.e_mean += e;
                    rec.e_mean /= n_atoms;
                }
                psi_comp.setZero();
                for (std::int64_t a = 0; a < basis.dim_atoms; ++a)
                    psi_comp(basis.embed_with_fock(a, model.initial_photons)) = psi_atoms(a);
                rec.s_t_bits = engine.run_pure(psi_comp);
            } else {
                Eigen::MatrixXcd rho_atoms =
                    materialize_mixed(config.ensemble, plan.candidate_indices[i]);
                rec.ent_value = concurrence(rho_atoms);
                Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(rho_atoms);
                double s_in = 0.0;
                parts.clear();
                for (Eigen::Index k = 0; k < rho_atoms.rows(); ++k) {
                    double p = eig.eigenvalues()(k);
                    if (p > 1e-12) s_in -= p * std::log2(p);
                    if (p > 1e-14) {
                        Eigen::VectorXcd comp = Eigen::VectorXcd::Zero(basis.dim_composite);
                        for (std::int64_t a = 0; a < basis.dim_atoms; ++a)
                            comp(basis.embed_with_fock(a, model.initial_photons)) =
                                eig.eigenvectors()(a, k);
                        parts.push_back({p, std::move(comp)});
                    }
                }
                rec.s_in_bits = s_in;
                if (record_energies) {
                    rec.has_energies = true;
                    rec.e_i.resize(n_atoms);
                    for (int a = 0; a < n_atoms; ++a)
                        rec.e_i[a] = mean_energy_per_atom(rho_atoms, a, n_atoms);
                    rec.e_mean = 0.0;
                    for (double e : rec.e_i) rec.e_mean += e;
                    rec.e_mean /= n_atoms;
                }
                rec.s_t_bits = engine.run_mixed(parts);
            }
            rec.delta_s_bits = rec.s_t_bits - rec.s_in_bits;
            result.records[i] = std::move(rec);
        }
    });

    result.stats = compute_stats(result.records, result.primary_y);
    result.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return result;
}

void TableConfig::validate() const {
    if (family == Constraint::Kind::None)
        throw std::invalid_argument("table: family must be a constraint kind");
    if (n_subsystems.empty()) throw std::invalid_argument("table: no subsystem counts");
    if (cells.empty()) throw std::invalid_argument("table: no constraint values");
    if (target_size < 2) throw std::invalid_argument("table: target_size must be >= 2");
    for (const auto& cell : cells)
        if (cell.tol.size() != n_subsystems.size())
            throw std::invalid_argument("table: every cell needs one tolerance per subsystem count");
    if (family == Constraint::Kind::InitialEntropy && n_subsystems != std::vector<int>{2})
        throw std::invalid_argument("table: fixed-mixedness tables are two-qubit only");
}

TableResult run_table(const TableConfig& config) {
    auto t0 = std::chrono::steady_clock::now();
    config.validate();
    TableResult result;
    result.config = config;
    for (const auto& cell : config.cells) {
        TableRow row;
        row.value = cell.value;
        for (std::size_t c = 0; c < config.n_subsystems.size(); ++c) {
            int n = config.n_subsystems[c];
            ExperimentConfig exp;
            exp.name = config.name + "_" + constraint_kind_name(config.family) + "_n" +
                       std::to_string(n) + "_v" + std::to_string(cell.value);
            exp.model = ModelSpec::two_level(n, config.initial_photons);
            exp.ensemble.sampler = config.family == Constraint::Kind::InitialEntropy
                                       ? Sampler::GinibreMixed
                                       : Sampler::HaarPure;
            exp.ensemble.size = config.target_size;
            exp.ensemble.seed = derive_seed(config.seed, static_cast<std::uint64_t>(
                                                             (&cell - config.cells.data()) *
                                                                 config.n_subsystems.size() +
                                                             c));
            exp.ensemble.constraint = Constraint{config.family, cell.value, cell.tol[c]};
            exp.ensemble.atom_dim = 2;
            exp.ensemble.n_subsystems = n;
            exp.measure = config.family == Constraint::Kind::InitialEntropy
                              ? EntMeasure::Concurrence
                              : EntMeasure::MeyerWallachQ;
            exp.workers = config.workers;
            row.per_n.push_back(run_sweep(exp));
        }
        result.rows.push_back(std::move(row));
    }
    result.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return result;
}

} // namespace jclab
