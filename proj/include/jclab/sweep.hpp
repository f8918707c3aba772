// sweep.hpp — end-to-end experiment orchestration: sample an initial-state
// ensemble, evolve each sample over the time grid, record measures, and
// aggregate the ensemble statistics.

#pragma once

#include "jclab/dynamics.hpp"
#include "jclab/ensembles.hpp"
#include "jclab/model.hpp"
#include "jclab/stats.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace jclab {

struct GridParams {
    std::string kind = "auto";  // "auto", "single_period", "long_interval"
    int n_points = 0;           // 0 = default for the kind
    double span_over_g = 400.0; // long-interval length in units of 1/g
};

TimeGrid resolve_grid(const ModelSpec& model, const GridParams& params);

struct OutputPaths {
    std::string csv;
    std::string summary;
    std::string plot;  // optional
};

struct ExperimentConfig {
    std::string name;
    ModelSpec model;
    EnsembleSpec ensemble;
    EntMeasure measure = EntMeasure::MeyerWallachQ;
    GridParams grid;
    OutputPaths outputs;
    int workers = 0;  // 0 = hardware concurrency

    void validate() const;
};

struct SweepStats {
    LineFit fit_st;      // s_t vs entanglement
    LineFit fit_delta;   // delta_s vs entanglement
    double pearson_st = 0.0;
    double pearson_delta = 0.0;
    double eta = 0.0;          // from the primary response fit
    double mean_st = 0.0;
    double mean_sin = 0.0;
    double mean_delta = 0.0;
    double mean_ent = 0.0;
    bool flat_response = false;  // response variance numerically zero
    std::vector<Bin> bins;       // primary response vs entanglement, width 0.1
};

struct SweepResult {
    ExperimentConfig config;
    TimeGrid grid;
    Field primary_y = Field::STime;  // DeltaS for mixed ensembles
    std::vector<SampleRecord> records;
    SweepStats stats;
    double acceptance_rate = 1.0;
    std::int64_t candidates_scanned = 0;
    double wall_seconds = 0.0;
};

// Runs one configured sweep in memory (no file output). Deterministic
// given (config, seed) for any worker count.
SweepResult run_sweep(const ExperimentConfig& config);

// Recomputes the aggregate statistics from a record list (used both by
// run_sweep and by the CSV → summary consistency check).
SweepStats compute_stats(const std::vector<SampleRecord>& records, Field primary_y);

Field primary_response(Sampler sampler);

// ------------------------------- tables --------------------------------

struct TableCell {
    double value = 0.0;
    // tolerance per subsystem count, aligned with TableConfig::n_subsystems
    std::vector<double> tol;
};

struct TableConfig {
    std::string name;
    Constraint::Kind family = Constraint::Kind::PerAtomEnergy;
    std::vector<int> n_subsystems;  // one column group per entry
    std::vector<TableCell> cells;   // one row per constraint value
    std::int64_t target_size = 2000;
    int initial_photons = 0;
    std::uint64_t seed = 1;
    int workers = 0;
    std::string table_csv;
    std::string summary;

    void validate() const;
};

struct TableRow {
    double value = 0.0;
    std::vector<SweepResult> per_n;  // aligned with config.n_subsystems
};

struct TableResult {
    TableConfig config;
    std::vector<TableRow> rows;
    double wall_seconds = 0.0;
};

TableResult run_table(const TableConfig& config);

} // namespace jclab
