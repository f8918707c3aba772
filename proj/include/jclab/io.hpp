// io.hpp — configuration files (JSON), per-sample CSV, and summary
// documents. All numeric output is written with full round-trip precision
// so repeated runs under the same seed are byte-identical; wall-clock
// metadata lives in a dedicated field excluded from such comparisons.

#pragma once

#include "jclab/sweep.hpp"

#include <string>
#include <vector>

namespace jclab {

// A config file holds one experiment batch or one table request.
struct ConfigFile {
    std::string name;
    bool is_table = false;
    std::vector<ExperimentConfig> experiments;
    TableConfig table;
};

ConfigFile load_config(const std::string& path);
std::string config_to_json(const ConfigFile& config);  // lossless round-trip
ConfigFile config_from_json(const std::string& text);

// Applies --seed / --workers / --scale overrides; scale divides ensemble
// sizes (floor, at least 2 samples).
void apply_overrides(ConfigFile& config, const std::uint64_t* seed, const int* workers, int scale);

// Rewrites the directory part of every output path (JCLAB_OUTPUT_DIR).
void redirect_output_dir(ConfigFile& config, const std::string& dir);

// CSV schema:
// sample_id,ent_measure,ent_value,s_in_bits,s_t_bits,delta_s_bits,e_mean,e_i_0..e_i_{N-1}
// Missing fields are left empty.
std::string csv_to_string(const SweepResult& result);
void write_csv(const std::string& path, const SweepResult& result);
std::vector<SampleRecord> read_csv(const std::string& path, std::string* measure_name = nullptr);

std::string summary_to_json(const SweepResult& result);
void write_summary(const std::string& path, const SweepResult& result);

void write_table_csv(const std::string& path, const TableResult& result);
std::string table_summary_to_json(const TableResult& result);
void write_table_summary(const std::string& path, const TableResult& result);

// Full-precision decimal formatting ("%.17g").
std::string format_double(double x);

} // namespace jclab
