// jclab — command-line runner: seeded ensemble sweeps, constrained-table
// runs, verification suites, and plotting from emitted CSV files.

#include "jclab/acceptance.hpp"
#include "jclab/io.hpp"
#include "jclab/plot.hpp"
#include "jclab/verify.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInvariantFailure = 1;
constexpr int kExitConfigError = 2;

struct CommonOpts {
    std::string config_path;
    std::uint64_t seed = 0;
    bool seed_set = false;
    int workers = 0;
    bool workers_set = false;
    int scale = 1;
};

jclab::ConfigFile load_with_overrides(const CommonOpts& opts) {
    jclab::ConfigFile config = jclab::load_config(opts.config_path);
    jclab::apply_overrides(config, opts.seed_set ? &opts.seed : nullptr,
                           opts.workers_set ? &opts.workers : nullptr, opts.scale);
    if (const char* dir = std::getenv("JCLAB_OUTPUT_DIR"))
        jclab::redirect_output_dir(config, dir);
    return config;
}

int cmd_sweep(const CommonOpts& opts) {
    jclab::ConfigFile config = load_with_overrides(opts);
    if (config.is_table)
        throw std::invalid_argument("config describes a table run; use `jclab table`");
    std::map<std::string, std::vector<jclab::SweepResult>> plots;
    for (const auto& experiment : config.experiments) {
        jclab::SweepResult result = jclab::run_sweep(experiment);
        std::printf("%-24s samples=%-8zu angle=%7.2f deg  pearson=%6.3f  eta=%6.3f  "
                    "mean_S_t=%7.4f  accept=%.3g  (%.1f s)\n",
                    experiment.name.c_str(), result.records.size(),
                    result.primary_y == jclab::Field::DeltaS
                        ? result.stats.fit_delta.slope_angle_deg
                        : result.stats.fit_st.slope_angle_deg,
                    result.primary_y == jclab::Field::DeltaS ? result.stats.pearson_delta
                                                             : result.stats.pearson_st,
                    result.stats.eta, result.stats.mean_st, result.acceptance_rate,
                    result.wall_seconds);
        if (!experiment.outputs.csv.empty()) jclab::write_csv(experiment.outputs.csv, result);
        if (!experiment.outputs.summary.empty())
            jclab::write_summary(experiment.outputs.summary, result);
        if (!experiment.outputs.plot.empty())
            plots[experiment.outputs.plot].push_back(std::move(result));
    }
    for (const auto& [path, results] : plots) {
        jclab::emit_plot(results, path);
        std::printf("plot written: %s (%zu series)\n", path.c_str(), results.size());
    }
    return kExitOk;
}

int cmd_table(const CommonOpts& opts) {
    jclab::ConfigFile config = load_with_overrides(opts);
    if (!config.is_table)
        throw std::invalid_argument("config describes sweep experiments; use `jclab sweep`");
    jclab::TableResult result = jclab::run_table(config.table);
    for (const auto& row : result.rows) {
        std::printf("value=%+.2f ", row.value);
        for (std::size_t c = 0; c < row.per_n.size(); ++c) {
            const auto& sweep = row.per_n[c];
            std::printf(" | %d-JC angle=%6.2f pearson=%6.3f eta=%6.3f accept=%.2e",
                        result.config.n_subsystems[c],
                        sweep.primary_y == jclab::Field::DeltaS
                            ? sweep.stats.fit_delta.slope_angle_deg
                            : sweep.stats.fit_st.slope_angle_deg,
                        sweep.primary_y == jclab::Field::DeltaS ? sweep.stats.pearson_delta
                                                                : sweep.stats.pearson_st,
                        sweep.stats.eta, sweep.acceptance_rate);
        }
        std::printf("\n");
    }
    if (!result.config.table_csv.empty()) jclab::write_table_csv(result.config.table_csv, result);
    if (!result.config.summary.empty()) jclab::write_table_summary(result.config.summary, result);
    return kExitOk;
}

int cmd_verify(const std::string& level, int workers, std::uint64_t seed, int scale) {
    bool full = level == "full";
    jclab::VerifyReport report =
        jclab::run_verification(full ? jclab::VerifyLevel::Full : jclab::VerifyLevel::Fast,
                                workers, seed);
    bool ok = true;
    for (const auto& check : report.checks) {
        std::printf("[%s] %s — %s\n", check.pass ? "PASS" : "FAIL", check.name.c_str(),
                    check.detail.c_str());
        ok = ok && check.pass;
    }
    if (full) {
        jclab::AcceptanceOptions options;
        options.scale = scale;
        options.workers = workers;
        options.seed = seed;
        for (const auto& criterion : jclab::run_acceptance(options)) {
            std::printf("[%s] criterion %d: %s\n", criterion.pass ? "PASS" : "FAIL",
                        criterion.index, criterion.name.c_str());
            for (const auto& line : criterion.detail) std::printf("%s\n", line.c_str());
            ok = ok && criterion.pass;
        }
    }
    return ok ? kExitOk : kExitInvariantFailure;
}

int cmd_plot(const std::vector<std::string>& csv_paths, const std::string& out_path) {
    std::vector<jclab::SweepResult> results;
    for (const auto& path : csv_paths) {
        jclab::SweepResult result;
        std::string measure_name;
        result.records = jclab::read_csv(path, &measure_name);
        if (result.records.empty())
            throw std::invalid_argument("CSV has no records: " + path);
        result.config.name = std::filesystem::path(path).stem().string();
        result.config.measure = jclab::ent_measure_from_name(measure_name);
        result.primary_y = measure_name == "concurrence" && result.records.front().s_in_bits > 0
                               ? jclab::Field::DeltaS
                               : jclab::Field::STime;
        result.stats = jclab::compute_stats(result.records, result.primary_y);
        results.push_back(std::move(result));
    }
    jclab::emit_plot(results, out_path);
    std::printf("plot written: %s (%zu series)\n", out_path.c_str(), results.size());
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"jclab — entropy growth statistics in multi-subsystem Jaynes-Cummings models"};
    app.require_subcommand(1);

    CommonOpts sweep_opts, table_opts;
    auto add_common = [](CLI::App* cmd, CommonOpts& opts) {
        cmd->add_option("config", opts.config_path, "experiment config (JSON)")->required();
        cmd->add_option("--seed", opts.seed, "override the ensemble seed")
            ->each([&opts](const std::string&) { opts.seed_set = true; });
        cmd->add_option("--workers", opts.workers, "worker thread count")
            ->each([&opts](const std::string&) { opts.workers_set = true; });
        cmd->add_option("--scale", opts.scale, "divide ensemble sizes for desk-scale runs")
            ->check(CLI::PositiveNumber);
    };
    CLI::App* sweep_cmd = app.add_subcommand("sweep", "run ensemble sweeps from a config file");
    add_common(sweep_cmd, sweep_opts);
    CLI::App* table_cmd = app.add_subcommand("table", "run a constrained-ensemble table");
    add_common(table_cmd, table_opts);

    std::string verify_level = "fast";
    int verify_workers = 0;
    std::uint64_t verify_seed = 20260810;
    int verify_scale = 1;
    CLI::App* verify_cmd = app.add_subcommand("verify", "run the verification suites");
    verify_cmd->add_option("--level", verify_level, "fast or full")
        ->check(CLI::IsMember({"fast", "full"}));
    verify_cmd->add_option("--workers", verify_workers, "worker thread count");
    verify_cmd->add_option("--seed", verify_seed, "verification seed");
    verify_cmd->add_option("--scale", verify_scale,
                           "ensemble-size divisor for the full-level acceptance criteria")
        ->check(CLI::PositiveNumber);

    std::vector<std::string> plot_files;
    CLI::App* plot_cmd = app.add_subcommand("plot", "render an SVG plot from emitted CSV files");
    plot_cmd->add_option("files", plot_files, "input CSV files followed by the output SVG path")
        ->required()
        ->expected(-2);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfigError;
    }

    try {
        if (sweep_cmd->parsed()) return cmd_sweep(sweep_opts);
        if (table_cmd->parsed()) return cmd_table(table_opts);
        if (verify_cmd->parsed())
            return cmd_verify(verify_level, verify_workers, verify_seed, verify_scale);
        if (plot_cmd->parsed()) {
            if (plot_files.size() < 2)
                throw std::invalid_argument("plot needs at least one CSV and an output path");
            std::string out_path = plot_files.back();
            plot_files.pop_back();
            return cmd_plot(plot_files, out_path);
        }
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return kExitConfigError;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitInvariantFailure;
    }
    return kExitConfigError;
}
