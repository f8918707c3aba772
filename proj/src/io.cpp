#include "jclab/io.hpp"

#include <nlohmann/json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace jclab {

using json = nlohmann::ordered_json;

std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

// ------------------------------ config ---------------------------------

namespace {

json model_to_json(const ModelSpec& m) {
    return json{{"atom_kind", m.atom_kind == AtomKind::TwoLevel ? "two_level" : "three_level_cascade"},
                {"n_subsystems", m.n_subsystems},
                {"coupling_g", m.coupling_g},
                {"atom_frequency", m.atom_frequency},
                {"field_frequency", m.field_frequency},
                {"initial_photons", m.initial_photons},
                {"fock_cutoff", m.fock_cutoff}};
}

ModelSpec model_from_json(const json& j) {
    ModelSpec m;
    std::string kind = j.at("atom_kind").get<std::string>();
    if (kind == "two_level")
        m.atom_kind = AtomKind::TwoLevel;
    else if (kind == "three_level_cascade")
        m.atom_kind = AtomKind::ThreeLevelCascade;
    else
        throw std::invalid_argument("config: unknown atom_kind " + kind);
    m.n_subsystems = j.at("n_subsystems").get<int>();
    m.coupling_g = j.at("coupling_g").get<double>();
    m.atom_frequency = j.at("atom_frequency").get<double>();
    m.field_frequency = j.at("field_frequency").get<double>();
    m.initial_photons = j.at("initial_photons").get<int>();
    m.fock_cutoff = j.value("fock_cutoff", min_fock_cutoff(m.atom_kind, m.initial_photons));
    return m;
}

json ensemble_to_json(const EnsembleSpec& e) {
    json j{{"sampler", sampler_name(e.sampler)},
           {"size", e.size},
           {"seed", e.seed}};
    if (e.constraint.kind != Constraint::Kind::None) {
        j["constraint"] = json{{"kind", constraint_kind_name(e.constraint.kind)},
                               {"value", e.constraint.value},
                               {"tol", e.constraint.tol}};
    }
    return j;
}

EnsembleSpec ensemble_from_json(const json& j, const ModelSpec& model) {
    EnsembleSpec e;
    e.sampler = sampler_from_name(j.at("sampler").get<std::string>());
    e.size = j.at("size").get<std::int64_t>();
    e.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("constraint")) {
        const auto& c = j.at("constraint");
        e.constraint.kind = constraint_kind_from_name(c.at("kind").get<std::string>());
        e.constraint.value = c.at("value").get<double>();
        e.constraint.tol = c.at("tol").get<double>();
    }
    e.atom_dim = atom_dim(model.atom_kind);
    e.n_subsystems = model.n_subsystems;
    return e;
}

json grid_to_json(const GridParams& g) {
    return json{{"kind", g.kind}, {"n_points", g.n_points}, {"span_over_g", g.span_over_g}};
}

GridParams grid_from_json(const json& j) {
    GridParams g;
    if (j.is_null()) return g;
    g.kind = j.value("kind", std::string("auto"));
    g.n_points = j.value("n_points", 0);
    g.span_over_g = j.value("span_over_g", 400.0);
    return g;
}

json outputs_to_json(const OutputPaths& o) {
    json j;
    if (!o.csv.empty()) j["csv"] = o.csv;
    if (!o.summary.empty()) j["summary"] = o.summary;
    if (!o.plot.empty()) j["plot"] = o.plot;
    return j;
}

OutputPaths outputs_from_json(const json& j) {
    OutputPaths o;
    if (j.is_null()) return o;
    o.csv = j.value("csv", std::string());
    o.summary = j.value("summary", std::string());
    o.plot = j.value("plot", std::string());
    return o;
}

json experiment_to_json(const ExperimentConfig& e) {
    return json{{"name", e.name},
                {"model", model_to_json(e.model)},
                {"ensemble", ensemble_to_json(e.ensemble)},
                {"measure", ent_measure_name(e.measure)},
                {"grid", grid_to_json(e.grid)},
                {"outputs", outputs_to_json(e.outputs)},
                {"workers", e.workers}};
}

ExperimentConfig experiment_from_json(const json& j) {
    ExperimentConfig e;
    e.name = j.at("name").get<std::string>();
    e.model = model_from_json(j.at("model"));
    e.ensemble = ensemble_from_json(j.at("ensemble"), e.model);
    e.measure = ent_measure_from_name(j.at("measure").get<std::string>());
    e.grid = grid_from_json(j.contains("grid") ? j.at("grid") : json());
    e.outputs = outputs_from_json(j.contains("outputs") ? j.at("outputs") : json());
    e.workers = j.value("workers", 0);
    return e;
}

json table_to_json(const TableConfig& t) {
    json cells = json::array();
    for (const auto& cell : t.cells) cells.push_back(json{{"value", cell.value}, {"tol", cell.tol}});
    return json{{"family", constraint_kind_name(t.family)},
                {"n_subsystems", t.n_subsystems},
                {"cells", cells},
                {"target_size", t.target_size},
                {"initial_photons", t.initial_photons},
                {"seed", t.seed},
                {"workers", t.workers},
                {"outputs", json{{"table_csv", t.table_csv}, {"summary", t.summary}}}};
}

TableConfig table_from_json(const std::string& name, const json& j) {
    TableConfig t;
    t.name = name;
    t.family = constraint_kind_from_name(j.at("family").get<std::string>());
    t.n_subsystems = j.at("n_subsystems").get<std::vector<int>>();
    for (const auto& cell : j.at("cells")) {
        TableCell c;
        c.value = cell.at("value").get<double>();
        c.tol = cell.at("tol").get<std::vector<double>>();
        t.cells.push_back(c);
    }
    t.target_size = j.at("target_size").get<std::int64_t>();
    t.initial_photons = j.value("initial_photons", 0);
    t.seed = j.at("seed").get<std::uint64_t>();
    t.workers = j.value("workers", 0);
    if (j.contains("outputs")) {
        t.table_csv = j.at("outputs").value("table_csv", std::string());
        t.summary = j.at("outputs").value("summary", std::string());
    }
    return t;
}

} // namespace

std::string config_to_json(const ConfigFile& config) {
    json j;
    j["name"] = config.name;
    if (config.is_table) {
        j["table"] = table_to_json(config.table);
    } else {
        json list = json::array();
        for (const auto& e : config.experiments) list.push_back(experiment_to_json(e));
        j["experiments"] = list;
    }
    return j.dump(2) + "\n";
}

ConfigFile config_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& err) {
        throw std::invalid_argument(std::string("config: JSON parse error: ") + err.what());
    }
    ConfigFile config;
    config.name = j.value("name", std::string("experiment"));
    if (j.contains("table")) {
        config.is_table = true;
        config.table = table_from_json(config.name, j.at("table"));
    } else if (j.contains("experiments")) {
        for (const auto& e : j.at("experiments"))
            config.experiments.push_back(experiment_from_json(e));
        if (config.experiments.empty())
            throw std::invalid_argument("config: experiments list is empty");
    } else {
        throw std::invalid_argument("config: expected an 'experiments' list or a 'table' object");
    }
    return config;
}

ConfigFile load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("config: cannot open " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return config_from_json(buf.str());
}

void apply_overrides(ConfigFile& config, const std::uint64_t* seed, const int* workers, int scale) {
    if (scale < 1) throw std::invalid_argument("--scale must be >= 1");
    for (auto& e : config.experiments) {
        if (seed) e.ensemble.seed = *seed;
        if (workers) e.workers = *workers;
        e.ensemble.size = std::max<std::int64_t>(2, e.ensemble.size / scale);
    }
    if (config.is_table) {
        if (seed) config.table.seed = *seed;
        if (workers) config.table.workers = *workers;
        config.table.target_size = std::max<std::int64_t>(2, config.table.target_size / scale);
    }
}

void redirect_output_dir(ConfigFile& config, const std::string& dir) {
    auto redirect = [&](std::string& path) {
        if (path.empty()) return;
        path = (std::filesystem::path(dir) / std::filesystem::path(path).filename()).string();
    };
    for (auto& e : config.experiments) {
        redirect(e.outputs.csv);
        redirect(e.outputs.summary);
        redirect(e.outputs.plot);
    }
    redirect(config.table.table_csv);
    redirect(config.table.summary);
}

// -------------------------------- CSV ----------------------------------

std::string csv_to_string(const SweepResult& result) {
    std::ostringstream out;
    const int n_atoms = result.config.model.n_subsystems;
    out << "sample_id,ent_measure,ent_value,s_in_bits,s_t_bits,delta_s_bits,e_mean";
    for (int i = 0; i < n_atoms; ++i) out << ",e_i_" << i;
    out << "\n";
    const std::string measure = ent_measure_name(result.config.measure);
    for (std::size_t i = 0; i < result.records.size(); ++i) {
        const auto& r = result.records[i];
        out << i << ',' << measure << ',' << format_double(r.ent_value) << ','
            << format_double(r.s_in_bits) << ',' << format_double(r.s_t_bits) << ','
            << format_double(r.delta_s_bits) << ',';
        if (r.has_energies) out << format_double(r.e_mean);
        for (int a = 0; a < n_atoms; ++a) {
            out << ',';
            if (r.has_energies) out << format_double(r.e_i[a]);
        }
        out << "\n";
    }
    return out.str();
}

void write_csv(const std::string& path, const SweepResult& result) {
    std::filesystem::path p(path);
    if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open CSV for writing: " + path);
    out << csv_to_string(result);
    if (!out) throw std::runtime_error("CSV write failed: " + path);
}

std::vector<SampleRecord> read_csv(const std::string& path, std::string* measure_name) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open CSV: " + path);
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("empty CSV: " + path);
    std::vector<SampleRecord> records;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<std::string> cells;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) cells.push_back(cell);
        // allow a trailing empty field
        if (cells.size() < 6) throw std::runtime_error("malformed CSV row: " + line);
        SampleRecord r;
        if (measure_name) *measure_name = cells[1];
        r.ent_value = std::stod(cells[2]);
        r.s_in_bits = std::stod(cells[3]);
        r.s_t_bits = std::stod(cells[4]);
        r.delta_s_bits = std::stod(cells[5]);
        if (cells.size() > 6 && !cells[6].empty()) {
            r.has_energies = true;
            r.e_mean = std::stod(cells[6]);
            for (std::size_t c = 7; c < cells.size(); ++c)
                if (!cells[c].empty()) r.e_i.push_back(std::stod(cells[c]));
        }
        records.push_back(std::move(r));
    }
    return records;
}

// ------------------------------ summaries ------------------------------

namespace {

json bins_to_json(const std::vector<Bin>& bins) {
    json out = json::array();
    for (const auto& b : bins)
        out.push_back(json{{"center", b.center}, {"mean", b.mean}, {"count", b.count}});
    return out;
}

json fit_to_json(const LineFit& fit) {
    return json{{"slope", fit.slope},
                {"intercept", fit.intercept},
                {"slope_angle_deg", fit.slope_angle_deg}};
}

json sweep_summary_json(const SweepResult& result) {
    json j;
    j["name"] = result.config.name;
    j["config"] = json::parse(config_to_json(ConfigFile{
        result.config.name, false, {result.config}, TableConfig{}}));
    j["grid"] = json{{"kind", result.grid.kind == TimeGrid::Kind::SinglePeriod ? "single_period"
                                                                               : "long_interval"},
                     {"n_points", result.grid.n_points},
                     {"step", result.grid.step},
                     {"span", result.grid.span}};
    j["samples"] = result.records.size();
    j["primary_response"] = field_name(result.primary_y);
    j["slope_angle_deg"] =
        result.primary_y == Field::DeltaS ? result.stats.fit_delta.slope_angle_deg
                                          : result.stats.fit_st.slope_angle_deg;
    j["pearson_r"] =
        result.primary_y == Field::DeltaS ? result.stats.pearson_delta : result.stats.pearson_st;
    j["eta_ent"] = result.stats.eta;
    j["fit_s_t"] = fit_to_json(result.stats.fit_st);
    j["fit_delta_s"] = fit_to_json(result.stats.fit_delta);
    j["pearson_s_t"] = result.stats.pearson_st;
    j["pearson_delta_s"] = result.stats.pearson_delta;
    j["mean_s_t"] = result.stats.mean_st;
    j["mean_s_in"] = result.stats.mean_sin;
    j["mean_delta_s"] = result.stats.mean_delta;
    j["mean_ent"] = result.stats.mean_ent;
    j["flat_response"] = result.stats.flat_response;
    j["bins"] = bins_to_json(result.stats.bins);
    j["acceptance_rate"] = result.acceptance_rate;
    j["candidates_scanned"] = result.candidates_scanned;
    j["timing"] = json{{"wall_seconds", result.wall_seconds}};
    return j;
}

} // namespace

std::string summary_to_json(const SweepResult& result) {
    return sweep_summary_json(result).dump(2) + "\n";
}

void write_summary(const std::string& path, const SweepResult& result) {
    std::filesystem::path p(path);
    if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open summary for writing: " + path);
    out << summary_to_json(result);
}

void write_table_csv(const std::string& path, const TableResult& result) {
    std::filesystem::path p(path);
    if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open table CSV for writing: " + path);
    out << "value";
    for (int n : result.config.n_subsystems)
        out << ",angle_deg_" << n << "jc,pearson_" << n << "jc,eta_ent_" << n << "jc";
    for (int n : result.config.n_subsystems)
        out << ",samples_" << n << "jc,acceptance_rate_" << n << "jc";
    out << "\n";
    for (const auto& row : result.rows) {
        out << format_double(row.value);
        for (const auto& sweep : row.per_n) {
            double angle = sweep.primary_y == Field::DeltaS ? sweep.stats.fit_delta.slope_angle_deg
                                                            : sweep.stats.fit_st.slope_angle_deg;
            double r = sweep.primary_y == Field::DeltaS ? sweep.stats.pearson_delta
                                                        : sweep.stats.pearson_st;
            out << ',' << format_double(angle) << ',' << format_double(r) << ','
                << format_double(sweep.stats.eta);
        }
        for (const auto& sweep : row.per_n)
            out << ',' << sweep.records.size() << ',' << format_double(sweep.acceptance_rate);
        out << "\n";
    }
}

std::string table_summary_to_json(const TableResult& result) {
    json j;
    j["name"] = result.config.name;
    j["config"] = json::parse(config_to_json(ConfigFile{result.config.name, true, {}, result.config}));
    json rows = json::array();
    for (const auto& row : result.rows) {
        json r;
        r["value"] = row.value;
        json per_n = json::array();
        for (std::size_t c = 0; c < row.per_n.size(); ++c) {
            const auto& sweep = row.per_n[c];
            per_n.push_back(json{
                {"n_subsystems", result.config.n_subsystems[c]},
                {"slope_angle_deg", sweep.primary_y == Field::DeltaS
                                        ? sweep.stats.fit_delta.slope_angle_deg
                                        : sweep.stats.fit_st.slope_angle_deg},
                {"pearson_r", sweep.primary_y == Field::DeltaS ? sweep.stats.pearson_delta
                                                               : sweep.stats.pearson_st},
                {"eta_ent", sweep.stats.eta},
                {"samples", sweep.records.size()},
                {"acceptance_rate", sweep.acceptance_rate},
            });
        }
        r["per_n"] = per_n;
        rows.push_back(r);
    }
    j["rows"] = rows;
    j["timing"] = json{{"wall_seconds", result.wall_seconds}};
    return j.dump(2) + "\n";
}

void write_table_summary(const std::string& path, const TableResult& result) {
    std::filesystem::path p(path);
    if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open table summary for writing: " + path);
    out << table_summary_to_json(result);
}

} // namespace jclab
