#include "becmerge/run.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "becmerge/csv.hpp"
#include "becmerge/states.hpp"
#include "becmerge/svg.hpp"

namespace becmerge {

namespace {

using nlohmann::json;

std::string scenario_name(RunConfig::Scenario s) {
    switch (s) {
        case RunConfig::Scenario::Merge: return "merge";
        case RunConfig::Scenario::Spectrum: return "spectrum";
        case RunConfig::Scenario::Sweep: return "sweep";
        case RunConfig::Scenario::Compare: return "compare";
    }
    return "merge";
}

RunConfig::Scenario scenario_from_name(const std::string& s) {
    if (s == "merge") return RunConfig::Scenario::Merge;
    if (s == "spectrum") return RunConfig::Scenario::Spectrum;
    if (s == "sweep") return RunConfig::Scenario::Sweep;
    if (s == "compare") return RunConfig::Scenario::Compare;
    throw std::invalid_argument("unknown scenario: " + s);
}

template <typename T>
void read_opt(const json& j, const char* key, T& out) {
    if (j.contains(key) && !j[key].is_null()) {
        out = j[key].get<T>();
    }
}

template <typename T>
void read_optional(const json& j, const char* key, std::optional<T>& out) {
    if (j.contains(key) && !j[key].is_null()) {
        out = j[key].get<T>();
    }
}

EvolutionConfig evolution_config(const RunConfig& config, int samples, bool track_levels) {
    EvolutionConfig ec;
    ec.steps_per_unit_time = config.steps;
    ec.sample_count = samples;
    ec.threads = config.threads;
    ec.track_levels = track_levels;
    return ec;
}

MergeResult merge_with(const RunConfig& config, MergeDirection direction, double sep0,
                       double t_merge, int samples, bool track_levels) {
    const TrapGeometry geometry =
        make_geometry(direction, t_merge, sep0, config.sigma_ratio);
    const MixtureState initial = initial_state(config);
    const int n_cal = calibration_atoms(config);
    const MergeSchedule schedule = calibrate(geometry, n_cal, config.ratio);

    MergeResult result;
    result.trajectory =
        evolve_mixture(initial, schedule, evolution_config(config, samples, track_levels));
    result.j0 = schedule.j0();
    result.n_cal = n_cal;
    result.ratio = config.ratio;
    result.n_mean = initial.n_mean;
    result.separation_warning = schedule.separation_warning();
    result.direction = direction;
    return result;
}

void append_merge_columns(CsvWriter& w, const TrajectoryRecord& r) {
    w.field(r.t).field(r.t).field(r.u).field(r.j).field(r.eta).field(r.theta).field(r.phi);
    w.field(r.energy).field(r.norm_drift).field(r.spread90);
}

const std::vector<std::string> kMergeColumns = {
    "t", "U0t", "U", "J", "eta", "theta", "phi", "energy", "norm_drift", "spread90"};

}  // namespace

RunConfig config_from_json_text(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("config JSON parse error: ") + e.what());
    }
    if (doc.contains("config") && doc["config"].is_object()) {
        doc = doc["config"];  // accept a summary document round-tripped as config
    }

    RunConfig c;
    try {
        if (doc.contains("scenario")) c.scenario = scenario_from_name(doc["scenario"]);
        read_opt(doc, "n1", c.n1);
        read_optional(doc, "n2", c.n2);
        read_optional(doc, "alpha_sq", c.alpha_sq);
        read_opt(doc, "tail_mass", c.tail_mass);
        read_opt(doc, "tm", c.t_merge);
        read_opt(doc, "tm_list", c.t_merge_list);
        read_opt(doc, "ratio", c.ratio);
        if (doc.contains("direction")) {
            c.direction = direction_from_string(doc["direction"].get<std::string>());
        }
        read_opt(doc, "sigma_ratio", c.sigma_ratio);
        read_opt(doc, "sep0", c.sep0);
        read_optional(doc, "sep0_axial", c.sep0_axial);
        read_optional(doc, "tm_axial", c.tm_axial);
        read_opt(doc, "steps", c.steps);
        read_opt(doc, "samples", c.samples);
        read_opt(doc, "threads", c.threads);
        read_opt(doc, "spectrum_n", c.spectrum_n);
        read_optional(doc, "grid_min", c.grid_min);
        read_optional(doc, "grid_max", c.grid_max);
        read_optional(doc, "grid_count", c.grid_count);
        read_opt(doc, "out", c.out_path);
        read_opt(doc, "summary", c.summary_path);
        read_opt(doc, "plot", c.plot_path);
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("config JSON field error: ") + e.what());
    }
    return c;
}

std::string config_to_json_text(const RunConfig& c) {
    json doc;
    doc["scenario"] = scenario_name(c.scenario);
    doc["n1"] = c.n1;
    if (c.n2) doc["n2"] = *c.n2;
    if (c.alpha_sq) doc["alpha_sq"] = *c.alpha_sq;
    doc["tail_mass"] = c.tail_mass;
    doc["tm"] = c.t_merge;
    if (!c.t_merge_list.empty()) doc["tm_list"] = c.t_merge_list;
    doc["ratio"] = c.ratio;
    doc["direction"] = to_string(c.direction);
    doc["sigma_ratio"] = c.sigma_ratio;
    doc["sep0"] = c.sep0;
    if (c.sep0_axial) doc["sep0_axial"] = *c.sep0_axial;
    if (c.tm_axial) doc["tm_axial"] = *c.tm_axial;
    doc["steps"] = c.steps;
    doc["samples"] = c.samples;
    doc["threads"] = c.threads;
    doc["spectrum_n"] = c.spectrum_n;
    if (c.grid_min) doc["grid_min"] = *c.grid_min;
    if (c.grid_max) doc["grid_max"] = *c.grid_max;
    if (c.grid_count) doc["grid_count"] = *c.grid_count;
    if (!c.out_path.empty()) doc["out"] = c.out_path;
    if (!c.summary_path.empty()) doc["summary"] = c.summary_path;
    if (!c.plot_path.empty()) doc["plot"] = c.plot_path;
    return doc.dump(2);
}

void validate(const RunConfig& c) {
    if (c.n2 && c.alpha_sq) {
        throw std::invalid_argument("config: n2 and alpha_sq are mutually exclusive");
    }
    if (c.scenario != RunConfig::Scenario::Spectrum) {
        if (!c.n2 && !c.alpha_sq) {
            throw std::invalid_argument("config: one of n2 / alpha_sq is required");
        }
        if (c.n1 < 0 || (c.n2 && *c.n2 < 0)) {
            throw std::invalid_argument("config: atom counts must be nonnegative");
        }
        if (!(c.ratio > 0.0)) throw std::invalid_argument("config: ratio must be positive");
        if (!(c.sep0 > 0.0)) throw std::invalid_argument("config: sep0 must be positive");
        if (!(c.sigma_ratio > 0.0)) {
            throw std::invalid_argument("config: sigma_ratio must be positive");
        }
        if (c.steps < 1) throw std::invalid_argument("config: steps must be >= 1");
        if (c.samples < 2) throw std::invalid_argument("config: samples must be >= 2");
    }
    switch (c.scenario) {
        case RunConfig::Scenario::Merge:
        case RunConfig::Scenario::Compare:
            if (!(c.t_merge > 0.0)) {
                throw std::invalid_argument("config: t_merge must be positive");
            }
            break;
        case RunConfig::Scenario::Sweep:
            if (c.t_merge_list.empty()) {
                throw std::invalid_argument("config: sweep needs a nonempty tm_list");
            }
            for (double tm : c.t_merge_list) {
                if (!(tm > 0.0)) {
                    throw std::invalid_argument("config: tm_list entries must be positive");
                }
            }
            break;
        case RunConfig::Scenario::Spectrum: {
            if (c.spectrum_n < 2) {
                throw std::invalid_argument("config: spectrum needs n >= 2");
            }
            if (c.grid_count && *c.grid_count < 1) {
                throw std::invalid_argument("config: empty ratio grid");
            }
            const double lo = c.grid_min.value_or(1e-2);
            const double hi = c.grid_max.value_or(1e2 * c.spectrum_n);
            if (!(lo > 0.0) || !(hi >= lo)) {
                throw std::invalid_argument("config: bad ratio grid bounds");
            }
            break;
        }
    }
}

MixtureState initial_state(const RunConfig& config) {
    if (config.alpha_sq) {
        return fock_coherent(config.n1, *config.alpha_sq, config.tail_mass);
    }
    return fock_fock(config.n1, config.n2.value());
}

int calibration_atoms(const RunConfig& config) {
    if (config.alpha_sq) {
        return static_cast<int>(std::lround(config.n1 + *config.alpha_sq));
    }
    return config.n1 + config.n2.value();
}

MergeResult run_merge(const RunConfig& config) {
    validate(config);
    return merge_with(config, config.direction, config.sep0, config.t_merge,
                      config.samples, true);
}

SpectrumTable run_spectrum(const RunConfig& config) {
    validate(config);
    std::vector<double> grid;
    if (config.grid_min || config.grid_max || config.grid_count) {
        const double lo = std::log10(config.grid_min.value_or(1e-2));
        const double hi = std::log10(config.grid_max.value_or(1e2 * config.spectrum_n));
        const int count = config.grid_count.value_or(200);
        grid.resize(count);
        for (int i = 0; i < count; ++i) {
            grid[i] = count == 1 ? std::pow(10.0, lo)
                                 : std::pow(10.0, lo + (hi - lo) * i / (count - 1));
        }
    } else {
        grid = default_ratio_grid(config.spectrum_n);
    }
    return spectrum_sweep(config.spectrum_n, grid);
}

std::vector<SweepRow> run_sweep(const RunConfig& config) {
    validate(config);
    std::vector<SweepRow> rows;
    rows.reserve(config.t_merge_list.size());
    for (double tm : config.t_merge_list) {
        SweepRow row;
        row.t_merge = tm;
        try {
            // Two samples (t=0 and t_m); level analysis only at those points.
            const MergeResult r =
                merge_with(config, config.direction, config.sep0, tm, 2, true);
            row.eta_final = r.final_record().eta;
            row.theta_final = r.final_record().theta;
            row.phi_final = r.final_record().phi;
            row.spread90 = r.final_record().spread90;
        } catch (const std::exception& e) {
            row.status = e.what();
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

CompareResult run_compare(const RunConfig& config) {
    validate(config);
    CompareResult result;
    result.radial = merge_with(config, MergeDirection::Radial, config.sep0, config.t_merge,
                               config.samples, true);
    result.axial = merge_with(config, MergeDirection::Axial,
                              config.sep0_axial.value_or(config.sep0),
                              config.tm_axial.value_or(config.t_merge), config.samples, true);
    return result;
}

std::string merge_csv(const MergeResult& result) {
    CsvWriter w;
    w.header(kMergeColumns);
    for (const TrajectoryRecord& r : result.trajectory.records) {
        append_merge_columns(w, r);
        w.end_row();
    }
    return w.str();
}

std::string merge_summary_json(const RunConfig& config, const MergeResult& result) {
    json doc;
    doc["config"] = json::parse(config_to_json_text(config));
    doc["calibration"] = {{"u0", 1.0},
                          {"j0", result.j0},
                          {"n_cal", result.n_cal},
                          {"ratio", result.ratio},
                          {"separation_warning", result.separation_warning}};
    doc["normalization"] = "n_mean";
    doc["n_mean"] = result.n_mean;
    doc["direction"] = to_string(result.direction);
    const TrajectoryRecord& last = result.final_record();
    doc["eta_initial"] = result.trajectory.records.front().eta;
    doc["eta_final"] = last.eta;
    doc["theta_final"] = last.theta;
    doc["phi_final"] = last.phi;
    doc["spread90_final"] = last.spread90;
    double drift = 0.0;
    for (const TrajectoryRecord& r : result.trajectory.records) {
        drift = std::max(drift, r.norm_drift);
    }
    doc["norm_drift_max"] = drift;
    return doc.dump(2) + "\n";
}

std::string spectrum_csv(const SpectrumTable& table) {
    CsvWriter w;
    w.header({"ratio", "level_index", "energy_shifted"});
    for (std::size_t g = 0; g < table.ratios.size(); ++g) {
        for (std::size_t i = 0; i < table.levels[g].size(); ++i) {
            w.field(table.ratios[g]).field(static_cast<int>(i)).field(table.levels[g][i]);
            w.end_row();
        }
    }
    return w.str();
}

std::string sweep_csv(std::span<const SweepRow> rows) {
    CsvWriter w;
    w.header({"t_merge", "status", "eta_final", "theta_final", "phi_final", "spread90"});
    for (const SweepRow& r : rows) {
        w.field(r.t_merge).field(r.status);
        w.field(r.eta_final).field(r.theta_final).field(r.phi_final).field(r.spread90);
        w.end_row();
    }
    return w.str();
}

std::string compare_csv(const CompareResult& result) {
    CsvWriter w;
    std::vector<std::string> columns = {"sample"};
    for (const char* suffix : {"_radial", "_axial"}) {
        for (const std::string& c : kMergeColumns) columns.push_back(c + suffix);
    }
    w.header(columns);
    const std::size_t rows = std::min(result.radial.trajectory.records.size(),
                                      result.axial.trajectory.records.size());
    for (std::size_t i = 0; i < rows; ++i) {
        w.field(static_cast<int>(i));
        append_merge_columns(w, result.radial.trajectory.records[i]);
        append_merge_columns(w, result.axial.trajectory.records[i]);
        w.end_row();
    }
    return w.str();
}

std::string merge_plot_svg(const MergeResult& result) {
    const auto& recs = result.trajectory.records;
    std::vector<double> t, eta, theta, phi;
    for (const auto& r : recs) {
        t.push_back(r.t);
        eta.push_back(r.eta);
        theta.push_back(r.theta);
        phi.push_back(r.phi);
    }
    SvgPanel top{"largest condensate fraction", "U0 t", "eta", false, false,
                 {{"eta", t, eta, "#1f77b4", false}}};
    SvgPanel bottom{"dominant-mode parameters", "U0 t", "angle (rad)", false, true,
                    {{"theta", t, theta, "#d62728", false},
                     {"phi", t, phi, "#2ca02c", true}}};
    return render_svg({top, bottom});
}

std::string spectrum_plot_svg(const SpectrumTable& table) {
    SvgPanel panel;
    panel.title = "energy spectrum, N = " + std::to_string(table.n_total);
    panel.x_label = "J / U";
    panel.y_label = "E - E0";
    panel.log_x = true;
    panel.legend = false;
    const int n_levels = table.n_total + 1;
    for (int lvl = 0; lvl < n_levels; ++lvl) {
        SvgSeries s;
        s.color = "#1f77b4";
        for (std::size_t g = 0; g < table.ratios.size(); ++g) {
            s.x.push_back(table.ratios[g]);
            s.y.push_back(table.levels[g][lvl]);
        }
        panel.series.push_back(std::move(s));
    }
    return render_svg({panel});
}

std::string compare_plot_svg(const CompareResult& result) {
    auto column = [](const MergeResult& r, auto getter) {
        std::vector<double> v;
        for (const auto& rec : r.trajectory.records) v.push_back(getter(rec));
        return v;
    };
    auto times = [](const MergeResult& r) {
        std::vector<double> v;
        for (const auto& rec : r.trajectory.records) v.push_back(rec.t);
        return v;
    };
    const auto t_r = times(result.radial);
    const auto t_a = times(result.axial);
    SvgPanel coeffs{"schedule coefficients", "U0 t", "value", false, true,
                    {{"U radial", t_r, column(result.radial, [](auto& r) { return r.u; }), "#1f77b4", false},
                     {"J radial", t_r, column(result.radial, [](auto& r) { return r.j; }), "#d62728", false},
                     {"U axial", t_a, column(result.axial, [](auto& r) { return r.u; }), "#1f77b4", true},
                     {"J axial", t_a, column(result.axial, [](auto& r) { return r.j; }), "#d62728", true}}};
    SvgPanel eta{"largest condensate fraction", "U0 t", "eta", false, true,
                 {{"radial", t_r, column(result.radial, [](auto& r) { return r.eta; }), "#1f77b4", false},
                  {"axial", t_a, column(result.axial, [](auto& r) { return r.eta; }), "#d62728", true}}};
    return render_svg({coeffs, eta});
}

}  // namespace becmerge
