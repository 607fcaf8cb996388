// becmerge: two-mode simulator for merging independent Bose condensates.
//
// Subcommands: merge, spectrum, sweep, compare. Each writes CSV (and for
// merge a summary JSON); --plot adds a static SVG chart. Exit codes:
// 0 success, 2 configuration error, 3 numerical failure.

#include <CLI11.hpp>

#include <cstdio>
#include <exception>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "becmerge/csv.hpp"
#include "becmerge/propagator.hpp"
#include "becmerge/run.hpp"

namespace {

using becmerge::RunConfig;

constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

struct CliValues {
    std::optional<int> n1, n2, steps, samples, threads, spectrum_n, grid_count;
    std::optional<double> alpha_sq, tm, ratio, sigma_ratio, sep0, sep0_axial, tm_axial;
    std::optional<double> tail_mass, grid_min, grid_max;
    std::vector<double> tm_list;
    std::optional<std::string> direction;
    std::optional<std::string> out, summary, plot, config_path;
};

void add_common_flags(CLI::App* cmd, CliValues& v) {
    cmd->add_option("--n1", v.n1, "Atoms in the first (Fock) component");
    cmd->add_option("--n2", v.n2, "Atoms in the second Fock component");
    cmd->add_option("--alpha-sq", v.alpha_sq,
                    "|alpha|^2 of a coherent second component (instead of --n2)");
    cmd->add_option("--tm", v.tm, "Merging duration in 1/U0 units");
    cmd->add_option("--ratio", v.ratio, "Calibration ratio N*U0/J0 (default 4)");
    cmd->add_option("--direction", v.direction, "Merge direction: radial|axial")
        ->check(CLI::IsMember({"radial", "axial"}));
    cmd->add_option("--sigma-ratio", v.sigma_ratio, "sigma_z / sigma_r (default 10)");
    cmd->add_option("--sep0", v.sep0, "Initial separation in sigma_m units (default 6)");
    cmd->add_option("--steps", v.steps, "Requested steps per unit time");
    cmd->add_option("--samples", v.samples, "Trajectory sample count");
    cmd->add_option("--tail-mass", v.tail_mass, "Poisson truncation mass (coherent)");
    cmd->add_option("--threads", v.threads, "Worker threads (0 = hardware)");
    cmd->add_option("--out", v.out, "Output CSV path");
    cmd->add_option("--plot", v.plot, "Optional SVG chart path");
    cmd->add_option("--config", v.config_path, "JSON config file (flags override it)");
}

RunConfig assemble(const CliValues& v, RunConfig::Scenario scenario) {
    RunConfig c;
    if (v.config_path) {
        std::ifstream f(*v.config_path);
        if (!f) {
            throw std::invalid_argument("cannot read config file: " + *v.config_path);
        }
        std::stringstream buf;
        buf << f.rdbuf();
        c = becmerge::config_from_json_text(buf.str());
    }
    c.scenario = scenario;
    if (v.n1) c.n1 = *v.n1;
    if (v.n2 && v.alpha_sq) {
        c.n2 = *v.n2;
        c.alpha_sq = *v.alpha_sq;  // both flags: validate() reports the conflict
    } else if (v.n2) {
        c.n2 = *v.n2;
        c.alpha_sq.reset();  // flag replaces a file-supplied alpha_sq
    } else if (v.alpha_sq) {
        c.alpha_sq = *v.alpha_sq;
        c.n2.reset();
    }
    if (v.tm) c.t_merge = *v.tm;
    if (!v.tm_list.empty()) c.t_merge_list = v.tm_list;
    if (v.ratio) c.ratio = *v.ratio;
    if (v.direction) c.direction = becmerge::direction_from_string(*v.direction);
    if (v.sigma_ratio) c.sigma_ratio = *v.sigma_ratio;
    if (v.sep0) c.sep0 = *v.sep0;
    if (v.sep0_axial) c.sep0_axial = *v.sep0_axial;
    if (v.tm_axial) c.tm_axial = *v.tm_axial;
    if (v.steps) c.steps = *v.steps;
    if (v.samples) c.samples = *v.samples;
    if (v.tail_mass) c.tail_mass = *v.tail_mass;
    if (v.threads) c.threads = *v.threads;
    if (v.spectrum_n) c.spectrum_n = *v.spectrum_n;
    if (v.grid_min) c.grid_min = *v.grid_min;
    if (v.grid_max) c.grid_max = *v.grid_max;
    if (v.grid_count) c.grid_count = *v.grid_count;
    if (v.out) c.out_path = *v.out;
    if (v.summary) c.summary_path = *v.summary;
    if (v.plot) c.plot_path = *v.plot;
    if (!c.n2 && !c.alpha_sq && scenario != RunConfig::Scenario::Spectrum) {
        c.n2 = 49;  // documented default pair 51/49
    }
    return c;
}

std::string scenario_base(const RunConfig& c) {
    switch (c.scenario) {
        case RunConfig::Scenario::Merge: return "merge";
        case RunConfig::Scenario::Spectrum: return "spectrum";
        case RunConfig::Scenario::Sweep: return "sweep";
        case RunConfig::Scenario::Compare: return "compare";
    }
    return "run";
}

std::string out_path(const RunConfig& c) {
    if (!c.out_path.empty()) return c.out_path;
    return scenario_base(c) + ".csv";
}

std::string summary_path(const RunConfig& c) {
    if (!c.summary_path.empty()) return c.summary_path;
    const std::string base = out_path(c);
    const auto dot = base.rfind(".csv");
    return (dot == std::string::npos ? base : base.substr(0, dot)) + ".summary.json";
}

int run(const RunConfig& config) {
    using becmerge::write_text_file;
    switch (config.scenario) {
        case RunConfig::Scenario::Merge: {
            const becmerge::MergeResult r = becmerge::run_merge(config);
            if (r.separation_warning) {
                std::cerr << "warning: initial separation leaves J(0)/J0 above 1e-3;"
                          << " traps start appreciably coupled\n";
            }
            write_text_file(out_path(config), becmerge::merge_csv(r));
            write_text_file(summary_path(config), becmerge::merge_summary_json(config, r));
            if (!config.plot_path.empty()) {
                write_text_file(config.plot_path, becmerge::merge_plot_svg(r));
            }
            std::printf("eta_final=%s theta_final=%s phi_final=%s\n",
                        becmerge::format_double(r.final_record().eta).c_str(),
                        becmerge::format_double(r.final_record().theta).c_str(),
                        becmerge::format_double(r.final_record().phi).c_str());
            return 0;
        }
        case RunConfig::Scenario::Spectrum: {
            const becmerge::SpectrumTable table = becmerge::run_spectrum(config);
            write_text_file(out_path(config), becmerge::spectrum_csv(table));
            if (!config.plot_path.empty()) {
                write_text_file(config.plot_path, becmerge::spectrum_plot_svg(table));
            }
            return 0;
        }
        case RunConfig::Scenario::Sweep: {
            const std::vector<becmerge::SweepRow> rows = becmerge::run_sweep(config);
            write_text_file(out_path(config), becmerge::sweep_csv(rows));
            bool any_ok = false;
            for (const auto& row : rows) {
                if (row.status == "ok") any_ok = true;
                else std::cerr << "row tm=" << row.t_merge << " failed: " << row.status << "\n";
            }
            return any_ok ? 0 : kExitNumerical;
        }
        case RunConfig::Scenario::Compare: {
            const becmerge::CompareResult r = becmerge::run_compare(config);
            write_text_file(out_path(config), becmerge::compare_csv(r));
            if (!config.plot_path.empty()) {
                write_text_file(config.plot_path, becmerge::compare_plot_svg(r));
            }
            return 0;
        }
    }
    return kExitConfig;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Two-mode simulator for merging independent Bose condensates"};
    app.require_subcommand(1);

    CliValues v;
    CLI::App* merge = app.add_subcommand("merge", "Evolve one merge and record the trajectory");
    add_common_flags(merge, v);
    merge->add_option("--summary", v.summary, "Summary JSON path");

    CLI::App* spectrum = app.add_subcommand("spectrum", "Eigenlevels across a J/U sweep");
    add_common_flags(spectrum, v);
    spectrum->add_option("--n", v.spectrum_n, "Atom number for the spectrum (default 20)");
    spectrum->add_option("--grid-min", v.grid_min, "Smallest J/U ratio (default 1e-2)");
    spectrum->add_option("--grid-max", v.grid_max, "Largest J/U ratio (default 1e2*N)");
    spectrum->add_option("--grid-count", v.grid_count, "Grid size (default 200)");

    CLI::App* sweep = app.add_subcommand("sweep", "Final observables across merge durations");
    add_common_flags(sweep, v);
    sweep->add_option("--tm-list", v.tm_list, "Merging durations to sweep")->delimiter(',');

    CLI::App* compare = app.add_subcommand("compare", "Radial vs axial merge side by side");
    add_common_flags(compare, v);
    compare->add_option("--sep0-axial", v.sep0_axial, "Axial separation override (sigma_m units)");
    compare->add_option("--tm-axial", v.tm_axial, "Axial duration override");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitConfig;
    }

    RunConfig::Scenario scenario = RunConfig::Scenario::Merge;
    if (spectrum->parsed()) scenario = RunConfig::Scenario::Spectrum;
    if (sweep->parsed()) scenario = RunConfig::Scenario::Sweep;
    if (compare->parsed()) scenario = RunConfig::Scenario::Compare;

    try {
        const RunConfig config = assemble(v, scenario);
        becmerge::validate(config);
        return run(config);
    } catch (const becmerge::PropagationError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::domain_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return kExitNumerical;
    }
}
