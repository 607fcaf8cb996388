#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "becmerge/propagator.hpp"
#include "becmerge/schedule.hpp"
#include "becmerge/spectrum.hpp"

namespace becmerge {

/// One run of any scenario; populated from the CLI flags and/or a JSON
/// config document (flags override file values). Fully deterministic.
struct RunConfig {
    enum class Scenario { Merge, Spectrum, Sweep, Compare };

    Scenario scenario = Scenario::Merge;

    int n1 = 51;
    std::optional<int> n2;          // exactly one of n2 / alpha_sq
    std::optional<double> alpha_sq;
    double tail_mass = 1e-8;

    double t_merge = 4.0;               // 1/U0 units
    std::vector<double> t_merge_list;   // sweep scenario
    double ratio = 4.0;                 // N*U0 / J0
    MergeDirection direction = MergeDirection::Radial;
    double sigma_ratio = 10.0;          // sigma_z / sigma_r
    double sep0 = 6.0;                  // initial separation, sigma_m units
    std::optional<double> sep0_axial;   // compare overrides
    std::optional<double> tm_axial;

    int steps = 2000;    // steps per unit time
    int samples = 201;   // trajectory records
    int threads = 0;

    int spectrum_n = 20;
    std::optional<double> grid_min;   // J/U grid, log-spaced
    std::optional<double> grid_max;
    std::optional<int> grid_count;

    std::string out_path;
    std::string summary_path;  // merge only; defaults next to out_path
    std::string plot_path;
};

RunConfig config_from_json_text(const std::string& text);
std::string config_to_json_text(const RunConfig& config);
void validate(const RunConfig& config);

/// (n2 present ? Fock x Fock : Fock x coherent), plus the calibration atom
/// number: N for Fock pairs, round(n_mean) for coherent mixtures.
MixtureState initial_state(const RunConfig& config);
int calibration_atoms(const RunConfig& config);

struct MergeResult {
    Trajectory trajectory;
    double j0 = 0.0;
    int n_cal = 0;
    double ratio = 0.0;
    double n_mean = 0.0;
    bool separation_warning = false;
    MergeDirection direction = MergeDirection::Radial;

    const TrajectoryRecord& final_record() const { return trajectory.records.back(); }
};

MergeResult run_merge(const RunConfig& config);

SpectrumTable run_spectrum(const RunConfig& config);

struct SweepRow {
    double t_merge = 0.0;
    std::string status = "ok";  // error text otherwise
    double eta_final = 0.0;
    double theta_final = 0.0;
    double phi_final = 0.0;
    int spread90 = -1;
};

std::vector<SweepRow> run_sweep(const RunConfig& config);

struct CompareResult {
    MergeResult radial;
    MergeResult axial;
};

CompareResult run_compare(const RunConfig& config);

// --- serialization ------------------------------------------------------

std::string merge_csv(const MergeResult& result);
std::string merge_summary_json(const RunConfig& config, const MergeResult& result);
std::string spectrum_csv(const SpectrumTable& table);
std::string sweep_csv(std::span<const SweepRow> rows);
std::string compare_csv(const CompareResult& result);

std::string merge_plot_svg(const MergeResult& result);
std::string spectrum_plot_svg(const SpectrumTable& table);
std::string compare_plot_svg(const CompareResult& result);

}  // namespace becmerge
