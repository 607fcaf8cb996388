#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "becmerge/observables.hpp"
#include "becmerge/schedule.hpp"
#include "becmerge/states.hpp"

namespace becmerge {

struct EvolutionConfig {
    /// Requested resolution in 1/U0 units. The effective step additionally
    /// satisfies dt * max(max|diag|, N*J0/2) <= 0.1; the step count grows
    /// automatically when that bound is tighter.
    int steps_per_unit_time = 2000;
    int sample_count = 129;  // trajectory records, including t=0 and t_m
    double norm_tolerance = 1e-9;
    int threads = 0;  // 0 = hardware concurrency
    /// Record spread90 at every sample (eigenlevel analysis per sample).
    bool track_levels = true;
};

/// Norm drift or non-finite amplitudes during propagation.
class PropagationError : public std::runtime_error {
  public:
    PropagationError(const std::string& what, int sector_n_total, long step);

    int sector_n_total() const { return sector_n_total_; }
    long step() const { return step_; }

  private:
    int sector_n_total_;
    long step_;
};

/// One sector evolved from t=0 to t_m, with amplitude snapshots at the
/// sample times.
struct SectorEvolution {
    SectorState final_state;
    std::vector<double> times;
    std::vector<std::vector<Complex>> samples;
    double norm_drift = 0.0;  // max ||psi| - 1| over the run
};

/// Per-sample observables of a merge run.
struct TrajectoryRecord {
    double t = 0.0;
    double u = 0.0;
    double j = 0.0;
    double eta = 0.0;
    double theta = 0.0;
    double phi = 0.0;
    double energy = 0.0;
    double norm_drift = 0.0;
    int spread90 = -1;  // -1 when level tracking is off
};

struct Trajectory {
    std::vector<double> times;
    std::vector<TrajectoryRecord> records;
};

/// Crank-Nicolson evolution under the time-dependent schedule, coefficients
/// sampled at step midpoints. Each step is unitary up to roundoff.
SectorEvolution evolve_sector(const SectorState& state, const MergeSchedule& schedule,
                              const EvolutionConfig& config);

/// Same engine with (u, j) frozen; used for conservation and invariance checks.
SectorEvolution evolve_constant(const SectorState& state, double u, double j,
                                double t_final, const EvolutionConfig& config);

/// Sector-wise evolution of a mixture with weighted observables per sample.
/// Sectors run in parallel; the reduction order is fixed, so results do not
/// depend on the worker count.
Trajectory evolve_mixture(const MixtureState& mixture, const MergeSchedule& schedule,
                          const EvolutionConfig& config);

/// exp(-i H t) psi by full eigendecomposition; constant coefficients only.
/// Reference path for testing the propagator (N <= 200).
SectorState dense_reference_evolve(const SectorState& state, double u, double j, double t);

}  // namespace becmerge
