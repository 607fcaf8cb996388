#include "becmerge/propagator.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <mutex>
#include <thread>

#include "becmerge/tridiag.hpp"

namespace becmerge {

namespace {

constexpr double kStabilityBound = 0.1;  // dt * spectral scale

struct StepWorkspace {
    std::vector<Complex> rhs;
    std::vector<Complex> super;  // eliminated superdiagonal
};

// One Crank-Nicolson step: (I + i dt/2 H) psi' = (I - i dt/2 H) psi with
// H = u*Sz^2 - j*Sx. The stability bound keeps |i dt/2 offdiag| well under
// the unit diagonal, so the Thomas solve needs no pivoting.
void cn_step(std::vector<Complex>& psi, const std::vector<double>& m_sq,
             const std::vector<double>& ladder, double u, double j, double dt,
             StepWorkspace& ws) {
    const int n = static_cast<int>(psi.size());
    const double half_dt = 0.5 * dt;
    const Complex ihalf{0.0, half_dt};

    ws.rhs.resize(n);
    ws.super.resize(n);

    // rhs = (I - i dt/2 H) psi
    for (int k = 0; k < n; ++k) {
        Complex h_psi = u * m_sq[k] * psi[k];
        if (k > 0) h_psi += -0.5 * j * ladder[k - 1] * psi[k - 1];
        if (k + 1 < n) h_psi += -0.5 * j * ladder[k] * psi[k + 1];
        ws.rhs[k] = psi[k] - ihalf * h_psi;
    }

    // Forward elimination of the symmetric tridiagonal (I + i dt/2 H).
    auto diag_at = [&](int k) { return Complex{1.0, half_dt * u * m_sq[k]}; };
    auto off_at = [&](int k) { return Complex{0.0, -half_dt * 0.5 * j * ladder[k]}; };

    Complex denom = diag_at(0);
    ws.super[0] = (n > 1) ? off_at(0) / denom : Complex{0.0, 0.0};
    ws.rhs[0] /= denom;
    for (int k = 1; k < n; ++k) {
        const Complex lower = off_at(k - 1);
        denom = diag_at(k) - lower * ws.super[k - 1];
        if (k + 1 < n) ws.super[k] = off_at(k) / denom;
        ws.rhs[k] = (ws.rhs[k] - lower * ws.rhs[k - 1]) / denom;
    }
    for (int k = n - 2; k >= 0; --k) {
        ws.rhs[k] -= ws.super[k] * ws.rhs[k + 1];
    }
    psi.swap(ws.rhs);
}

double norm_of(const std::vector<Complex>& psi) {
    double s = 0.0;
    for (const Complex& a : psi) s += std::norm(a);
    return std::sqrt(s);
}

using CoefficientFn = std::function<Coefficients(double)>;

// Shared engine: advance from 0 to t_final with snapshots at sample_count
// uniform times. `scale` bounds the spectral norm over the whole run.
SectorEvolution evolve_impl(const SectorState& state, const CoefficientFn& coeffs,
                            double t_final, double scale, const EvolutionConfig& config) {
    if (config.steps_per_unit_time < 1 || config.sample_count < 2) {
        throw std::invalid_argument("EvolutionConfig: bad resolution");
    }
    if (!(t_final > 0.0)) {
        throw std::invalid_argument("evolve: t_final must be positive");
    }
    const SectorBasis& basis = state.basis;
    const int n = basis.dim();

    std::vector<double> m_sq(n), ladder(std::max(n - 1, 0));
    for (int k = 0; k < n; ++k) {
        const double mk = basis.m(k);
        m_sq[k] = mk * mk;
    }
    for (int k = 0; k + 1 < n; ++k) ladder[k] = basis.ladder(k);

    double dt_target = 1.0 / config.steps_per_unit_time;
    if (scale > 0.0) dt_target = std::min(dt_target, kStabilityBound / scale);

    SectorEvolution out;
    out.times.resize(config.sample_count);
    out.samples.resize(config.sample_count);
    for (int i = 0; i < config.sample_count; ++i) {
        out.times[i] = t_final * i / (config.sample_count - 1);
    }
    out.times.back() = t_final;

    std::vector<Complex> psi = state.amplitudes;
    out.samples[0] = psi;

    StepWorkspace ws;
    long global_step = 0;
    for (int seg = 1; seg < config.sample_count; ++seg) {
        const double t0 = out.times[seg - 1];
        const double t1 = out.times[seg];
        const long steps = std::max(1L, std::lround(std::ceil((t1 - t0) / dt_target)));
        const double dt = (t1 - t0) / steps;
        for (long s = 0; s < steps; ++s) {
            const double t_mid = t0 + (s + 0.5) * dt;
            const Coefficients c = coeffs(t_mid);
            cn_step(psi, m_sq, ladder, c.u, c.j, dt, ws);
            ++global_step;
        }
        const double norm = norm_of(psi);
        if (!std::isfinite(norm)) {
            throw PropagationError("non-finite amplitudes", basis.n_total(), global_step);
        }
        const double drift = std::abs(norm - 1.0);
        out.norm_drift = std::max(out.norm_drift, drift);
        if (drift > config.norm_tolerance) {
            throw PropagationError("norm drift exceeds tolerance", basis.n_total(),
                                   global_step);
        }
        out.samples[seg] = psi;
    }

    out.final_state = SectorState{basis, std::move(psi), state.weight};
    return out;
}

void check_initial(const SectorState& state) {
    const double norm = norm_of(state.amplitudes);
    if (std::abs(norm - 1.0) > 1e-10) {
        throw std::invalid_argument("evolve: initial state not normalized");
    }
}

// Spectral scale of H over a calibrated schedule: U is largest at t=0 where
// the diagonal reaches u0*(N/2)^2, J is largest at t_m with Sx norm N*j0/2.
double schedule_scale(const SectorBasis& basis, const MergeSchedule& schedule) {
    const double half_n = 0.5 * basis.n_total();
    const double u_max = std::max(schedule.u_at(0.0), schedule.u_at(schedule.t_merge()));
    const double j_max = std::max(schedule.j_at(0.0), schedule.j_at(schedule.t_merge()));
    return std::max(u_max * half_n * half_n, basis.n_total() * j_max / 2.0);
}

int worker_count(const EvolutionConfig& config, std::size_t jobs) {
    int hw = static_cast<int>(std::thread::hardware_concurrency());
    if (hw < 1) hw = 1;
    int w = config.threads > 0 ? config.threads : hw;
    return static_cast<int>(std::min<std::size_t>(w, jobs));
}

// Static index partition; results land in preassigned slots, so the outcome
// is identical for any worker count.
void parallel_for(int workers, std::size_t jobs, const std::function<void(std::size_t)>& fn) {
    if (workers <= 1 || jobs <= 1) {
        for (std::size_t i = 0; i < jobs; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    std::exception_ptr error;
    std::mutex error_mutex;
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            try {
                for (std::size_t i = w; i < jobs; i += workers) fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!error) error = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
}

}  // namespace

PropagationError::PropagationError(const std::string& what, int sector_n_total, long step)
    : std::runtime_error(what + " (sector N=" + std::to_string(sector_n_total) +
                         ", step " + std::to_string(step) + ")"),
      sector_n_total_(sector_n_total),
      step_(step) {}

SectorEvolution evolve_sector(const SectorState& state, const MergeSchedule& schedule,
                              const EvolutionConfig& config) {
    check_initial(state);
    const double scale = schedule_scale(state.basis, schedule);
    return evolve_impl(
        state, [&](double t) { return sample(schedule, t); }, schedule.t_merge(), scale,
        config);
}

SectorEvolution evolve_constant(const SectorState& state, double u, double j,
                                double t_final, const EvolutionConfig& config) {
    check_initial(state);
    if (!std::isfinite(u) || !std::isfinite(j)) {
        throw std::invalid_argument("evolve_constant: coefficients must be finite");
    }
    const double half_n = 0.5 * state.basis.n_total();
    const double scale =
        std::max(std::abs(u) * half_n * half_n, state.basis.n_total() * std::abs(j) / 2.0);
    return evolve_impl(
        state, [=](double) { return Coefficients{u, j}; }, t_final, scale, config);
}

Trajectory evolve_mixture(const MixtureState& mixture, const MergeSchedule& schedule,
                          const EvolutionConfig& config) {
    if (mixture.sectors.empty()) {
        throw std::invalid_argument("evolve_mixture: empty mixture");
    }

    const std::size_t n_sectors = mixture.sectors.size();
    std::vector<SectorEvolution> runs(n_sectors);
    parallel_for(worker_count(config, n_sectors), n_sectors, [&](std::size_t i) {
        runs[i] = evolve_sector(mixture.sectors[i], schedule, config);
    });

    Trajectory traj;
    traj.times = runs.front().times;
    traj.records.resize(traj.times.size());

    parallel_for(worker_count(config, traj.times.size()), traj.times.size(),
                 [&](std::size_t ti) {
        const double t = traj.times[ti];
        const Coefficients c = sample(schedule, t);

        MixtureState snapshot;
        snapshot.n_mean = mixture.n_mean;
        snapshot.sectors.reserve(n_sectors);
        double drift = 0.0;
        for (std::size_t s = 0; s < n_sectors; ++s) {
            snapshot.sectors.push_back(SectorState{mixture.sectors[s].basis,
                                                   runs[s].samples[ti],
                                                   mixture.sectors[s].weight});
            drift = std::max(drift, std::abs(norm_of(runs[s].samples[ti]) - 1.0));
        }

        TrajectoryRecord rec;
        rec.t = t;
        rec.u = c.u;
        rec.j = c.j;
        const CondensateReading reading =
            condensate_reading(density_matrix(snapshot), snapshot.n_mean);
        rec.eta = reading.eta;
        rec.theta = reading.theta;
        rec.phi = reading.phi;
        rec.energy = energy(snapshot, c.u, c.j);
        rec.norm_drift = drift;
        rec.spread90 = config.track_levels ? spread90(snapshot, c.u, c.j) : -1;
        traj.records[ti] = rec;
    });

    return traj;
}

SectorState dense_reference_evolve(const SectorState& state, double u, double j, double t) {
    check_initial(state);
    if (state.basis.n_total() > 200) {
        throw std::invalid_argument("dense_reference_evolve: N exceeds dense guard (200)");
    }
    const TridiagonalHamiltonian h = build_hamiltonian(state.basis, u, j);
    const TridiagEigensystem es = tridiag_eigensystem(h.diag, h.offdiag);
    const int n = es.dim;

    std::vector<Complex> coeffs(n);
    for (int i = 0; i < n; ++i) {
        Complex overlap{0.0, 0.0};
        const auto vec = es.vec(i);
        for (int k = 0; k < n; ++k) overlap += vec[k] * state.amplitudes[k];
        coeffs[i] = overlap * std::polar(1.0, -es.values[i] * t);
    }
    std::vector<Complex> out(n, Complex{0.0, 0.0});
    for (int i = 0; i < n; ++i) {
        const auto vec = es.vec(i);
        for (int k = 0; k < n; ++k) out[k] += coeffs[i] * vec[k];
    }
    return SectorState{state.basis, std::move(out), state.weight};
}

}  // namespace becmerge
