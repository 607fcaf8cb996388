#include "becmerge/observables.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "becmerge/tridiag.hpp"

namespace becmerge {

namespace {

constexpr double kSpreadThreshold = 0.9 - 1e-12;
constexpr double kClusterRelTol = 1e-8;

// Last index of the degeneracy cluster containing each level. Two adjacent
// levels belong to one cluster when their gap is below 1e-8 of the spectral
// width.
std::vector<int> cluster_ends(std::span<const double> vals) {
    const int n = static_cast<int>(vals.size());
    std::vector<int> ends(n);
    const double tol = kClusterRelTol * (vals[n - 1] - vals[0]);
    int start = 0;
    for (int i = 0; i < n; ++i) {
        if (i + 1 == n || vals[i + 1] - vals[i] > tol) {
            for (int k = start; k <= i; ++k) ends[k] = i;
            start = i + 1;
        }
    }
    return ends;
}

int spread_from_populations(std::span<const double> pops, std::span<const int> ends) {
    double cum = 0.0;
    int i = 0;
    const int n = static_cast<int>(pops.size());
    while (i < n) {
        const int end = ends[i];
        for (int k = i; k <= end; ++k) cum += pops[k];
        if (cum >= kSpreadThreshold) return end;
        i = end + 1;
    }
    return n - 1;  // roundoff guard; populations sum to 1
}

double population_of(std::span<const double> vec, std::span<const Complex> psi) {
    Complex overlap{0.0, 0.0};
    for (std::size_t k = 0; k < psi.size(); ++k) {
        overlap += vec[k] * psi[k];
    }
    return std::norm(overlap);
}

struct SectorLevelPrefix {
    const SectorState* state = nullptr;
    TridiagonalHamiltonian h;
    std::vector<int> ends;
    std::vector<double> pops;  // populations for computed prefix
    int computed = 0;

    int dim() const { return h.dim(); }

    // Populations must cover every cluster that ends at or below `level`.
    void ensure(int level) {
        level = std::min(level, dim() - 1);
        const int need = ends[level] + 1;
        if (computed >= need) return;
        const auto es = tridiag_lowest_eigenpairs(h.diag, h.offdiag, need);
        pops.resize(need);
        for (int i = 0; i < need; ++i) {
            pops[i] = population_of(es.vec(i), self_amplitudes());
        }
        computed = need;
    }

    std::span<const Complex> self_amplitudes() const { return state->amplitudes; }
};

int combined_spread90(std::vector<SectorLevelPrefix>& sectors,
                      std::span<const double> weights) {
    int max_dim = 0;
    for (const auto& s : sectors) max_dim = std::max(max_dim, s.dim());

    int limit = 32;
    while (true) {
        limit = std::min(limit, max_dim - 1);
        for (auto& s : sectors) s.ensure(limit);

        // Weighted cluster mass lands on the cluster's last level index.
        std::vector<double> delta(limit + 1, 0.0);
        for (std::size_t si = 0; si < sectors.size(); ++si) {
            const auto& s = sectors[si];
            double mass = 0.0;
            for (int i = 0; i < s.computed; ++i) {
                mass += s.pops[i];
                if (s.ends[i] == i || i + 1 == s.computed) {
                    if (s.ends[i] <= limit) delta[s.ends[i]] += weights[si] * mass;
                    mass = 0.0;
                }
            }
        }
        double cum = 0.0;
        for (int level = 0; level <= limit; ++level) {
            cum += delta[level];
            if (cum >= kSpreadThreshold) return level;
        }
        if (limit >= max_dim - 1) return max_dim - 1;
        limit *= 2;
    }
}

}  // namespace

OneBodyDensityMatrix density_matrix(const SectorState& state) {
    const SpinExpectations ex = spin_expectations(state.basis, state.amplitudes);
    const double half_n = 0.5 * state.basis.n_total();
    OneBodyDensityMatrix rho;
    rho.n11 = half_n - ex.sz;
    rho.n22 = half_n + ex.sz;
    rho.c12 = Complex{ex.sx, -ex.sy};  // <a1+ a2> = <Sx> - i<Sy>
    return rho;
}

OneBodyDensityMatrix density_matrix(const MixtureState& mixture) {
    if (mixture.sectors.empty()) {
        throw std::invalid_argument("density_matrix: empty mixture");
    }
    OneBodyDensityMatrix rho;
    for (const SectorState& s : mixture.sectors) {
        const OneBodyDensityMatrix part = density_matrix(s);
        rho.n11 += s.weight * part.n11;
        rho.n22 += s.weight * part.n22;
        rho.c12 += s.weight * part.c12;
    }
    return rho;
}

CondensateReading condensate_reading(const OneBodyDensityMatrix& rho, double total) {
    if (!(total > 0.0)) {
        throw std::invalid_argument("condensate_reading: total must be positive");
    }
    const double avg = 0.5 * (rho.n11 + rho.n22);
    const double half_diff = 0.5 * (rho.n11 - rho.n22);
    const double radius = std::hypot(half_diff, std::abs(rho.c12));
    const double lambda_max = avg + radius;

    CondensateReading r;
    r.eta = std::clamp(lambda_max / total, 0.0, 1.0);

    // Degenerate rho: no preferred mode, report theta = phi = 0.
    if (radius <= 1e-12 * std::max(1.0, rho.trace())) {
        return r;
    }

    // Eigenvector (lambda - n22, conj(c12)); first component is >= 0.
    const double v1 = lambda_max - rho.n22;
    const double norm = std::hypot(v1, std::abs(rho.c12));
    if (v1 <= 1e-14 * norm) {
        r.theta = 0.5 * std::numbers::pi;
        return r;
    }
    r.theta = std::acos(std::clamp(v1 / norm, 0.0, 1.0));
    if (std::abs(rho.c12) > 0.0) {
        r.phi = std::arg(std::conj(rho.c12));
        if (r.phi == -std::numbers::pi) r.phi = std::numbers::pi;
    }
    return r;
}

LevelPopulations level_populations(const SectorState& state, double u, double j,
                                   int max_dim) {
    if (state.basis.dim() > max_dim) {
        throw std::invalid_argument("level_populations: sector exceeds dense-eigensolver guard");
    }
    const TridiagonalHamiltonian h = build_hamiltonian(state.basis, u, j);
    const TridiagEigensystem es = tridiag_eigensystem(h.diag, h.offdiag);

    LevelPopulations lp;
    lp.populations.resize(es.dim);
    for (int i = 0; i < es.dim; ++i) {
        lp.populations[i] = population_of(es.vec(i), state.amplitudes);
    }
    const std::vector<int> ends = cluster_ends(es.values);
    lp.spread90 = spread_from_populations(lp.populations, ends);
    return lp;
}

int spread90(const SectorState& state, double u, double j) {
    std::vector<SectorLevelPrefix> prefixes(1);
    prefixes[0].state = &state;
    prefixes[0].h = build_hamiltonian(state.basis, u, j);
    prefixes[0].ends = cluster_ends(tridiag_eigenvalues(prefixes[0].h.diag, prefixes[0].h.offdiag));
    const double weight = 1.0;
    return combined_spread90(prefixes, {&weight, 1});
}

int spread90(const MixtureState& mixture, double u, double j) {
    if (mixture.sectors.empty()) {
        throw std::invalid_argument("spread90: empty mixture");
    }
    std::vector<SectorLevelPrefix> prefixes(mixture.sectors.size());
    std::vector<double> weights(mixture.sectors.size());
    for (std::size_t i = 0; i < mixture.sectors.size(); ++i) {
        prefixes[i].state = &mixture.sectors[i];
        prefixes[i].h = build_hamiltonian(mixture.sectors[i].basis, u, j);
        prefixes[i].ends =
            cluster_ends(tridiag_eigenvalues(prefixes[i].h.diag, prefixes[i].h.offdiag));
        weights[i] = mixture.sectors[i].weight;
    }
    return combined_spread90(prefixes, weights);
}

double energy(const SectorState& state, double u, double j) {
    const SectorBasis& basis = state.basis;
    double diag_part = 0.0;
    double hop_part = 0.0;
    for (int k = 0; k < basis.dim(); ++k) {
        const double mk = basis.m(k);
        diag_part += mk * mk * std::norm(state.amplitudes[k]);
        if (k + 1 < basis.dim()) {
            hop_part += basis.ladder(k) *
                        (std::conj(state.amplitudes[k + 1]) * state.amplitudes[k]).real();
        }
    }
    return u * diag_part - j * hop_part;
}

double energy(const MixtureState& mixture, double u, double j) {
    double e = 0.0;
    for (const SectorState& s : mixture.sectors) {
        e += s.weight * energy(s, u, j);
    }
    return e;
}

}  // namespace becmerge
