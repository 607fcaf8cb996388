#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <numbers>
#include <random>

#include "becmerge/observables.hpp"
#include "becmerge/propagator.hpp"
#include "becmerge/spectrum.hpp"
#include "becmerge/states.hpp"
#include "becmerge/tridiag.hpp"

using namespace becmerge;

namespace {

SectorState random_sector_state(int n, std::mt19937& rng, double weight = 1.0) {
    std::normal_distribution<double> dist;
    SectorBasis b(n);
    std::vector<Complex> v(b.dim());
    double norm_sq = 0.0;
    for (auto& a : v) {
        a = Complex{dist(rng), dist(rng)};
        norm_sq += std::norm(a);
    }
    for (auto& a : v) a /= std::sqrt(norm_sq);
    return SectorState{b, std::move(v), weight};
}

}  // namespace

TEST_CASE("density matrix of reference states") {
    SUBCASE("balanced Fock state") {
        const auto rho = density_matrix(fock_basis_state(5, 5));
        CHECK(rho.n11 == doctest::Approx(5.0));
        CHECK(rho.n22 == doctest::Approx(5.0));
        CHECK(std::abs(rho.c12) == doctest::Approx(0.0));
    }
    SUBCASE("Sx-maximal N=2 state") {
        SectorBasis b(2);
        const SectorState s{
            b, {{0.5, 0}, {1.0 / std::sqrt(2.0), 0}, {0.5, 0}}, 1.0};
        const auto rho = density_matrix(s);
        CHECK(rho.n11 == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(rho.n22 == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(rho.c12.real() == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(rho.c12.imag() == doctest::Approx(0.0));
    }
    SUBCASE("all atoms in mode 2") {
        const auto rho = density_matrix(fock_basis_state(0, 8));
        CHECK(rho.n11 == doctest::Approx(0.0));
        CHECK(rho.n22 == doctest::Approx(8.0));
        CHECK(std::abs(rho.c12) == doctest::Approx(0.0));
    }
}

TEST_CASE("condensate reading conventions") {
    const double n = 10.0;
    SUBCASE("fragmented: degenerate rho") {
        const CondensateReading r = condensate_reading({n / 2, n / 2, {0, 0}}, n);
        CHECK(r.eta == doctest::Approx(0.5));
        CHECK(r.theta == 0.0);
        CHECK(r.phi == 0.0);
    }
    SUBCASE("symmetric coherence") {
        const CondensateReading r = condensate_reading({n / 2, n / 2, {n / 2, 0}}, n);
        CHECK(r.eta == doctest::Approx(1.0));
        CHECK(r.theta == doctest::Approx(std::numbers::pi / 4));
        CHECK(r.phi == doctest::Approx(0.0));
    }
    SUBCASE("antisymmetric coherence") {
        const CondensateReading r = condensate_reading({n / 2, n / 2, {-n / 2, 0}}, n);
        CHECK(r.eta == doctest::Approx(1.0));
        CHECK(r.theta == doctest::Approx(std::numbers::pi / 4));
        CHECK(r.phi == doctest::Approx(std::numbers::pi));
    }
    SUBCASE("mode-2 dominant") {
        const CondensateReading r = condensate_reading({2.0, 8.0, {0, 0}}, n);
        CHECK(r.eta == doctest::Approx(0.8));
        CHECK(r.theta == doctest::Approx(std::numbers::pi / 2));
        CHECK(r.phi == 0.0);
    }
    SUBCASE("mode-1 dominant") {
        const CondensateReading r = condensate_reading({8.0, 2.0, {0, 0}}, n);
        CHECK(r.eta == doctest::Approx(0.8));
        CHECK(r.theta == doctest::Approx(0.0));
        CHECK(r.phi == 0.0);
    }
    SUBCASE("phase branch") {
        const CondensateReading r = condensate_reading({n / 2, n / 2, {0.0, 3.0}}, n);
        // c12 = <a1+ a2> = 3i; the eigenvector carries conj(c12)
        CHECK(r.phi == doctest::Approx(-std::numbers::pi / 2));
        CHECK(r.phi > -std::numbers::pi);
    }
    SUBCASE("eta never below one half") {
        std::mt19937 rng(8);
        for (int trial = 0; trial < 30; ++trial) {
            const SectorState s = random_sector_state(9, rng);
            const auto rho = density_matrix(s);
            CHECK(rho.n11 >= 0.0);
            CHECK(rho.n22 >= 0.0);
            CHECK(rho.trace() == doctest::Approx(9.0).epsilon(1e-8));
            CHECK(std::abs(rho.c12) <= 9.0 / 2 + 1.0);
            const CondensateReading r = condensate_reading(rho, 9.0);
            CHECK(r.eta >= 0.5 - 1e-12);
            CHECK(r.eta <= 1.0);
            CHECK(r.theta >= 0.0);
            CHECK(r.theta <= std::numbers::pi / 2 + 1e-12);
        }
    }
    SUBCASE("total must be positive") {
        CHECK_THROWS_AS(condensate_reading({1.0, 1.0, {0, 0}}, 0.0), std::invalid_argument);
    }
}

TEST_CASE("dicke states of the tunneling operator") {
    // For |S, Sx = N/2 - j>, the population of the symmetric mode (a1+a2)/sqrt(2)
    // is N - j; for j < N/2 that is also the largest eigenvalue of rho.
    for (int n : {4, 11, 20}) {
        const auto h = build_hamiltonian(SectorBasis(n), 0.0, 1.0);
        const auto es = tridiag_eigensystem(h.diag, h.offdiag);
        for (int j = 0; j <= n; ++j) {
            std::vector<Complex> amp(es.dim);
            for (int k = 0; k < es.dim; ++k) amp[k] = es.vec(j)[k];
            const SectorState s{SectorBasis(n), std::move(amp), 1.0};
            const auto ex = spin_expectations(s.basis, s.amplitudes);
            const double plus_mode_population = 0.5 * n + ex.sx;
            CHECK(plus_mode_population == doctest::Approx(n - j).epsilon(1e-9));
            if (j < (n + 1) / 2) {
                const auto rho = density_matrix(s);
                const CondensateReading r = condensate_reading(rho, n);
                CHECK(r.eta * n == doctest::Approx(n - j).epsilon(1e-9));
            }
        }
    }
}

TEST_CASE("tunneling-only evolution preserves rho eigenvalues") {
    std::mt19937 rng(42);
    const SectorState s = random_sector_state(12, rng);
    const auto rho0 = density_matrix(s);
    const CondensateReading r0 = condensate_reading(rho0, 12.0);
    EvolutionConfig cfg;
    cfg.sample_count = 9;
    cfg.steps_per_unit_time = 200000;  // integrator error well below the 1e-8 band
    const SectorEvolution ev = evolve_constant(s, 0.0, 0.5, 2.0, cfg);
    for (const auto& snap : ev.samples) {
        const SectorState cur{s.basis, snap, 1.0};
        const CondensateReading r = condensate_reading(density_matrix(cur), 12.0);
        CHECK(r.eta == doctest::Approx(r0.eta).epsilon(1e-8));
    }
}

TEST_CASE("interaction-only evolution preserves Fock fractions") {
    EvolutionConfig cfg;
    cfg.sample_count = 7;
    for (int k : {0, 3, 5, 10}) {
        const SectorState s = fock_basis_state(10 - k, k);
        const SectorEvolution ev = evolve_constant(s, 1.3, 0.0, 2.0, cfg);
        for (const auto& snap : ev.samples) {
            const SectorState cur{s.basis, snap, 1.0};
            const auto rho = density_matrix(cur);
            CHECK(rho.n11 == doctest::Approx(10.0 - k).epsilon(1e-10));
            CHECK(rho.n22 == doctest::Approx(1.0 * k).epsilon(1e-10));
            const CondensateReading r = condensate_reading(rho, 10.0);
            CHECK(r.eta == doctest::Approx(std::max(k, 10 - k) / 10.0).epsilon(1e-8));
        }
    }
}

TEST_CASE("level populations of eigenstates and Fock states") {
    SUBCASE("instantaneous ground state") {
        const auto h = build_hamiltonian(SectorBasis(16), 1.0, 2.0);
        const auto es = tridiag_lowest_eigenpairs(h.diag, h.offdiag, 1);
        std::vector<Complex> amp(es.dim);
        for (int k = 0; k < es.dim; ++k) amp[k] = es.vec(0)[k];
        const SectorState s{SectorBasis(16), std::move(amp), 1.0};
        const LevelPopulations lp = level_populations(s, 1.0, 2.0);
        CHECK(lp.populations[0] == doctest::Approx(1.0).epsilon(1e-10));
        CHECK(lp.spread90 == 0);
    }
    SUBCASE("degenerate Fock pair at zero coupling") {
        const SectorState s = fock_basis_state(11, 9);  // N=20, j=1 pair
        const LevelPopulations lp = level_populations(s, 1.0, 0.0);
        CHECK(lp.populations[1] + lp.populations[2] == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(lp.spread90 == 2);
    }
    SUBCASE("populations sum to one") {
        std::mt19937 rng(77);
        const SectorState s = random_sector_state(25, rng);
        const LevelPopulations lp = level_populations(s, 0.8, 1.1);
        double sum = 0.0;
        for (double p : lp.populations) sum += p;
        CHECK(sum == doctest::Approx(1.0).epsilon(1e-9));
    }
    SUBCASE("dense guard") {
        const SectorState s = fock_basis_state(2, 2);
        CHECK_THROWS_AS(level_populations(s, 1.0, 1.0, 4), std::invalid_argument);
    }
}

TEST_CASE("fast spread90 equals the dense route") {
    std::mt19937 rng(1234);
    for (int n : {6, 21, 40}) {
        for (double j : {0.0, 0.05, 1.0, 8.0}) {
            const SectorState s = random_sector_state(n, rng);
            const LevelPopulations lp = level_populations(s, 1.0, j);
            CHECK(spread90(s, 1.0, j) == lp.spread90);
        }
    }
    // basis states concentrated high in the spectrum
    const SectorState top = fock_basis_state(0, 30);
    CHECK(spread90(top, 1.0, 0.2) == level_populations(top, 1.0, 0.2).spread90);
}

TEST_CASE("mixture spread90 is the weighted cluster-end percentile") {
    // Two sectors whose populations are known in closed form.
    const SectorState a = fock_basis_state(5, 5);    // N=10, m=0: level 0 at j=0
    const SectorState b = fock_basis_state(12, 9);   // N=21, m=-3/2
    MixtureState mix;
    mix.sectors = {a, b};
    mix.sectors[0].weight = 0.85;
    mix.sectors[1].weight = 0.15;
    mix.n_mean = 0.85 * 10 + 0.15 * 21;
    // Odd-N spectrum at j=0: m^2 in {0.25, 2.25, ...}, all twofold; the
    // m=-3/2 state occupies the cluster at levels {2,3}, counted at index 3.
    // cumulative: level 0 -> 0.85 < 0.9; level 3 -> 1.0.
    CHECK(spread90(mix, 1.0, 0.0) == 3);
    mix.sectors[0].weight = 0.95;
    mix.sectors[1].weight = 0.05;
    CHECK(spread90(mix, 1.0, 0.0) == 0);
}

TEST_CASE("energy expectation") {
    SUBCASE("balanced Fock state has zero interaction energy") {
        CHECK(energy(fock_basis_state(7, 7), 2.5, 0.0) == doctest::Approx(0.0));
    }
    SUBCASE("ground state energy equals the lowest eigenvalue") {
        const auto h = build_hamiltonian(SectorBasis(14), 1.0, 0.6);
        const auto es = tridiag_lowest_eigenpairs(h.diag, h.offdiag, 1);
        std::vector<Complex> amp(es.dim);
        for (int k = 0; k < es.dim; ++k) amp[k] = es.vec(0)[k];
        const SectorState s{SectorBasis(14), std::move(amp), 1.0};
        CHECK(energy(s, 1.0, 0.6) == doctest::Approx(es.values[0]).epsilon(1e-12));
    }
    SUBCASE("N=2 closed form") {
        const auto h = build_hamiltonian(SectorBasis(2), 1.0, 1.0);
        const auto es = tridiag_lowest_eigenpairs(h.diag, h.offdiag, 1);
        std::vector<Complex> amp(es.dim);
        for (int k = 0; k < es.dim; ++k) amp[k] = es.vec(0)[k];
        const SectorState s{SectorBasis(2), std::move(amp), 1.0};
        CHECK(energy(s, 1.0, 1.0) ==
              doctest::Approx(0.5 * (1.0 - std::sqrt(5.0))).epsilon(1e-12));
    }
}

TEST_CASE("mixture density matrix is the weighted combination") {
    MixtureState mix;
    mix.sectors = {fock_basis_state(3, 1), fock_basis_state(2, 4)};
    mix.sectors[0].weight = 0.25;
    mix.sectors[1].weight = 0.75;
    mix.n_mean = 0.25 * 4 + 0.75 * 6;
    const auto rho = density_matrix(mix);
    CHECK(rho.n11 == doctest::Approx(0.25 * 3 + 0.75 * 2));
    CHECK(rho.n22 == doctest::Approx(0.25 * 1 + 0.75 * 4));
    CHECK(rho.trace() == doctest::Approx(mix.n_mean));
}
