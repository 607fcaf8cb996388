#include "becmerge/spectrum.hpp"

#include <cmath>
#include <stdexcept>
#include <string_view>

#include "becmerge/spin_core.hpp"
#include "becmerge/tridiag.hpp"

namespace becmerge {

std::vector<double> eigenvalues(int n, double u, double j) {
    if (n < 2) {
        throw std::invalid_argument("eigenvalues: need at least two atoms");
    }
    if (n > 5000) {
        throw std::invalid_argument("eigenvalues: N exceeds size guard (5000)");
    }
    if (u == 0.0 && j == 0.0) {
        throw std::invalid_argument("eigenvalues: u and j cannot both vanish");
    }
    const TridiagonalHamiltonian h = build_hamiltonian(SectorBasis(n), u, j);
    return tridiag_eigenvalues(h.diag, h.offdiag);
}

SpectrumTable spectrum_sweep(int n, std::span<const double> ratio_grid) {
    if (ratio_grid.empty()) {
        throw std::invalid_argument("spectrum_sweep: empty ratio grid");
    }
    for (double r : ratio_grid) {
        if (!(r >= 0.0)) {
            throw std::invalid_argument("spectrum_sweep: ratios must be nonnegative");
        }
    }
    SpectrumTable table;
    table.n_total = n;
    table.ratios.assign(ratio_grid.begin(), ratio_grid.end());
    table.levels.reserve(ratio_grid.size());
    for (double r : ratio_grid) {
        std::vector<double> vals = eigenvalues(n, 1.0, r);
        const double ground = vals.front();
        for (double& v : vals) v -= ground;
        table.levels.push_back(std::move(vals));
    }
    return table;
}

std::vector<double> default_ratio_grid(int n) {
    constexpr int kPoints = 200;
    const double lo = std::log10(1e-2);
    const double hi = std::log10(1e2 * n);
    std::vector<double> grid(kPoints);
    for (int i = 0; i < kPoints; ++i) {
        grid[i] = std::pow(10.0, lo + (hi - lo) * i / (kPoints - 1));
    }
    return grid;
}

std::string_view to_string(Regime r) {
    switch (r) {
        case Regime::Fock: return "fock";
        case Regime::Josephson: return "josephson";
        case Regime::Rabi: return "rabi";
    }
    return "unknown";
}

Regime regime_classify(int n, double u, double j, double fock_boundary,
                       double rabi_boundary) {
    if (n < 2) {
        throw std::invalid_argument("regime_classify: need at least two atoms");
    }
    if (!(u > 0.0) && !(j > 0.0)) {
        throw std::invalid_argument("regime_classify: u or j must be positive");
    }
    if (u < 0.0 || j < 0.0) {
        throw std::invalid_argument("regime_classify: negative coefficients");
    }
    if (j < fock_boundary * u) return Regime::Fock;
    if (j > rabi_boundary * static_cast<double>(n) * n * u) return Regime::Rabi;
    return Regime::Josephson;
}

}  // namespace becmerge
