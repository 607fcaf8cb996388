#pragma once

#include <span>
#include <string_view>
#include <vector>

namespace becmerge {

/// Ground-shifted eigenvalues across a J/U grid at fixed U = 1.
struct SpectrumTable {
    int n_total = 0;
    std::vector<double> ratios;
    std::vector<std::vector<double>> levels;  // levels[g][i], ascending, levels[g][0] == 0
};

/// All N+1 eigenvalues of H(u, j), ascending (N <= 5000).
std::vector<double> eigenvalues(int n, double u, double j);

SpectrumTable spectrum_sweep(int n, std::span<const double> ratio_grid);

/// 200 log-spaced ratios from 1e-2 to 1e2 * n, spanning all three regions.
std::vector<double> default_ratio_grid(int n);

enum class Regime { Fock, Josephson, Rabi };

std::string_view to_string(Regime r);

/// Fock for J < fock_boundary*U, Rabi for J > rabi_boundary*N^2*U, Josephson
/// between. Boundary constants follow the usual Josephson-physics convention
/// and are adjustable.
Regime regime_classify(int n, double u, double j, double fock_boundary = 1.0,
                       double rabi_boundary = 1.0);

}  // namespace becmerge
