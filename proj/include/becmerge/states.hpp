#pragma once

#include <vector>

#include "becmerge/spin_core.hpp"

namespace becmerge {

/// Normalized amplitude vector in one fixed-N sector, with the weight it
/// carries inside a mixture (1 for pure single-sector states).
struct SectorState {
    SectorBasis basis;
    std::vector<Complex> amplitudes;
    double weight = 1.0;
};

SectorState make_sector_state(SectorBasis basis, std::vector<Complex> amplitudes,
                              double weight = 1.0);

/// Basis state |n1, n2> as a single-sector state.
SectorState fock_basis_state(int n1, int n2);

/// Weighted ensemble of fixed-N sectors. Number-conserving observables see
/// no inter-sector coherence, so evolving sectors independently is exact.
struct MixtureState {
    std::vector<SectorState> sectors;
    double n_mean = 0.0;
};

/// Product of two Fock states: one sector, N = n1+n2, amplitude 1 at k = n2.
MixtureState fock_fock(int n1, int n2);

/// Fock(n1) x coherent(|alpha|^2 = alpha_sq), decomposed into number sectors.
/// Sector N = n1 + n carries the Poisson(alpha_sq) weight of n, truncated to
/// a window dropping at most tail_mass and renormalized; n_mean = n1 + alpha_sq.
MixtureState fock_coherent(int n1, double alpha_sq, double tail_mass = 1e-8,
                           int max_sectors = 4096);

}  // namespace becmerge
