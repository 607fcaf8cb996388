#pragma once

#include <vector>

#include "becmerge/spin_core.hpp"
#include "becmerge/states.hpp"

namespace becmerge {

/// One-body density matrix [[<a1+ a1>, <a1+ a2>], [<a2+ a1>, <a2+ a2>]].
struct OneBodyDensityMatrix {
    double n11 = 0.0;
    double n22 = 0.0;
    Complex c12{0.0, 0.0};

    double trace() const { return n11 + n22; }
};

OneBodyDensityMatrix density_matrix(const SectorState& state);
OneBodyDensityMatrix density_matrix(const MixtureState& mixture);

/// Largest condensate fraction eta and the dominant-mode parameters of
/// a_c = cos(theta) a1 + sin(theta) e^{i phi} a2.
/// Conventions: degenerate rho reports theta = phi = 0; a vanishing first
/// eigenvector component reports theta = pi/2, phi = 0; phi in (-pi, pi].
struct CondensateReading {
    double eta = 0.0;    // in [0, 1], >= 1/2 up to mixture-normalization rounding
    double theta = 0.0;  // in [0, pi/2]
    double phi = 0.0;    // in (-pi, pi]
};

CondensateReading condensate_reading(const OneBodyDensityMatrix& rho, double total);

/// Populations over the instantaneous eigenlevels of H(u, j), ascending in
/// energy, and the smallest level index holding 90% cumulative population.
/// Levels closer than 1e-8 of the spectral width count as one degenerate
/// cluster whose mass is attributed to the cluster's last index.
struct LevelPopulations {
    std::vector<double> populations;
    int spread90 = 0;
};

LevelPopulations level_populations(const SectorState& state, double u, double j,
                                   int max_dim = 2001);

/// spread90 alone, cheaper: only the populated low-lying eigenvectors are
/// computed. For a single sector this matches level_populations().spread90.
int spread90(const SectorState& state, double u, double j);
int spread90(const MixtureState& mixture, double u, double j);

/// <psi|H(u,j)|psi>.
double energy(const SectorState& state, double u, double j);
double energy(const MixtureState& mixture, double u, double j);

}  // namespace becmerge
