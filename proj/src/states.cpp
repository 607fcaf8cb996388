#include "becmerge/states.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace becmerge {

namespace {

double log_poisson_weight(double lambda, int n) {
    return -lambda + n * std::log(lambda) - std::lgamma(n + 1.0);
}

}  // namespace

SectorState make_sector_state(SectorBasis basis, std::vector<Complex> amplitudes,
                              double weight) {
    if (static_cast<int>(amplitudes.size()) != basis.dim()) {
        throw std::invalid_argument("SectorState: amplitude length must be N+1");
    }
    if (!(weight > 0.0) || weight > 1.0) {
        throw std::invalid_argument("SectorState: weight must be in (0, 1]");
    }
    double norm_sq = 0.0;
    for (const Complex& a : amplitudes) norm_sq += std::norm(a);
    if (std::abs(std::sqrt(norm_sq) - 1.0) > 1e-10) {
        throw std::invalid_argument("SectorState: amplitudes not normalized");
    }
    return {std::move(basis), std::move(amplitudes), weight};
}

SectorState fock_basis_state(int n1, int n2) {
    if (n1 < 0 || n2 < 0) {
        throw std::invalid_argument("fock_basis_state: negative atom count");
    }
    SectorBasis basis(n1 + n2);
    std::vector<Complex> amp(basis.dim(), Complex{0.0, 0.0});
    amp[n2] = Complex{1.0, 0.0};
    return {basis, std::move(amp), 1.0};
}

MixtureState fock_fock(int n1, int n2) {
    if (n1 < 0 || n2 < 0) {
        throw std::invalid_argument("fock_fock: negative atom count");
    }
    if (n1 + n2 < 2) {
        throw std::invalid_argument("fock_fock: need at least two atoms");
    }
    MixtureState mix;
    mix.sectors.push_back(fock_basis_state(n1, n2));
    mix.n_mean = n1 + n2;
    return mix;
}

MixtureState fock_coherent(int n1, double alpha_sq, double tail_mass, int max_sectors) {
    if (n1 < 0) {
        throw std::invalid_argument("fock_coherent: negative atom count");
    }
    if (!(alpha_sq > 0.0)) {
        throw std::invalid_argument("fock_coherent: alpha_sq must be positive");
    }
    if (!(tail_mass > 0.0) || tail_mass > 1e-4) {
        throw std::invalid_argument("fock_coherent: tail_mass must be in (0, 1e-4]");
    }

    // Grow the window outward from the Poisson mode, always taking the
    // heavier frontier, until the captured mass reaches 1 - tail_mass.
    const int mode = static_cast<int>(alpha_sq);
    int lo = mode, hi = mode;
    double captured = std::exp(log_poisson_weight(alpha_sq, mode));
    double w_lo = captured, w_hi = captured;
    while (captured < 1.0 - tail_mass) {
        const double next_lo = lo > 0 ? w_lo * lo / alpha_sq : 0.0;
        const double next_hi = w_hi * alpha_sq / (hi + 1.0);
        if (next_lo >= next_hi && lo > 0) {
            --lo;
            w_lo = next_lo;
            captured += next_lo;
        } else {
            ++hi;
            w_hi = next_hi;
            captured += next_hi;
        }
        if (hi - lo + 1 > max_sectors) {
            throw std::invalid_argument("fock_coherent: sector window exceeds cap");
        }
    }

    MixtureState mix;
    mix.n_mean = n1 + alpha_sq;
    mix.sectors.reserve(hi - lo + 1);
    for (int n = lo; n <= hi; ++n) {
        SectorState s = fock_basis_state(n1, n);
        s.weight = std::exp(log_poisson_weight(alpha_sq, n)) / captured;
        mix.sectors.push_back(std::move(s));
    }
    return mix;
}

}  // namespace becmerge
