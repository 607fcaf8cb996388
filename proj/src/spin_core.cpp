#include "becmerge/spin_core.hpp"

#include <cmath>
#include <stdexcept>

namespace becmerge {

namespace {

double norm_sq(std::span<const Complex> psi) {
    double s = 0.0;
    for (const Complex& a : psi) s += std::norm(a);
    return s;
}

}  // namespace

SectorBasis::SectorBasis(int n_total) : n_total_(n_total) {
    if (n_total < 0) {
        throw std::invalid_argument("SectorBasis: atom number must be nonnegative");
    }
}

double SectorBasis::ladder(int k) const {
    const double s = spin();
    const double mk = m(k);
    return std::sqrt(s * (s + 1.0) - mk * (mk + 1.0));
}

TridiagonalHamiltonian build_hamiltonian(const SectorBasis& basis, double u, double j) {
    if (!std::isfinite(u) || !std::isfinite(j)) {
        throw std::invalid_argument("build_hamiltonian: coefficients must be finite");
    }
    TridiagonalHamiltonian h;
    const int dim = basis.dim();
    h.diag.resize(dim);
    h.offdiag.resize(dim - 1);
    for (int k = 0; k < dim; ++k) {
        const double mk = basis.m(k);
        h.diag[k] = u * mk * mk;
    }
    for (int k = 0; k + 1 < dim; ++k) {
        h.offdiag[k] = -0.5 * j * basis.ladder(k);
    }
    return h;
}

std::vector<Complex> apply(const TridiagonalHamiltonian& h, std::span<const Complex> psi) {
    const int dim = h.dim();
    if (static_cast<int>(psi.size()) != dim) {
        throw std::invalid_argument("apply: dimension mismatch");
    }
    std::vector<Complex> out(dim);
    for (int k = 0; k < dim; ++k) {
        Complex v = h.diag[k] * psi[k];
        if (k > 0) v += h.offdiag[k - 1] * psi[k - 1];
        if (k + 1 < dim) v += h.offdiag[k] * psi[k + 1];
        out[k] = v;
    }
    return out;
}

SpinExpectations spin_expectations(const SectorBasis& basis, std::span<const Complex> psi) {
    if (static_cast<int>(psi.size()) != basis.dim()) {
        throw std::invalid_argument("spin_expectations: dimension mismatch");
    }
    const double norm = std::sqrt(norm_sq(psi));
    if (std::abs(norm - 1.0) > 1e-10) {
        throw std::invalid_argument("spin_expectations: state not normalized");
    }

    SpinExpectations ex;
    Complex splus{0.0, 0.0};  // <S+> with S+|k> = ladder(k)|k+1>
    for (int k = 0; k < basis.dim(); ++k) {
        ex.sz += basis.m(k) * std::norm(psi[k]);
        if (k + 1 < basis.dim()) {
            splus += basis.ladder(k) * std::conj(psi[k + 1]) * psi[k];
        }
    }
    ex.sx = splus.real();
    ex.sy = splus.imag();
    return ex;
}

}  // namespace becmerge
