#pragma once

#include <complex>
#include <span>
#include <vector>

namespace becmerge {

using Complex = std::complex<double>;

/// Fixed-N two-mode Fock basis, |n1 = N-k, n2 = k> for k = 0..N.
/// Index k maps to the collective-spin projection m = k - N/2 with S = N/2,
/// so m runs over half-integers when N is odd.
class SectorBasis {
  public:
    SectorBasis() = default;
    explicit SectorBasis(int n_total);

    int n_total() const { return n_total_; }
    int dim() const { return n_total_ + 1; }
    double spin() const { return 0.5 * n_total_; }
    double m(int k) const { return k - 0.5 * n_total_; }

    /// sqrt(S(S+1) - m_k(m_k+1)): matrix element of S+ between k and k+1.
    double ladder(int k) const;

  private:
    int n_total_ = 0;
};

/// H = U*Sz^2 - J*Sx in a fixed-N sector: real symmetric tridiagonal.
struct TridiagonalHamiltonian {
    std::vector<double> diag;     // length N+1, U*m_k^2
    std::vector<double> offdiag;  // length N, -(J/2)*ladder(k)

    int dim() const { return static_cast<int>(diag.size()); }
};

TridiagonalHamiltonian build_hamiltonian(const SectorBasis& basis, double u, double j);

/// Exact tridiagonal product H*psi.
std::vector<Complex> apply(const TridiagonalHamiltonian& h, std::span<const Complex> psi);

struct SpinExpectations {
    double sx = 0.0;
    double sy = 0.0;
    double sz = 0.0;
};

/// <Sx>, <Sy>, <Sz> of a normalized state (norm checked to 1e-10).
SpinExpectations spin_expectations(const SectorBasis& basis, std::span<const Complex> psi);

}  // namespace becmerge
