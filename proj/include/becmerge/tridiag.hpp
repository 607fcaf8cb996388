#pragma once

#include <span>
#include <vector>

namespace becmerge {

/// All eigenvalues of a real symmetric tridiagonal matrix, ascending.
/// Implicit-shift QL carried out in extended precision, so adjacent-gap
/// structure (exact degeneracies at zero coupling, uniform Rabi spacing)
/// survives rounding well below 1e-12 for the matrix scales used here.
std::vector<double> tridiag_eigenvalues(std::span<const double> diag,
                                        std::span<const double> offdiag);

struct TridiagEigensystem {
    std::vector<double> values;   // ascending
    std::vector<double> vectors;  // column-major; vectors[i*n + k] = <k|v_i>
    int dim = 0;

    std::span<const double> vec(int i) const {
        return {vectors.data() + static_cast<std::size_t>(i) * dim,
                static_cast<std::size_t>(dim)};
    }
};

/// Full orthonormal eigensystem (LAPACK dstevd).
TridiagEigensystem tridiag_eigensystem(std::span<const double> diag,
                                       std::span<const double> offdiag);

/// The `count` lowest eigenpairs (LAPACK dstevr, index range). Orthonormal
/// also inside tight clusters.
TridiagEigensystem tridiag_lowest_eigenpairs(std::span<const double> diag,
                                             std::span<const double> offdiag,
                                             int count);

}  // namespace becmerge
