#include "becmerge/tridiag.hpp"

#include <lapacke.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace becmerge {

namespace {

// Implicit-shift QL on (d, e) in place, eigenvalues only. Classic EISPACK
// tql1 recurrence; Real is long double so the backward error stays ~1e-17
// of the spectral norm, two orders below the tightest gap tolerances used
// by callers.
template <typename Real>
void ql_implicit_shift(std::vector<Real>& d, std::vector<Real>& e) {
    const int n = static_cast<int>(d.size());
    if (n <= 1) return;
    e.push_back(Real(0));  // sentinel

    const Real eps = std::numeric_limits<Real>::epsilon();
    for (int l = 0; l < n; ++l) {
        int iter = 0;
        int m;
        do {
            for (m = l; m < n - 1; ++m) {
                const Real scale = std::abs(d[m]) + std::abs(d[m + 1]);
                if (std::abs(e[m]) <= eps * scale) break;
            }
            if (m != l) {
                if (++iter > 64) {
                    throw std::runtime_error("tridiag_eigenvalues: QL did not converge");
                }
                Real g = (d[l + 1] - d[l]) / (Real(2) * e[l]);
                Real r = std::hypot(g, Real(1));
                g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
                Real s = 1, c = 1, p = 0;
                for (int i = m - 1; i >= l; --i) {
                    Real f = s * e[i];
                    const Real b = c * e[i];
                    r = std::hypot(f, g);
                    e[i + 1] = r;
                    if (r == Real(0)) {
                        d[i + 1] -= p;
                        e[m] = 0;
                        break;
                    }
                    s = f / r;
                    c = g / r;
                    g = d[i + 1] - p;
                    r = (d[i] - g) * s + Real(2) * c * b;
                    p = s * r;
                    d[i + 1] = g + p;
                    g = c * r - b;
                    if (i == l) {
                        d[l] -= p;
                        e[l] = g;
                        e[m] = 0;
                    }
                }
            }
        } while (m != l);
    }
    e.pop_back();
    std::sort(d.begin(), d.end());
}

void check_sizes(std::span<const double> diag, std::span<const double> offdiag) {
    if (diag.empty()) {
        throw std::invalid_argument("tridiag: empty diagonal");
    }
    if (offdiag.size() + 1 != diag.size()) {
        throw std::invalid_argument("tridiag: offdiag length must be dim-1");
    }
}

// Deterministic gauge: largest-magnitude component of each column positive.
void fix_column_signs(TridiagEigensystem& es) {
    const int n = es.dim;
    for (int i = 0; i < n; ++i) {
        double* col = es.vectors.data() + static_cast<std::size_t>(i) * n;
        int arg = 0;
        double best = 0.0;
        for (int k = 0; k < n; ++k) {
            if (std::abs(col[k]) > best) {
                best = std::abs(col[k]);
                arg = k;
            }
        }
        if (col[arg] < 0.0) {
            for (int k = 0; k < n; ++k) col[k] = -col[k];
        }
    }
}

}  // namespace

std::vector<double> tridiag_eigenvalues(std::span<const double> diag,
                                        std::span<const double> offdiag) {
    check_sizes(diag, offdiag);
    std::vector<long double> d(diag.begin(), diag.end());
    std::vector<long double> e(offdiag.begin(), offdiag.end());
    ql_implicit_shift(d, e);
    return {d.begin(), d.end()};
}

TridiagEigensystem tridiag_eigensystem(std::span<const double> diag,
                                       std::span<const double> offdiag) {
    check_sizes(diag, offdiag);
    const int n = static_cast<int>(diag.size());
    TridiagEigensystem es;
    es.dim = n;
    es.values.assign(diag.begin(), diag.end());
    std::vector<double> e(offdiag.begin(), offdiag.end());
    e.resize(n, 0.0);
    es.vectors.assign(static_cast<std::size_t>(n) * n, 0.0);
    const lapack_int info = LAPACKE_dstevd(LAPACK_COL_MAJOR, 'V', n, es.values.data(),
                                           e.data(), es.vectors.data(), n);
    if (info != 0) {
        throw std::runtime_error("dstevd failed, info=" + std::to_string(info));
    }
    fix_column_signs(es);
    return es;
}

TridiagEigensystem tridiag_lowest_eigenpairs(std::span<const double> diag,
                                             std::span<const double> offdiag,
                                             int count) {
    check_sizes(diag, offdiag);
    const int n = static_cast<int>(diag.size());
    count = std::clamp(count, 1, n);

    std::vector<double> d(diag.begin(), diag.end());
    std::vector<double> e(offdiag.begin(), offdiag.end());
    e.resize(n, 0.0);

    TridiagEigensystem es;
    es.dim = n;
    es.values.assign(n, 0.0);
    es.vectors.assign(static_cast<std::size_t>(n) * count, 0.0);
    std::vector<lapack_int> isuppz(2 * static_cast<std::size_t>(count));
    lapack_int found = 0;
    const lapack_int info = LAPACKE_dstevr(LAPACK_COL_MAJOR, 'V', 'I', n, d.data(), e.data(),
                                           0.0, 0.0, 1, count, 0.0, &found, es.values.data(),
                                           es.vectors.data(), n, isuppz.data());
    if (info != 0 || found != count) {
        throw std::runtime_error("dstevr failed, info=" + std::to_string(info));
    }
    es.values.resize(count);
    // Same gauge as the full decomposition.
    for (int i = 0; i < count; ++i) {
        double* col = es.vectors.data() + static_cast<std::size_t>(i) * n;
        int arg = 0;
        double best = 0.0;
        for (int k = 0; k < n; ++k) {
            if (std::abs(col[k]) > best) {
                best = std::abs(col[k]);
                arg = k;
            }
        }
        if (col[arg] < 0.0) {
            for (int k = 0; k < n; ++k) col[k] = -col[k];
        }
    }
    return es;
}

}  // namespace becmerge
