#ifndef BNCHECK_SYMMETRIC_EIGEN_HPP
#define BNCHECK_SYMMETRIC_EIGEN_HPP

/*
 * Dense real symmetric eigensolver: Householder reduction to tridiagonal form
 * with the orthogonal transform accumulated, then the implicitly shifted QL
 * iteration on the tridiagonal matrix. Eigenvalues are returned in descending
 * order; eigenvector k is row k of `vectors` (row-major, n x n).
 *
 * Also used on the small projected matrices produced by the Lanczos solver.
 */

#include "errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>
#include <span>
#include <vector>

namespace bncheck {

struct SymmetricEigen {
    std::size_t n = 0;
    std::vector<double> values;  // descending
    std::vector<double> vectors; // row k = eigenvector of values[k]

    std::span<const double> vector(std::size_t k) const { return {vectors.data() + k * n, n}; }
};

namespace detail {

// Householder tridiagonalization of the row-major symmetric matrix `v`
// (overwritten by the accumulated transform Q, columns = basis). On return
// d holds the diagonal and e[1..n-1] the subdiagonal, e[0] = 0.
inline void householder_tridiagonalize(std::size_t n, std::vector<double>& v, std::vector<double>& d,
                                       std::vector<double>& e) {
    auto V = [&](std::size_t i, std::size_t j) -> double& { return v[i * n + j]; };
    d.assign(n, 0.0);
    e.assign(n, 0.0);
    for (std::size_t j = 0; j < n; ++j) d[j] = V(n - 1, j);

    for (std::size_t i = n - 1; i > 0; --i) {
        double scale = 0.0;
        double h = 0.0;
        for (std::size_t k = 0; k < i; ++k) scale += std::abs(d[k]);
        if (scale == 0.0) {
            e[i] = d[i - 1];
            for (std::size_t j = 0; j < i; ++j) {
                d[j] = V(i - 1, j);
                V(i, j) = 0.0;
                V(j, i) = 0.0;
            }
        } else {
            for (std::size_t k = 0; k < i; ++k) {
                d[k] /= scale;
                h += d[k] * d[k];
            }
            double f = d[i - 1];
            double g = std::sqrt(h);
            if (f > 0) g = -g;
            e[i] = scale * g;
            h -= f * g;
            d[i - 1] = f - g;
            for (std::size_t j = 0; j < i; ++j) e[j] = 0.0;

            for (std::size_t j = 0; j < i; ++j) {
                f = d[j];
                V(j, i) = f;
                g = e[j] + V(j, j) * f;
                for (std::size_t k = j + 1; k < i; ++k) {
                    g += V(k, j) * d[k];
                    e[k] += V(k, j) * f;
                }
                e[j] = g;
            }
            f = 0.0;
            for (std::size_t j = 0; j < i; ++j) {
                e[j] /= h;
                f += e[j] * d[j];
            }
            const double hh = f / (h + h);
            for (std::size_t j = 0; j < i; ++j) e[j] -= hh * d[j];
            for (std::size_t j = 0; j < i; ++j) {
                f = d[j];
                g = e[j];
                for (std::size_t k = j; k < i; ++k) V(k, j) -= (f * e[k] + g * d[k]);
                d[j] = V(i - 1, j);
                V(i, j) = 0.0;
            }
        }
        d[i] = h;
    }

    // Accumulate the transformations.
    for (std::size_t i = 0; i + 1 < n; ++i) {
        V(n - 1, i) = V(i, i);
        V(i, i) = 1.0;
        const double h = d[i + 1];
        if (h != 0.0) {
            for (std::size_t k = 0; k <= i; ++k) d[k] = V(k, i + 1) / h;
            for (std::size_t j = 0; j <= i; ++j) {
                double g = 0.0;
                for (std::size_t k = 0; k <= i; ++k) g += V(k, i + 1) * V(k, j);
                for (std::size_t k = 0; k <= i; ++k) V(k, j) -= g * d[k];
            }
        }
        for (std::size_t k = 0; k <= i; ++k) V(k, i + 1) = 0.0;
    }
    for (std::size_t j = 0; j < n; ++j) {
        d[j] = V(n - 1, j);
        V(n - 1, j) = 0.0;
    }
    V(n - 1, n - 1) = 1.0;
    e[0] = 0.0;
}

// Implicit QL on the tridiagonal (d, e). `z` holds the basis as rows
// (z[k*n + i] = component i of basis vector k) and receives the rotations;
// pass an empty z to compute eigenvalues only.
inline void tridiagonal_ql(std::size_t n, std::vector<double>& d, std::vector<double>& e, std::vector<double>& z) {
    const bool want_vectors = !z.empty();
    for (std::size_t i = 1; i < n; ++i) e[i - 1] = e[i];
    e[n - 1] = 0.0;

    constexpr double eps = std::numeric_limits<double>::epsilon();
    constexpr int max_sweeps = 60;
    double f = 0.0;
    double tst1 = 0.0;
    for (std::size_t l = 0; l < n; ++l) {
        tst1 = std::max(tst1, std::abs(d[l]) + std::abs(e[l]));
        std::size_t m = l;
        while (m < n && std::abs(e[m]) > eps * tst1) ++m;
        if (m == n) m = n - 1;

        if (m > l) {
            int sweeps = 0;
            do {
                if (++sweeps > max_sweeps)
                    throw ConvergenceError("tridiagonal QL did not converge", std::abs(e[l]));
                double g = d[l];
                double p = (d[l + 1] - g) / (2.0 * e[l]);
                double r = std::hypot(p, 1.0);
                if (p < 0) r = -r;
                d[l] = e[l] / (p + r);
                d[l + 1] = e[l] * (p + r);
                const double dl1 = d[l + 1];
                double h = g - d[l];
                for (std::size_t i = l + 2; i < n; ++i) d[i] -= h;
                f += h;

                p = d[m];
                double c = 1.0, c2 = 1.0, c3 = 1.0;
                const double el1 = e[l + 1];
                double s = 0.0, s2 = 0.0;
                for (std::size_t i = m; i-- > l;) {
                    c3 = c2;
                    c2 = c;
                    s2 = s;
                    g = c * e[i];
                    h = c * p;
                    r = std::hypot(p, e[i]);
                    e[i + 1] = s * r;
                    s = e[i] / r;
                    c = p / r;
                    p = c * d[i] - s * g;
                    d[i + 1] = h + s * (c * g + s * d[i]);
                    if (want_vectors) {
                        double* zi = z.data() + i * n;
                        double* zi1 = z.data() + (i + 1) * n;
                        for (std::size_t k = 0; k < n; ++k) {
                            const double t = zi1[k];
                            zi1[k] = s * zi[k] + c * t;
                            zi[k] = c * zi[k] - s * t;
                        }
                    }
                }
                p = -s * s2 * c3 * el1 * e[l] / dl1;
                e[l] = s * p;
                d[l] = c * p;
            } while (std::abs(e[l]) > eps * tst1);
        }
        d[l] += f;
        e[l] = 0.0;
    }
}

inline SymmetricEigen sort_descending(std::size_t n, std::vector<double>& d, std::vector<double>& z) {
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return d[a] > d[b]; });
    SymmetricEigen out;
    out.n = n;
    out.values.resize(n);
    if (!z.empty()) out.vectors.resize(n * n);
    for (std::size_t k = 0; k < n; ++k) {
        out.values[k] = d[idx[k]];
        if (!z.empty())
            std::copy_n(z.begin() + static_cast<std::ptrdiff_t>(idx[k] * n), n,
                        out.vectors.begin() + static_cast<std::ptrdiff_t>(k * n));
    }
    return out;
}

} // namespace detail

/// Eigen-decomposition of a dense symmetric n x n row-major matrix.
inline SymmetricEigen symmetric_eigen(std::size_t n, std::vector<double> matrix, bool want_vectors = true) {
    if (n == 0) return {};
    if (matrix.size() != n * n) throw InvalidParameter("matrix size mismatch");
    std::vector<double> d, e;
    detail::householder_tridiagonalize(n, matrix, d, e);
    std::vector<double> z;
    if (want_vectors) {
        // rows of z = columns of the accumulated transform
        z.resize(n * n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t k = 0; k < n; ++k) z[k * n + i] = matrix[i * n + k];
    }
    detail::tridiagonal_ql(n, d, e, z);
    return detail::sort_descending(n, d, z);
}

/// Eigen-decomposition of the symmetric tridiagonal matrix with diagonal
/// `diag` and off-diagonal `offdiag` (offdiag[i] couples i and i+1).
inline SymmetricEigen tridiagonal_eigen(std::span<const double> diag, std::span<const double> offdiag) {
    const std::size_t n = diag.size();
    if (n == 0) return {};
    if (offdiag.size() + 1 < n) throw InvalidParameter("off-diagonal too short");
    std::vector<double> d(diag.begin(), diag.end());
    std::vector<double> e(n, 0.0);
    for (std::size_t i = 1; i < n; ++i) e[i] = offdiag[i - 1];
    std::vector<double> z(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) z[i * n + i] = 1.0;
    detail::tridiagonal_ql(n, d, e, z);
    return detail::sort_descending(n, d, z);
}

} // namespace bncheck

#endif
