#ifndef BNCHECK_SPECTRAL_HPP
#define BNCHECK_SPECTRAL_HPP

#include "errors.hpp"
#include "graph.hpp"
#include "rng.hpp"
#include "symmetric_eigen.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace bncheck {

enum class SpectralMethod { dense, iterative };

inline const char* to_string(SpectralMethod m) noexcept {
    return m == SpectralMethod::dense ? "dense" : "iterative";
}

struct SpectralOptions {
    /// Largest order handled by the dense solver; top_two switches to Lanczos above it.
    std::size_t dense_limit = 2048;
    /// Relative residual target: ||Av - lv|| <= tol * max(1, lambda1).
    double tol = 1e-9;
    /// Matrix-vector product cap for the iterative path, as a multiple of n.
    std::size_t matvec_factor = 50;
    /// Seed of the Lanczos start vectors.
    std::uint64_t start_seed = 0x5eed;
};

struct SpectralSummary {
    double lambda1 = 0.0;
    double lambda2 = 0.0;
    double residual1 = 0.0;
    double residual2 = 0.0;
    SpectralMethod method = SpectralMethod::dense;
};

/// y = A x for the adjacency matrix of g.
inline void adjacency_multiply(const Graph& g, std::span<const double> x, std::span<double> y) {
    const std::size_t n = g.order();
    for (std::size_t i = 0; i < n; ++i) {
        double acc = 0.0;
        const auto row = g.row(i);
        for (std::size_t w = 0; w < row.size(); ++w) {
            Word bits = row[w];
            while (bits) {
                const auto b = static_cast<std::size_t>(std::countr_zero(bits));
                acc += x[w * kWordBits + b];
                bits &= bits - 1;
            }
        }
        y[i] = acc;
    }
}

/// ||A v - lambda v||_2.
inline double eigen_residual(const Graph& g, std::span<const double> v, double lambda) {
    std::vector<double> av(g.order());
    adjacency_multiply(g, v, av);
    double s = 0.0;
    for (std::size_t i = 0; i < av.size(); ++i) {
        const double r = av[i] - lambda * v[i];
        s += r * r;
    }
    return std::sqrt(s);
}

/// v'Av / v'v accumulated in extended precision; the residual-minimising
/// eigenvalue estimate for v.
inline double rayleigh_quotient(const Graph& g, std::span<const double> v) {
    long double num = 0.0L, den = 0.0L;
    for (std::size_t i = 0; i < g.order(); ++i) {
        long double acc = 0.0L;
        const auto row = g.row(i);
        for (std::size_t w = 0; w < row.size(); ++w) {
            Word bits = row[w];
            while (bits) {
                acc += v[w * kWordBits + static_cast<std::size_t>(std::countr_zero(bits))];
                bits &= bits - 1;
            }
        }
        num += static_cast<long double>(v[i]) * acc;
        den += static_cast<long double>(v[i]) * v[i];
    }
    return den > 0.0L ? static_cast<double>(num / den) : 0.0;
}

inline std::vector<double> dense_adjacency(const Graph& g) {
    const std::size_t n = g.order();
    std::vector<double> a(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (g.adjacent(i, j)) a[i * n + j] = 1.0;
    return a;
}

namespace detail {

inline double residual_bound(const SpectralOptions& opts, double lambda1) {
    return opts.tol * std::max(1.0, lambda1);
}

inline SymmetricEigen dense_decomposition(const Graph& g, const SpectralOptions& opts) {
    if (g.order() > opts.dense_limit)
        throw CapacityError("order " + std::to_string(g.order()) + " exceeds dense limit " +
                            std::to_string(opts.dense_limit));
    return symmetric_eigen(g.order(), dense_adjacency(g));
}

inline double dot(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline void axpy(double alpha, std::span<const double> x, std::span<double> y) {
    for (std::size_t i = 0; i < x.size(); ++i) y[i] += alpha * x[i];
}

// Two passes of classical Gram-Schmidt against every vector in `basis`.
inline void orthogonalize(std::span<double> w, const std::vector<std::vector<double>>& basis) {
    for (int pass = 0; pass < 2; ++pass)
        for (const auto& q : basis) axpy(-dot(q, w), q, w);
}

struct RitzPair {
    double value = 0.0;
    std::vector<double> vector;
    double residual = 0.0;
};

/*
 * Largest eigenpair of A restricted to the orthogonal complement of `locked`,
 * by Lanczos with full reorthogonalization (against the Krylov basis and the
 * locked vectors). The projected tridiagonal matrix is diagonalized at
 * geometrically spaced steps; a Ritz pair is accepted once its true residual
 * ||A y - theta y|| is within `target`. `matvecs` is a shared budget.
 */
inline RitzPair lanczos_largest(const Graph& g, const std::vector<std::vector<double>>& locked, double target_rel,
                                double tol_floor_scale, std::uint64_t seed, std::size_t& matvecs,
                                std::size_t max_matvecs) {
    const std::size_t n = g.order();
    const std::size_t dim = n - locked.size();

    std::vector<double> q(n);
    Xoshiro256StarStar rng(seed);
    for (auto& x : q) x = rng.uniform01() - 0.5;
    orthogonalize(q, locked);
    double qn = std::sqrt(dot(q, q));
    if (qn == 0.0) throw ConvergenceError("degenerate Lanczos start vector", 0.0);
    for (auto& x : q) x /= qn;

    std::vector<std::vector<double>> basis;
    std::vector<double> alpha, beta;
    std::vector<double> w(n);
    double best = std::numeric_limits<double>::infinity();
    std::size_t next_check = std::min<std::size_t>(8, dim);

    basis.push_back(q);
    while (true) {
        if (matvecs >= max_matvecs)
            throw ConvergenceError("Lanczos iteration cap reached", best);
        const std::size_t j = basis.size() - 1;
        adjacency_multiply(g, basis[j], w);
        ++matvecs;
        const double a = dot(basis[j], w);
        alpha.push_back(a);
        axpy(-a, basis[j], w);
        if (j > 0) axpy(-beta[j - 1], basis[j - 1], w);
        orthogonalize(w, locked);
        orthogonalize(w, basis);
        const double b = std::sqrt(dot(w, w));
        const std::size_t m = basis.size();

        const double scale = std::max(1.0, tol_floor_scale);
        const bool exhausted = m >= dim || b <= 1e-12 * std::max(scale, std::abs(a));
        if (exhausted || m >= next_check) {
            const auto t = tridiagonal_eigen(alpha, beta);
            const double theta = t.values[0];
            const auto s = t.vector(0);
            const double target = target_rel * std::max({1.0, theta, tol_floor_scale});
            const double estimate = std::abs(b * s[m - 1]);
            if (exhausted || estimate <= 0.1 * target) {
                RitzPair out;
                out.value = theta;
                out.vector.assign(n, 0.0);
                for (std::size_t k = 0; k < m; ++k) axpy(s[k], basis[k], out.vector);
                const double norm = std::sqrt(dot(out.vector, out.vector));
                for (auto& x : out.vector) x /= norm;
                out.residual = eigen_residual(g, out.vector, theta);
                ++matvecs;
                best = std::min(best, out.residual);
                if (out.residual <= target) return out;
                if (exhausted)
                    throw ConvergenceError("Lanczos exhausted the Krylov space above tolerance", best);
            }
            next_check = std::min(dim, m + std::max<std::size_t>(4, m / 8));
        }
        for (auto& x : w) x /= b;
        basis.push_back(w);
        beta.push_back(b);
    }
}

} // namespace detail

/**
 * All n eigenvalues of A(G), descending. Every eigenpair is checked against
 * the residual bound tol * max(1, lambda1); a failure raises ConvergenceError.
 */
inline std::vector<double> full_spectrum(const Graph& g, const SpectralOptions& opts = {}) {
    const auto eig = detail::dense_decomposition(g, opts);
    const double bound = detail::residual_bound(opts, eig.values.front());
    for (std::size_t k = 0; k < eig.n; ++k) {
        const double r = eigen_residual(g, eig.vector(k), eig.values[k]);
        if (!(r <= bound)) throw ConvergenceError("dense eigenpair failed residual check", r);
    }
    return eig.values;
}

inline SpectralSummary top_two_dense(const Graph& g, const SpectralOptions& opts = {}) {
    if (g.order() < 2) throw InvalidParameter("top_two needs at least two vertices");
    const auto eig = detail::dense_decomposition(g, opts);
    SpectralSummary out;
    out.method = SpectralMethod::dense;
    out.lambda1 = rayleigh_quotient(g, eig.vector(0));
    out.lambda2 = std::min(out.lambda1, rayleigh_quotient(g, eig.vector(1)));
    out.residual1 = eigen_residual(g, eig.vector(0), out.lambda1);
    out.residual2 = eigen_residual(g, eig.vector(1), out.lambda2);
    const double bound = detail::residual_bound(opts, out.lambda1);
    const double worst = std::max(out.residual1, out.residual2);
    if (!(worst <= bound)) throw ConvergenceError("dense eigenpair failed residual check", worst);
    return out;
}

/// Lanczos for lambda1, then a second Lanczos run deflated against the first
/// Ritz vector for lambda2 (so repeated top eigenvalues are both found).
inline SpectralSummary top_two_iterative(const Graph& g, const SpectralOptions& opts = {}) {
    const std::size_t n = g.order();
    if (n < 2) throw InvalidParameter("top_two needs at least two vertices");
    const std::size_t cap = opts.matvec_factor * n;
    std::size_t matvecs = 0;
    auto first = detail::lanczos_largest(g, {}, opts.tol, 1.0, opts.start_seed, matvecs, cap);
    std::vector<std::vector<double>> locked{first.vector};
    auto second = detail::lanczos_largest(g, locked, opts.tol, std::max(1.0, first.value),
                                          mix64(opts.start_seed), matvecs, cap);
    SpectralSummary out;
    out.method = SpectralMethod::iterative;
    out.lambda1 = first.value;
    out.residual1 = first.residual;
    out.lambda2 = second.value;
    out.residual2 = second.residual;
    if (out.lambda2 > out.lambda1) {
        std::swap(out.lambda1, out.lambda2);
        std::swap(out.residual1, out.residual2);
    }
    return out;
}

/// The two algebraically largest eigenvalues of A(G) with residual
/// certificates; dense for n <= dense_limit, Lanczos above.
inline SpectralSummary top_two(const Graph& g, const SpectralOptions& opts = {}) {
    if (g.order() < 2) throw InvalidParameter("top_two needs at least two vertices");
    return g.order() <= opts.dense_limit ? top_two_dense(g, opts) : top_two_iterative(g, opts);
}

} // namespace bncheck

#endif
