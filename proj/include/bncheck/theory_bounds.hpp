#ifndef BNCHECK_THEORY_BOUNDS_HPP
#define BNCHECK_THEORY_BOUNDS_HPP

/*
 * Closed-form quantities for G(n, p): limits and high-probability bounds for
 * lambda1, lambda2 and the clique number, the finite-n inequality that chains
 * them, its explicit thresholds, and the Hoeffding tail of the edge count.
 *
 * All logarithms are natural logarithms.
 */

#include "errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>

namespace bncheck {

struct BoundParams {
    double eps = 0.5;
    double p = 0.1;
    double c0 = 1.0; ///< constant of the lambda2 bound

    void validate() const {
        if (!(eps > 0.0 && eps < 1.0)) throw InvalidParameter("eps must lie in (0, 1)");
        if (!(p > 0.0 && p < 1.0)) throw InvalidParameter("p must lie in (0, 1)");
        if (!(c0 > 0.0) || !std::isfinite(c0)) throw InvalidParameter("C0 must be a positive finite number");
    }
};

/// lambda1 / n -> p almost surely; the finite-n surrogate is p * n.
inline double juhasz_expected_lambda1(std::size_t n, double p) {
    if (n < 1) throw InvalidParameter("n must be at least 1");
    return p * static_cast<double>(n);
}

/// 2 sqrt(p(1-p)n) + C0 n^{1/3} log n. C0 = 0 is accepted here.
inline double fk_lambda2_bound(double n, const BoundParams& bp) {
    if (!(n >= 1.0)) throw InvalidParameter("n must be at least 1");
    if (!(bp.p >= 0.0 && bp.p <= 1.0) || !(bp.c0 >= 0.0)) throw InvalidParameter("invalid p or C0");
    return 2.0 * std::sqrt(bp.p * (1.0 - bp.p) * n) + bp.c0 * std::cbrt(n) * std::log(n);
}

/// 2 log n / log(1/p): the asymptotic clique number of G(n, p).
inline double clique_asymptote(double n, double p) {
    if (!(n >= 2.0)) throw InvalidParameter("n must be at least 2");
    if (!(p > 0.0 && p < 1.0)) throw InvalidParameter("p must lie in (0, 1)");
    return 2.0 * std::log(n) / std::log(1.0 / p);
}

/// Largest admissible edge probability for a given eps: (1-eps)^2 / (1+2eps).
inline double lemma31_p_max(double eps) { return (1.0 - eps) * (1.0 - eps) / (1.0 + 2.0 * eps); }

struct ThresholdReport {
    double eps = 0.0;
    double p = 0.0;
    double c0 = 0.0;
    double m0 = 0.0, m1 = 0.0, m2 = 0.0, m3 = 0.0, m4 = 0.0;
    double n0_prime = 0.0;        ///< max(m0, m1, m2)
    double n0_double_prime = 0.0; ///< max(m3, m4)
    double n0 = 0.0;              ///< max(n0_prime, n0_double_prime)
    double p_max = 0.0;
    bool p_admissible = false;
    bool overflow = false; ///< some threshold is +inf in double precision
};

/**
 * Explicit thresholds past which the chained inequality holds:
 *
 *   m0 = 12(1-p) / (eps p)                    4p(1-p)/n          <= eps p^2/3
 *   m1 = (12 C0 sqrt(p(1-p)) / (eps p^2))^6   4C0 sqrt(p(1-p)) n^{-1/6} <= eps p^2/3
 *   m2 = (3 C0^2 / (eps p^2))^3               C0^2 n^{-1/3}      <= eps p^2/3
 *   m3 = 1 / (1 - sqrt(1-eps))                1 - 1/n            >= sqrt(1-eps)
 *   m4 = exp(log(1/p) / ((1 - sqrt(1-eps)) 2(1-eps)))
 *                                             1 - log(1/p)/(2(1-eps) log n) >= sqrt(1-eps)
 *
 * Inadmissible p is reported, not rejected.
 */
inline ThresholdReport lemma31_thresholds(const BoundParams& bp) {
    bp.validate();
    const double eps = bp.eps, p = bp.p, c0 = bp.c0;
    const double root = std::sqrt(1.0 - eps);
    ThresholdReport r;
    r.eps = eps;
    r.p = p;
    r.c0 = c0;
    r.m0 = 12.0 * (1.0 - p) / (eps * p);
    r.m1 = std::pow(12.0 * c0 * std::sqrt(p * (1.0 - p)) / (eps * p * p), 6.0);
    r.m2 = std::pow(3.0 * c0 * c0 / (eps * p * p), 3.0);
    r.m3 = 1.0 / (1.0 - root);
    r.m4 = std::exp(std::log(1.0 / p) / ((1.0 - root) * 2.0 * (1.0 - eps)));
    r.n0_prime = std::max({r.m0, r.m1, r.m2});
    r.n0_double_prime = std::max(r.m3, r.m4);
    r.n0 = std::max(r.n0_prime, r.n0_double_prime);
    r.p_max = lemma31_p_max(eps);
    r.p_admissible = p <= r.p_max;
    r.overflow = std::isinf(r.n0);
    return r;
}

/// The per-term inequalities each threshold guarantees, evaluated at n.
struct ThresholdTerms {
    bool term0 = false; ///< guaranteed for n > m0
    bool term1 = false; ///< n > m1
    bool term2 = false; ///< n > m2
    bool term3 = false; ///< n > m3
    bool term4 = false; ///< n > m4
};

inline ThresholdTerms lemma31_terms(double n, const BoundParams& bp) {
    bp.validate();
    if (!(n >= 2.0)) throw InvalidParameter("n must be at least 2");
    const double eps = bp.eps, p = bp.p, c0 = bp.c0;
    const double third = eps * p * p / 3.0;
    const double root = std::sqrt(1.0 - eps);
    ThresholdTerms t;
    t.term0 = 4.0 * p * (1.0 - p) / n <= third;
    t.term1 = 4.0 * c0 * std::sqrt(p * (1.0 - p)) * std::pow(n, -1.0 / 6.0) <= third;
    t.term2 = c0 * c0 * std::pow(n, -1.0 / 3.0) <= third;
    t.term3 = 1.0 - 1.0 / n >= root;
    t.term4 = 1.0 - std::log(1.0 / p) / (2.0 * (1.0 - eps) * std::log(n)) >= root;
    return t;
}

struct LemmaSides {
    double lhs = 0.0;
    double rhs = 0.0;
};

/// (1+eps) p^2 n^2 + 4p(1-p) n + 4 C0 sqrt(p(1-p)) n^{5/6} log n + C0^2 n^{2/3} (log n)^2.
/// This is also the right side of the per-graph event X.
inline double lemma31_lhs(double n, const BoundParams& bp) {
    const double eps = bp.eps, p = bp.p, c0 = bp.c0;
    const double q = p * (1.0 - p);
    const double ln = std::log(n);
    return (1.0 + eps) * p * p * n * n + 4.0 * q * n + 4.0 * c0 * std::sqrt(q) * std::pow(n, 5.0 / 6.0) * ln +
           c0 * c0 * std::pow(n, 2.0 / 3.0) * ln * ln;
}

/// p (1-eps) n (n-1) (1 - log(1/p) / (2(1-eps) log n)).
inline double lemma31_rhs(double n, const BoundParams& bp) {
    const double eps = bp.eps, p = bp.p;
    return p * (1.0 - eps) * n * (n - 1.0) * (1.0 - std::log(1.0 / p) / (2.0 * (1.0 - eps) * std::log(n)));
}

inline LemmaSides lemma31_sides(double n, const BoundParams& bp) {
    bp.validate();
    if (!(n >= 2.0)) throw InvalidParameter("n must be at least 2");
    return {lemma31_lhs(n, bp), lemma31_rhs(n, bp)};
}

namespace detail {
inline void check_tail_args(double n, double p, double eps) {
    if (!(n >= 2.0)) throw InvalidParameter("n must be at least 2");
    if (!(p > 0.0 && p < 1.0)) throw InvalidParameter("p must lie in (0, 1)");
    if (!(eps > 0.0 && eps < 1.0)) throw InvalidParameter("eps must lie in (0, 1)");
}
} // namespace detail

/// exp(-eps^2 p^2 n(n-1)): Hoeffding bound on P(e(G) <= (1-eps) p n(n-1)/2).
inline double hoeffding_edge_tail(double n, double p, double eps) {
    detail::check_tail_args(n, p, eps);
    return std::exp(-eps * eps * p * p * n * (n - 1.0));
}

/// 1 - exp(-C n(n-1)) with C = eps^2 p^2.
inline double theorem_lower_bound(double n, double p, double eps) {
    return 1.0 - hoeffding_edge_tail(n, p, eps);
}

} // namespace bncheck

#endif
