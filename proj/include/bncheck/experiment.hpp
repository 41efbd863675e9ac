#ifndef BNCHECK_EXPERIMENT_HPP
#define BNCHECK_EXPERIMENT_HPP

#include "clique.hpp"
#include "errors.hpp"
#include "graph.hpp"
#include "spectral.hpp"
#include "theory_bounds.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstddef>
#include <optional>

namespace bncheck {

struct CheckOptions {
    SpectralOptions spectral{};
    std::optional<std::chrono::duration<double>> clique_budget{};
};

/// lambda1^2 + lambda2^2 <= 2 e(G) (1 - 1/omega(G)) for one graph.
struct InequalityCheck {
    std::size_t n = 0;
    std::size_t e = 0;
    std::size_t omega = 0;
    double lambda1 = 0.0;
    double lambda2 = 0.0;
    double lhs = 0.0;
    double rhs = 0.0;
    double slack = 0.0; ///< rhs - lhs
    bool holds = false;
    bool is_complete = false;
    bool certified = true; ///< omega came from an exhausted search; holds is meaningless otherwise
};

/// Tolerance on equality cases: holds iff lhs <= rhs + 1e-9 * max(1, rhs).
inline constexpr double kEqualityTolerance = 1e-9;

inline InequalityCheck evaluate_inequality(std::size_t n, std::size_t e, std::size_t omega, double lambda1,
                                           double lambda2, bool certified = true) {
    InequalityCheck c;
    c.n = n;
    c.e = e;
    c.omega = omega;
    c.lambda1 = lambda1;
    c.lambda2 = lambda2;
    c.lhs = lambda1 * lambda1 + lambda2 * lambda2;
    c.rhs = 2.0 * static_cast<double>(e) * (1.0 - 1.0 / static_cast<double>(omega));
    c.slack = c.rhs - c.lhs;
    c.holds = c.lhs <= c.rhs + kEqualityTolerance * std::max(1.0, c.rhs);
    c.is_complete = e == n * (n - 1) / 2;
    c.certified = certified;
    return c;
}

inline InequalityCheck evaluate_inequality(const Graph& g, const SpectralSummary& s, const CliqueResult& c) {
    return evaluate_inequality(g.order(), g.edge_count(), c.omega, s.lambda1, s.lambda2, c.certified());
}

/// Checks the inequality on g. Throws NonCertifiedError if the clique search
/// ran out of its time budget.
inline InequalityCheck check_conjecture(const Graph& g, const CheckOptions& opts = {}) {
    if (g.order() < 2) throw InvalidParameter("the inequality needs n >= 2");
    const auto spec = top_two(g, opts.spectral);
    const auto clq = max_clique(g, opts.clique_budget);
    if (clq.time_limited) throw NonCertifiedError("clique search hit its time budget; omega is not certified");
    return evaluate_inequality(g, spec, clq);
}

/**
 * The three per-graph events whose conjunction, for n past the explicit
 * threshold n0, forces the inequality:
 *
 *   X: lambda1^2 + lambda2^2 <= lemma31_lhs(n)
 *   Y: 1 - log(1/p) / (2(1-eps) log n) <= 1 - 1/omega
 *   Z: p (1-eps) n(n-1)/2 <= e(G)
 */
struct EventTriple {
    bool event_x = false;
    bool event_y = false;
    bool event_z = false;
    double x_lhs = 0.0, x_rhs = 0.0;
    double y_lhs = 0.0, y_rhs = 0.0;
    double z_lhs = 0.0, z_rhs = 0.0;

    bool all() const noexcept { return event_x && event_y && event_z; }
};

inline EventTriple evaluate_events(std::size_t n, std::size_t e, std::size_t omega, double lambda1, double lambda2,
                                   const BoundParams& bp) {
    bp.validate();
    if (n < 2) throw InvalidParameter("events need n >= 2");
    const double nd = static_cast<double>(n);
    EventTriple t;
    t.x_lhs = lambda1 * lambda1 + lambda2 * lambda2;
    t.x_rhs = lemma31_lhs(nd, bp);
    t.event_x = t.x_lhs <= t.x_rhs;
    t.y_lhs = 1.0 - std::log(1.0 / bp.p) / (2.0 * (1.0 - bp.eps) * std::log(nd));
    t.y_rhs = 1.0 - 1.0 / static_cast<double>(omega);
    t.event_y = t.y_lhs <= t.y_rhs;
    t.z_lhs = bp.p * (1.0 - bp.eps) * nd * (nd - 1.0) / 2.0;
    t.z_rhs = static_cast<double>(e);
    t.event_z = t.z_lhs <= t.z_rhs;
    return t;
}

inline EventTriple check_proof_events(const Graph& g, const BoundParams& bp, const CheckOptions& opts = {}) {
    bp.validate();
    if (g.order() < 2) throw InvalidParameter("events need n >= 2");
    const auto spec = top_two(g, opts.spectral);
    const auto clq = max_clique(g, opts.clique_budget);
    if (clq.time_limited) throw NonCertifiedError("clique search hit its time budget; omega is not certified");
    return evaluate_events(g.order(), g.edge_count(), clq.omega, spec.lambda1, spec.lambda2, bp);
}

} // namespace bncheck

#endif
