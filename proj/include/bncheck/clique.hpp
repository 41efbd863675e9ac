#ifndef BNCHECK_CLIQUE_HPP
#define BNCHECK_CLIQUE_HPP

#include "errors.hpp"
#include "graph.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace bncheck {

struct CliqueResult {
    std::size_t omega = 0;
    std::vector<std::size_t> witness; // ascending vertex ids
    std::uint64_t nodes_explored = 0;
    bool time_limited = false;

    bool certified() const noexcept { return !time_limited; }
};

inline bool is_clique(const Graph& g, std::span<const std::size_t> vertices) {
    for (std::size_t a = 0; a < vertices.size(); ++a) {
        if (vertices[a] >= g.order()) return false;
        for (std::size_t b = a + 1; b < vertices.size(); ++b)
            if (!g.adjacent(vertices[a], vertices[b])) return false;
    }
    return true;
}

/// True when no vertex outside `clique` is adjacent to all of it.
inline bool is_maximal_clique(const Graph& g, std::span<const std::size_t> clique) {
    for (std::size_t v = 0; v < g.order(); ++v) {
        if (std::find(clique.begin(), clique.end(), v) != clique.end()) continue;
        bool all = true;
        for (std::size_t u : clique)
            if (!g.adjacent(u, v)) {
                all = false;
                break;
            }
        if (all) return false;
    }
    return true;
}

/// Vertices in degeneracy order: repeatedly remove a vertex of minimum
/// remaining degree (ties to the lowest id). Returned in removal order.
inline std::vector<std::size_t> degeneracy_order(const Graph& g) {
    const std::size_t n = g.order();
    std::vector<std::size_t> deg(n);
    for (std::size_t v = 0; v < n; ++v) deg[v] = g.degree(v);
    std::vector<bool> removed(n, false);
    std::vector<std::size_t> order;
    order.reserve(n);
    for (std::size_t step = 0; step < n; ++step) {
        std::size_t best = n;
        for (std::size_t v = 0; v < n; ++v)
            if (!removed[v] && (best == n || deg[v] < deg[best])) best = v;
        removed[best] = true;
        order.push_back(best);
        for (std::size_t u = 0; u < n; ++u)
            if (!removed[u] && g.adjacent(best, u)) --deg[u];
    }
    return order;
}

namespace detail {

// Bitset branch-and-bound in the style of Tomita's MCQ/MCS with San Segundo's
// bit-parallel colouring. Vertices are relabelled so that the last vertex of
// the degeneracy order gets label 0; candidate sets are word bitsets over the
// new labels.
class CliqueSearch {
public:
    CliqueSearch(const Graph& g, std::optional<std::chrono::steady_clock::time_point> deadline)
        : n_(g.order()), words_(words_for(g.order())), deadline_(deadline) {
        const auto order = degeneracy_order(g);
        to_original_.assign(order.rbegin(), order.rend());
        std::vector<std::size_t> to_new(n_);
        for (std::size_t k = 0; k < n_; ++k) to_new[to_original_[k]] = k;
        adj_.assign(n_ * words_, 0);
        for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t j = 0; j < n_; ++j)
                if (g.adjacent(i, j)) set(adj_.data() + to_new[i] * words_, to_new[j]);
    }

    CliqueResult run() {
        levels_.assign(1, std::vector<Word>(words_, 0));
        for (std::size_t v = 0; v < n_; ++v) set(levels_[0].data(), v);
        expand(0);

        CliqueResult out;
        out.omega = best_.size();
        for (std::size_t v : best_) out.witness.push_back(to_original_[v]);
        std::sort(out.witness.begin(), out.witness.end());
        out.nodes_explored = nodes_;
        out.time_limited = timed_out_;
        return out;
    }

private:
    static void set(Word* bits, std::size_t v) { bits[v / kWordBits] |= Word{1} << (v % kWordBits); }
    static void clear(Word* bits, std::size_t v) { bits[v / kWordBits] &= ~(Word{1} << (v % kWordBits)); }

    const Word* neighbours(std::size_t v) const { return adj_.data() + v * words_; }

    bool out_of_time() {
        if (!deadline_ || (nodes_ & 1023U) != 0) return timed_out_;
        if (std::chrono::steady_clock::now() >= *deadline_) timed_out_ = true;
        return timed_out_;
    }

    // Greedy sequential colouring of `cand`. Only vertices whose colour could
    // still beat the incumbent are emitted, in non-decreasing colour order.
    void colour(const std::vector<Word>& cand, std::vector<std::size_t>& order, std::vector<std::size_t>& bound) {
        order.clear();
        bound.clear();
        const std::size_t kmin = best_.size() >= current_.size() ? best_.size() - current_.size() + 1 : 1;
        uncoloured_ = cand;
        std::size_t colour_class = 1;
        bool any = true;
        while (any) {
            q_ = uncoloured_;
            any = false;
            for (std::size_t w = 0; w < words_; ++w) {
                while (q_[w]) {
                    const std::size_t v = w * kWordBits + static_cast<std::size_t>(std::countr_zero(q_[w]));
                    clear(uncoloured_.data(), v);
                    clear(q_.data(), v);
                    const Word* nv = neighbours(v);
                    for (std::size_t x = w; x < words_; ++x) q_[x] &= ~nv[x];
                    if (colour_class >= kmin) {
                        order.push_back(v);
                        bound.push_back(colour_class);
                    }
                }
            }
            for (Word x : uncoloured_)
                if (x) {
                    any = true;
                    break;
                }
            ++colour_class;
        }
    }

    void expand(std::size_t depth) {
        ++nodes_;
        if (out_of_time()) return;
        if (levels_.size() <= depth + 1) levels_.emplace_back(words_, 0);

        std::vector<std::size_t> order, bound;
        colour(levels_[depth], order, bound);

        for (std::size_t idx = order.size(); idx-- > 0;) {
            if (current_.size() + bound[idx] <= best_.size()) return;
            const std::size_t v = order[idx];
            current_.push_back(v);

            auto& next = levels_[depth + 1];
            const auto& cand = levels_[depth];
            const Word* nv = neighbours(v);
            bool empty = true;
            for (std::size_t w = 0; w < words_; ++w) {
                next[w] = cand[w] & nv[w];
                empty = empty && next[w] == 0;
            }
            if (empty) {
                if (current_.size() > best_.size()) best_ = current_;
            } else {
                expand(depth + 1);
            }
            current_.pop_back();
            clear(levels_[depth].data(), v);
            if (timed_out_) return;
        }
    }

    std::size_t n_;
    std::size_t words_;
    std::optional<std::chrono::steady_clock::time_point> deadline_;
    std::vector<std::size_t> to_original_;
    std::vector<Word> adj_;
    std::vector<std::vector<Word>> levels_;
    std::vector<Word> uncoloured_, q_;
    std::vector<std::size_t> current_, best_;
    std::uint64_t nodes_ = 0;
    bool timed_out_ = false;
};

} // namespace detail

/**
 * Exact clique number by branch-and-bound with a greedy colouring bound.
 *
 * With a time budget the search may stop early; the result then has
 * time_limited set and omega is only a lower bound (the witness is still a
 * clique).
 */
inline CliqueResult max_clique(const Graph& g, std::optional<std::chrono::duration<double>> budget = std::nullopt) {
    std::optional<std::chrono::steady_clock::time_point> deadline;
    if (budget)
        deadline = std::chrono::steady_clock::now() +
                   std::chrono::duration_cast<std::chrono::steady_clock::duration>(*budget);
    return detail::CliqueSearch(g, deadline).run();
}

inline constexpr std::size_t kBruteForceLimit = 20;

/// Clique number by plain subset enumeration in increasing size, stopping at
/// the first size with no clique. Test oracle; n <= 20.
inline std::size_t max_clique_bruteforce(const Graph& g) {
    const std::size_t n = g.order();
    if (n > kBruteForceLimit) throw CapacityError("brute-force clique oracle is limited to 20 vertices");
    std::vector<std::uint32_t> nbr(n, 0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (g.adjacent(i, j)) nbr[i] |= std::uint32_t{1} << j;

    auto subset_is_clique = [&](std::uint32_t s) {
        for (std::uint32_t rest = s; rest; rest &= rest - 1) {
            const auto v = static_cast<std::size_t>(std::countr_zero(rest));
            if ((s & ~(std::uint32_t{1} << v) & ~nbr[v]) != 0) return false;
        }
        return true;
    };

    std::size_t omega = 0;
    for (std::size_t k = 1; k <= n; ++k) {
        bool found = false;
        // Gosper's hack over k-subsets of {0..n-1}.
        std::uint64_t s = (std::uint64_t{1} << k) - 1;
        const std::uint64_t limit = std::uint64_t{1} << n;
        while (s < limit) {
            if (subset_is_clique(static_cast<std::uint32_t>(s))) {
                found = true;
                break;
            }
            const std::uint64_t c = s & (~s + 1);
            const std::uint64_t r = s + c;
            s = (((r ^ s) >> 2) / c) | r;
        }
        if (!found) break;
        omega = k;
    }
    return omega;
}

} // namespace bncheck

#endif
