#ifndef BNCHECK_GRAPH_HPP
#define BNCHECK_GRAPH_HPP

#include "errors.hpp"
#include "rng.hpp"

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace bncheck {

using Word = std::uint64_t;
inline constexpr std::size_t kWordBits = 64;
inline constexpr std::size_t kDefaultMaxOrder = 4096;

inline constexpr std::size_t words_for(std::size_t bits) noexcept {
    return (bits + kWordBits - 1) / kWordBits;
}

/**
 * Simple undirected graph on vertices 0..n-1, adjacency stored as one packed
 * bit row per vertex. Rows are padded to whole 64-bit words; padding bits are
 * always zero.
 *
 * Build with add_edge, then share as const. The adjacency is symmetric with a
 * zero diagonal at all times.
 */
class Graph {
public:
    explicit Graph(std::size_t n, std::size_t max_order = kDefaultMaxOrder)
        : n_(n), words_(words_for(n)) {
        if (n == 0) throw InvalidParameter("graph must have at least one vertex");
        if (n > max_order)
            throw CapacityError("graph order " + std::to_string(n) + " exceeds cap " +
                                std::to_string(max_order));
        bits_.assign(n_ * words_, 0);
    }

    std::size_t order() const noexcept { return n_; }
    std::size_t edge_count() const noexcept { return edges_; }
    std::size_t words_per_row() const noexcept { return words_; }

    bool adjacent(std::size_t i, std::size_t j) const noexcept {
        return (bits_[i * words_ + j / kWordBits] >> (j % kWordBits)) & 1U;
    }

    std::span<const Word> row(std::size_t i) const noexcept {
        return {bits_.data() + i * words_, words_};
    }

    std::size_t degree(std::size_t i) const noexcept {
        std::size_t d = 0;
        for (Word w : row(i)) d += static_cast<std::size_t>(std::popcount(w));
        return d;
    }

    /// Inserts {i, j}. Returns false if the edge was already present.
    bool add_edge(std::size_t i, std::size_t j) {
        if (i >= n_ || j >= n_) throw InvalidParameter("vertex index out of range");
        if (i == j) throw InvalidParameter("self-loops are not allowed");
        if (adjacent(i, j)) return false;
        set_bit(i, j);
        set_bit(j, i);
        ++edges_;
        return true;
    }

    /// Edges {i, j} with i < j, row-major.
    std::vector<std::pair<std::size_t, std::size_t>> edges() const {
        std::vector<std::pair<std::size_t, std::size_t>> out;
        out.reserve(edges_);
        for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t j = i + 1; j < n_; ++j)
                if (adjacent(i, j)) out.emplace_back(i, j);
        return out;
    }

    bool is_complete() const noexcept { return edges_ == n_ * (n_ - 1) / 2; }

    /// Checks the structural invariants directly on the bit rows: zero
    /// diagonal, transpose equality, clear padding and the cached edge count.
    bool is_well_formed() const noexcept {
        std::size_t upper = 0;
        for (std::size_t i = 0; i < n_; ++i) {
            if (adjacent(i, i)) return false;
            for (std::size_t j = 0; j < n_; ++j) {
                if (adjacent(i, j) != adjacent(j, i)) return false;
                if (j > i && adjacent(i, j)) ++upper;
            }
            if (n_ % kWordBits != 0) {
                const Word pad = ~Word{0} << (n_ % kWordBits);
                if (row(i)[words_ - 1] & pad) return false;
            }
        }
        return upper == edges_;
    }

    /// Graph with vertex v relabelled to perm[v].
    Graph permuted(std::span<const std::size_t> perm) const {
        if (perm.size() != n_) throw InvalidParameter("permutation size mismatch");
        Graph out(n_, n_);
        for (auto [i, j] : edges()) out.add_edge(perm[i], perm[j]);
        return out;
    }

    friend bool operator==(const Graph& a, const Graph& b) noexcept {
        return a.n_ == b.n_ && a.edges_ == b.edges_ && a.bits_ == b.bits_;
    }

private:
    void set_bit(std::size_t i, std::size_t j) noexcept {
        bits_[i * words_ + j / kWordBits] |= Word{1} << (j % kWordBits);
    }

    std::size_t n_;
    std::size_t words_;
    std::size_t edges_ = 0;
    std::vector<Word> bits_;
};

inline std::size_t edge_count(const Graph& g) noexcept { return g.edge_count(); }

struct GnpParams {
    std::size_t n = 1;
    double p = 0.5;
    std::uint64_t seed = 0;

    /// 0 < p < 1. Endpoints are accepted by the sampler but are outside the
    /// random-graph model the bounds are stated for.
    bool inside_model() const noexcept { return p > 0.0 && p < 1.0; }
};

/**
 * Samples G(n, p).
 *
 * One Xoshiro256StarStar stream seeded with params.seed is consumed in
 * row-major order over the strict upper triangle: (0,1), (0,2), ..., (0,n-1),
 * (1,2), ... Each pair takes exactly one draw u = uniform01() and becomes an
 * edge iff u < p. Hence p = 0 gives the empty graph and p = 1 the complete
 * graph exactly.
 */
inline Graph sample_gnp(const GnpParams& params, std::size_t max_order = kDefaultMaxOrder) {
    if (params.n == 0) throw InvalidParameter("n must be at least 1");
    if (!(params.p >= 0.0 && params.p <= 1.0)) throw InvalidParameter("p must lie in [0, 1]");
    Graph g(params.n, max_order);
    Xoshiro256StarStar rng(params.seed);
    for (std::size_t i = 0; i < params.n; ++i)
        for (std::size_t j = i + 1; j < params.n; ++j)
            if (rng.uniform01() < params.p) g.add_edge(i, j);
    return g;
}

enum class GraphFamily { empty, complete, cycle, path, complete_bipartite };

/// Standard graph families on vertices 0..n-1. For complete_bipartite the
/// parts are {0..a-1} and {a..n-1}; `a` is ignored for other families.
inline Graph make_named(GraphFamily kind, std::size_t n, std::size_t a = 0) {
    if (n == 0) throw InvalidParameter("n must be at least 1");
    Graph g(n, std::max(n, kDefaultMaxOrder));
    switch (kind) {
    case GraphFamily::empty:
        break;
    case GraphFamily::complete:
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) g.add_edge(i, j);
        break;
    case GraphFamily::cycle:
        if (n < 3) throw InvalidParameter("cycle needs at least 3 vertices");
        for (std::size_t i = 0; i < n; ++i) g.add_edge(i, (i + 1) % n);
        break;
    case GraphFamily::path:
        for (std::size_t i = 0; i + 1 < n; ++i) g.add_edge(i, i + 1);
        break;
    case GraphFamily::complete_bipartite:
        if (a < 1 || a >= n) throw InvalidParameter("complete_bipartite needs a >= 1 and b = n - a >= 1");
        for (std::size_t i = 0; i < a; ++i)
            for (std::size_t j = a; j < n; ++j) g.add_edge(i, j);
        break;
    }
    return g;
}

inline Graph complete_bipartite(std::size_t a, std::size_t b) {
    return make_named(GraphFamily::complete_bipartite, a + b, a);
}

} // namespace bncheck

#endif
