#ifndef BNCHECK_GRAPH_IO_HPP
#define BNCHECK_GRAPH_IO_HPP

// DIMACS-style edge lists:
//
//   c optional comment lines
//   p edge <n> <m>
//   e <i> <j>        (m lines, 1 <= i, j <= n, i != j)
//
// Vertices are 1-indexed in the file and 0-indexed in memory. Edge lines may
// list the endpoints in either order; a pair given twice (in any order) is an
// error, as is a self-loop or an edge count that disagrees with the header.
// write_edge_list emits the canonical form: no comments, i < j, row-major.

#include "errors.hpp"
#include "graph.hpp"

#include <cstddef>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>

namespace bncheck {

namespace detail {

inline bool parse_index(std::string_view tok, std::size_t& out) {
    if (tok.empty()) return false;
    std::size_t v = 0;
    for (char ch : tok) {
        if (ch < '0' || ch > '9') return false;
        if (v > (static_cast<std::size_t>(-1) - 9) / 10) return false;
        v = v * 10 + static_cast<std::size_t>(ch - '0');
    }
    out = v;
    return true;
}

} // namespace detail

inline Graph read_edge_list(std::istream& in, std::size_t max_order = kDefaultMaxOrder) {
    std::optional<Graph> g;
    std::size_t declared_edges = 0;
    std::size_t header_line = 0;
    std::size_t lineno = 0;
    std::string line;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::istringstream ls(line);
        std::string tag;
        if (!(ls >> tag)) continue; // blank
        if (tag == "c") continue;
        if (tag == "p") {
            if (g) throw ParseError(lineno, "duplicate problem line");
            std::string format, ntok, mtok, extra;
            std::size_t n = 0;
            if (!(ls >> format >> ntok >> mtok) || (ls >> extra) || format != "edge" ||
                !detail::parse_index(ntok, n) || !detail::parse_index(mtok, declared_edges))
                throw ParseError(lineno, "malformed header, expected 'p edge <n> <m>'");
            if (n == 0) throw ParseError(lineno, "graph must have at least one vertex");
            if (n > max_order) throw ParseError(lineno, "vertex count exceeds cap");
            if (declared_edges > n * (n - 1) / 2) throw ParseError(lineno, "edge count exceeds n(n-1)/2");
            g.emplace(n, max_order);
            header_line = lineno;
            continue;
        }
        if (tag == "e") {
            if (!g) throw ParseError(lineno, "edge line before header");
            std::string itok, jtok, extra;
            std::size_t i = 0, j = 0;
            if (!(ls >> itok >> jtok) || (ls >> extra) || !detail::parse_index(itok, i) ||
                !detail::parse_index(jtok, j))
                throw ParseError(lineno, "malformed edge line, expected 'e <i> <j>'");
            if (i < 1 || j < 1 || i > g->order() || j > g->order())
                throw ParseError(lineno, "vertex index out of range");
            if (i == j) throw ParseError(lineno, "self-loop");
            if (!g->add_edge(i - 1, j - 1)) throw ParseError(lineno, "duplicate edge");
            continue;
        }
        throw ParseError(lineno, "unknown line type '" + tag + "'");
    }
    if (!g) throw ParseError(lineno, "missing 'p edge' header");
    if (g->edge_count() != declared_edges)
        throw ParseError(header_line, "header declares " + std::to_string(declared_edges) +
                                          " edges but " + std::to_string(g->edge_count()) +
                                          " were listed");
    return std::move(*g);
}

inline Graph read_edge_list(std::string_view text, std::size_t max_order = kDefaultMaxOrder) {
    std::istringstream in{std::string(text)};
    return read_edge_list(in, max_order);
}

inline Graph read_edge_list_file(const std::string& path, std::size_t max_order = kDefaultMaxOrder) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open graph file '" + path + "'");
    return read_edge_list(in, max_order);
}

inline void write_edge_list(const Graph& g, std::ostream& out) {
    out << "p edge " << g.order() << ' ' << g.edge_count() << '\n';
    for (auto [i, j] : g.edges()) out << "e " << i + 1 << ' ' << j + 1 << '\n';
}

inline std::string write_edge_list(const Graph& g) {
    std::ostringstream out;
    write_edge_list(g, out);
    return out.str();
}

} // namespace bncheck

#endif
