#pragma once

// Bipartite graph of a pattern (row vertices, column vertices, one edge per
// specified position) and chordless-cycle search for bipartite chordality.

#include <optional>
#include <vector>

#include "minrank/pattern.hpp"

namespace minrank {

class PatternGraph {
public:
    explicit PatternGraph(const Pattern& p)
        : row_count_(p.rows()), col_count_(p.cols()),
          adj_(static_cast<std::size_t>(vertex_count()),
               std::vector<char>(static_cast<std::size_t>(vertex_count()), 0)) {
        for (const auto& [i, j] : p.positions()) add_edge(i, row_count_ + j);
    }

    Index row_count() const { return row_count_; }
    Index col_count() const { return col_count_; }
    Index vertex_count() const { return row_count_ + col_count_; }

    Index edge_count() const {
        Index n = 0;
        for (Index u = 0; u < vertex_count(); ++u)
            for (Index v = u + 1; v < vertex_count(); ++v) n += adjacent(u, v) ? 1 : 0;
        return n;
    }

    bool adjacent(Index u, Index v) const {
        return adj_[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)] != 0;
    }

    bool is_row_vertex(Index v) const { return v < row_count_; }

    // "r3" / "c2", 1-based.
    std::string vertex_name(Index v) const {
        return is_row_vertex(v) ? "r" + std::to_string(v + 1)
                                : "c" + std::to_string(v - row_count_ + 1);
    }

private:
    void add_edge(Index u, Index v) {
        adj_[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)] = 1;
        adj_[static_cast<std::size_t>(v)][static_cast<std::size_t>(u)] = 1;
    }

    Index row_count_, col_count_;
    std::vector<std::vector<char>> adj_;
};

// True iff the vertex sequence is a cycle of length >= 4 whose only
// adjacencies are the consecutive ones.
inline bool is_chordless_cycle(const PatternGraph& g, const std::vector<Index>& cycle) {
    const Index n = static_cast<Index>(cycle.size());
    if (n < 4) return false;
    for (Index a = 0; a < n; ++a)
        for (Index b = a + 1; b < n; ++b) {
            const bool consecutive = (b == a + 1) || (a == 0 && b == n - 1);
            if (cycle[static_cast<std::size_t>(a)] == cycle[static_cast<std::size_t>(b)])
                return false;
            if (g.adjacent(cycle[static_cast<std::size_t>(a)], cycle[static_cast<std::size_t>(b)]) !=
                consecutive)
                return false;
        }
    return true;
}

namespace detail {

// Depth-first growth of induced paths anchored at the minimum cycle vertex.
// Every appended vertex may be adjacent only to the path tail (and to the
// anchor when it closes a cycle of acceptable length).
inline bool chordless_dfs(const PatternGraph& g, std::vector<Index>& path,
                          std::vector<char>& in_path, Index min_len,
                          std::vector<Index>& out) {
    const Index start = path.front();
    const Index tail = path.back();
    for (Index w = 0; w < g.vertex_count(); ++w) {
        if (w == start || !g.adjacent(tail, w)) continue;
        if (w < start || in_path[static_cast<std::size_t>(w)]) continue;
        bool chord_mid = false;
        for (std::size_t k = 1; k + 1 < path.size(); ++k)
            if (g.adjacent(path[k], w)) {
                chord_mid = true;
                break;
            }
        if (chord_mid) continue;
        // From the bare start vertex, adjacency to the start is the path's
        // first edge, not a closing chord.
        const bool closes = path.size() >= 2 && g.adjacent(w, start);
        if (closes) {
            if (static_cast<Index>(path.size()) + 1 >= min_len) {
                path.push_back(w);
                out = path;
                return true;
            }
            continue;  // closing early would create a chord, do not extend through w
        }
        path.push_back(w);
        in_path[static_cast<std::size_t>(w)] = 1;
        if (chordless_dfs(g, path, in_path, min_len, out)) return true;
        in_path[static_cast<std::size_t>(w)] = 0;
        path.pop_back();
    }
    return false;
}

}  // namespace detail

// Returns a chordless cycle of length >= 6 when one exists, otherwise
// nullopt (the graph is chordal bipartite).  Deterministic: vertices are
// explored in ascending order, so the result is reproducible.
inline std::optional<std::vector<Index>> chordless_cycle_search(const PatternGraph& g,
                                                                Index size_cap = 16) {
    if (g.vertex_count() > size_cap)
        throw TooLargeError("chordless_cycle_search: " + std::to_string(g.vertex_count()) +
                            " vertices exceed cap " + std::to_string(size_cap));
    if (g.edge_count() < 6) return std::nullopt;
    for (Index start = 0; start < g.vertex_count(); ++start) {
        std::vector<Index> path{start};
        std::vector<char> in_path(static_cast<std::size_t>(g.vertex_count()), 0);
        in_path[static_cast<std::size_t>(start)] = 1;
        std::vector<Index> cycle;
        if (detail::chordless_dfs(g, path, in_path, 6, cycle)) return cycle;
    }
    return std::nullopt;
}

}  // namespace minrank
