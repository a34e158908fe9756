#pragma once

// Shared helpers for the test suites: seeded random generators and slow
// independent oracles (cofactor determinants, minor-based rank, subset
// enumerations).  The oracles deliberately avoid the elimination code paths
// they are used to check.

#include <cstdint>
#include <random>
#include <vector>

#include "minrank/completion.hpp"
#include "minrank/pattern_graph.hpp"

namespace minrank::testing {

using Rng = std::mt19937;

inline Index rand_below(Rng& rng, Index n) { return static_cast<Index>(rng() % static_cast<std::uint32_t>(n)); }

template <class Scalar>
Scalar random_scalar(Rng& rng, const FieldSpec& fs, long lo = -9, long hi = 9) {
    if (fs.is_prime_field())
        return make_scalar<Scalar>(fs, static_cast<long>(rng() % fs.modulus()));
    return make_scalar<Scalar>(fs, lo + static_cast<long>(rng() % static_cast<std::uint32_t>(hi - lo + 1)));
}

template <class Scalar>
DenseMatrix<Scalar> random_matrix(Rng& rng, const FieldSpec& fs, Index rows, Index cols) {
    DenseMatrix<Scalar> m(rows, cols);
    for (Index i = 0; i < rows; ++i)
        for (Index j = 0; j < cols; ++j) m(i, j) = random_scalar<Scalar>(rng, fs);
    return m;
}

template <class Scalar>
DenseMatrix<Scalar> random_invertible(Rng& rng, const FieldSpec& fs, Index n) {
    while (true) {
        DenseMatrix<Scalar> m = random_matrix<Scalar>(rng, fs, n, n);
        if (rank(m) == n) return m;
    }
}

// Composition of total into parts nonnegative sizes (zeros allowed).
inline std::vector<Index> random_composition(Rng& rng, Index total, Index parts) {
    std::vector<Index> cuts{0, total};
    for (Index k = 1; k < parts; ++k) cuts.push_back(rand_below(rng, total + 1));
    std::sort(cuts.begin(), cuts.end());
    std::vector<Index> sizes;
    for (std::size_t k = 1; k < cuts.size(); ++k) sizes.push_back(cuts[k] - cuts[k - 1]);
    return sizes;
}

inline BlockPartition random_block_partition(Rng& rng, Index n, Index max_blocks) {
    const Index blocks = 1 + rand_below(rng, max_blocks);
    return BlockPartition{random_composition(rng, n, blocks), random_composition(rng, n, blocks)};
}

// Random staircase partial matrix: prefix widths nondecreasing down the
// rows; resamples until the unknown count is at most max_unknowns.
template <class Scalar>
PartialMatrix<Scalar> random_staircase(Rng& rng, const FieldSpec& fs, Index max_rows,
                                       Index max_cols, Index max_unknowns) {
    while (true) {
        const Index rows = 1 + rand_below(rng, max_rows);
        const Index cols = 1 + rand_below(rng, max_cols);
        std::vector<Index> widths;
        for (Index i = 0; i < rows; ++i) widths.push_back(rand_below(rng, cols + 1));
        std::sort(widths.begin(), widths.end());
        Index unknowns = 0;
        for (Index w : widths) unknowns += cols - w;
        if (unknowns > max_unknowns) continue;
        Pattern p(rows, cols);
        for (Index i = 0; i < rows; ++i)
            for (Index j = 0; j < widths[static_cast<std::size_t>(i)]; ++j) p.add(i, j);
        PartialMatrix<Scalar> pm(fs, p);
        for (const auto& [i, j] : p.positions()) pm.set(i, j, random_scalar<Scalar>(rng, fs));
        return pm;
    }
}

// Valid refinement of a staircase blocking: split one block row (inserting
// a zero-size column block after the split) or dually one block column.
inline BlockPartition refine_blocking(Rng& rng, const BlockPartition& bp) {
    BlockPartition refined = bp;
    std::vector<std::pair<bool, Index>> candidates;  // (is_row, block index)
    for (Index k = 0; k < bp.block_rows(); ++k)
        if (bp.row_sizes[static_cast<std::size_t>(k)] >= 2) candidates.emplace_back(true, k);
    for (Index k = 0; k < bp.block_cols(); ++k)
        if (bp.col_sizes[static_cast<std::size_t>(k)] >= 2) candidates.emplace_back(false, k);
    if (candidates.empty()) return refined;
    const auto [is_row, k] = candidates[static_cast<std::size_t>(rand_below(
        rng, static_cast<Index>(candidates.size())))];
    if (is_row) {
        const Index size = refined.row_sizes[static_cast<std::size_t>(k)];
        const Index cut = 1 + rand_below(rng, size - 1);
        refined.row_sizes[static_cast<std::size_t>(k)] = cut;
        refined.row_sizes.insert(refined.row_sizes.begin() + k + 1, size - cut);
        refined.col_sizes.insert(refined.col_sizes.begin() + k + 1, 0);
    } else {
        const Index size = refined.col_sizes[static_cast<std::size_t>(k)];
        const Index cut = 1 + rand_below(rng, size - 1);
        refined.col_sizes[static_cast<std::size_t>(k)] = cut;
        refined.col_sizes.insert(refined.col_sizes.begin() + k + 1, size - cut);
        refined.row_sizes.insert(refined.row_sizes.begin() + k, 0);
    }
    return refined;
}

// Cofactor-expansion determinant, independent of the elimination code.
template <class Scalar>
Scalar det_cofactor(const DenseMatrix<Scalar>& m) {
    const Index n = m.rows();
    if (n == 0) return Scalar(1);
    if (n == 1) return m(0, 0);
    Scalar total = Scalar(0);
    for (Index j = 0; j < n; ++j) {
        if (m(0, j).is_zero()) continue;
        DenseMatrix<Scalar> minor(n - 1, n - 1);
        for (Index i = 1; i < n; ++i) {
            Index cc = 0;
            for (Index c = 0; c < n; ++c) {
                if (c == j) continue;
                minor(i - 1, cc++) = m(i, c);
            }
        }
        const Scalar term = m(0, j) * det_cofactor(minor);
        total = (j % 2 == 0) ? total + term : total - term;
    }
    return total;
}

// Rank as the size of the largest square minor with nonzero cofactor
// determinant.
template <class Scalar>
Index minor_rank(const DenseMatrix<Scalar>& m) {
    for (Index k = std::min(m.rows(), m.cols()); k >= 1; --k) {
        bool found = false;
        detail::for_each_subset(m.rows(), k, [&](const std::vector<Index>& rset) {
            return detail::for_each_subset(m.cols(), k, [&](const std::vector<Index>& cset) {
                if (!det_cofactor(submatrix(m, rset, cset)).is_zero()) {
                    found = true;
                    return false;
                }
                return true;
            });
        });
        if (found) return k;
    }
    return 0;
}

// Exhaustive line-cover existence over all row/column subset pairs.
inline bool exhaustive_cover_exists(const Pattern& p, Index r) {
    bool found = false;
    for (Index sr = 0; sr <= std::min(r, p.rows()) && !found; ++sr) {
        detail::for_each_subset(p.rows(), sr, [&](const std::vector<Index>& rset) {
            for (Index sc = 0; sc <= std::min(r, p.cols()); ++sc) {
                bool stop = false;
                detail::for_each_subset(p.cols(), sc, [&](const std::vector<Index>& cset) {
                    LineCover cover{rset, cset};
                    if (cover_covers(p, cover)) {
                        found = true;
                        stop = true;
                        return false;
                    }
                    return true;
                });
                if (stop) break;
            }
            return !found;
        });
    }
    return found;
}

// Independent chordless-cycle existence: over all vertex subsets of size
// >= 6, test whether the induced subgraph is a single cycle.
inline bool exhaustive_chordless_exists(const PatternGraph& g) {
    const Index n = g.vertex_count();
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
        std::vector<Index> verts;
        for (Index v = 0; v < n; ++v)
            if (mask & (1u << v)) verts.push_back(v);
        if (verts.size() < 6) continue;
        bool two_regular = true;
        for (Index u : verts) {
            Index deg = 0;
            for (Index v : verts) deg += (u != v && g.adjacent(u, v)) ? 1 : 0;
            if (deg != 2) {
                two_regular = false;
                break;
            }
        }
        if (!two_regular) continue;
        // Connected and 2-regular on >= 6 vertices: an induced cycle.
        std::vector<char> seen(static_cast<std::size_t>(n), 0);
        std::vector<Index> stack{verts[0]};
        seen[static_cast<std::size_t>(verts[0])] = 1;
        std::size_t reached = 1;
        while (!stack.empty()) {
            const Index u = stack.back();
            stack.pop_back();
            for (Index v : verts)
                if (!seen[static_cast<std::size_t>(v)] && g.adjacent(u, v)) {
                    seen[static_cast<std::size_t>(v)] = 1;
                    ++reached;
                    stack.push_back(v);
                }
        }
        if (reached == verts.size()) return true;
    }
    return false;
}

}  // namespace minrank::testing
