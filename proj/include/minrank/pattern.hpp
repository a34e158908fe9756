#pragma once

// Patterns of specified positions, block partitions, staircase detection,
// and the combinatorial checks (density, line covers).

#include <algorithm>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "minrank/errors.hpp"
#include "minrank/matrix.hpp"

namespace minrank {

using Position = std::pair<Index, Index>;

// Set of specified (row, col) positions inside a rows x cols rectangle.
class Pattern {
public:
    Pattern(Index rows, Index cols) : rows_(rows), cols_(cols) {
        if (rows < 0 || cols < 0) throw DimensionError("pattern with negative dimension");
        mask_.setConstant(rows, cols, false);
    }

    static Pattern from_positions(Index rows, Index cols, const std::vector<Position>& positions) {
        Pattern p(rows, cols);
        for (const auto& [i, j] : positions) {
            if (p.contains(i, j))
                throw DimensionError("duplicate position (" + std::to_string(i + 1) + "," +
                                     std::to_string(j + 1) + ")");
            p.add(i, j);
        }
        return p;
    }

    static Pattern full(Index rows, Index cols) {
        Pattern p(rows, cols);
        p.mask_.setConstant(rows, cols, true);
        return p;
    }

    // {(i,j) : j <= i}
    static Pattern lower_triangular(Index n) {
        Pattern p(n, n);
        for (Index i = 0; i < n; ++i)
            for (Index j = 0; j <= i; ++j) p.add(i, j);
        return p;
    }

    // {(i,j) : lo <= j - i <= hi}
    static Pattern banded(Index rows, Index cols, Index lo, Index hi) {
        Pattern p(rows, cols);
        for (Index i = 0; i < rows; ++i)
            for (Index j = 0; j < cols; ++j)
                if (j - i >= lo && j - i <= hi) p.add(i, j);
        return p;
    }

    Index rows() const { return rows_; }
    Index cols() const { return cols_; }

    bool contains(Index i, Index j) const {
        check_bounds(i, j);
        return mask_(i, j);
    }

    void add(Index i, Index j) {
        check_bounds(i, j);
        mask_(i, j) = true;
    }

    void remove(Index i, Index j) {
        check_bounds(i, j);
        mask_(i, j) = false;
    }

    Index specified_count() const {
        Index n = 0;
        for (Index i = 0; i < rows_; ++i)
            for (Index j = 0; j < cols_; ++j) n += mask_(i, j) ? 1 : 0;
        return n;
    }

    std::vector<Position> positions() const {
        std::vector<Position> out;
        for (Index i = 0; i < rows_; ++i)
            for (Index j = 0; j < cols_; ++j)
                if (mask_(i, j)) out.emplace_back(i, j);
        return out;
    }

    Pattern transposed() const {
        Pattern t(cols_, rows_);
        for (Index i = 0; i < rows_; ++i)
            for (Index j = 0; j < cols_; ++j)
                if (mask_(i, j)) t.add(j, i);
        return t;
    }

    bool is_full() const { return specified_count() == rows_ * cols_; }
    bool empty() const { return specified_count() == 0; }

    bool is_subpattern_of(const Pattern& other) const {
        if (rows_ != other.rows_ || cols_ != other.cols_) return false;
        for (Index i = 0; i < rows_; ++i)
            for (Index j = 0; j < cols_; ++j)
                if (mask_(i, j) && !other.mask_(i, j)) return false;
        return true;
    }

    bool operator==(const Pattern& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && (mask_ == o.mask_).all();
    }
    bool operator!=(const Pattern& o) const { return !(*this == o); }

private:
    void check_bounds(Index i, Index j) const {
        if (i < 0 || i >= rows_ || j < 0 || j >= cols_)
            throw DimensionError("position (" + std::to_string(i + 1) + "," +
                                 std::to_string(j + 1) + ") outside " + std::to_string(rows_) +
                                 "x" + std::to_string(cols_) + " pattern");
    }

    Index rows_, cols_;
    Eigen::Array<bool, Eigen::Dynamic, Eigen::Dynamic> mask_;
};

// Row sizes nu_1..nu_n and column sizes mu_1..mu_n of a block grid; zero
// sizes are allowed.
struct BlockPartition {
    std::vector<Index> row_sizes;
    std::vector<Index> col_sizes;

    Index block_rows() const { return static_cast<Index>(row_sizes.size()); }
    Index block_cols() const { return static_cast<Index>(col_sizes.size()); }

    Index total_rows() const {
        Index n = 0;
        for (Index s : row_sizes) n += s;
        return n;
    }
    Index total_cols() const {
        Index n = 0;
        for (Index s : col_sizes) n += s;
        return n;
    }

    // Offsets, length block count + 1.
    std::vector<Index> row_offsets() const { return offsets(row_sizes); }
    std::vector<Index> col_offsets() const { return offsets(col_sizes); }

    void validate_for(Index rows, Index cols) const {
        for (Index s : row_sizes)
            if (s < 0) throw DimensionError("negative block row size");
        for (Index s : col_sizes)
            if (s < 0) throw DimensionError("negative block column size");
        if (total_rows() != rows || total_cols() != cols)
            throw DimensionError("block partition sums " + std::to_string(total_rows()) + "x" +
                                 std::to_string(total_cols()) + " do not match " +
                                 std::to_string(rows) + "x" + std::to_string(cols));
    }

    bool operator==(const BlockPartition& o) const {
        return row_sizes == o.row_sizes && col_sizes == o.col_sizes;
    }

private:
    static std::vector<Index> offsets(const std::vector<Index>& sizes) {
        std::vector<Index> off(sizes.size() + 1, 0);
        for (std::size_t k = 0; k < sizes.size(); ++k) off[k + 1] = off[k] + sizes[k];
        return off;
    }
};

// Scalar-level patterns of the block lower-triangular part {j <= i} and the
// block strictly-lower part {i > j} under a block partition.
inline std::pair<Pattern, Pattern> block_patterns(const BlockPartition& bp) {
    const auto ro = bp.row_offsets();
    const auto co = bp.col_offsets();
    const Index rows = bp.total_rows();
    const Index cols = bp.total_cols();
    Pattern lower(rows, cols);
    Pattern strict(rows, cols);
    for (Index bi = 0; bi < bp.block_rows(); ++bi) {
        for (Index bj = 0; bj < bp.block_cols(); ++bj) {
            if (bj > bi) continue;
            for (Index i = ro[static_cast<std::size_t>(bi)]; i < ro[static_cast<std::size_t>(bi) + 1]; ++i)
                for (Index j = co[static_cast<std::size_t>(bj)]; j < co[static_cast<std::size_t>(bj) + 1]; ++j) {
                    lower.add(i, j);
                    if (bj < bi) strict.add(i, j);
                }
        }
    }
    return {std::move(lower), std::move(strict)};
}

// Expands the block lower-triangular pattern {block (i,j) : j <= i}.
inline Pattern expand_block_lower(const BlockPartition& bp) {
    return block_patterns(bp).first;
}

// Detects whether P is a staircase (lower-left closed) pattern and returns
// the coarsest block partition under which P is exactly the block
// lower-triangular pattern {j <= i}.  Lower-left closure is equivalent to:
// every row is a prefix of columns, with nondecreasing widths top-to-bottom.
inline std::optional<BlockPartition> staircase_blocking(const Pattern& p) {
    const Index rows = p.rows();
    const Index cols = p.cols();
    std::vector<Index> width(static_cast<std::size_t>(rows), 0);
    for (Index i = 0; i < rows; ++i) {
        Index w = 0;
        while (w < cols && p.contains(i, w)) ++w;
        for (Index j = w; j < cols; ++j)
            if (p.contains(i, j)) return std::nullopt;  // row not a prefix
        width[static_cast<std::size_t>(i)] = w;
        if (i > 0 && width[static_cast<std::size_t>(i) - 1] > w) return std::nullopt;
    }

    // Group consecutive rows of equal width; widths strictly increase
    // across groups.  A leading zero-width group forces a zero-size first
    // column block; trailing never-specified columns force a zero-size
    // last row block.
    BlockPartition bp;
    Index prev_width = -1;
    for (Index i = 0; i < rows;) {
        Index j = i;
        while (j < rows && width[static_cast<std::size_t>(j)] == width[static_cast<std::size_t>(i)]) ++j;
        const Index w = width[static_cast<std::size_t>(i)];
        bp.row_sizes.push_back(j - i);
        bp.col_sizes.push_back(prev_width < 0 ? w : w - prev_width);
        prev_width = w;
        i = j;
    }
    if (rows == 0) {
        // No rows: nothing is specified; a single empty block row suffices.
        bp.row_sizes.push_back(0);
        bp.col_sizes.push_back(0);
        prev_width = 0;
    }
    if (prev_width < cols) {
        bp.row_sizes.push_back(0);
        bp.col_sizes.push_back(cols - prev_width);
    }
    return bp;
}

// pass/fail result of a quantified combinatorial check, with a witness of
// the first (lexicographic) violation on failure.  Indices are 0-based.
struct SubsetWitness {
    bool pass = true;
    std::vector<Index> witness_rows;
    std::vector<Index> witness_cols;
};

namespace detail {

// Lexicographic enumeration of k-subsets of {0..n-1}; visit returns false
// to stop early.
template <class Visit>
bool for_each_subset(Index n, Index k, Visit&& visit) {
    std::vector<Index> idx(static_cast<std::size_t>(k));
    for (Index i = 0; i < k; ++i) idx[static_cast<std::size_t>(i)] = i;
    if (k > n) return true;
    while (true) {
        if (!visit(idx)) return false;
        Index i = k - 1;
        while (i >= 0 && idx[static_cast<std::size_t>(i)] == n - k + i) --i;
        if (i < 0) return true;
        ++idx[static_cast<std::size_t>(i)];
        for (Index j = i + 1; j < k; ++j)
            idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j) - 1] + 1;
    }
}

}  // namespace detail

// Checks that every k x k submatrix (k >= max(r,1)) carries at most
// (2k - r) r specified entries.  Brute-force over all row/column subsets;
// refuses dimensions above size_cap.
inline SubsetWitness density_check(const Pattern& p, Index r, Index size_cap = 10) {
    if (r < 0) throw DimensionError("density_check: negative rank");
    if (p.rows() > size_cap || p.cols() > size_cap)
        throw TooLargeError("density_check: dimensions " + std::to_string(p.rows()) + "x" +
                            std::to_string(p.cols()) + " exceed cap " + std::to_string(size_cap));
    std::vector<std::uint64_t> row_mask(static_cast<std::size_t>(p.rows()), 0);
    for (Index i = 0; i < p.rows(); ++i)
        for (Index j = 0; j < p.cols(); ++j)
            if (p.contains(i, j)) row_mask[static_cast<std::size_t>(i)] |= std::uint64_t{1} << j;

    SubsetWitness result;
    const Index kmax = std::min(p.rows(), p.cols());
    for (Index k = std::max<Index>(r, 1); k <= kmax && result.pass; ++k) {
        const Index bound = (2 * k - r) * r;
        detail::for_each_subset(p.rows(), k, [&](const std::vector<Index>& rset) {
            return detail::for_each_subset(p.cols(), k, [&](const std::vector<Index>& cset) {
                std::uint64_t cmask = 0;
                for (Index c : cset) cmask |= std::uint64_t{1} << c;
                Index count = 0;
                for (Index ri : rset)
                    count += static_cast<Index>(
                        __builtin_popcountll(row_mask[static_cast<std::size_t>(ri)] & cmask));
                if (count > bound) {
                    result.pass = false;
                    result.witness_rows = rset;
                    result.witness_cols = cset;
                    return false;
                }
                return true;
            });
        });
    }
    return result;
}

// Rows and columns covering every specified position.
struct LineCover {
    std::vector<Index> rows;
    std::vector<Index> cols;
};

namespace detail {

// Simple augmenting-path maximum bipartite matching over the specified
// positions; returns match_col[row] (-1 when unmatched).
inline std::vector<Index> max_matching(const Pattern& p) {
    std::vector<std::vector<Index>> adj(static_cast<std::size_t>(p.rows()));
    for (Index i = 0; i < p.rows(); ++i)
        for (Index j = 0; j < p.cols(); ++j)
            if (p.contains(i, j)) adj[static_cast<std::size_t>(i)].push_back(j);
    std::vector<Index> match_row(static_cast<std::size_t>(p.cols()), -1);
    std::vector<Index> match_col(static_cast<std::size_t>(p.rows()), -1);
    std::vector<char> used;
    auto augment = [&](auto&& self, Index u) -> bool {
        for (Index v : adj[static_cast<std::size_t>(u)]) {
            if (used[static_cast<std::size_t>(v)]) continue;
            used[static_cast<std::size_t>(v)] = 1;
            if (match_row[static_cast<std::size_t>(v)] < 0 ||
                self(self, match_row[static_cast<std::size_t>(v)])) {
                match_row[static_cast<std::size_t>(v)] = u;
                match_col[static_cast<std::size_t>(u)] = v;
                return true;
            }
        }
        return false;
    };
    for (Index u = 0; u < p.rows(); ++u) {
        used.assign(static_cast<std::size_t>(p.cols()), 0);
        augment(augment, u);
    }
    return match_col;
}

// Koenig construction: minimum vertex cover from a maximum matching.
inline LineCover koenig_cover(const Pattern& p, const std::vector<Index>& match_col) {
    std::vector<Index> match_row(static_cast<std::size_t>(p.cols()), -1);
    for (Index u = 0; u < p.rows(); ++u)
        if (match_col[static_cast<std::size_t>(u)] >= 0)
            match_row[static_cast<std::size_t>(match_col[static_cast<std::size_t>(u)])] = u;
    std::vector<char> zrow(static_cast<std::size_t>(p.rows()), 0);
    std::vector<char> zcol(static_cast<std::size_t>(p.cols()), 0);
    std::vector<Index> queue;
    for (Index u = 0; u < p.rows(); ++u)
        if (match_col[static_cast<std::size_t>(u)] < 0) {
            zrow[static_cast<std::size_t>(u)] = 1;
            queue.push_back(u);
        }
    while (!queue.empty()) {
        Index u = queue.back();
        queue.pop_back();
        for (Index v = 0; v < p.cols(); ++v) {
            if (!p.contains(u, v) || match_col[static_cast<std::size_t>(u)] == v) continue;
            if (zcol[static_cast<std::size_t>(v)]) continue;
            zcol[static_cast<std::size_t>(v)] = 1;
            Index w = match_row[static_cast<std::size_t>(v)];
            if (w >= 0 && !zrow[static_cast<std::size_t>(w)]) {
                zrow[static_cast<std::size_t>(w)] = 1;
                queue.push_back(w);
            }
        }
    }
    LineCover cover;
    for (Index u = 0; u < p.rows(); ++u)
        if (!zrow[static_cast<std::size_t>(u)]) cover.rows.push_back(u);
    for (Index v = 0; v < p.cols(); ++v)
        if (zcol[static_cast<std::size_t>(v)]) cover.cols.push_back(v);
    return cover;
}

}  // namespace detail

inline bool cover_covers(const Pattern& p, const LineCover& cover) {
    std::vector<char> rin(static_cast<std::size_t>(p.rows()), 0);
    std::vector<char> cin(static_cast<std::size_t>(p.cols()), 0);
    for (Index i : cover.rows) rin[static_cast<std::size_t>(i)] = 1;
    for (Index j : cover.cols) cin[static_cast<std::size_t>(j)] = 1;
    for (const auto& [i, j] : p.positions())
        if (!rin[static_cast<std::size_t>(i)] && !cin[static_cast<std::size_t>(j)]) return false;
    return true;
}

// Finds at most r rows plus at most r columns covering all specified
// positions.  The Koenig cover of a maximum matching is tried first; when
// it does not split into <= r rows and <= r columns, feasible splits are
// searched exhaustively (row subsets in size-then-lexicographic order,
// with the column set forced by the uncovered positions).
inline std::optional<LineCover> line_cover(const Pattern& p, Index r) {
    if (r < 0) throw DimensionError("line_cover: negative rank");
    const auto match_col = detail::max_matching(p);
    Index matching = 0;
    for (Index v : match_col) matching += v >= 0 ? 1 : 0;
    if (matching > 2 * r) return std::nullopt;  // any cover has >= matching lines

    LineCover koenig = detail::koenig_cover(p, match_col);
    if (static_cast<Index>(koenig.rows.size()) <= r && static_cast<Index>(koenig.cols.size()) <= r)
        return koenig;

    std::optional<LineCover> found;
    for (Index s = 0; s <= std::min(r, p.rows()) && !found; ++s) {
        detail::for_each_subset(p.rows(), s, [&](const std::vector<Index>& rset) {
            std::vector<char> rin(static_cast<std::size_t>(p.rows()), 0);
            for (Index i : rset) rin[static_cast<std::size_t>(i)] = 1;
            std::vector<char> cneed(static_cast<std::size_t>(p.cols()), 0);
            Index ccount = 0;
            for (Index i = 0; i < p.rows(); ++i) {
                if (rin[static_cast<std::size_t>(i)]) continue;
                for (Index j = 0; j < p.cols(); ++j)
                    if (p.contains(i, j) && !cneed[static_cast<std::size_t>(j)]) {
                        cneed[static_cast<std::size_t>(j)] = 1;
                        ++ccount;
                    }
            }
            if (ccount <= r) {
                LineCover cover;
                cover.rows = rset;
                for (Index j = 0; j < p.cols(); ++j)
                    if (cneed[static_cast<std::size_t>(j)]) cover.cols.push_back(j);
                found = std::move(cover);
                return false;
            }
            return true;
        });
    }
    return found;
}

}  // namespace minrank
