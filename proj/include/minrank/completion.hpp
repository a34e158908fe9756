#pragma once

// Minimal-rank machinery for staircase and banded patterns: the telescoping
// rank formula with its certificate, the constructive completion, the
// exhaustive finite-field oracle, and cross / line-cover completions.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "minrank/linalg.hpp"
#include "minrank/partial_matrix.hpp"

namespace minrank {

// Per-step rank terms proving a staircase minimal rank:
//   forward_ranks a_i  = rank of (block rows i..n) x (block cols 1..i)
//   backward_ranks b_i = rank of (block rows i+1..n) x (block cols 1..i)
//   min_rank = sum a_i - sum b_i, with increments s_i = a_i - b_{i-1} >= 0.
struct MinRankCertificate {
    BlockPartition blocking;
    std::vector<Index> forward_ranks;
    std::vector<Index> backward_ranks;
    Index min_rank = 0;

    std::vector<Index> increments() const {
        std::vector<Index> s;
        if (forward_ranks.empty()) return s;
        s.push_back(forward_ranks[0]);
        for (std::size_t i = 1; i < forward_ranks.size(); ++i)
            s.push_back(forward_ranks[i] - backward_ranks[i - 1]);
        return s;
    }

    bool consistent() const {
        Index total = 0;
        for (Index a : forward_ranks) total += a;
        for (Index b : backward_ranks) total -= b;
        if (total != min_rank) return false;
        for (Index s : increments())
            if (s < 0) return false;
        return true;
    }
};

namespace detail {

template <class Scalar>
void require_staircase_values(const PartialMatrix<Scalar>& pm, const BlockPartition& bp) {
    bp.validate_for(pm.rows(), pm.cols());
    if (expand_block_lower(bp) != pm.pattern())
        throw NotStaircaseError("block partition does not reproduce the pattern");
}

}  // namespace detail

// Telescoping rank certificate under an explicit blocking.  The blocking
// must expand to exactly the pattern of pm.
template <class Scalar>
MinRankCertificate staircase_certificate(const PartialMatrix<Scalar>& pm,
                                         const BlockPartition& bp) {
    detail::require_staircase_values(pm, bp);
    const auto ro = bp.row_offsets();
    const auto co = bp.col_offsets();
    const Index n = bp.block_rows();
    const Index rows = pm.rows();
    const auto& v = pm.raw_values();

    MinRankCertificate cert;
    cert.blocking = bp;
    for (Index i = 0; i < n; ++i) {
        const Index r0 = ro[static_cast<std::size_t>(i)];
        const Index w = co[static_cast<std::size_t>(i) + 1];
        cert.forward_ranks.push_back(rank(v.block(r0, 0, rows - r0, w)));
        if (i + 1 < n) {
            const Index r1 = ro[static_cast<std::size_t>(i) + 1];
            cert.backward_ranks.push_back(rank(v.block(r1, 0, rows - r1, w)));
        }
    }
    cert.min_rank = 0;
    for (Index a : cert.forward_ranks) cert.min_rank += a;
    for (Index b : cert.backward_ranks) cert.min_rank -= b;
    return cert;
}

template <class Scalar>
MinRankCertificate staircase_certificate(const PartialMatrix<Scalar>& pm) {
    auto bp = staircase_blocking(pm.pattern());
    if (!bp) throw NotStaircaseError("pattern is not lower-left closed");
    return staircase_certificate(pm, *bp);
}

template <class Scalar>
Index staircase_min_rank(const PartialMatrix<Scalar>& pm) {
    return staircase_certificate(pm).min_rank;
}

namespace detail {

// One reduction step: with A (top, known), C and D (bottom, known) stacked
// as [A ?; C D], fill the top-right block.  The spanning columns of D
// relative to C get zeros on top; every other column of D is written as a
// combination of the completed columns of [A; C] and the selected ones,
// and its top is filled accordingly.
template <class Scalar>
DenseMatrix<Scalar> complete_two_block_step(const DenseMatrix<Scalar>& a,
                                            const DenseMatrix<Scalar>& c,
                                            const DenseMatrix<Scalar>& d) {
    const std::vector<Index> sel = spanning_column_select(c, d);
    DenseMatrix<Scalar> x = DenseMatrix<Scalar>::Zero(a.rows(), d.cols());
    std::vector<char> selected(static_cast<std::size_t>(d.cols()), 0);
    for (Index j : sel) selected[static_cast<std::size_t>(j)] = 1;

    const DenseMatrix<Scalar> basis_bottom = hstack(c, select_columns(d, sel));
    DenseMatrix<Scalar> basis_top = hstack(
        a, DenseMatrix<Scalar>::Zero(a.rows(), static_cast<Index>(sel.size())).eval());

    for (Index j = 0; j < d.cols(); ++j) {
        if (selected[static_cast<std::size_t>(j)]) continue;  // zeros already in place
        const DenseMatrix<Scalar> coeff = solve_linear(basis_bottom, d.col(j));
        x.col(j) = basis_top * coeff;
    }
    return x;
}

}  // namespace detail

// Constructive minimal-rank completion of a staircase partial matrix.
// Block rows are processed bottom-up: at each step the two bottom block
// rows of the remaining problem are folded into a single fully specified
// one by the two-block completion step.
template <class Scalar>
DenseMatrix<Scalar> staircase_complete(const PartialMatrix<Scalar>& pm) {
    auto bp_opt = staircase_blocking(pm.pattern());
    if (!bp_opt) throw NotStaircaseError("pattern is not lower-left closed");
    const BlockPartition& bp = *bp_opt;
    const auto ro = bp.row_offsets();
    const auto co = bp.col_offsets();
    const Index n = bp.block_rows();
    const Index rows = pm.rows();
    const Index cols = pm.cols();

    DenseMatrix<Scalar> full = pm.raw_values();
    for (Index k = n - 1; k >= 1; --k) {
        const Index top0 = ro[static_cast<std::size_t>(k) - 1];
        const Index bot0 = ro[static_cast<std::size_t>(k)];
        const Index split = co[static_cast<std::size_t>(k)];
        if (bot0 == rows || split == cols) continue;  // nothing unknown in this step
        const auto a = full.block(top0, 0, bot0 - top0, split);
        const auto c = full.block(bot0, 0, rows - bot0, split);
        const auto d = full.block(bot0, split, rows - bot0, cols - split);
        full.block(top0, split, bot0 - top0, cols - split) =
            detail::complete_two_block_step<Scalar>(a, c, d);
    }
    return full;
}

namespace detail {

inline std::uint64_t checked_pow(std::uint64_t base, Index exp, std::uint64_t cap) {
    std::uint64_t r = 1;
    for (Index i = 0; i < exp; ++i) {
        if (r > cap / base) return cap + 1;
        r *= base;
    }
    return r;
}

}  // namespace detail

// Minimum rank over all completions, by exhaustive enumeration of the
// unknown entries over a prime field.  Deterministic; refuses when the
// assignment count exceeds max_assignments.
template <class Scalar>
Index exhaustive_min_rank(const PartialMatrix<Scalar>& pm,
                          std::uint64_t max_assignments = 1'000'000) {
    if constexpr (!scalar_traits<Scalar>::is_prime_field) {
        throw FieldNotFiniteError("exhaustive_min_rank requires a prime field, not " +
                                  pm.field().to_string());
    } else {
        const std::uint64_t p = pm.field().modulus();
        const auto unknowns = pm.unknown_positions();
        const Index u = static_cast<Index>(unknowns.size());
        const std::uint64_t count = detail::checked_pow(p, u, max_assignments);
        if (count > max_assignments)
            throw TooLargeError("exhaustive_min_rank: " + std::to_string(p) + "^" +
                                std::to_string(u) + " assignments exceed cap " +
                                std::to_string(max_assignments));

        DenseMatrix<Scalar> work = pm.raw_values();
        std::vector<std::uint64_t> digit(static_cast<std::size_t>(u), 0);
        for (const auto& [i, j] : unknowns) work(i, j) = Scalar(0, p);

        Index best = std::min(pm.rows(), pm.cols());
        for (std::uint64_t a = 0;; ++a) {
            best = std::min(best, rank(work));
            if (best == 0) break;
            // odometer step
            Index d = 0;
            while (d < u) {
                auto& dig = digit[static_cast<std::size_t>(d)];
                const auto& [i, j] = unknowns[static_cast<std::size_t>(d)];
                if (++dig < p) {
                    work(i, j) = Scalar(static_cast<long long>(dig), p);
                    break;
                }
                dig = 0;
                work(i, j) = Scalar(0, p);
                ++d;
            }
            if (d == u) break;
        }
        return best;
    }
}

// Completes a cross pattern (fully specified cover rows and columns with an
// invertible overlap W) to rank exactly |cover rows|: the unknown block is
// C W^{-1} R.
template <class Scalar>
DenseMatrix<Scalar> cross_complete(const PartialMatrix<Scalar>& pm, const LineCover& cover) {
    std::vector<char> rin(static_cast<std::size_t>(pm.rows()), 0);
    std::vector<char> cin(static_cast<std::size_t>(pm.cols()), 0);
    for (Index i : cover.rows) rin[static_cast<std::size_t>(i)] = 1;
    for (Index j : cover.cols) cin[static_cast<std::size_t>(j)] = 1;

    for (Index i = 0; i < pm.rows(); ++i)
        for (Index j = 0; j < pm.cols(); ++j) {
            const bool in_cover = rin[static_cast<std::size_t>(i)] || cin[static_cast<std::size_t>(j)];
            if (in_cover && !pm.is_specified(i, j))
                throw IncompleteCoverLinesError("cover position (" + std::to_string(i + 1) + "," +
                                                std::to_string(j + 1) + ") is unspecified");
            if (!in_cover && pm.is_specified(i, j))
                throw SpecifiedOutsideCoverError("specified position (" + std::to_string(i + 1) +
                                                 "," + std::to_string(j + 1) +
                                                 ") lies outside the cover");
        }

    if (cover.rows.size() != cover.cols.size())
        throw OverlapSingularError("overlap block is not square (" +
                                   std::to_string(cover.rows.size()) + " rows, " +
                                   std::to_string(cover.cols.size()) + " cols)");

    std::vector<Index> other_rows, other_cols;
    for (Index i = 0; i < pm.rows(); ++i)
        if (!rin[static_cast<std::size_t>(i)]) other_rows.push_back(i);
    for (Index j = 0; j < pm.cols(); ++j)
        if (!cin[static_cast<std::size_t>(j)]) other_cols.push_back(j);

    const auto& v = pm.raw_values();
    const DenseMatrix<Scalar> w = submatrix(v, cover.rows, cover.cols);
    DenseMatrix<Scalar> w_inv;
    try {
        w_inv = inverse(w);
    } catch (const SingularError&) {
        throw OverlapSingularError("overlap block of the cover is singular");
    }
    const DenseMatrix<Scalar> c = submatrix(v, other_rows, cover.cols);
    const DenseMatrix<Scalar> r = submatrix(v, cover.rows, other_cols);
    const DenseMatrix<Scalar> fill = c * w_inv * r;

    DenseMatrix<Scalar> full = v;
    for (std::size_t a = 0; a < other_rows.size(); ++a)
        for (std::size_t b = 0; b < other_cols.size(); ++b)
            full(other_rows[a], other_cols[b]) = fill(static_cast<Index>(a), static_cast<Index>(b));
    return full;
}

namespace detail {

// Greedy deterministic fill of the unspecified overlap entries: row-major
// order, candidate values 0, 1, 2, ... (all residues over GF(p)); a value
// is kept when every leading principal minor it completes is invertible.
template <class Scalar>
void fill_overlap(DenseMatrix<Scalar>& w, const std::vector<Position>& holes,
                  const FieldSpec& fs) {
    const Index r = w.rows();
    std::vector<std::vector<char>> known(static_cast<std::size_t>(r),
                                         std::vector<char>(static_cast<std::size_t>(r), 1));
    for (const auto& [i, j] : holes) known[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = 0;

    auto minor_complete = [&](Index k) {
        for (Index i = 0; i < k; ++i)
            for (Index j = 0; j < k; ++j)
                if (!known[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]) return false;
        return true;
    };

    const std::uint64_t tries =
        fs.is_prime_field() ? fs.modulus() : static_cast<std::uint64_t>(2 * r + 2);

    for (const auto& [i, j] : holes) {
        // A leading k x k minor contains (i,j) iff k > max(i,j); the ones
        // complete after this assignment are exactly the newly completed
        // ones, since an already-complete minor cannot contain a hole.
        const Index kmin = std::max(i, j) + 1;
        known[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = 1;
        std::vector<Index> to_check;
        for (Index k = kmin; k <= r; ++k)
            if (minor_complete(k)) to_check.push_back(k);
        bool placed = false;
        for (std::uint64_t v = 0; v < tries && !placed; ++v) {
            w(i, j) = make_scalar<Scalar>(fs, static_cast<long>(v));
            placed = true;
            for (Index k : to_check)
                if (rank(w.topLeftCorner(k, k)) != k) {
                    placed = false;
                    break;
                }
        }
        if (!placed)
            throw CoverFillFailedError("no value for overlap entry (" + std::to_string(i + 1) +
                                       "," + std::to_string(j + 1) +
                                       ") keeps the leading minors invertible");
    }
}

}  // namespace detail

// Rank-r completion of a pattern coverable by r lines: finds a cover, pads
// it to exactly r rows and r columns, fills the unspecified cover entries
// (zeros off the overlap, an invertibility-preserving greedy fill on the
// overlap) and finishes with cross_complete.  The result matches every
// originally specified entry and has rank exactly r.
template <class Scalar>
DenseMatrix<Scalar> generic_rank_r_complete(const PartialMatrix<Scalar>& pm, Index r) {
    if (r < 0 || r > std::min(pm.rows(), pm.cols()))
        throw NoCoverError("rank " + std::to_string(r) + " completion impossible for " +
                           std::to_string(pm.rows()) + "x" + std::to_string(pm.cols()));
    auto cover_opt = line_cover(pm.pattern(), r);
    if (!cover_opt)
        throw NoCoverError("pattern admits no cover by " + std::to_string(r) + " rows and " +
                           std::to_string(r) + " columns");
    LineCover cover = *cover_opt;

    // Pad to exactly r rows and r columns (smallest indices first).
    std::vector<char> rin(static_cast<std::size_t>(pm.rows()), 0);
    std::vector<char> cin(static_cast<std::size_t>(pm.cols()), 0);
    for (Index i : cover.rows) rin[static_cast<std::size_t>(i)] = 1;
    for (Index j : cover.cols) cin[static_cast<std::size_t>(j)] = 1;
    for (Index i = 0; i < pm.rows() && static_cast<Index>(cover.rows.size()) < r; ++i)
        if (!rin[static_cast<std::size_t>(i)]) {
            cover.rows.push_back(i);
            rin[static_cast<std::size_t>(i)] = 1;
        }
    for (Index j = 0; j < pm.cols() && static_cast<Index>(cover.cols.size()) < r; ++j)
        if (!cin[static_cast<std::size_t>(j)]) {
            cover.cols.push_back(j);
            cin[static_cast<std::size_t>(j)] = 1;
        }
    std::sort(cover.rows.begin(), cover.rows.end());
    std::sort(cover.cols.begin(), cover.cols.end());

    // Complete the overlap so it is invertible, then zero-fill the rest of
    // the cover lines.
    PartialMatrix<Scalar> crossed = pm;
    DenseMatrix<Scalar> w = submatrix(pm.raw_values(), cover.rows, cover.cols);
    std::vector<Position> holes;
    for (std::size_t a = 0; a < cover.rows.size(); ++a)
        for (std::size_t b = 0; b < cover.cols.size(); ++b)
            if (!pm.is_specified(cover.rows[a], cover.cols[b]))
                holes.emplace_back(static_cast<Index>(a), static_cast<Index>(b));
    detail::fill_overlap(w, holes, pm.field());
    for (std::size_t a = 0; a < cover.rows.size(); ++a)
        for (std::size_t b = 0; b < cover.cols.size(); ++b)
            if (!pm.is_specified(cover.rows[a], cover.cols[b]))
                crossed.set(cover.rows[a], cover.cols[b],
                            w(static_cast<Index>(a), static_cast<Index>(b)));

    const Scalar zero = make_scalar<Scalar>(pm.field(), 0);
    for (Index i = 0; i < pm.rows(); ++i)
        for (Index j = 0; j < pm.cols(); ++j) {
            const bool in_cover = rin[static_cast<std::size_t>(i)] || cin[static_cast<std::size_t>(j)];
            if (in_cover && !crossed.is_specified(i, j)) crossed.set(i, j, zero);
        }

    try {
        return cross_complete(crossed, cover);
    } catch (const OverlapSingularError& e) {
        // A fully specified singular overlap: no fill exists at all.
        throw CoverFillFailedError(e.what());
    }
}

// --- banded patterns --------------------------------------------------------

struct BandProfile {
    Index lo;  // min of j - i over the band
    Index hi;  // max of j - i over the band
};

// A pattern is banded when it equals {(i,j) : lo <= j - i <= hi} for the
// extreme diagonal offsets of its specified positions.  Empty patterns are
// banded with an empty band.
inline std::optional<BandProfile> banded_profile(const Pattern& p) {
    const auto pos = p.positions();
    if (pos.empty()) return BandProfile{0, -1};
    Index lo = p.cols(), hi = -p.rows();
    for (const auto& [i, j] : pos) {
        lo = std::min(lo, j - i);
        hi = std::max(hi, j - i);
    }
    if (p != Pattern::banded(p.rows(), p.cols(), lo, hi)) return std::nullopt;
    return BandProfile{lo, hi};
}

// Maximal staircase windows of a band.  Lower windows are rows [0, a) x
// cols [max(0, a-1+lo), M); upper windows are the transposed family.  Each
// window restricted to the band is a staircase pattern on the window.
struct BandWindow {
    Index row0, row1;  // [row0, row1)
    Index col0, col1;  // [col0, col1)
    bool transposed;   // true: staircase after transposition
};

inline std::vector<BandWindow> banded_staircase_windows(const Pattern& p,
                                                        const BandProfile& band) {
    std::vector<BandWindow> windows;
    if (band.hi < band.lo) return windows;
    const Index rows = p.rows();
    const Index cols = p.cols();
    for (Index a = 1; a <= rows; ++a) {
        const Index c0 = std::max<Index>(0, a - 1 + band.lo);
        if (c0 >= cols) break;
        // Dominated when the next window keeps the same (clamped) left edge.
        if (a < rows && a + band.lo <= 0) continue;
        windows.push_back({0, a, c0, cols, false});
    }
    for (Index b = 1; b <= cols; ++b) {
        const Index r0 = std::max<Index>(0, b - 1 - band.hi);
        if (r0 >= rows) break;
        if (b < cols && b - band.hi <= 0) continue;
        windows.push_back({r0, rows, 0, b, true});
    }
    return windows;
}

// Maximum of the staircase minimal ranks over the maximal triangular
// subpatterns of a banded pattern.  Always a lower bound for the minimal
// rank; equals it for banded patterns (validated against the exhaustive
// oracle at desk scale).
template <class Scalar>
Index banded_min_rank_bound(const PartialMatrix<Scalar>& pm) {
    const auto band = banded_profile(pm.pattern());
    if (!band)
        throw NotBandedError("pattern is not a full diagonal band");
    Index bound = 0;
    for (const auto& win : banded_staircase_windows(pm.pattern(), *band)) {
        PartialMatrix<Scalar> sub(pm.field(), Pattern(win.row1 - win.row0, win.col1 - win.col0));
        for (Index i = win.row0; i < win.row1; ++i)
            for (Index j = win.col0; j < win.col1; ++j)
                if (pm.is_specified(i, j)) sub.set(i - win.row0, j - win.col0, pm.at(i, j));
        if (win.transposed) sub = sub.transposed();
        bound = std::max(bound, staircase_min_rank(sub));
    }
    return bound;
}

}  // namespace minrank
