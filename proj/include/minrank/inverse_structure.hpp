#pragma once

// Relations between a matrix and its inverse: the triangular minimal-rank
// duality, the nullity theorem, the full-minimal-rank characterization of
// lower-triangular partial matrices, the band/semiseparable correspondence,
// and the rank-2 infeasibility report for the four-unknown 4x4 example.

#include <array>
#include <map>
#include <optional>
#include <sstream>
#include <utility>
#include <vector>

#include "minrank/completion.hpp"

namespace minrank {

// --- duality ----------------------------------------------------------------

struct DualityReport {
    Index n = 0;                      // size of the square matrix
    Index lower_min_rank = 0;         // block lower-triangular part of T
    Index strict_lower_min_rank = 0;  // block strictly-lower part of T^{-1}
    bool holds = false;               // lower + strict == n
    MinRankCertificate lower_certificate;
    MinRankCertificate strict_certificate;
};

// Checks lower_min_rank(T) + strict_lower_min_rank(T^{-1}) == N for an
// invertible T under the block partition bp (T_ij of size nu_i x mu_j; the
// inverse is partitioned with transposed sizes).  The strictly-lower part
// is a staircase pattern under a blocking with zero-size boundary blocks.
template <class Scalar>
DualityReport verify_duality(const DenseMatrix<Scalar>& t, const BlockPartition& bp) {
    if (t.rows() != t.cols()) throw DimensionError("verify_duality: matrix not square");
    bp.validate_for(t.rows(), t.cols());
    const DenseMatrix<Scalar> s = inverse(t);
    const FieldSpec fs = field_of_matrix(t);

    // Square block grid; pad the shorter side with zero-size blocks.
    BlockPartition grid = bp;
    while (grid.block_rows() < grid.block_cols()) grid.row_sizes.push_back(0);
    while (grid.block_cols() < grid.block_rows()) grid.col_sizes.push_back(0);

    const Pattern lower = expand_block_lower(grid);
    PartialMatrix<Scalar> lower_pm(fs, lower);
    for (const auto& [i, j] : lower.positions()) lower_pm.set(i, j, t(i, j));

    BlockPartition strict_bp;                        // {i > j} as {j' <= i'} with
    strict_bp.row_sizes = grid.col_sizes;            // a zero-size leading column
    strict_bp.row_sizes.push_back(0);                // block and trailing row block
    strict_bp.col_sizes.push_back(0);
    for (Index sz : grid.row_sizes) strict_bp.col_sizes.push_back(sz);

    const Pattern strict = expand_block_lower(strict_bp);
    PartialMatrix<Scalar> strict_pm(fs, strict);
    for (const auto& [i, j] : strict.positions()) strict_pm.set(i, j, s(i, j));

    DualityReport report;
    report.n = t.rows();
    report.lower_certificate = staircase_certificate(lower_pm, grid);
    report.strict_certificate = staircase_certificate(strict_pm, strict_bp);
    report.lower_min_rank = report.lower_certificate.min_rank;
    report.strict_lower_min_rank = report.strict_certificate.min_rank;
    report.holds = report.lower_min_rank + report.strict_lower_min_rank == report.n;
    return report;
}

// --- nullity ----------------------------------------------------------------

// With T = [A B; C D] invertible and T^{-1} = [P Q; R S], returns
// (dim ker C, dim ker R) for the splits A: row_split x col_split.  The two
// are equal for every invertible T.
template <class Scalar>
std::pair<Index, Index> nullity_check(const DenseMatrix<Scalar>& t, Index row_split,
                                      Index col_split) {
    if (t.rows() != t.cols()) throw DimensionError("nullity_check: matrix not square");
    const Index n = t.rows();
    if (row_split < 0 || row_split > n || col_split < 0 || col_split > n)
        throw DimensionError("nullity_check: split " + std::to_string(row_split) + "," +
                             std::to_string(col_split) + " outside 0.." + std::to_string(n));
    const DenseMatrix<Scalar> s = inverse(t);
    const DenseMatrix<Scalar> c = t.block(row_split, 0, n - row_split, col_split);
    const DenseMatrix<Scalar> r = s.block(col_split, 0, n - col_split, row_split);
    return {kernel_dim(c), kernel_dim(r)};
}

// --- full minimal rank of a lower-triangular partial matrix ------------------

// A scalar lower-triangular partial matrix has minimal rank n exactly when
// its diagonal is nonzero and its strictly lower part vanishes.  The
// structural predicate is returned; it is cross-checked internally against
// the telescoping rank formula.
template <class Scalar>
bool prop4_check(const PartialMatrix<Scalar>& pm) {
    const Index n = pm.rows();
    if (pm.cols() != n || pm.pattern() != Pattern::lower_triangular(n))
        throw NotLowerTriangularError("prop4_check expects the full scalar lower-triangular pattern");
    bool structural = true;
    for (Index i = 0; i < n && structural; ++i) {
        if (pm.at(i, i).is_zero()) structural = false;
        for (Index j = 0; j < i && structural; ++j)
            if (!pm.at(i, j).is_zero()) structural = false;
    }
    const bool by_formula = staircase_min_rank(pm) == n;
    if (structural != by_formula)
        throw Error("prop4_check: structural predicate disagrees with the rank formula");
    return structural;
}

// --- band / semiseparable correspondence --------------------------------------

// True iff every entry strictly above the p-th superdiagonal vanishes and
// every p-th superdiagonal entry is nonzero.
template <class Scalar>
bool asplund_check(const DenseMatrix<Scalar>& a, Index p) {
    if (a.rows() != a.cols()) throw DimensionError("asplund_check: matrix not square");
    if (p < 0) throw DimensionError("asplund_check: negative band width");
    const Index n = a.rows();
    for (Index i = 0; i < n; ++i)
        for (Index j = i + p + 1; j < n; ++j)
            if (!a(i, j).is_zero()) return false;
    for (Index i = 0; i + p < n; ++i)
        if (a(i, i + p).is_zero()) return false;
    return true;
}

// Rank-p generators of a region of a matrix: (F G)_{ij} equals the target
// on every position of the region.
template <class Scalar>
struct Generators {
    DenseMatrix<Scalar> f;  // N x p
    DenseMatrix<Scalar> g;  // p x M
    Pattern region;
};

// For B with {b_ij : i < j + p} of minimal rank at most p (the inverses of
// invertible band matrices with nonzero p-th superdiagonal), produces F
// (N x p) and G (p x N) with (FG)_{ij} = b_ij on the region.  F and G are
// padded with zero columns/rows when the achieved rank is below p.
template <class Scalar>
Generators<Scalar> asplund_generators(const DenseMatrix<Scalar>& b, Index p) {
    if (b.rows() != b.cols()) throw DimensionError("asplund_generators: matrix not square");
    if (p < 0) throw DimensionError("asplund_generators: negative band width");
    const Index n = b.rows();
    const FieldSpec fs = field_of_matrix(b);

    Pattern region(n, n);
    for (Index i = 0; i < n; ++i)
        for (Index j = 0; j < n; ++j)
            if (i < j + p) region.add(i, j);

    // The region is upper-right closed, so its transpose is a staircase.
    PartialMatrix<Scalar> pm(fs, region);
    for (const auto& [i, j] : region.positions()) pm.set(i, j, b(i, j));
    const PartialMatrix<Scalar> pmt = pm.transposed();
    const Index region_rank = staircase_min_rank(pmt);
    if (region_rank > p)
        throw RegionRankTooHighError("region {i < j + " + std::to_string(p) +
                                     "} has minimal rank " + std::to_string(region_rank) +
                                     " > " + std::to_string(p));
    const DenseMatrix<Scalar> completed = staircase_complete(pmt).transpose();
    auto [f, g] = factor_rank(completed);

    Generators<Scalar> out{DenseMatrix<Scalar>::Zero(n, p), DenseMatrix<Scalar>::Zero(p, n),
                           region};
    out.f.block(0, 0, n, f.cols()) = f;
    out.g.block(0, 0, g.rows(), n) = g;
    return out;
}

// For an invertible upper Hessenberg T with nonzero subdiagonal, the lower
// part (including the diagonal) of T^{-1} is u_i v_j.  Normalization: the
// first nonzero entry of v is 1.
template <class Scalar>
std::pair<DenseVector<Scalar>, DenseVector<Scalar>> hessenberg_semiseparable(
    const DenseMatrix<Scalar>& t) {
    if (t.rows() != t.cols()) throw DimensionError("hessenberg_semiseparable: matrix not square");
    const Index n = t.rows();
    for (Index i = 0; i < n; ++i)
        for (Index j = 0; j + 1 < i; ++j)
            if (!t(i, j).is_zero())
                throw NotHessenbergError("nonzero entry below the subdiagonal at (" +
                                         std::to_string(i + 1) + "," + std::to_string(j + 1) + ")");
    for (Index i = 0; i + 1 < n; ++i)
        if (t(i + 1, i).is_zero())
            throw NotHessenbergError("zero subdiagonal entry at (" + std::to_string(i + 2) + "," +
                                     std::to_string(i + 1) + ")");
    const DenseMatrix<Scalar> s = inverse(t);
    const FieldSpec fs = field_of_matrix(t);

    PartialMatrix<Scalar> lower(fs, Pattern::lower_triangular(n));
    for (Index i = 0; i < n; ++i)
        for (Index j = 0; j <= i; ++j) lower.set(i, j, s(i, j));
    if (n > 0 && staircase_min_rank(lower) != 1)
        throw Error("hessenberg_semiseparable: lower part of the inverse is not of minimal rank 1");

    const DenseMatrix<Scalar> completed = staircase_complete(lower);
    auto [f, g] = factor_rank(completed);  // n x 1 and 1 x n
    DenseVector<Scalar> u = DenseVector<Scalar>::Zero(n);
    DenseVector<Scalar> v = DenseVector<Scalar>::Zero(n);
    Index first_nonzero = -1;
    for (Index j = 0; j < n && first_nonzero < 0; ++j)
        if (!g(0, j).is_zero()) first_nonzero = j;
    const Scalar scale = first_nonzero >= 0 ? g(0, first_nonzero) : Scalar(1);
    for (Index i = 0; i < n; ++i) {
        u(i) = f(i, 0) * scale;
        v(i) = g(0, i) / scale;
    }
    return {std::move(u), std::move(v)};
}

// --- the four-unknown counterexample ------------------------------------------

// Polynomials in the four unknowns x, y, z, w with exact coefficients.
template <class Scalar>
class MultiPoly {
public:
    using Mono = std::array<int, 4>;  // exponents of x, y, z, w

    MultiPoly() = default;
    explicit MultiPoly(const Scalar& c) { add_term(Mono{0, 0, 0, 0}, c); }

    static MultiPoly variable(int index, const Scalar& one) {
        MultiPoly p;
        Mono m{0, 0, 0, 0};
        m[static_cast<std::size_t>(index)] = 1;
        p.add_term(m, one);
        return p;
    }

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const {
        return terms_.empty() ||
               (terms_.size() == 1 && terms_.begin()->first == Mono{0, 0, 0, 0});
    }
    Scalar constant_value(const Scalar& zero) const {
        auto it = terms_.find(Mono{0, 0, 0, 0});
        return it == terms_.end() ? zero : it->second;
    }

    Scalar coefficient(const Mono& m, const Scalar& zero) const {
        auto it = terms_.find(m);
        return it == terms_.end() ? zero : it->second;
    }

    MultiPoly operator+(const MultiPoly& o) const {
        MultiPoly r = *this;
        for (const auto& [m, c] : o.terms_) r.add_term(m, c);
        return r;
    }
    MultiPoly operator-(const MultiPoly& o) const {
        MultiPoly r = *this;
        for (const auto& [m, c] : o.terms_) r.add_term(m, -c);
        return r;
    }
    MultiPoly operator*(const MultiPoly& o) const {
        MultiPoly r;
        for (const auto& [ma, ca] : terms_)
            for (const auto& [mb, cb] : o.terms_) {
                Mono m;
                for (std::size_t k = 0; k < 4; ++k) m[k] = ma[k] + mb[k];
                r.add_term(m, ca * cb);
            }
        return r;
    }

    // Terms in descending graded-lexicographic order, e.g. "x*y - 3*x + 10".
    std::string to_string() const {
        if (terms_.empty()) return "0";
        static const char* names[4] = {"x", "y", "z", "w"};
        std::vector<std::pair<Mono, Scalar>> ordered(terms_.begin(), terms_.end());
        std::sort(ordered.begin(), ordered.end(), [](const auto& a, const auto& b) {
            int da = a.first[0] + a.first[1] + a.first[2] + a.first[3];
            int db = b.first[0] + b.first[1] + b.first[2] + b.first[3];
            if (da != db) return da > db;
            return a.first > b.first;
        });
        std::ostringstream os;
        bool first = true;
        for (const auto& [m, c] : ordered) {
            std::string cs = c.to_string();
            bool negative = !cs.empty() && cs[0] == '-';
            if (first) {
                if (negative) os << "-";
            } else {
                os << (negative ? " - " : " + ");
            }
            if (negative) cs = cs.substr(1);
            first = false;
            std::string vars;
            for (std::size_t k = 0; k < 4; ++k)
                for (int e = 0; e < m[k]; ++e) vars += vars.empty() ? names[k] : ("*" + std::string(names[k]));
            if (vars.empty()) {
                os << cs;
            } else if (cs == "1") {
                os << vars;
            } else {
                os << cs << "*" << vars;
            }
        }
        return os.str();
    }

private:
    void add_term(const Mono& m, const Scalar& c) {
        auto it = terms_.find(m);
        if (it == terms_.end()) {
            if (!c.is_zero()) terms_.emplace(m, c);
            return;
        }
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }

    std::map<Mono, Scalar> terms_;
};

// The 4x4 partial matrix with unknowns x, y, z, w at (1,3), (2,4), (3,1),
// (4,2) (1-based) and the fixed data 6,3,1,... elsewhere.
template <class Scalar>
PartialMatrix<Scalar> counterexample_partial_matrix(const FieldSpec& fs) {
    const long grid[4][4] = {{6, 3, -1, 1}, {3, 1, 1, -1}, {-1, 1, 2, 3}, {1, -1, 1, 1}};
    const bool unknown[4][4] = {{false, false, true, false},
                                {false, false, false, true},
                                {true, false, false, false},
                                {false, true, false, false}};
    PartialMatrix<Scalar> pm(fs, Pattern(4, 4));
    for (Index i = 0; i < 4; ++i)
        for (Index j = 0; j < 4; ++j)
            if (!unknown[i][j]) pm.set(i, j, make_scalar<Scalar>(fs, grid[i][j]));
    return pm;
}

template <class Scalar>
struct CounterexampleReport {
    FieldSpec field = FieldSpec::rationals();
    MultiPoly<Scalar> upper_equation;  // from the (1,2) entry of the residual
    MultiPoly<Scalar> lower_equation;  // from the (2,1) entry
    Scalar inconsistency_gap;          // upper - lower, a constant
    bool rank2_infeasible = false;
    std::optional<Index> oracle_min_rank;
};

// Derives the two rank-2 consistency equations of the example and reports
// their constant difference.  A rank-2 completion forces
//   det(X) * Z - B adj(X) A = 0,  X = [x 1; 1 y], Z = [z 1; 1 w],
//   B = [2 3; 1 1], A = [6 3; 3 1];
// the off-diagonal entries do not involve z, w and differ by a nonzero
// constant, so no completion of rank 2 exists.  Over a prime field the
// exhaustive oracle is run as well.
template <class Scalar>
CounterexampleReport<Scalar> counterexample_report(const FieldSpec& fs) {
    auto sc = [&](long v) { return make_scalar<Scalar>(fs, v); };

    // Nondegeneracy of the data: the fully specified 2x2 determinants and
    // the separation of the two equations' constants.
    const std::pair<long, long> required[] = {{6, 9}, {6, 1}, {3, 1}, {9, 1}, {8, 10}};
    for (const auto& [lhs, rhs] : required)
        if (sc(lhs) == sc(rhs))
            throw DegenerateFieldError("field " + fs.to_string() + " collapses " +
                                       std::to_string(lhs) + " and " + std::to_string(rhs));

    using P = MultiPoly<Scalar>;
    auto c = [&](long v) { return P(sc(v)); };
    const P x = P::variable(0, sc(1));
    const P y = P::variable(1, sc(1));

    // 2x2 symbolic blocks of the example: A = rows 1-2 x cols 1-2,
    // B = rows 3-4 x cols 3-4, X = rows 1-2 x cols 3-4 (holding x, y),
    // Z = rows 3-4 x cols 1-2 (holding z, w).
    const P a11 = c(6), a12 = c(3), a21 = c(3), a22 = c(1);
    const P b11 = c(2), b12 = c(3), b21 = c(1), b22 = c(1);
    const P x11 = x, x12 = c(1), x21 = c(1), x22 = y;
    const P z12 = c(1), z21 = c(1);

    const P det_x = x11 * x22 - x12 * x21;
    // adj(X) = [x22 -x12; -x21 x11]; E = det(X) Z - B adj(X) A.  The
    // off-diagonal entries of E do not involve z or w.
    const P m11 = b11 * x22 - b12 * x21, m12 = b12 * x11 - b11 * x12;
    const P m21 = b21 * x22 - b22 * x21, m22 = b22 * x11 - b21 * x12;
    const P e12 = det_x * z12 - (m11 * a12 + m12 * a22);
    const P e21 = det_x * z21 - (m21 * a11 + m22 * a21);

    CounterexampleReport<Scalar> report;
    report.field = fs;
    report.upper_equation = e12;
    report.lower_equation = e21;
    const P gap = e12 - e21;
    if (!gap.is_constant())
        throw Error("counterexample_report: equation difference is not constant");
    report.inconsistency_gap = gap.constant_value(sc(0));
    report.rank2_infeasible = !report.inconsistency_gap.is_zero();

    if constexpr (scalar_traits<Scalar>::is_prime_field) {
        report.oracle_min_rank =
            exhaustive_min_rank(counterexample_partial_matrix<Scalar>(fs));
    }
    return report;
}

}  // namespace minrank
