#pragma once

// Exact dense linear algebra over a field scalar: reduced row echelon form
// with deterministic pivoting (first nonzero scanning top-to-bottom,
// columns left-to-right), and the operations built on it.  Entry points
// accept arbitrary Eigen expressions and materialize one working copy.

#include <utility>
#include <vector>

#include "minrank/matrix.hpp"

namespace minrank {

// In-place reduced row echelon form; returns the pivot column indices.
// TODO: a fraction-free (Bareiss) variant would avoid most mpq
// canonicalization work on larger rational inputs.
template <class Scalar>
std::vector<Index> rref_in_place(DenseMatrix<Scalar>& m) {
    std::vector<Index> pivots;
    Index pr = 0;
    for (Index j = 0; j < m.cols() && pr < m.rows(); ++j) {
        Index prow = -1;
        for (Index i = pr; i < m.rows(); ++i) {
            if (!m(i, j).is_zero()) {
                prow = i;
                break;
            }
        }
        if (prow < 0) continue;
        if (prow != pr) m.row(pr).swap(m.row(prow));
        const Scalar inv_p = m(pr, j).inv();
        for (Index c = j; c < m.cols(); ++c) m(pr, c) = m(pr, c) * inv_p;
        for (Index i = 0; i < m.rows(); ++i) {
            if (i == pr || m(i, j).is_zero()) continue;
            const Scalar f = m(i, j);
            for (Index c = j; c < m.cols(); ++c) m(i, c) = m(i, c) - f * m(pr, c);
        }
        pivots.push_back(j);
        ++pr;
    }
    return pivots;
}

template <class Derived>
Index rank(const Eigen::MatrixBase<Derived>& m) {
    DenseMatrix<typename Derived::Scalar> work = m;
    return static_cast<Index>(rref_in_place(work).size());
}

template <class Derived>
Index kernel_dim(const Eigen::MatrixBase<Derived>& m) {
    return m.cols() - rank(m);
}

// Determinant by plain Gaussian elimination (product of pivots, sign from
// row swaps).
template <class Derived>
typename Derived::Scalar det(const Eigen::MatrixBase<Derived>& m_in) {
    using Scalar = typename Derived::Scalar;
    if (m_in.rows() != m_in.cols()) throw DimensionError("det: matrix not square");
    DenseMatrix<Scalar> w = m_in;
    const Index n = w.rows();
    Scalar d = Scalar(1);
    bool negate = false;
    for (Index j = 0; j < n; ++j) {
        Index prow = -1;
        for (Index i = j; i < n; ++i) {
            if (!w(i, j).is_zero()) {
                prow = i;
                break;
            }
        }
        if (prow < 0) return Scalar(0) * d;  // keep field attachment from d
        if (prow != j) {
            w.row(j).swap(w.row(prow));
            negate = !negate;
        }
        d = d * w(j, j);
        const Scalar inv_p = w(j, j).inv();
        for (Index i = j + 1; i < n; ++i) {
            if (w(i, j).is_zero()) continue;
            const Scalar f = w(i, j) * inv_p;
            for (Index c = j; c < n; ++c) w(i, c) = w(i, c) - f * w(j, c);
        }
    }
    return negate ? -d : d;
}

template <class Derived>
bool is_invertible(const Eigen::MatrixBase<Derived>& m) {
    return m.rows() == m.cols() && rank(m) == m.rows();
}

template <class Derived>
DenseMatrix<typename Derived::Scalar> inverse(const Eigen::MatrixBase<Derived>& m) {
    using Scalar = typename Derived::Scalar;
    if (m.rows() != m.cols()) throw DimensionError("inverse: matrix not square");
    const Index n = m.rows();
    DenseMatrix<Scalar> aug(n, 2 * n);
    aug.setZero();
    aug.block(0, 0, n, n) = m;
    for (Index i = 0; i < n; ++i) aug(i, n + i) = Scalar(1);
    const auto pivots = rref_in_place(aug);
    // Invertible iff every pivot lands in the left half, i.e. pivots = 0..n-1.
    if (static_cast<Index>(pivots.size()) != n || (n > 0 && pivots.back() >= n)) {
        Index rk = 0;
        for (Index p : pivots) rk += p < n ? 1 : 0;
        throw SingularError("inverse: matrix is singular (rank " + std::to_string(rk) +
                            " of " + std::to_string(n) + ")");
    }
    return aug.block(0, n, n, n);
}

// Basis of the right kernel, one column per free variable, in column order.
template <class Derived>
DenseMatrix<typename Derived::Scalar> kernel_basis(const Eigen::MatrixBase<Derived>& m) {
    using Scalar = typename Derived::Scalar;
    DenseMatrix<Scalar> r = m;
    const auto pivots = rref_in_place(r);
    std::vector<bool> is_pivot(static_cast<std::size_t>(m.cols()), false);
    for (Index p : pivots) is_pivot[static_cast<std::size_t>(p)] = true;
    DenseMatrix<Scalar> basis(m.cols(), m.cols() - static_cast<Index>(pivots.size()));
    basis.setZero();
    Index k = 0;
    for (Index f = 0; f < m.cols(); ++f) {
        if (is_pivot[static_cast<std::size_t>(f)]) continue;
        basis(f, k) = Scalar(1);
        for (std::size_t pi = 0; pi < pivots.size(); ++pi)
            basis(pivots[pi], k) = -r(static_cast<Index>(pi), f);
        ++k;
    }
    return basis;
}

// Solves A X = B exactly, with zeros in the non-pivot coordinates of every
// solution column.  Throws InconsistentError when some column of B is
// outside the column space of A.
template <class DA, class DB>
DenseMatrix<typename DA::Scalar> solve_linear(const Eigen::MatrixBase<DA>& a_in,
                                              const Eigen::MatrixBase<DB>& b_in) {
    using Scalar = typename DA::Scalar;
    const DenseMatrix<Scalar> a = a_in;
    const DenseMatrix<Scalar> b = b_in;
    if (a.rows() != b.rows()) throw DimensionError("solve_linear: row counts differ");
    DenseMatrix<Scalar> aug = hstack(a, b);
    const auto pivots = rref_in_place(aug);
    for (Index p : pivots)
        if (p >= a.cols())
            throw InconsistentError("solve_linear: right-hand side column " +
                                    std::to_string(p - a.cols()) +
                                    " outside the column space");
    DenseMatrix<Scalar> x(a.cols(), b.cols());
    x.setZero();
    for (std::size_t pi = 0; pi < pivots.size(); ++pi)
        for (Index j = 0; j < b.cols(); ++j)
            x(pivots[pi], j) = aug(static_cast<Index>(pi), a.cols() + j);
    return x;
}

// Minimum set of columns of B that, together with the columns of A, spans
// the column space of [A B].  Leftmost-greedy, hence deterministic: these
// are exactly the RREF pivot columns of [A B] that land in the B part.
template <class DA, class DB>
std::vector<Index> spanning_column_select(const Eigen::MatrixBase<DA>& a_in,
                                          const Eigen::MatrixBase<DB>& b_in) {
    using Scalar = typename DA::Scalar;
    const DenseMatrix<Scalar> a = a_in;
    const DenseMatrix<Scalar> b = b_in;
    if (a.rows() != b.rows()) throw DimensionError("spanning_column_select: row counts differ");
    DenseMatrix<Scalar> aug = hstack(a, b);
    std::vector<Index> selected;
    for (Index p : rref_in_place(aug))
        if (p >= a.cols()) selected.push_back(p - a.cols());
    return selected;
}

// Exact rank factorization M = F G with F of full column rank rank(M) and
// G of full row rank (the CR decomposition from the RREF).
template <class Derived>
std::pair<DenseMatrix<typename Derived::Scalar>, DenseMatrix<typename Derived::Scalar>>
factor_rank(const Eigen::MatrixBase<Derived>& m_in) {
    using Scalar = typename Derived::Scalar;
    const DenseMatrix<Scalar> m = m_in;
    DenseMatrix<Scalar> r = m;
    const auto pivots = rref_in_place(r);
    const Index rk = static_cast<Index>(pivots.size());
    DenseMatrix<Scalar> f = select_columns(m, pivots);
    DenseMatrix<Scalar> g = r.block(0, 0, rk, m.cols());
    return {std::move(f), std::move(g)};
}

}  // namespace minrank
