#pragma once

// Dense exact matrices are plain Eigen dynamic matrices over an exact
// scalar.  Zero-dimension matrices are first-class values throughout.

#include <initializer_list>
#include <vector>

#include <Eigen/Core>

#include "minrank/errors.hpp"
#include "minrank/field.hpp"

namespace minrank {

using Index = Eigen::Index;

template <class Scalar>
using DenseMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

template <class Scalar>
using DenseVector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

template <class Scalar>
DenseMatrix<Scalar> make_matrix(std::initializer_list<std::initializer_list<long>> rows_init,
                                const FieldSpec& fs = FieldSpec::rationals()) {
    const Index rows = static_cast<Index>(rows_init.size());
    const Index cols = rows == 0 ? 0 : static_cast<Index>(rows_init.begin()->size());
    DenseMatrix<Scalar> m(rows, cols);
    Index i = 0;
    for (const auto& row : rows_init) {
        if (static_cast<Index>(row.size()) != cols)
            throw DimensionError("ragged initializer for matrix");
        Index j = 0;
        for (long v : row) m(i, j++) = make_scalar<Scalar>(fs, v);
        ++i;
    }
    return m;
}

// Field of a matrix, read off its entries.  For prime-field matrices the
// first attached entry decides; a matrix of only detached constants has no
// recoverable modulus.
template <class Scalar>
FieldSpec field_of_matrix(const DenseMatrix<Scalar>& m) {
    if constexpr (!scalar_traits<Scalar>::is_prime_field) {
        (void)m;
        return FieldSpec::rationals();
    } else {
        for (Index i = 0; i < m.rows(); ++i)
            for (Index j = 0; j < m.cols(); ++j)
                if (m(i, j).attached()) return FieldSpec::prime_field(m(i, j).modulus());
        throw FieldError("cannot recover a prime-field modulus from detached constants");
    }
}

template <class Derived>
bool all_zero(const Eigen::MatrixBase<Derived>& m_in) {
    const DenseMatrix<typename Derived::Scalar> m = m_in;
    for (Index i = 0; i < m.rows(); ++i)
        for (Index j = 0; j < m.cols(); ++j)
            if (!m(i, j).is_zero()) return false;
    return true;
}

template <class DA, class DB>
bool all_equal(const Eigen::MatrixBase<DA>& a_in, const Eigen::MatrixBase<DB>& b_in) {
    const DenseMatrix<typename DA::Scalar> a = a_in;
    const DenseMatrix<typename DA::Scalar> b = b_in;
    if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
    for (Index i = 0; i < a.rows(); ++i)
        for (Index j = 0; j < a.cols(); ++j)
            if (a(i, j) != b(i, j)) return false;
    return true;
}

template <class Derived>
bool is_identity(const Eigen::MatrixBase<Derived>& m_in) {
    const DenseMatrix<typename Derived::Scalar> m = m_in;
    if (m.rows() != m.cols()) return false;
    for (Index i = 0; i < m.rows(); ++i)
        for (Index j = 0; j < m.cols(); ++j) {
            if (i == j ? !m(i, j).is_one() : !m(i, j).is_zero()) return false;
        }
    return true;
}

template <class Scalar>
DenseMatrix<Scalar> hstack(const DenseMatrix<Scalar>& a, const DenseMatrix<Scalar>& b) {
    if (a.rows() != b.rows()) throw DimensionError("hstack: row counts differ");
    DenseMatrix<Scalar> m(a.rows(), a.cols() + b.cols());
    m.block(0, 0, a.rows(), a.cols()) = a;
    m.block(0, a.cols(), b.rows(), b.cols()) = b;
    return m;
}

template <class Scalar>
DenseMatrix<Scalar> vstack(const DenseMatrix<Scalar>& a, const DenseMatrix<Scalar>& b) {
    if (a.cols() != b.cols()) throw DimensionError("vstack: column counts differ");
    DenseMatrix<Scalar> m(a.rows() + b.rows(), a.cols());
    m.block(0, 0, a.rows(), a.cols()) = a;
    m.block(a.rows(), 0, b.rows(), b.cols()) = b;
    return m;
}

// Submatrix given explicit (not necessarily contiguous) index sets.
template <class Scalar>
DenseMatrix<Scalar> submatrix(const DenseMatrix<Scalar>& m, const std::vector<Index>& rows,
                              const std::vector<Index>& cols) {
    DenseMatrix<Scalar> s(static_cast<Index>(rows.size()), static_cast<Index>(cols.size()));
    for (Index i = 0; i < s.rows(); ++i)
        for (Index j = 0; j < s.cols(); ++j) s(i, j) = m(rows[static_cast<std::size_t>(i)],
                                                         cols[static_cast<std::size_t>(j)]);
    return s;
}

template <class Scalar>
DenseMatrix<Scalar> select_columns(const DenseMatrix<Scalar>& m, const std::vector<Index>& cols) {
    DenseMatrix<Scalar> s(m.rows(), static_cast<Index>(cols.size()));
    for (Index j = 0; j < s.cols(); ++j) s.col(j) = m.col(cols[static_cast<std::size_t>(j)]);
    return s;
}

}  // namespace minrank
