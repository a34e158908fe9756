#pragma once

// A partial matrix: a pattern of specified positions plus exact values on
// exactly those positions.

#include <utility>
#include <vector>

#include "minrank/linalg.hpp"
#include "minrank/pattern.hpp"

namespace minrank {

template <class Scalar>
class PartialMatrix {
public:
    PartialMatrix(FieldSpec field, Pattern pattern)
        : field_(field), pattern_(std::move(pattern)),
          values_(DenseMatrix<Scalar>::Zero(pattern_.rows(), pattern_.cols())) {
        if (scalar_traits<Scalar>::is_prime_field != field_.is_prime_field())
            throw FieldError("scalar type does not match field " + field_.to_string());
    }

    static PartialMatrix fully_specified(FieldSpec field, const DenseMatrix<Scalar>& values) {
        PartialMatrix pm(field, Pattern::full(values.rows(), values.cols()));
        pm.values_ = values;
        return pm;
    }

    const FieldSpec& field() const { return field_; }
    const Pattern& pattern() const { return pattern_; }
    Index rows() const { return pattern_.rows(); }
    Index cols() const { return pattern_.cols(); }

    bool is_specified(Index i, Index j) const { return pattern_.contains(i, j); }
    Index unknown_count() const { return rows() * cols() - pattern_.specified_count(); }

    void set(Index i, Index j, const Scalar& v) {
        pattern_.add(i, j);
        values_(i, j) = v;
    }

    const Scalar& at(Index i, Index j) const {
        if (!pattern_.contains(i, j))
            throw DimensionError("position (" + std::to_string(i + 1) + "," +
                                 std::to_string(j + 1) + ") is unspecified");
        return values_(i, j);
    }

    // Specified values with placeholder zeros elsewhere; the pattern says
    // which entries are meaningful.
    const DenseMatrix<Scalar>& raw_values() const { return values_; }

    std::vector<Position> unknown_positions() const {
        std::vector<Position> out;
        for (Index i = 0; i < rows(); ++i)
            for (Index j = 0; j < cols(); ++j)
                if (!pattern_.contains(i, j)) out.emplace_back(i, j);
        return out;
    }

    bool agrees_with(const DenseMatrix<Scalar>& full) const {
        if (full.rows() != rows() || full.cols() != cols()) return false;
        for (const auto& [i, j] : pattern_.positions())
            if (full(i, j) != values_(i, j)) return false;
        return true;
    }

    PartialMatrix transposed() const {
        PartialMatrix t(field_, pattern_.transposed());
        for (const auto& [i, j] : pattern_.positions()) t.values_(j, i) = values_(i, j);
        return t;
    }

    bool operator==(const PartialMatrix& o) const {
        if (field_ != o.field_ || pattern_ != o.pattern_) return false;
        for (const auto& [i, j] : pattern_.positions())
            if (values_(i, j) != o.values_(i, j)) return false;
        return true;
    }

private:
    FieldSpec field_;
    Pattern pattern_;
    DenseMatrix<Scalar> values_;
};

// Checks that every fully specified square submatrix is invertible.  Square
// checks suffice: a fully specified k1 x k2 submatrix (k1 <= k2) has full
// rank as soon as all its k1 x k1 subblocks, themselves fully specified,
// are invertible.
template <class Scalar>
SubsetWitness full_rank_specified_check(const PartialMatrix<Scalar>& pm, Index size_cap = 10) {
    if (pm.rows() > size_cap || pm.cols() > size_cap)
        throw TooLargeError("full_rank_specified_check: dimensions " + std::to_string(pm.rows()) +
                            "x" + std::to_string(pm.cols()) + " exceed cap " +
                            std::to_string(size_cap));
    SubsetWitness result;
    const Index kmax = std::min(pm.rows(), pm.cols());
    for (Index k = 1; k <= kmax && result.pass; ++k) {
        detail::for_each_subset(pm.rows(), k, [&](const std::vector<Index>& rset) {
            return detail::for_each_subset(pm.cols(), k, [&](const std::vector<Index>& cset) {
                for (Index i : rset)
                    for (Index j : cset)
                        if (!pm.is_specified(i, j)) return true;  // not fully specified
                if (rank(submatrix(pm.raw_values(), rset, cset)) != k) {
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

}  // namespace minrank
