#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "support.hpp"

using namespace minrank;
using minrank::testing::Rng;

namespace {
const FieldSpec Q = FieldSpec::rationals();
const FieldSpec F5 = FieldSpec::prime_field(5);
}  // namespace

TEST_CASE("rank") {
    CHECK(rank(make_matrix<Rational>({{6, 3}, {3, 1}})) == 2);
    CHECK(rank(DenseMatrix<Rational>::Identity(3, 3).eval()) == 3);
    CHECK(rank(make_matrix<Rational>({{1, 2}, {2, 4}})) == 1);
    CHECK(rank(DenseMatrix<Rational>(0, 4)) == 0);
    CHECK(rank(DenseMatrix<Rational>(4, 0)) == 0);
    CHECK(rank(DenseMatrix<Rational>(0, 0)) == 0);
}

TEST_CASE("rank equals transpose rank and minor rank") {
    Rng rng(3);
    for (int t = 0; t < 40; ++t) {
        const Index r = 1 + testing::rand_below(rng, 4);
        const Index c = 1 + testing::rand_below(rng, 4);
        const auto mq = testing::random_matrix<Rational>(rng, Q, r, c);
        CHECK(rank(mq) == rank(mq.transpose().eval()));
        CHECK(rank(mq) == testing::minor_rank(mq));
        const auto mf = testing::random_matrix<Fp>(rng, F5, r, c);
        CHECK(rank(mf) == rank(mf.transpose().eval()));
        CHECK(rank(mf) == testing::minor_rank(mf));
    }
}

TEST_CASE("inverse") {
    const auto m = make_matrix<Rational>({{2, 3}, {1, 1}});
    const auto mi = inverse(m);
    CHECK(all_equal(mi, make_matrix<Rational>({{-1, 3}, {1, -2}})));
    CHECK(is_identity(m * mi));
    CHECK(is_identity(inverse(DenseMatrix<Rational>::Identity(4, 4).eval())));
    CHECK_THROWS_AS(inverse(make_matrix<Rational>({{1, 1}, {1, 1}})), SingularError);
    CHECK_THROWS_AS(inverse(DenseMatrix<Rational>(2, 3)), DimensionError);
}

TEST_CASE("inverse is exact on random invertible matrices") {
    Rng rng(5);
    for (int t = 0; t < 200; ++t) {
        const Index n = 1 + testing::rand_below(rng, 5);
        const auto mq = testing::random_invertible<Rational>(rng, Q, n);
        CHECK(is_identity(mq * inverse(mq)));
        const auto mf = testing::random_invertible<Fp>(rng, F5, n);
        CHECK(is_identity(mf * inverse(mf)));
    }
}

TEST_CASE("inverse denominators divide the determinant") {
    Rng rng(9);
    for (int t = 0; t < 25; ++t) {
        const Index n = 2 + testing::rand_below(rng, 7);  // up to 8
        const auto m = testing::random_invertible<Rational>(rng, Q, n);
        const Rational d = det(m);
        CHECK(d.denominator() == 1);
        CHECK(d == testing::det_cofactor(m));
        const auto mi = inverse(m);
        for (Index i = 0; i < n; ++i)
            for (Index j = 0; j < n; ++j) {
                const Rational scaled = mi(i, j) * d;
                CHECK(scaled.denominator() == 1);  // entries are cofactor / det
            }
    }
}

TEST_CASE("kernel dimension and basis") {
    CHECK(kernel_dim(DenseMatrix<Rational>::Zero(2, 3).eval()) == 3);
    CHECK(kernel_dim(DenseMatrix<Rational>::Identity(3, 3).eval()) == 0);
    CHECK(kernel_dim(make_matrix<Rational>({{1, 2}, {2, 4}})) == 1);
    Rng rng(13);
    for (int t = 0; t < 30; ++t) {
        const auto m = testing::random_matrix<Rational>(rng, Q, 2 + testing::rand_below(rng, 3),
                                                        2 + testing::rand_below(rng, 3));
        const auto basis = kernel_basis(m);
        CHECK(basis.cols() == kernel_dim(m));
        CHECK(all_zero(m * basis));
        CHECK(rank(basis) == basis.cols());
    }
}

TEST_CASE("solve_linear") {
    const auto identity = DenseMatrix<Rational>::Identity(3, 3).eval();
    const auto b = make_matrix<Rational>({{1, 2}, {3, 4}, {5, 6}});
    CHECK(all_equal(solve_linear(identity, b), b));
    CHECK(all_equal(solve_linear(make_matrix<Rational>({{1}, {2}}), make_matrix<Rational>({{3}, {6}})),
                    make_matrix<Rational>({{3}})));
    CHECK_THROWS_AS(
        solve_linear(make_matrix<Rational>({{1}, {2}}), make_matrix<Rational>({{1}, {0}})),
        InconsistentError);
    // solution has zeros in non-pivot coordinates
    const auto a = make_matrix<Rational>({{1, 1}});
    const auto x = solve_linear(a, make_matrix<Rational>({{5}}));
    CHECK(x(0, 0) == Rational(5));
    CHECK(x(1, 0).is_zero());
}

TEST_CASE("spanning_column_select") {
    const auto a = make_matrix<Rational>({{1}, {0}});
    const auto b = make_matrix<Rational>({{0, 1}, {1, 2}});
    CHECK(spanning_column_select(a, b) == std::vector<Index>{0});
    Rng rng(1);
    CHECK(spanning_column_select(DenseMatrix<Rational>::Identity(2, 2).eval(),
                                 testing::random_matrix<Rational>(rng, Q, 2, 3))
              .empty());
    CHECK(spanning_column_select(DenseMatrix<Rational>::Zero(2, 1).eval(),
                                 DenseMatrix<Rational>::Identity(2, 2).eval()) ==
          std::vector<Index>({0, 1}));
}

TEST_CASE("spanning_column_select count and span property") {
    Rng rng(17);
    for (int t = 0; t < 60; ++t) {
        const Index rows = 1 + testing::rand_below(rng, 4);
        const auto a = testing::random_matrix<Fp>(rng, F5, rows, testing::rand_below(rng, 4));
        const auto b = testing::random_matrix<Fp>(rng, F5, rows, 1 + testing::rand_below(rng, 4));
        const auto sel = spanning_column_select(a, b);
        const auto ab = hstack(a, b);
        CHECK(static_cast<Index>(sel.size()) == rank(ab) - rank(a));
        CHECK(rank(hstack(a, select_columns(b, sel))) == rank(ab));
    }
}

TEST_CASE("factor_rank") {
    const auto m = make_matrix<Rational>({{2, 4}, {3, 6}});
    const auto [f, g] = factor_rank(m);
    CHECK(all_equal(f, make_matrix<Rational>({{2}, {3}})));
    CHECK(all_equal(g, make_matrix<Rational>({{1, 2}})));
    const auto [fz, gz] = factor_rank(DenseMatrix<Rational>::Zero(2, 3).eval());
    CHECK(fz.cols() == 0);
    CHECK(gz.rows() == 0);
    const auto [fi, gi] = factor_rank(DenseMatrix<Rational>::Identity(2, 2).eval());
    CHECK(is_identity(fi * gi));

    Rng rng(21);
    for (int t = 0; t < 60; ++t) {
        const auto a = testing::random_matrix<Rational>(rng, Q, 1 + testing::rand_below(rng, 4),
                                                        1 + testing::rand_below(rng, 4));
        const auto [fa, ga] = factor_rank(a);
        CHECK(fa.cols() == rank(a));
        CHECK(ga.rows() == rank(a));
        CHECK(all_equal(fa * ga, a));
        CHECK(rank(fa * ga) == rank(a));
    }
}
