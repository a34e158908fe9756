#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "minrank/inverse_structure.hpp"
#include "minrank/pmat.hpp"
#include "support.hpp"

using namespace minrank;
using minrank::testing::Rng;

TEST_CASE("parsing the four-unknown example document") {
    const std::string text =
        "# the 4x4 example\n"
        "field Q\n"
        "rows 4\n"
        "cols 4\n"
        "6 3 ? 1\n"
        "3 1 1 ?\n"
        "? 1 2 3\n"
        "1 ? 1 1\n";
    const auto doc = parse_pmat(text);
    const auto& d = std::get<PmatDocument<Rational>>(doc);
    CHECK(d.matrix.unknown_count() == 4);
    CHECK(d.matrix == counterexample_partial_matrix<Rational>(FieldSpec::rationals()));
    CHECK(!d.blocks.has_value());
}

TEST_CASE("prime field entries reduce to canonical residues") {
    const auto doc = parse_pmat("field GF(5)\nrows 1\ncols 1\n7\n");
    const auto& d = std::get<PmatDocument<Fp>>(doc);
    CHECK(d.matrix.at(0, 0).value() == 2);
    const auto neg = parse_pmat("field GF(5)\nrows 1\ncols 2\n-1 -7\n");
    const auto& dn = std::get<PmatDocument<Fp>>(neg);
    CHECK(dn.matrix.at(0, 0).value() == 4);
    CHECK(dn.matrix.at(0, 1).value() == 3);
}

TEST_CASE("rationals accept fractions, prime fields do not") {
    const auto doc = parse_pmat("field Q\nrows 1\ncols 2\n-3/6 4\n");
    CHECK(std::get<PmatDocument<Rational>>(doc).matrix.at(0, 0) == Rational(-1, 2));
    CHECK_THROWS_AS(parse_pmat("field GF(5)\nrows 1\ncols 1\n1/2\n"), FieldMismatchError);
}

TEST_CASE("dimension and syntax errors carry positions") {
    CHECK_THROWS_AS(parse_pmat("rows 2\ncols 2\n1 2 3\n"), BadDimensionsError);
    CHECK_THROWS_AS(parse_pmat("rows 2\ncols 2\n1 2 3 4 5\n"), BadDimensionsError);
    try {
        parse_pmat("field Q\nrows 1\ncols 1\nabc\n");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line() == 4);
        CHECK(e.column() == 1);
    }
    CHECK_THROWS_AS(parse_pmat("field Q\nfield Q\nrows 1\ncols 1\n0\n"), ParseError);
    CHECK_THROWS_AS(parse_pmat("field GF(6)\nrows 1\ncols 1\n0\n"), ParseError);
    CHECK_THROWS_AS(parse_pmat("field Q\nrows 1\n0\n"), ParseError);  // missing cols
}

TEST_CASE("documents without a field directive default to the rationals") {
    const auto doc = parse_pmat("rows 1\ncols 1\n-4\n");
    CHECK(std::get<PmatDocument<Rational>>(doc).matrix.at(0, 0) == Rational(-4));
}

TEST_CASE("block directives") {
    const auto doc = parse_pmat(
        "field Q\nrows 3\ncols 3\nrowblocks 1 1 1\ncolblocks 1 1 1\n"
        "1 1 0\n1 1 1\n0 1 1\n");
    const auto& d = std::get<PmatDocument<Rational>>(doc);
    REQUIRE(d.blocks.has_value());
    CHECK(d.blocks->row_sizes == std::vector<Index>{1, 1, 1});
    CHECK_THROWS_AS(parse_pmat("field Q\nrows 2\ncols 2\nrowblocks 1 1\n1 2\n3 4\n"), ParseError);
    CHECK_THROWS_AS(
        parse_pmat("field Q\nrows 2\ncols 2\nrowblocks 1\ncolblocks 2\n1 2\n3 4\n"),
        BadDimensionsError);
}

TEST_CASE("question marks are allowed in any field") {
    const auto doc = parse_pmat("field GF(3)\nrows 2\ncols 2\n? 1\n2 ?\n");
    CHECK(std::get<PmatDocument<Fp>>(doc).matrix.unknown_count() == 2);
}

TEST_CASE("emit then parse is the identity") {
    Rng rng(107);
    const FieldSpec q = FieldSpec::rationals();
    const FieldSpec f7 = FieldSpec::prime_field(7);
    for (int t = 0; t < 60; ++t) {
        const Index rows = 1 + testing::rand_below(rng, 5);
        const Index cols = 1 + testing::rand_below(rng, 5);
        Pattern p(rows, cols);
        for (Index i = 0; i < rows; ++i)
            for (Index j = 0; j < cols; ++j)
                if (testing::rand_below(rng, 3) != 0) p.add(i, j);
        if (t % 2 == 0) {
            PartialMatrix<Rational> pm(q, p);
            for (const auto& [i, j] : p.positions())
                pm.set(i, j, testing::random_scalar<Rational>(rng, q, -20, 20) /
                                 testing::random_scalar<Rational>(rng, q, 1, 9));
            auto doc = make_document(pm);
            if (testing::rand_below(rng, 2) == 0)
                doc.blocks = testing::random_block_partition(rng, rows, 3);
            if (doc.blocks) doc.blocks->col_sizes = testing::random_composition(
                                rng, cols, static_cast<Index>(doc.blocks->row_sizes.size()));
            const auto round = parse_pmat(emit_pmat(doc));
            CHECK(std::get<PmatDocument<Rational>>(round) == doc);
        } else {
            PartialMatrix<Fp> pm(f7, p);
            for (const auto& [i, j] : p.positions())
                pm.set(i, j, testing::random_scalar<Fp>(rng, f7));
            const auto doc = make_document(pm);
            const auto round = parse_pmat(emit_pmat(doc));
            CHECK(std::get<PmatDocument<Fp>>(round) == doc);
        }
    }
}

TEST_CASE("explicit plus signs parse in both fields") {
    const auto q = parse_pmat("field Q\nrows 1\ncols 2\n+3 +1/2\n");
    CHECK(std::get<PmatDocument<Rational>>(q).matrix.at(0, 0) == Rational(3));
    CHECK(std::get<PmatDocument<Rational>>(q).matrix.at(0, 1) == Rational(1, 2));
    const auto f = parse_pmat("field GF(7)\nrows 1\ncols 1\n+9\n");
    CHECK(std::get<PmatDocument<Fp>>(f).matrix.at(0, 0).value() == 2);
}
