#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "support.hpp"

using namespace minrank;
using minrank::testing::Rng;

TEST_CASE("rationals are canonical") {
    CHECK(Rational(2, 4) == Rational(1, 2));
    CHECK(Rational(-2, -4) == Rational(1, 2));
    CHECK(Rational(2, -4).to_string() == "-1/2");
    CHECK(Rational::from_string("6/4").to_string() == "3/2");
    CHECK(Rational::from_string("-12").to_string() == "-12");
    CHECK_THROWS_AS(Rational(1, 0), FieldError);
    CHECK_THROWS_AS(Rational::from_string("1/0"), FieldError);
    CHECK_THROWS_AS(Rational(3).inv() / Rational(0), FieldError);
}

TEST_CASE("rational arithmetic is exact") {
    Rng rng(7);
    FieldSpec q = FieldSpec::rationals();
    for (int t = 0; t < 200; ++t) {
        const Rational a = testing::random_scalar<Rational>(rng, q, -50, 50) /
                           testing::random_scalar<Rational>(rng, q, 1, 50);
        const Rational b = testing::random_scalar<Rational>(rng, q, -50, 50) /
                           testing::random_scalar<Rational>(rng, q, 1, 50);
        CHECK((a + b) - b == a);
        if (!b.is_zero()) CHECK((a * b) / b == a);
    }
}

TEST_CASE("prime field residues are canonical") {
    CHECK(Fp(7, 5).value() == 2);
    CHECK(Fp(-1, 5).value() == 4);
    CHECK((Fp(3, 5) + Fp(4, 5)).value() == 2);
    CHECK((Fp(3, 5) - Fp(4, 5)).value() == 4);
    CHECK((Fp(3, 5) * Fp(4, 5)).value() == 2);
    CHECK((Fp(3, 5) / Fp(4, 5)).value() == 2);  // 4^{-1} = 4, 3*4 = 12 = 2
    CHECK(Fp(2, 5).inv().value() == 3);
    CHECK((-Fp(2, 5)).value() == 3);
    CHECK(Fp::from_mpz(mpz_class("123456789012345678901234567890"), 7).value() == 0);
    CHECK(Fp::from_mpz(mpz_class("123456789012345678901234567891"), 7).value() == 1);
}

TEST_CASE("prime field arithmetic is exact") {
    Rng rng(11);
    FieldSpec f7 = FieldSpec::prime_field(7);
    for (int t = 0; t < 200; ++t) {
        const Fp a = testing::random_scalar<Fp>(rng, f7);
        const Fp b = testing::random_scalar<Fp>(rng, f7);
        CHECK((a + b) - b == a);
        if (!b.is_zero()) CHECK((a * b) / b == a);
    }
}

TEST_CASE("modulus validation") {
    CHECK_THROWS_AS(FieldSpec::prime_field(1), FieldError);
    CHECK_THROWS_AS(FieldSpec::prime_field(4), FieldError);
    CHECK_THROWS_AS(FieldSpec::prime_field(91), FieldError);  // 7 * 13
    CHECK(FieldSpec::prime_field(2).modulus() == 2);
    CHECK(FieldSpec::prime_field(1009).modulus() == 1009);
}

TEST_CASE("mixing moduli throws") {
    const Fp a(1, 5);
    const Fp b(1, 7);
    CHECK_THROWS_AS(a + b, FieldError);
    CHECK_THROWS_AS(a == b, FieldError);
    // detached constants adopt the attached modulus
    CHECK((Fp(1) + a).value() == 2);
    CHECK((Fp(0) * b).is_zero());
}
