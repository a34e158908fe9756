#pragma once

// Exact field scalars: arbitrary-precision rationals (GMP-backed) and
// residues of a prime field with runtime modulus.  Both types are plain
// value classes with eager canonicalization, suitable as Eigen scalars.

#include <cstdint>
#include <iosfwd>
#include <string>

#include <gmpxx.h>

#include <Eigen/Core>

#include "minrank/errors.hpp"

namespace minrank {

enum class FieldKind { Rationals, PrimeField };

inline bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    if (n % 2 == 0) return n == 2;
    for (std::uint64_t d = 3; d * d <= n; d += 2)
        if (n % d == 0) return false;
    return true;
}

// Runtime description of the coefficient field.  Moduli are validated at
// construction; composite moduli are a construction error.
class FieldSpec {
public:
    static FieldSpec rationals() { return FieldSpec(FieldKind::Rationals, 0); }

    static FieldSpec prime_field(std::uint64_t p) {
        if (p >= (std::uint64_t{1} << 31))
            throw FieldError("prime modulus too large (must be < 2^31): " + std::to_string(p));
        if (!is_prime_u64(p))
            throw FieldError("modulus is not prime: " + std::to_string(p));
        return FieldSpec(FieldKind::PrimeField, p);
    }

    FieldKind kind() const { return kind_; }
    bool is_rationals() const { return kind_ == FieldKind::Rationals; }
    bool is_prime_field() const { return kind_ == FieldKind::PrimeField; }
    std::uint64_t modulus() const { return modulus_; }

    bool operator==(const FieldSpec& o) const { return kind_ == o.kind_ && modulus_ == o.modulus_; }
    bool operator!=(const FieldSpec& o) const { return !(*this == o); }

    std::string to_string() const {
        return is_rationals() ? "Q" : "GF(" + std::to_string(modulus_) + ")";
    }

private:
    FieldSpec(FieldKind k, std::uint64_t p) : kind_(k), modulus_(p) {}

    FieldKind kind_;
    std::uint64_t modulus_;
};

// Arbitrary-precision rational, always in lowest terms with positive
// denominator.  Operators return plain values (no expression templates),
// so the type composes safely with Eigen's generic kernels.
class Rational {
public:
    Rational() : v_(0) {}
    Rational(long n) : v_(static_cast<signed long>(n)) {}  // NOLINT: implicit by design
    Rational(int n) : v_(n) {}                             // NOLINT
    Rational(long num, long den) : v_(mpq_class(num, den)) {
        if (den == 0) throw FieldError("rational with zero denominator");
        v_.canonicalize();
    }
    explicit Rational(const mpq_class& q) : v_(q) { v_.canonicalize(); }

    // Accepts "n" or "n/d", arbitrary precision, optional leading signs.
    static Rational from_string(const std::string& text) {
        std::string s;
        for (std::size_t k = 0; k < text.size(); ++k) {
            if (text[k] == '+' && (k == 0 || text[k - 1] == '/')) continue;  // GMP rejects '+'
            s.push_back(text[k]);
        }
        mpq_class q;
        if (s.empty() || q.set_str(s, 10) != 0)
            throw FieldError("cannot parse rational: '" + text + "'");
        if (q.get_den() == 0)
            throw FieldError("rational with zero denominator: '" + text + "'");
        q.canonicalize();
        return Rational(q, already_canonical_tag{});
    }

    bool is_zero() const { return sgn(v_) == 0; }
    bool is_one() const { return v_ == 1; }

    Rational inv() const {
        if (is_zero()) throw FieldError("inverse of zero");
        return Rational(mpq_class(1) / v_, already_canonical_tag{});
    }

    const mpq_class& value() const { return v_; }
    mpz_class numerator() const { return v_.get_num(); }
    mpz_class denominator() const { return v_.get_den(); }

    std::string to_string() const { return v_.get_str(); }

    friend Rational operator+(const Rational& a, const Rational& b) {
        return Rational(mpq_class(a.v_ + b.v_), already_canonical_tag{});
    }
    friend Rational operator-(const Rational& a, const Rational& b) {
        return Rational(mpq_class(a.v_ - b.v_), already_canonical_tag{});
    }
    friend Rational operator*(const Rational& a, const Rational& b) {
        return Rational(mpq_class(a.v_ * b.v_), already_canonical_tag{});
    }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.is_zero()) throw FieldError("division by zero");
        return Rational(mpq_class(a.v_ / b.v_), already_canonical_tag{});
    }
    Rational operator-() const { return Rational(mpq_class(-v_), already_canonical_tag{}); }

    Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
    Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
    Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
    Rational& operator/=(const Rational& o) { *this = *this / o; return *this; }

    friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
    friend bool operator!=(const Rational& a, const Rational& b) { return a.v_ != b.v_; }
    friend bool operator<(const Rational& a, const Rational& b) { return a.v_ < b.v_; }

    friend std::ostream& operator<<(std::ostream& os, const Rational& r) {
        return os << r.to_string();
    }

private:
    struct already_canonical_tag {};
    Rational(mpq_class q, already_canonical_tag) : v_(std::move(q)) {}

    mpq_class v_;
};

// Prime-field residue with its modulus carried alongside the value.
// Modulus 0 marks a "detached" constant (only 0 and 1 are produced by
// generic code, e.g. Eigen's Zero/Identity); arithmetic with an attached
// operand adopts its modulus, and mixing two distinct moduli throws.
class Fp {
public:
    Fp() : value_(0), mod_(0) {}
    Fp(long n) : value_(0), mod_(0) {  // NOLINT: implicit by design (detached constant)
        if (n < 0) throw FieldError("detached prime-field constant must be nonnegative");
        value_ = static_cast<std::uint64_t>(n);
    }
    Fp(int n) : Fp(static_cast<long>(n)) {}  // NOLINT

    Fp(long long n, std::uint64_t p) : mod_(p) {
        check_modulus(p);
        long long r = n % static_cast<long long>(p);
        if (r < 0) r += static_cast<long long>(p);
        value_ = static_cast<std::uint64_t>(r);
    }

    static Fp from_mpz(const mpz_class& n, std::uint64_t p) {
        Fp r(0, p);
        mpz_class m;
        mpz_fdiv_r_ui(m.get_mpz_t(), n.get_mpz_t(), p);
        r.value_ = m.get_ui();
        return r;
    }

    std::uint64_t value() const { return value_; }
    std::uint64_t modulus() const { return mod_; }
    bool attached() const { return mod_ != 0; }

    bool is_zero() const { return value_ == 0; }
    bool is_one() const { return value_ == 1; }

    Fp inv() const {
        if (value_ == 0) throw FieldError("inverse of zero");
        if (!attached()) {
            if (value_ == 1) return *this;
            throw FieldError("inverse of detached prime-field constant");
        }
        // Extended Euclid on (value_, mod_).
        std::int64_t t = 0, new_t = 1;
        std::int64_t r = static_cast<std::int64_t>(mod_), new_r = static_cast<std::int64_t>(value_);
        while (new_r != 0) {
            std::int64_t q = r / new_r;
            std::int64_t tmp = t - q * new_t;
            t = new_t; new_t = tmp;
            tmp = r - q * new_r;
            r = new_r; new_r = tmp;
        }
        if (t < 0) t += static_cast<std::int64_t>(mod_);
        return Fp(static_cast<long long>(t), mod_);
    }

    std::string to_string() const { return std::to_string(value_); }

    friend Fp operator+(const Fp& a, const Fp& b) {
        std::uint64_t p = joint_modulus(a, b);
        if (p == 0) return detached(a.value_ + b.value_);
        return reduced(a.value_ % p + b.value_ % p, p);
    }
    friend Fp operator-(const Fp& a, const Fp& b) {
        std::uint64_t p = joint_modulus(a, b);
        if (p == 0) {
            if (a.value_ < b.value_) throw FieldError("negative detached prime-field constant");
            return detached(a.value_ - b.value_);
        }
        std::uint64_t av = a.value_ % p, bv = b.value_ % p;
        return reduced(av + p - bv, p);
    }
    friend Fp operator*(const Fp& a, const Fp& b) {
        std::uint64_t p = joint_modulus(a, b);
        if (p == 0) return detached(a.value_ * b.value_);
        return reduced((a.value_ % p) * (b.value_ % p), p);
    }
    friend Fp operator/(const Fp& a, const Fp& b) {
        if (b.is_zero()) throw FieldError("division by zero");
        std::uint64_t p = joint_modulus(a, b);
        if (p == 0) {
            if (b.value_ == 1) return a;
            throw FieldError("division by detached prime-field constant");
        }
        Fp bb = b.attached() ? b : reduced(b.value_ % p, p);
        return a * bb.inv();
    }
    Fp operator-() const {
        if (!attached()) {
            if (value_ == 0) return *this;
            throw FieldError("negation of detached prime-field constant");
        }
        return reduced(mod_ - value_ % mod_, mod_);
    }

    Fp& operator+=(const Fp& o) { *this = *this + o; return *this; }
    Fp& operator-=(const Fp& o) { *this = *this - o; return *this; }
    Fp& operator*=(const Fp& o) { *this = *this * o; return *this; }
    Fp& operator/=(const Fp& o) { *this = *this / o; return *this; }

    // Values are canonical residues, so plain value comparison is exact for
    // same-field operands and for detached 0/1 constants.
    friend bool operator==(const Fp& a, const Fp& b) {
        joint_modulus(a, b);
        return a.value_ == b.value_;
    }
    friend bool operator!=(const Fp& a, const Fp& b) { return !(a == b); }

    friend std::ostream& operator<<(std::ostream& os, const Fp& x);

private:
    static void check_modulus(std::uint64_t p) {
        if (p < 2) throw FieldError("prime-field modulus must be at least 2");
        // keeps products of residues inside 64 bits
        if (p >= (std::uint64_t{1} << 31))
            throw FieldError("prime-field modulus too large: " + std::to_string(p));
    }
    static Fp detached(std::uint64_t v) {
        Fp r;
        r.value_ = v;
        return r;
    }
    static Fp reduced(std::uint64_t v, std::uint64_t p) {
        Fp r;
        r.value_ = v % p;
        r.mod_ = p;
        return r;
    }
    static std::uint64_t joint_modulus(const Fp& a, const Fp& b) {
        if (a.mod_ != 0 && b.mod_ != 0 && a.mod_ != b.mod_)
            throw FieldError("mixing residues of GF(" + std::to_string(a.mod_) + ") and GF(" +
                             std::to_string(b.mod_) + ")");
        return a.mod_ != 0 ? a.mod_ : b.mod_;
    }

    std::uint64_t value_;
    std::uint64_t mod_;  // 0 = detached constant
};

inline std::ostream& operator<<(std::ostream& os, const Fp& x) { return os << x.to_string(); }

// --- scalar traits used by the templated operations -------------------------

template <class Scalar>
struct scalar_traits;

template <>
struct scalar_traits<Rational> {
    static constexpr bool is_prime_field = false;
    static Rational from_int(long n, const FieldSpec&) { return Rational(n); }
    static FieldSpec field_of(const Rational&) { return FieldSpec::rationals(); }
};

template <>
struct scalar_traits<Fp> {
    static constexpr bool is_prime_field = true;
    static Fp from_int(long n, const FieldSpec& fs) {
        if (!fs.is_prime_field()) throw FieldError("Fp scalar requires a prime field");
        return Fp(n, fs.modulus());
    }
    static FieldSpec field_of(const Fp& x) {
        return x.attached() ? FieldSpec::prime_field(x.modulus()) : FieldSpec::rationals();
    }
};

template <class Scalar>
Scalar make_scalar(const FieldSpec& fs, long n) {
    return scalar_traits<Scalar>::from_int(n, fs);
}

}  // namespace minrank

namespace Eigen {

template <>
struct NumTraits<minrank::Rational> {
    using Real = minrank::Rational;
    using NonInteger = minrank::Rational;
    using Nested = minrank::Rational;
    using Literal = long;
    enum {
        IsComplex = 0,
        IsInteger = 0,
        IsSigned = 1,
        RequireInitialization = 1,
        ReadCost = 8,
        AddCost = 40,
        MulCost = 40
    };
    static minrank::Rational epsilon() { return minrank::Rational(0); }
    static minrank::Rational dummy_precision() { return minrank::Rational(0); }
    static int digits10() { return 0; }
};

template <>
struct NumTraits<minrank::Fp> {
    using Real = minrank::Fp;
    using NonInteger = minrank::Fp;
    using Nested = minrank::Fp;
    using Literal = long;
    enum {
        IsComplex = 0,
        IsInteger = 0,
        IsSigned = 0,
        RequireInitialization = 1,
        ReadCost = 2,
        AddCost = 6,
        MulCost = 10
    };
    static minrank::Fp epsilon() { return minrank::Fp(0); }
    static minrank::Fp dummy_precision() { return minrank::Fp(0); }
    static int digits10() { return 0; }
};

}  // namespace Eigen
