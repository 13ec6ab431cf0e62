#pragma once

#include <gmpxx.h>

#include <string>

namespace windtree {

using BigInt = mpz_class;
using BigRat = mpq_class;

/// Exact value coeff * pi^(-2).
struct PiRational {
    BigRat coeff{0};

    PiRational() = default;
    explicit PiRational(BigRat c) : coeff(std::move(c)) { coeff.canonicalize(); }

    PiRational& operator+=(const PiRational& o) { coeff += o.coeff; return *this; }
    PiRational& operator-=(const PiRational& o) { coeff -= o.coeff; return *this; }
    PiRational& operator*=(const BigRat& r) { coeff *= r; return *this; }
    PiRational& operator/=(const BigRat& r) { coeff /= r; return *this; }

    friend PiRational operator+(PiRational a, const PiRational& b) { return a += b; }
    friend PiRational operator-(PiRational a, const PiRational& b) { return a -= b; }
    friend PiRational operator*(PiRational a, const BigRat& r) { return a *= r; }
    friend PiRational operator*(const BigRat& r, PiRational a) { return a *= r; }
    friend PiRational operator/(PiRational a, const BigRat& r) { return a /= r; }
    friend bool operator==(const PiRational& a, const PiRational& b) { return a.coeff == b.coeff; }
    friend bool operator!=(const PiRational& a, const PiRational& b) { return !(a == b); }

    /// Renders as "num/den /pi^2".
    std::string to_string() const;
};

BigInt binomial(long n, long k);
BigInt factorial(long n);
/// n!! for n >= -1, with 0!! = (-1)!! = 1.
BigInt double_factorial(long n);
BigInt pow_int(const BigInt& base, unsigned long e);

double pirational_eval(const PiRational& x);

/// Build a rational from integers (normalised).
BigRat make_rat(const BigInt& num, const BigInt& den = 1);
/// Parse "a", "a/b" or a finite decimal "1.25" into an exact rational.
BigRat parse_rational(const std::string& text);
std::string rat_to_string(const BigRat& r);

}  // namespace windtree
