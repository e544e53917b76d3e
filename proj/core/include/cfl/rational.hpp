#ifndef CFL_RATIONAL_HPP
#define CFL_RATIONAL_HPP

#include <complex>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace cfl {

using Rational = mpq_class;
using Complex = std::complex<double>;

/// Parses "p", "-p" or "p/q" (canonicalized). Throws std::invalid_argument
/// on anything else, including decimals.
Rational parse_rational(std::string_view text);

/// Parses a decimal literal such as "0.25", "-1e-3" or a rational "p/q"
/// into the nearest double.
double parse_decimal(std::string_view text);

/// True if text looks like a decimal literal (contains '.', 'e' or 'E').
bool is_decimal_literal(std::string_view text);

std::string to_string(const Rational& q);

/// True iff q = k / 2^j for integers k, j >= 0.
bool is_dyadic(const Rational& q);

/// Element of Q(i).
struct GaussRational {
    Rational re;
    Rational im;

    GaussRational() = default;
    GaussRational(Rational r) : re(std::move(r)) {}  // NOLINT: implicit by design of the field tower
    GaussRational(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}
    GaussRational(long r) : re(r) {}  // NOLINT

    static GaussRational i_unit() { return {Rational(0), Rational(1)}; }

    [[nodiscard]] bool is_zero() const { return sgn(re) == 0 && sgn(im) == 0; }
    [[nodiscard]] bool is_real() const { return sgn(im) == 0; }
    [[nodiscard]] GaussRational conj() const { return {re, -im}; }
    [[nodiscard]] Complex to_complex() const { return {re.get_d(), im.get_d()}; }

    GaussRational& operator+=(const GaussRational& o) {
        re += o.re;
        im += o.im;
        return *this;
    }
    GaussRational& operator-=(const GaussRational& o) {
        re -= o.re;
        im -= o.im;
        return *this;
    }
    GaussRational& operator*=(const GaussRational& o);
    GaussRational& operator/=(const GaussRational& o);

    friend GaussRational operator+(GaussRational a, const GaussRational& b) { return a += b; }
    friend GaussRational operator-(GaussRational a, const GaussRational& b) { return a -= b; }
    friend GaussRational operator*(GaussRational a, const GaussRational& b) { return a *= b; }
    friend GaussRational operator/(GaussRational a, const GaussRational& b) { return a /= b; }
    friend GaussRational operator-(const GaussRational& a) { return {-a.re, -a.im}; }
    friend bool operator==(const GaussRational& a, const GaussRational& b) {
        return a.re == b.re && a.im == b.im;
    }
};

/// i^k for any integer k.
GaussRational i_power(long k);

}  // namespace cfl

#endif
