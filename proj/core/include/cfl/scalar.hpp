#ifndef CFL_SCALAR_HPP
#define CFL_SCALAR_HPP

#include <cmath>
#include <concepts>
#include <numbers>
#include <vector>

#include "cfl/rational.hpp"

namespace cfl {

/// Exact scalar: a Laurent polynomial in the symbol pi with Gaussian
/// rational coefficients, sum_k c_k pi^k.
///
/// pi is treated as transcendental, so the representation is canonical once
/// leading and trailing zero coefficients are dropped and equality is
/// coefficient-wise. Negative powers appear only when a period other than a
/// multiple of pi is normalized or when a mean is subtracted.
class Scalar {
public:
    Scalar() = default;
    Scalar(GaussRational c);  // NOLINT: constants embed implicitly
    Scalar(const Rational& q) : Scalar(GaussRational(q)) {}  // NOLINT
    Scalar(long n) : Scalar(GaussRational(n)) {}              // NOLINT

    static Scalar pi_power(int k, GaussRational c = GaussRational(1));

    [[nodiscard]] bool is_zero() const { return coeffs_.empty(); }
    /// Lowest power of pi with a nonzero coefficient (0 for zero).
    [[nodiscard]] int low_power() const { return low_; }
    [[nodiscard]] int high_power() const { return low_ + static_cast<int>(coeffs_.size()) - 1; }
    /// Coefficient of pi^k (zero if absent).
    [[nodiscard]] GaussRational coeff(int k) const;
    [[nodiscard]] bool is_constant() const { return coeffs_.empty() || (low_ == 0 && coeffs_.size() == 1); }
    [[nodiscard]] bool is_real() const;

    [[nodiscard]] Scalar conj() const;
    [[nodiscard]] Scalar real_part() const;
    [[nodiscard]] Scalar imag_part() const;
    [[nodiscard]] Complex to_complex() const;

    Scalar& operator+=(const Scalar& o);
    Scalar& operator-=(const Scalar& o);
    Scalar& operator*=(const Scalar& o);
    Scalar& operator*=(const GaussRational& c);
    /// Division by a nonzero Gaussian rational (the only division the
    /// algebra needs).
    Scalar& operator/=(const GaussRational& c);

    friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
    friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
    friend Scalar operator*(const Scalar& a, const Scalar& b);
    friend Scalar operator*(Scalar a, const GaussRational& c) { return a *= c; }
    friend Scalar operator/(Scalar a, const GaussRational& c) { return a /= c; }
    friend Scalar operator-(const Scalar& a);
    friend bool operator==(const Scalar& a, const Scalar& b) = default;

private:
    void normalize();

    int low_ = 0;
    std::vector<GaussRational> coeffs_;
};

/// Operations the generic algebra needs from its coefficient field. The
/// exact field is Scalar; the float field is std::complex<double>.
template <class S>
struct field;

template <>
struct field<Scalar> {
    static constexpr bool exact = true;
    static Scalar from(const GaussRational& c) { return Scalar(c); }
    static Scalar pi_power(int k) { return Scalar::pi_power(k); }
    static bool is_zero(const Scalar& s) { return s.is_zero(); }
    static bool negligible(const Scalar& s) { return s.is_zero(); }
    static bool agree(const Scalar& a, const Scalar& b) { return a == b; }
    static Complex to_complex(const Scalar& s) { return s.to_complex(); }
    static Scalar conj(const Scalar& s) { return s.conj(); }
    static Scalar divide(const Scalar& s, const GaussRational& c) { return s / c; }
};

template <>
struct field<Complex> {
    static constexpr bool exact = false;
    /// Zero threshold used by verdicts in float mode.
    static constexpr double zero_tol = 1e-9;
    static Complex from(const GaussRational& c) { return c.to_complex(); }
    static Complex pi_power(int k) { return std::pow(std::numbers::pi, k); }
    static bool is_zero(const Complex& s) { return s == Complex(0.0, 0.0); }
    static bool negligible(const Complex& s) { return std::abs(s) <= zero_tol; }
    static bool agree(const Complex& a, const Complex& b) {
        double scale = std::max({1.0, std::abs(a), std::abs(b)});
        return std::abs(a - b) <= zero_tol * scale;
    }
    static Complex to_complex(const Complex& s) { return s; }
    static Complex conj(const Complex& s) { return std::conj(s); }
    static Complex divide(const Complex& s, const GaussRational& c) { return s / c.to_complex(); }
};

template <class S>
concept ScalarField = requires(S a, S b) {
    { a + b } -> std::convertible_to<S>;
    { a - b } -> std::convertible_to<S>;
    { a * b } -> std::convertible_to<S>;
    { field<S>::from(GaussRational{}) } -> std::convertible_to<S>;
    { field<S>::is_zero(a) } -> std::convertible_to<bool>;
};

}  // namespace cfl

#endif
