#ifndef CFL_EXP_POLY_HPP
#define CFL_EXP_POLY_HPP

#include <compare>
#include <map>

#include "cfl/scalar.hpp"

namespace cfl {

/// x^xpow * e^{i*freq*x}
struct Monomial {
    int xpow = 0;
    int freq = 0;
    friend auto operator<=>(const Monomial&, const Monomial&) = default;
};

/// Finite sum of c * x^p * e^{imx} on the canonical period [0, 2*pi].
///
/// Terms are kept merged by (xpow, freq) with no zero coefficients, so the
/// empty sum is the zero function and structural equality is functional
/// equality.
template <ScalarField S>
class ExpPolyT {
public:
    using scalar_type = S;
    using Terms = std::map<Monomial, S>;

    ExpPolyT() = default;
    static ExpPolyT constant(const S& c) { return term(c, 0, 0); }
    static ExpPolyT term(const S& c, int xpow, int freq);

    [[nodiscard]] const Terms& terms() const { return terms_; }
    [[nodiscard]] bool is_zero() const { return terms_.empty(); }
    [[nodiscard]] std::size_t size() const { return terms_.size(); }
    [[nodiscard]] S coeff(Monomial m) const;
    void add_term(const S& c, int xpow, int freq);

    ExpPolyT& operator+=(const ExpPolyT& o);
    ExpPolyT& operator-=(const ExpPolyT& o);
    ExpPolyT& operator*=(const S& c);
    friend ExpPolyT operator+(ExpPolyT a, const ExpPolyT& b) { return a += b; }
    friend ExpPolyT operator-(ExpPolyT a, const ExpPolyT& b) { return a -= b; }
    friend ExpPolyT operator-(ExpPolyT a) { return a *= field<S>::from(GaussRational(-1)); }
    friend ExpPolyT operator*(ExpPolyT a, const S& c) { return a *= c; }
    friend ExpPolyT operator*(const ExpPolyT& a, const ExpPolyT& b) { return a.times(b); }
    friend bool operator==(const ExpPolyT&, const ExpPolyT&) = default;

    /// F with F' = f and F(0) = 0.
    [[nodiscard]] ExpPolyT antiderivative() const;
    [[nodiscard]] ExpPolyT derivative() const;

    /// x -> f(alpha*x + beta_over_pi*pi). Every alpha*freq must be an
    /// integer; in exact mode the phase e^{i*freq*beta} must be a power of i.
    [[nodiscard]] ExpPolyT affine(const Rational& alpha, const Rational& beta_over_pi) const;

    /// Exact value at x = 2*pi*frac. Requires 4*freq*frac to be an integer
    /// for every frequency in exact mode (the phase is then a power of i).
    [[nodiscard]] S value_at_fraction(const Rational& frac) const;

    [[nodiscard]] Complex eval(double x) const;

    [[nodiscard]] int max_abs_freq() const;
    [[nodiscard]] int max_xpow() const;
    /// True iff the coefficient of x^p e^{imx} is the conjugate of that of
    /// x^p e^{-imx}, i.e. the function is real-valued.
    [[nodiscard]] bool is_conj_symmetric() const;

    /// Upper bound for sup |f| over [lo, hi] with 0 <= lo <= hi.
    [[nodiscard]] double sup_bound(double lo, double hi) const;

    [[nodiscard]] ExpPolyT<Complex> to_float() const;

private:
    ExpPolyT times(const ExpPolyT& o) const;
    Terms terms_;
};

using ExpPoly = ExpPolyT<Scalar>;
using ExpPolyF = ExpPolyT<Complex>;

/// e^{i*angle} for angle = 2*pi*turns, exact when 4*turns is an integer.
/// Returns false when the phase leaves Q(i).
bool unit_phase(const Rational& turns, GaussRational& out);

extern template class ExpPolyT<Scalar>;
extern template class ExpPolyT<Complex>;

}  // namespace cfl

#endif
