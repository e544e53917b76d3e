#ifndef CFL_POLAR_HPP
#define CFL_POLAR_HPP

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "cfl/coeff.hpp"

namespace cfl {

/// Bivariate polynomial: (p, q) -> coefficient of x^p y^q.
using BivariatePoly = std::map<std::pair<int, int>, GaussRational>;

/// dx/dt = -y + F(x, y), dy/dt = x + G(x, y) with F, G free of constant and
/// linear terms.
struct PlanarField {
    int degree = 2;
    BivariatePoly F;
    BivariatePoly G;

    /// Throws std::invalid_argument on constant/linear monomials, negative
    /// exponents or monomials above degree.
    void validate() const;
    /// Number of nonzero coefficients in F and G together.
    [[nodiscard]] std::size_t nonzero_count() const;
};

/// h(cos phi, sin phi) as an ExpPoly in phi, for homogeneous h of degree d,
/// so that h(r cos phi, r sin phi) = r^d f(phi). Throws on non-homogeneous
/// input.
ExpPoly trig_restrict(const BivariatePoly& h);

/// Polar reduction: dr/dphi = p / (1 + q) with p = (xF + yG)/r and
/// q = (xG - yF)/r^2, expanded as sum_{i<=N} a_i(phi) r^{i+1} by truncated
/// geometric series. Orientation is counterclockwise, period 2 pi, and each
/// a_i is a single-piece ExpPoly.
CoeffSeq polar_reduce(const PlanarField& field, int order);

/// Number of coefficients of F and G of degree 2..d: d^2 + 3d - 4.
long param_count(int degree);

/// Multivariate polynomial: exponent vector -> coefficient.
using MultiPoly = std::map<std::vector<int>, GaussRational>;

/// Positive integer weights alpha_j.
struct AlphaWeight {
    std::vector<int> alpha;
};

/// Weighted degree when every monomial w^beta has the same sum alpha_j
/// beta_j, i.e. p(w_1^{alpha_1}, ...) is homogeneous; nullopt otherwise.
/// The zero polynomial counts as homogeneous of degree 0. Throws on arity
/// mismatch or non-positive weights.
std::optional<int> check_alpha_homogeneous(const MultiPoly& p, const AlphaWeight& weight);

/// Numerically follows the planar field from (x0, 0) through one full turn
/// of the polar angle (phi as independent variable). Returns (x, y) at
/// phi = 2 pi.
std::pair<double, double> planar_orbit_return(const PlanarField& field, double x0);

}  // namespace cfl

#endif
