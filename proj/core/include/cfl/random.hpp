#ifndef CFL_RANDOM_HPP
#define CFL_RANDOM_HPP

#include <random>

#include "cfl/coeff.hpp"

namespace cfl {

/// Shape of random exact inputs for the property suites.
struct RandomShape {
    int max_support = 3;    // indices drawn from 1..max_support
    int max_pieces = 2;     // breakpoints from {1/4, 1/2, 3/4}
    int max_terms = 2;      // per piece
    int max_xpow = 1;
    int max_freq = 1;
    int max_numerator = 3;  // coefficients p/q, |p| <= max_numerator, q in {1, 2}
    bool complex_coeffs = true;
    /// Shift every a_i by a constant so it has zero mean.
    bool zero_mean = false;
};

ExpPoly random_exp_poly(std::mt19937_64& rng, const RandomShape& shape);
PiecewiseCoeff random_piecewise(std::mt19937_64& rng, const RandomShape& shape);
/// Never empty: at least one index carries a nonzero coefficient.
CoeffSeq random_coeff_seq(std::mt19937_64& rng, const RandomShape& shape);

}  // namespace cfl

#endif
