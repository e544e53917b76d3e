#ifndef CFL_NUMERIC_HPP
#define CFL_NUMERIC_HPP

#include <stdexcept>

#include "cfl/coeff.hpp"

namespace cfl {

/// Step-size underflow, blow-up or non-convergence of a numeric solve.
class NumericFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class NumericMethod {
    /// Adaptive Runge-Kutta-Fehlberg 7(8), tolerance 1e-12.
    runge_kutta,
    /// Picard iteration on a uniform grid with trapezoidal quadrature.
    /// Slow and only about 1e-7 accurate; kept for debugging.
    picard,
};

struct NumericOptions {
    NumericMethod method = NumericMethod::runge_kutta;
    double abs_tol = 1e-12;
    double rel_tol = 1e-12;
    /// |v| above this is treated as blow-up.
    double blowup = 1e8;
    std::size_t picard_grid = 4096;
    int picard_max_iter = 200;
};

/// Conservative radius for the numeric return map:
/// 1 / (2 (1 + max_i sup|a_i|^{1/i}) T) with T = 2 pi and sup bounded from
/// the term magnitudes.
double numeric_radius(const CoeffSeqF& a);

/// v(T; r) for dv/dx = sum_i a_i(x) v^{i+1}, v(0) = r, over the canonical
/// period. Each piece is integrated separately so the coefficient jumps are
/// never stepped across. Throws NumericFailure.
Complex return_map_numeric(const CoeffSeqF& a, Complex r, const NumericOptions& options = {});

}  // namespace cfl

#endif
