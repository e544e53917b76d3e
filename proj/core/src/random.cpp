#include "cfl/random.hpp"

#include <algorithm>

namespace cfl {

namespace {

int uniform(std::mt19937_64& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

Rational random_rational(std::mt19937_64& rng, const RandomShape& shape) {
    Rational q(uniform(rng, -shape.max_numerator, shape.max_numerator), uniform(rng, 1, 2));
    q.canonicalize();
    return q;
}

}  // namespace

ExpPoly random_exp_poly(std::mt19937_64& rng, const RandomShape& shape) {
    ExpPoly f;
    const int terms = uniform(rng, 1, shape.max_terms);
    for (int t = 0; t < terms; ++t) {
        GaussRational c(random_rational(rng, shape));
        if (shape.complex_coeffs && uniform(rng, 0, 2) == 0) {
            c.im = random_rational(rng, shape);
        }
        f.add_term(Scalar(c), uniform(rng, 0, shape.max_xpow), uniform(rng, -shape.max_freq, shape.max_freq));
    }
    return f;
}

PiecewiseCoeff random_piecewise(std::mt19937_64& rng, const RandomShape& shape) {
    const int pieces = uniform(rng, 1, std::clamp(shape.max_pieces, 1, 4));
    std::vector<Rational> inner{Rational(1, 4), Rational(1, 2), Rational(3, 4)};
    std::shuffle(inner.begin(), inner.end(), rng);
    inner.resize(static_cast<std::size_t>(pieces - 1));
    std::sort(inner.begin(), inner.end());
    Lattice breaks{Rational(0)};
    breaks.insert(breaks.end(), inner.begin(), inner.end());
    breaks.emplace_back(1);
    std::vector<ExpPoly> fs;
    for (int j = 0; j < pieces; ++j) {
        fs.push_back(random_exp_poly(rng, shape));
    }
    PiecewiseCoeff f(std::move(breaks), std::move(fs));
    if (shape.zero_mean) {
        // subtract the mean integral / (2 pi)
        Scalar mean = f.integral() * Scalar::pi_power(-1, GaussRational(Rational(1, 2)));
        f -= PiecewiseCoeff(ExpPoly::constant(mean));
    }
    return f;
}

CoeffSeq random_coeff_seq(std::mt19937_64& rng, const RandomShape& shape) {
    CoeffSeq a;
    while (a.is_zero()) {
        for (int i = 1; i <= shape.max_support; ++i) {
            if (uniform(rng, 0, 1) == 1) {
                a.set(i, random_piecewise(rng, shape));
            }
        }
    }
    return a;
}

}  // namespace cfl
