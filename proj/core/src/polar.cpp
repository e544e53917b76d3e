#include "cfl/polar.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include <boost/numeric/odeint.hpp>

namespace cfl {

namespace {

Rational binomial(int n, int k) {
    mpz_class r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return Rational(r);
}

Rational pow2_inverse(int n) {
    mpz_class den = 1;
    den <<= n;
    return Rational(mpz_class(1), den);
}

// Truncated series in r whose coefficients are ExpPolys in phi.
using TrigSeries = std::vector<ExpPoly>;

TrigSeries series_mul(const TrigSeries& a, const TrigSeries& b) {
    TrigSeries out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].is_zero()) {
            continue;
        }
        for (std::size_t j = 0; i + j < out.size(); ++j) {
            if (!b[j].is_zero()) {
                out[i + j] += a[i] * b[j];
            }
        }
    }
    return out;
}

BivariatePoly homogeneous_part(const BivariatePoly& h, int degree) {
    BivariatePoly out;
    for (const auto& [e, c] : h) {
        if (e.first + e.second == degree) {
            out.emplace(e, c);
        }
    }
    return out;
}

// x*F_d + y*G_d (sign = +1) or x*G_d - y*F_d (sign = -1) for the two
// combinations the reduction needs.
BivariatePoly radial_combination(const BivariatePoly& x_part, const BivariatePoly& y_part, int sign) {
    BivariatePoly out;
    for (const auto& [e, c] : x_part) {
        out[{e.first + 1, e.second}] += c;
    }
    for (const auto& [e, c] : y_part) {
        out[{e.first, e.second + 1}] += sign > 0 ? c : -c;
    }
    std::erase_if(out, [](const auto& kv) { return kv.second.is_zero(); });
    return out;
}

double eval_real(const BivariatePoly& h, double x, double y) {
    double total = 0.0;
    for (const auto& [e, c] : h) {
        total += c.re.get_d() * std::pow(x, e.first) * std::pow(y, e.second);
    }
    return total;
}

}  // namespace

void PlanarField::validate() const {
    if (degree < 2) {
        throw std::invalid_argument("field degree must be >= 2");
    }
    for (const auto* poly : {&F, &G}) {
        for (const auto& [e, c] : *poly) {
            const auto [p, q] = e;
            if (p < 0 || q < 0) {
                throw std::invalid_argument("negative exponent in field monomial");
            }
            if (p + q < 2 && !c.is_zero()) {
                throw std::invalid_argument("field contains a constant or linear term x^" + std::to_string(p) + " y^" +
                                            std::to_string(q));
            }
            if (p + q > degree) {
                throw std::invalid_argument("monomial x^" + std::to_string(p) + " y^" + std::to_string(q) +
                                            " exceeds the field degree " + std::to_string(degree));
            }
        }
    }
}

std::size_t PlanarField::nonzero_count() const {
    std::size_t n = 0;
    for (const auto* poly : {&F, &G}) {
        for (const auto& [e, c] : *poly) {
            n += c.is_zero() ? 0 : 1;
        }
    }
    return n;
}

ExpPoly trig_restrict(const BivariatePoly& h) {
    ExpPoly out;
    std::optional<int> degree;
    for (const auto& [e, c] : h) {
        if (c.is_zero()) {
            continue;
        }
        const auto [p, q] = e;
        if (degree && *degree != p + q) {
            throw std::invalid_argument("trig_restrict: polynomial is not homogeneous");
        }
        degree = p + q;
        // cos^p = 2^{-p} sum_a C(p,a) e^{i(2a-p)phi}
        // sin^q = (2i)^{-q} sum_b C(q,b) (-1)^{q-b} e^{i(2b-q)phi}
        GaussRational scale = c * GaussRational(pow2_inverse(p + q)) / i_power(q);
        for (int a = 0; a <= p; ++a) {
            for (int b = 0; b <= q; ++b) {
                Rational weight = binomial(p, a) * binomial(q, b);
                if ((q - b) % 2 == 1) {
                    weight = -weight;
                }
                out.add_term(Scalar(scale * GaussRational(weight)), 0, (2 * a - p) + (2 * b - q));
            }
        }
    }
    return out;
}

CoeffSeq polar_reduce(const PlanarField& field, int order) {
    field.validate();
    if (order < 1) {
        throw std::invalid_argument("order must be >= 1");
    }
    const auto len = static_cast<std::size_t>(order + 2);  // powers r^0 .. r^{N+1}
    TrigSeries p(len);
    TrigSeries q(len);
    for (int d = 2; d <= field.degree; ++d) {
        BivariatePoly f_d = homogeneous_part(field.F, d);
        BivariatePoly g_d = homogeneous_part(field.G, d);
        if (static_cast<std::size_t>(d) < len) {
            p[static_cast<std::size_t>(d)] += trig_restrict(radial_combination(f_d, g_d, +1));
        }
        if (static_cast<std::size_t>(d - 1) < len) {
            q[static_cast<std::size_t>(d - 1)] += trig_restrict(radial_combination(g_d, f_d, -1));
        }
    }
    // 1/(1+q) = sum_k (-q)^k; q has no r^0 term so len terms suffice.
    TrigSeries minus_q(len);
    for (std::size_t k = 0; k < len; ++k) {
        minus_q[k] = -q[k];
    }
    TrigSeries geometric(len);
    geometric[0] = ExpPoly::constant(Scalar(1));
    TrigSeries power = geometric;
    for (std::size_t k = 1; k < len; ++k) {
        power = series_mul(power, minus_q);
        for (std::size_t m = 0; m < len; ++m) {
            geometric[m] += power[m];
        }
    }
    TrigSeries rhs = series_mul(p, geometric);
    CoeffSeq out;
    for (int i = 1; i <= order; ++i) {
        out.set(i, PiecewiseCoeff(rhs[static_cast<std::size_t>(i + 1)]));
    }
    return out;
}

long param_count(int degree) {
    if (degree < 2) {
        throw std::invalid_argument("param_count: degree must be >= 2");
    }
    return static_cast<long>(degree) * degree + 3L * degree - 4;
}

std::optional<int> check_alpha_homogeneous(const MultiPoly& p, const AlphaWeight& weight) {
    for (int a : weight.alpha) {
        if (a < 1) {
            throw std::invalid_argument("alpha weights must be >= 1");
        }
    }
    std::optional<int> degree;
    for (const auto& [exps, c] : p) {
        if (exps.size() != weight.alpha.size()) {
            throw std::invalid_argument("monomial arity does not match the weight vector");
        }
        if (c.is_zero()) {
            continue;
        }
        int weighted = 0;
        for (std::size_t j = 0; j < exps.size(); ++j) {
            weighted += weight.alpha[j] * exps[j];
        }
        if (degree && *degree != weighted) {
            return std::nullopt;
        }
        degree = weighted;
    }
    return degree.value_or(0);
}

std::pair<double, double> planar_orbit_return(const PlanarField& field, double x0) {
    namespace odeint = boost::numeric::odeint;
    using State = std::array<double, 2>;
    for (const auto* poly : {&field.F, &field.G}) {
        for (const auto& [e, c] : *poly) {
            if (!c.is_real()) {
                throw std::invalid_argument("planar integration needs real coefficients");
            }
        }
    }
    auto system = [&field](const State& s, State& ds, double /*phi*/) {
        const double x = s[0];
        const double y = s[1];
        const double xdot = -y + eval_real(field.F, x, y);
        const double ydot = x + eval_real(field.G, x, y);
        const double phidot = (x * ydot - y * xdot) / (x * x + y * y);
        if (!(phidot > 0.0)) {
            throw std::domain_error("angular speed is not positive along the orbit");
        }
        ds[0] = xdot / phidot;
        ds[1] = ydot / phidot;
    };
    State state{x0, 0.0};
    odeint::integrate_adaptive(odeint::make_controlled(1e-13, 1e-13, odeint::runge_kutta_fehlberg78<State>()), system,
                               state, 0.0, 2.0 * std::numbers::pi, 1e-3);
    return {state[0], state[1]};
}

}  // namespace cfl
