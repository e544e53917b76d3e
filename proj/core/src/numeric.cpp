#include "cfl/numeric.hpp"

#include <array>
#include <cmath>
#include <numbers>

#include <boost/numeric/odeint.hpp>

namespace cfl {

namespace odeint = boost::numeric::odeint;

namespace {

constexpr double kPeriod = 2.0 * std::numbers::pi;

// One piece of the equation: coefficient i+1 -> ExpPoly on that interval.
struct PieceRhs {
    std::vector<std::pair<int, const ExpPolyF*>> terms;

    [[nodiscard]] Complex operator()(double x, Complex v) const {
        Complex total(0.0, 0.0);
        for (const auto& [i, f] : terms) {
            total += f->eval(x) * std::pow(v, i + 1);
        }
        return total;
    }
};

std::vector<PieceRhs> split(const CoeffSeqF& seq) {
    std::vector<PieceRhs> out(seq.lattice().size() - 1);
    for (const auto& [i, f] : seq.entries()) {
        for (std::size_t j = 0; j < f.piece_count(); ++j) {
            if (!f.pieces()[j].is_zero()) {
                out[j].terms.emplace_back(i, &f.pieces()[j]);
            }
        }
    }
    return out;
}

using State = std::array<double, 2>;

Complex integrate_rk(const PieceRhs& rhs, double x0, double x1, Complex v, const NumericOptions& options) {
    auto system = [&rhs](const State& s, State& ds, double x) {
        Complex d = rhs(x, Complex(s[0], s[1]));
        ds[0] = d.real();
        ds[1] = d.imag();
    };
    auto stepper = odeint::make_controlled(options.abs_tol, options.rel_tol, odeint::runge_kutta_fehlberg78<State>());
    State state{v.real(), v.imag()};
    double x = x0;
    double dt = (x1 - x0) / 64.0;
    const double min_dt = 1e-14 * std::max(1.0, x1 - x0);
    std::size_t steps = 0;
    while (x < x1) {
        if (x + dt > x1) {
            dt = x1 - x;
        }
        if (stepper.try_step(system, state, x, dt) == odeint::fail) {
            if (dt < min_dt) {
                throw NumericFailure("step size underflow at x = " + std::to_string(x));
            }
            continue;
        }
        if (!std::isfinite(state[0]) || !std::isfinite(state[1]) || std::hypot(state[0], state[1]) > options.blowup) {
            throw NumericFailure("solution blew up at x = " + std::to_string(x));
        }
        if (++steps > 1000000) {
            throw NumericFailure("step budget exhausted");
        }
    }
    return {state[0], state[1]};
}

Complex integrate_picard(const PieceRhs& rhs, double x0, double x1, Complex v0, const NumericOptions& options) {
    const std::size_t n = options.picard_grid;
    const double h = (x1 - x0) / static_cast<double>(n);
    std::vector<Complex> v(n + 1, v0);
    std::vector<Complex> f(n + 1);
    for (int iter = 0; iter < options.picard_max_iter; ++iter) {
        for (std::size_t k = 0; k <= n; ++k) {
            f[k] = rhs(x0 + h * static_cast<double>(k), v[k]);
        }
        double change = 0.0;
        Complex acc = v0;
        for (std::size_t k = 1; k <= n; ++k) {
            acc += 0.5 * h * (f[k - 1] + f[k]);
            change = std::max(change, std::abs(acc - v[k]));
            v[k] = acc;
        }
        if (!std::isfinite(change) || std::abs(v[n]) > options.blowup) {
            throw NumericFailure("Picard iteration diverged");
        }
        if (change <= options.abs_tol) {
            return v[n];
        }
    }
    throw NumericFailure("Picard iteration did not converge");
}

}  // namespace

double numeric_radius(const CoeffSeqF& a) {
    double worst = 0.0;
    for (const auto& [i, f] : a.entries()) {
        worst = std::max(worst, std::pow(f.sup_bound(), 1.0 / i));
    }
    return 1.0 / (2.0 * (1.0 + worst) * kPeriod);
}

Complex return_map_numeric(const CoeffSeqF& a, Complex r, const NumericOptions& options) {
    const Lattice lattice = a.lattice();
    const CoeffSeqF seq = a.refined(lattice);
    const std::vector<PieceRhs> rhs = split(seq);
    Complex v = r;
    for (std::size_t j = 0; j < rhs.size(); ++j) {
        if (rhs[j].terms.empty()) {
            continue;
        }
        double x0 = lattice[j].get_d() * kPeriod;
        double x1 = lattice[j + 1].get_d() * kPeriod;
        v = options.method == NumericMethod::runge_kutta ? integrate_rk(rhs[j], x0, x1, v, options)
                                                         : integrate_picard(rhs[j], x0, x1, v, options);
    }
    return v;
}

}  // namespace cfl
