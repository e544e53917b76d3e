// Acceptance checks for the cfl library and tool. Prints one PASS/FAIL line
// per criterion and exits nonzero if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "cfl/cli.hpp"
#include "cfl/group_ops.hpp"
#include "cfl/io.hpp"
#include "cfl/iterated.hpp"
#include "cfl/numeric.hpp"
#include "cfl/polar.hpp"
#include "cfl/random.hpp"
#include "cfl/return_map.hpp"

using namespace cfl;

namespace {

struct Outcome {
    bool ok = true;
    std::string detail;

    void require(bool cond, const std::string& what) {
        if (!cond && ok) {
            ok = false;
            detail = what;
        }
    }
};

CoeffSeq constant_seq(int index, long value) {
    CoeffSeq a;
    a.set(index, PiecewiseCoeff(ExpPoly::constant(Scalar(value))));
    return a;
}

long binomial(int n, int k) {
    long b = 1;
    for (int j = 1; j <= k; ++j) {
        b = b * (n - k + j) / j;
    }
    return b;
}

// c_1 = I_(1), c_2 = I_(2) + 2 I_(1,1).
Outcome hand_formulas() {
    Outcome o;
    std::mt19937_64 rng(101);
    for (int trial = 0; trial < 50; ++trial) {
        CoeffSeq a = random_coeff_seq(rng, RandomShape{});
        ReturnSeries p = return_coeffs_iterated(a, 2);
        IteratedIntegrals ii(a);
        o.require(p.c(1) == ii.integral(Word{1}), "c1 mismatch at trial " + std::to_string(trial));
        o.require(p.c(2) == ii.integral(Word{2}) + ii.integral(Word{1, 1}) * GaussRational(2),
                  "c2 mismatch at trial " + std::to_string(trial));
    }
    return o;
}

// a_1 = 1: v = r / (1 - T r), so c_n = T^n.
// a_2 = 1: v = r (1 - 2 T r^2)^{-1/2}, so c_{2k} = binom(2k, k) pi^k and odd c_n vanish.
Outcome closed_forms() {
    Outcome o;
    const int order = 8;
    for (const auto& p : {return_coeffs_iterated(constant_seq(1, 1), order),
                          return_coeffs_transport(constant_seq(1, 1), order)}) {
        for (int n = 1; n <= order; ++n) {
            o.require(p.c(n) == Scalar::pi_power(n, GaussRational(1L << n)), "a1 = 1: c_" + std::to_string(n));
        }
    }
    for (const auto& p : {return_coeffs_iterated(constant_seq(2, 1), order),
                          return_coeffs_transport(constant_seq(2, 1), order)}) {
        for (int n = 1; n <= order; ++n) {
            Scalar expected = n % 2 == 0 ? Scalar::pi_power(n / 2, GaussRational(binomial(n, n / 2))) : Scalar();
            o.require(p.c(n) == expected, "a2 = 1: c_" + std::to_string(n));
        }
        o.require(p.c(2) == Scalar::pi_power(1, GaussRational(2)), "a2 = 1: c2 != 2 pi");
        o.require(p.c(3).is_zero(), "a2 = 1: c3 != 0");
        o.require(p.c(4) == Scalar::pi_power(2, GaussRational(6)), "a2 = 1: c4 != 6 pi^2");
    }
    return o;
}

Outcome pipeline_agreement() {
    Outcome o;
    std::mt19937_64 rng(303);
    for (int trial = 0; trial < 30; ++trial) {
        CoeffSeq a = random_coeff_seq(rng, RandomShape{});
        o.require(return_coeffs_iterated(a, 8) == return_coeffs_transport(a, 8),
                  "pipelines disagree at trial " + std::to_string(trial));
    }
    return o;
}

Outcome shuffle_identity() {
    Outcome o;
    std::mt19937_64 rng(404);
    const std::vector<Word> words = words_up_to_order(5);
    for (int trial = 0; trial < 10; ++trial) {
        IteratedIntegrals ii(random_coeff_seq(rng, RandomShape{}));
        for (const Word& u : words) {
            for (const Word& v : words) {
                if (u.order() + v.order() <= 6) {
                    o.require(ii.integral(u) * ii.integral(v) == ii.sum(shuffle(u, v)),
                              "shuffle fails for " + u.str() + " x " + v.str());
                }
            }
        }
    }
    return o;
}

Outcome group_laws() {
    Outcome o;
    std::mt19937_64 rng(505);
    const int order = 6;
    for (int trial = 0; trial < 20; ++trial) {
        const std::string ctx = " at trial " + std::to_string(trial);
        CoeffSeq a = random_coeff_seq(rng, RandomShape{});
        CoeffSeq b = random_coeff_seq(rng, RandomShape{});
        o.require(return_coeffs_iterated(concat(a, b), order) ==
                      series_compose(return_coeffs_iterated(b, order), return_coeffs_iterated(a, order)),
                  "composition law" + ctx);
        o.require(return_coeffs_iterated(concat(a, inverse(a)), order).is_identity(), "inverse law" + ctx);
        IteratedIntegrals ia(a);
        IteratedIntegrals iinv(inverse(a));
        for (const Word& w : words_up_to_order(order)) {
            if (w.length() > 4) {
                continue;
            }
            Scalar expected = ia.integral(w.reversed());
            if (w.length() % 2 == 1) {
                expected = -expected;
            }
            o.require(iinv.integral(w) == expected, "antipode fails for " + w.str() + ctx);
        }
    }
    return o;
}

Outcome moment_character() {
    Outcome o;
    std::mt19937_64 rng(606);
    RandomShape shape;
    shape.zero_mean = true;
    for (int trial = 0; trial < 20; ++trial) {
        CoeffSeq a = random_coeff_seq(rng, shape);
        CoeffSeq b = random_coeff_seq(rng, shape);
        o.require(in_Xstar(a) && in_Xstar(b), "zero-mean generator produced a nonzero mean");
        IteratedIntegrals ia(a);
        IteratedIntegrals ib(b);
        IteratedIntegrals iab(concat(a, b));
        for (const MomentSpec& spec : moment_specs_up_to({1, 2, 3}, 4)) {
            o.require(iab.moment(spec) == ia.moment(spec) + ib.moment(spec),
                      "additivity fails for " + spec.str() + " at trial " + std::to_string(trial));
        }
    }
    return o;
}

PlanarField make_field(BivariatePoly f, BivariatePoly g, int degree) {
    PlanarField p;
    p.degree = degree;
    p.F = std::move(f);
    p.G = std::move(g);
    p.validate();
    return p;
}

Outcome polar() {
    Outcome o;
    o.require(polar_reduce(PlanarField{}, 6).is_zero(), "zero field does not reduce to zero");

    PlanarField focus = make_field({{{3, 0}, 1}, {{1, 2}, 1}}, {{{2, 1}, 1}, {{0, 3}, 1}}, 3);
    CoeffSeq fa = polar_reduce(focus, 6);
    o.require(fa == constant_seq(2, 1), "focus field does not reduce to a_2 = 1");
    o.require(return_coeffs_iterated(fa, 2).c(2) == Scalar::pi_power(1, GaussRational(2)), "focus c2 != 2 pi");

    PlanarField ham = make_field({}, {{{2, 0}, 1}}, 2);
    CoeffSeq ha = polar_reduce(ham, 5);
    CenterVerdict v = center_check(ha, 5);
    o.require(v.is_center_up_to_n && v.is_universal_up_to_n, "Hamiltonian field is not a universal center to order 5");

    const double x0 = 0.01;
    auto [x, y] = planar_orbit_return(ham, x0);
    o.require(std::hypot(x - x0, y) <= 1e-6, "planar orbit does not close to 1e-6");
    Complex back = return_map_numeric(ha.to_float(), Complex(x0, 0.0));
    o.require(std::abs(back - Complex(x0, 0.0)) <= 1e-8, "numeric return map moves r by more than 1e-8");
    return o;
}

Outcome numeric_consistency() {
    Outcome o;
    std::mt19937_64 rng(808);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    const int order = 10;
    for (int trial = 0; trial < 50; ++trial) {
        CoeffSeq a = random_coeff_seq(rng, RandomShape{});
        ReturnSeries p = return_coeffs_transport(a, order);
        CoeffSeqF af = a.to_float();
        const double radius = numeric_radius(af);
        Complex r(unit(rng), unit(rng));
        r *= radius / 4.0 / std::max(1.0, std::abs(r));
        const Complex numeric = return_map_numeric(af, r);
        o.require(std::abs(p.evaluate(r) - numeric) <= 1e-8, "series and numeric disagree at trial " + std::to_string(trial));
    }
    return o;
}

std::string without_timing(const std::string& report) {
    auto at = report.find("\"timing_ms\"");
    return at == std::string::npos ? report : report.substr(0, at);
}

Outcome cli_round_trip() {
    Outcome o;
    std::mt19937_64 rng(909);
    for (int trial = 0; trial < 30; ++trial) {
        CoeffSeq a = random_coeff_seq(rng, RandomShape{});
        std::string doc = render_equation(a);
        o.require(parse_equation(doc).seq == a, "render -> parse is not the identity at trial " + std::to_string(trial));
        o.require(render_equation(parse_equation(doc).seq) == doc, "render is not stable at trial " + std::to_string(trial));
    }

    const std::string ham = R"({"F":{},"G":{"x^2":"1"}})";
    auto run = [](const std::vector<std::string>& args, const std::string& input, int& code) {
        std::istringstream in(input);
        std::ostringstream out;
        std::ostringstream err;
        code = cli::run_command(args, in, out, err);
        return out.str();
    };
    int code = 0;
    std::string reduced = run({"reduce", "-", "--order", "5"}, ham, code);
    o.require(code == 0, "reduce failed");
    std::string reduced_again = run({"reduce", "-", "--order", "5"}, ham, code);
    o.require(reduced == reduced_again, "reduce output is not byte-stable");
    o.require(render_equation(parse_equation(reduced).seq, parse_equation(reduced).meta) == reduced,
              "reduce output does not round-trip");
    for (const std::vector<std::string>& args :
         {std::vector<std::string>{"center-check", "-", "--order", "5"},
          std::vector<std::string>{"coeffs", "-", "--order", "5", "--r", "0.01"},
          std::vector<std::string>{"moments", "-", "--max-degree", "3"},
          std::vector<std::string>{"iterated", "-", "--max-order", "3", "--mode", "float"}}) {
        int c1 = 0;
        int c2 = 0;
        std::string first = run(args, reduced, c1);
        std::string second = run(args, reduced, c2);
        o.require(c1 == 0 && c2 == 0, args.front() + " failed");
        o.require(without_timing(first) == without_timing(second), args.front() + " report is not byte-stable");
    }
    return o;
}

}  // namespace

int main() {
    struct Criterion {
        const char* name;
        std::function<Outcome()> run;
        double limit_s;  // 0: no runtime limit
    };
    const std::vector<Criterion> criteria{
        {"1 hand formulas for c1, c2", hand_formulas, 1.0},
        {"2 closed-form return maps", closed_forms, 5.0},
        {"3 iterated vs transport pipelines", pipeline_agreement, 120.0},
        {"4 shuffle identity", shuffle_identity, 60.0},
        {"5 group laws and antipode", group_laws, 0.0},
        {"6 moment character property", moment_character, 0.0},
        {"7 polar reduction", polar, 60.0},
        {"8 numeric vs exact series", numeric_consistency, 0.0},
        {"9 CLI round-trip and determinism", cli_round_trip, 0.0},
    };
    int failures = 0;
    for (const auto& c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Outcome outcome;
        try {
            outcome = c.run();
        } catch (const std::exception& e) {
            outcome.ok = false;
            outcome.detail = std::string("exception: ") + e.what();
        }
        const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (outcome.ok && c.limit_s > 0 && seconds > c.limit_s) {
            outcome.ok = false;
            char buf[96];
            std::snprintf(buf, sizeof buf, "runtime %.2f s exceeds %.0f s", seconds, c.limit_s);
            outcome.detail = buf;
        }
        failures += outcome.ok ? 0 : 1;
        std::printf("%s  criterion %-36s %8.3f s%s%s\n", outcome.ok ? "PASS" : "FAIL", c.name, seconds,
                    outcome.detail.empty() ? "" : "  ", outcome.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
