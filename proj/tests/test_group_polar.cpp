#include "doctest.h"

#include <cmath>
#include <numbers>
#include <random>

#include "cfl/group_ops.hpp"
#include "cfl/iterated.hpp"
#include "cfl/polar.hpp"
#include "cfl/random.hpp"
#include "cfl/return_map.hpp"

using namespace cfl;

namespace {

constexpr double kPi = std::numbers::pi;

CoeffSeq constant_seq(int index, long value) {
    CoeffSeq a;
    a.set(index, PiecewiseCoeff(ExpPoly::constant(Scalar(value))));
    return a;
}

PlanarField make_field(BivariatePoly f, BivariatePoly g, int degree) {
    PlanarField p;
    p.degree = degree;
    p.F = std::move(f);
    p.G = std::move(g);
    return p;
}

}  // namespace

TEST_CASE("concatenation doubles speed on each half") {
    CoeffSeq ab = concat(constant_seq(1, 1), constant_seq(2, 3));
    const auto* a1 = ab.find(1);
    const auto* a2 = ab.find(2);
    REQUIRE(a1 != nullptr);
    REQUIRE(a2 != nullptr);
    CHECK(a1->eval(1.0) == Complex(2.0));
    CHECK(a1->eval(4.0) == Complex(0.0));
    CHECK(a2->eval(1.0) == Complex(0.0));
    CHECK(a2->eval(4.0) == Complex(6.0));
    // a1 = 1 for the whole run on both halves: same as a1 = 2 over one period
    CHECK(iterated_integral(Word{1, 1}, concat(constant_seq(1, 1), constant_seq(1, 1))) ==
          iterated_integral(Word{1, 1}, constant_seq(1, 2)));
}

TEST_CASE("inverse reverses and negates") {
    CoeffSeq a;
    a.set(1, PiecewiseCoeff(ExpPoly::term(Scalar(1L), 1, 0)));
    CoeffSeq inv = inverse(a);
    CHECK(inv.find(1)->eval(1.0) == Complex(-(2 * kPi - 1.0)));
    CHECK(inverse(inv) == a);
    CHECK(inverse(CoeffSeq()).is_zero());
}

TEST_CASE("inverse and concat examples") {
    CHECK(inverse(constant_seq(1, 1)) == constant_seq(1, -1));
    CoeffSeq e;
    e.set(1, PiecewiseCoeff(ExpPoly::term(Scalar(1L), 0, 1)));
    CoeffSeq expected;
    expected.set(1, PiecewiseCoeff(ExpPoly::term(Scalar(-1L), 0, -1)));
    CHECK(inverse(e) == expected);

    CoeffSeq twice = concat(constant_seq(1, 1), constant_seq(1, 1));
    CHECK(twice == constant_seq(1, 2));
    CHECK(twice.find(1)->integral() == Scalar::pi_power(1, GaussRational(4)));

    CoeffSeq cosx;
    cosx.set(1, PiecewiseCoeff(ExpPoly::term(Scalar(Rational(1, 2)), 0, 1) + ExpPoly::term(Scalar(Rational(1, 2)), 0, -1)));
    CoeffSeq c = concat(cosx, CoeffSeq());
    for (double t : {0.4, 1.9, 3.0, 4.5}) {
        Complex want = t <= kPi ? 2 * std::cos(2 * t) : 0.0;
        CHECK(std::abs(c.find(1)->eval(t) - want) < 1e-13);
    }
    IteratedIntegrals plain(cosx);
    IteratedIntegrals padded(c);
    for (const Word& w : words_up_to_order(4)) {
        CHECK(plain.integral(w) == padded.integral(w));
    }
}

TEST_CASE("equivalence up to order") {
    std::mt19937_64 rng(3);
    CoeffSeq a = random_coeff_seq(rng, RandomShape{});
    CHECK(equivalent_up_to(a, a, 4).equivalent);
    // a * a^{-1} is equivalent to the zero path
    CHECK(equivalent_up_to(concat(a, inverse(a)), CoeffSeq(), 4).equivalent);
    EquivalenceT<Scalar> e = equivalent_up_to(constant_seq(1, 1), constant_seq(1, 2), 3);
    CHECK_FALSE(e.equivalent);
    REQUIRE(e.witness);
    CHECK(e.witness->first == Word{1});
}

TEST_CASE("zero-mean sequences") {
    CHECK(in_Xstar(CoeffSeq()));
    CHECK_FALSE(in_Xstar(constant_seq(1, 1)));
    CoeffSeq a;
    a.set(2, PiecewiseCoeff(ExpPoly::term(Scalar(1L), 0, 3)));
    CHECK(in_Xstar(a));
    std::mt19937_64 rng(5);
    RandomShape shape;
    shape.zero_mean = true;
    for (int k = 0; k < 10; ++k) {
        CHECK(in_Xstar(random_coeff_seq(rng, shape)));
    }
}

TEST_CASE("trigonometric restriction") {
    const Scalar quarter(Rational(1, 4));
    ExpPoly x2 = trig_restrict({{{2, 0}, 1}});
    CHECK(x2 == ExpPoly::term(quarter, 0, 2) + ExpPoly::term(quarter, 0, -2) + ExpPoly::constant(Scalar(Rational(1, 2))));
    ExpPoly xy = trig_restrict({{{1, 1}, 1}});
    const Scalar minus_quarter_i(GaussRational(Rational(0), Rational(-1, 4)));
    CHECK(xy == ExpPoly::term(minus_quarter_i, 0, 2) - ExpPoly::term(minus_quarter_i, 0, -2));
    ExpPoly x3 = trig_restrict({{{3, 0}, 1}});
    for (const auto& [m, c] : x3.terms()) {
        CHECK((std::abs(m.freq) == 1 || std::abs(m.freq) == 3));
    }
    CHECK(std::abs(x3.eval(0.7) - std::pow(std::cos(0.7), 3)) < 1e-14);
    CHECK_THROWS(trig_restrict({{{2, 0}, 1}, {{3, 0}, 1}}));
}

TEST_CASE("parameter count") {
    CHECK(param_count(2) == 6);
    CHECK(param_count(3) == 14);
    CHECK(param_count(4) == 24);
    CHECK_THROWS(param_count(1));
}

TEST_CASE("weighted homogeneity") {
    CHECK(check_alpha_homogeneous({{{1, 1}, 1}}, {{1, 1}}) == 2);
    CHECK(check_alpha_homogeneous({{{2, 0}, 1}, {{0, 1}, 1}}, {{1, 2}}) == 2);
    CHECK_FALSE(check_alpha_homogeneous({{{1}, 1}, {{2}, 1}}, {{1}}).has_value());
    CHECK(check_alpha_homogeneous({}, {{1, 1}}) == 0);
    CHECK_THROWS(check_alpha_homogeneous({{{1, 1}, 1}}, {{1}}));
}

TEST_CASE("planar field validation") {
    CHECK_THROWS(make_field({{{1, 0}, 1}}, {}, 2).validate());
    CHECK_THROWS(make_field({{{0, 0}, 1}}, {}, 2).validate());
    CHECK_THROWS(make_field({{{3, 0}, 1}}, {}, 2).validate());
    PlanarField ok = make_field({{{1, 2}, 1}}, {{{0, 3}, GaussRational(Rational(-2, 3))}}, 3);
    CHECK_NOTHROW(ok.validate());
    CHECK(ok.nonzero_count() == 2);
}

TEST_CASE("polar reduction of the Hamiltonian field") {
    CoeffSeq a = polar_reduce(make_field({}, {{{2, 0}, 1}}, 2), 5);
    CHECK(a.support() == std::vector<int>{1, 2, 3, 4, 5});
    for (int i = 1; i <= 5; ++i) {
        for (double phi : {0.3, 1.1, 2.5, 4.0, 5.9}) {
            double expected = (i % 2 == 1 ? 1.0 : -1.0) * std::sin(phi) * std::pow(std::cos(phi), 3 * i - 1);
            CHECK(std::abs(a.find(i)->eval(phi) - expected) < 1e-13);
        }
    }
    auto [x, y] = planar_orbit_return(make_field({}, {{{2, 0}, 1}}, 2), 0.05);
    CHECK(std::hypot(x - 0.05, y) < 1e-6);
}

TEST_CASE("polar reduction of the cubic focus") {
    PlanarField focus = make_field({{{3, 0}, 1}, {{1, 2}, 1}}, {{{2, 1}, 1}, {{0, 3}, 1}}, 3);
    CoeffSeq a = polar_reduce(focus, 4);
    CHECK(a == constant_seq(2, 1));
    auto [x, y] = planar_orbit_return(focus, 0.05);
    CHECK(std::abs(y) < 1e-9);
    // outward spiral, matching c_2 = 2 pi > 0: x(2pi) = x0 / sqrt(1 - 4 pi x0^2)
    CHECK(x > 0.05);
    CHECK(x == doctest::Approx(0.05 / std::sqrt(1 - 4 * kPi * 0.0025)).epsilon(1e-9));
}

TEST_CASE("realness and frequency bound for random real fields") {
    std::mt19937_64 rng(17);
    std::uniform_int_distribution<int> coeff(-3, 3);
    for (int d = 2; d <= 4; ++d) {
        PlanarField f;
        f.degree = d;
        for (int k = 2; k <= d; ++k) {
            for (int p = 0; p <= k; ++p) {
                f.F[{p, k - p}] = GaussRational(static_cast<long>(coeff(rng)));
                f.G[{p, k - p}] = GaussRational(static_cast<long>(coeff(rng)));
            }
        }
        CoeffSeq a = polar_reduce(f, 4);
        for (const auto& [i, c] : a.entries()) {
            CHECK(c.pieces().front().is_conj_symmetric());
            const int freq = c.pieces().front().max_abs_freq();
            CHECK(freq <= 3 * i);
            if (d >= 3) {
                CHECK(freq <= (i + 1) * d);
            }
        }
    }
}

TEST_CASE("quadratic fields reach frequency 3i") {
    CoeffSeq a = polar_reduce(make_field({}, {{{2, 0}, 1}}, 2), 4);
    for (int i = 1; i <= 4; ++i) {
        CHECK(a.find(i)->pieces().front().max_abs_freq() == 3 * i);
    }
}

TEST_CASE("zero field") {
    CHECK(polar_reduce(PlanarField{}, 5).is_zero());
}
