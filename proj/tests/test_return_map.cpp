#include "doctest.h"

#include <cmath>
#include <numbers>
#include <random>

#include "cfl/numeric.hpp"
#include "cfl/random.hpp"
#include "cfl/return_map.hpp"

using namespace cfl;

namespace {

constexpr double kPi = std::numbers::pi;

CoeffSeq constant_seq(int index, const Scalar& value) {
    CoeffSeq a;
    a.set(index, PiecewiseCoeff(ExpPoly::constant(value)));
    return a;
}

ReturnSeries series(std::vector<Scalar> c) { return ReturnSeries{std::move(c)}; }

}  // namespace

TEST_CASE("combinatorial weights") {
    CHECK(comb_coefficient(Word{1}) == 1);
    CHECK(comb_coefficient(Word{2}) == 1);
    CHECK(comb_coefficient(Word{1, 1}) == 2);
    CHECK(comb_coefficient(Word{1, 2}) == 3);
    CHECK(comb_coefficient(Word{2, 1}) == 2);
    CHECK(comb_coefficient(Word{1, 1, 1}) == 6);
    CHECK_THROWS(comb_coefficient(Word{}));
}

TEST_CASE("zero equation is a universal center") {
    CenterVerdict v = center_check(CoeffSeq(), 6);
    CHECK(v.is_center_up_to_n);
    CHECK(v.is_universal_up_to_n);
    CHECK_FALSE(v.first_nonzero);
    CHECK(v.series.is_identity());
}

TEST_CASE("a1 = 1/2: c_n = pi^n") {
    ReturnSeries p = return_coeffs_transport(constant_seq(1, Scalar(Rational(1, 2))), 6);
    for (int n = 1; n <= 6; ++n) {
        CHECK(p.c(n) == Scalar::pi_power(n));
    }
}

TEST_CASE("a3 = 1: v = r (1 - 6 pi r^3)^{-1/3}") {
    // (1 - y)^{-1/3} = 1 + y/3 + 2 y^2 / 9 + ...; y = 6 pi r^3
    ReturnSeries p = return_coeffs_iterated(constant_seq(3, Scalar(1L)), 6);
    CHECK(p.c(3) == Scalar::pi_power(1, GaussRational(2)));
    CHECK(p.c(6) == Scalar::pi_power(2, GaussRational(8)));
    for (int n : {1, 2, 4, 5}) {
        CHECK(p.c(n).is_zero());
    }
}

TEST_CASE("center verdict for a focus") {
    CenterVerdict v = center_check(constant_seq(2, Scalar(1L)), 4);
    CHECK_FALSE(v.is_center_up_to_n);
    REQUIRE(v.first_nonzero);
    CHECK(v.first_nonzero->first == 2);
    CHECK(v.first_nonzero->second == Scalar::pi_power(1, GaussRational(2)));
    REQUIRE(v.universal_witness);
    CHECK(v.universal_witness->first == Word{2});
}

TEST_CASE("series composition and inversion by hand") {
    // f = r + r^2, g = r + 2 r^2: f(g(r)) = r + 3 r^2 + 4 r^3 + 4 r^4
    ReturnSeries f = series({Scalar(1L), Scalar(0L), Scalar(0L)});
    ReturnSeries g = series({Scalar(2L), Scalar(0L), Scalar(0L)});
    ReturnSeries fg = series_compose(f, g);
    CHECK(fg.c(1) == Scalar(3L));
    CHECK(fg.c(2) == Scalar(4L));
    CHECK(fg.c(3) == Scalar(4L));
    // inverse of r + r^2 is r - r^2 + 2 r^3 - 5 r^4
    ReturnSeries inv = series_inverse(f);
    CHECK(inv.c(1) == Scalar(-1L));
    CHECK(inv.c(2) == Scalar(2L));
    CHECK(inv.c(3) == Scalar(-5L));
    CHECK(series_compose(f, inv).is_identity());
    CHECK(series_compose(inv, f).is_identity());
}

TEST_CASE("exact and float pipelines agree") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 10; ++trial) {
        CoeffSeq a = random_coeff_seq(rng, RandomShape{});
        ReturnSeries exact = return_coeffs_transport(a, 6);
        ReturnSeriesF approx = return_coeffs_iterated(a.to_float(), 6);
        ReturnSeriesF approx2 = return_coeffs_transport(a.to_float(), 6);
        for (int n = 1; n <= 6; ++n) {
            Complex e = exact.c(n).to_complex();
            CHECK(std::abs(e - approx.c(n)) <= 1e-9 * std::max(1.0, std::abs(e)));
            CHECK(std::abs(e - approx2.c(n)) <= 1e-9 * std::max(1.0, std::abs(e)));
        }
    }
}

TEST_CASE("numeric return map against closed forms") {
    const double t = 2 * kPi;
    CoeffSeqF a1 = constant_seq(1, Scalar(1L)).to_float();
    for (double r : {0.001, 0.01, -0.02}) {
        CHECK(std::abs(return_map_numeric(a1, r) - r / (1 - t * r)) < 1e-12);
    }
    CoeffSeqF a2 = constant_seq(2, Scalar(1L)).to_float();
    Complex r(0.01, 0.005);
    CHECK(std::abs(return_map_numeric(a2, r) - r / std::sqrt(1.0 - 2.0 * t * r * r)) < 1e-12);
    NumericOptions picard;
    picard.method = NumericMethod::picard;
    CHECK(std::abs(return_map_numeric(a1, 0.01, picard) - 0.01 / (1 - t * 0.01)) < 1e-6);
    CHECK_THROWS_AS(return_map_numeric(a1, 1.0), NumericFailure);
    CHECK(numeric_radius(a1) == doctest::Approx(1.0 / (2.0 * 2.0 * t)));
}

TEST_CASE("evaluate sums the truncated series") {
    ReturnSeries p = series({Scalar(1L), Scalar(2L)});
    CHECK(std::abs(p.evaluate(0.1) - Complex(0.1 + 0.01 + 2 * 0.001)) < 1e-15);
}
