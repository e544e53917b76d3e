#include "doctest.h"

#include <numbers>
#include <random>
#include <sstream>

#include "cfl/cli.hpp"
#include "cfl/io.hpp"
#include "cfl/random.hpp"
#include "json.hpp"

using namespace cfl;
using json = nlohmann::json;

namespace {

const char* kA2 =
    R"({"period":"2pi","coefficients":[{"index":2,"pieces":[{"from":"0","to":"T","terms":[{"re":"1","im":"0","xpow":0,"freq":0}]}]}]})";
const char* kHamiltonian = R"({"F":{},"G":{"x^2":"1"}})";

struct Run {
    int code = 0;
    std::string out;
    std::string err;
};

Run run(const std::vector<std::string>& args, const std::string& input = "") {
    std::istringstream in(input);
    std::ostringstream out;
    std::ostringstream err;
    Run r;
    r.code = cli::run_command(args, in, out, err);
    r.out = out.str();
    r.err = err.str();
    return r;
}

std::string one_piece(const std::string& from, const std::string& to, const std::string& re) {
    return R"({"period":"2pi","coefficients":[{"index":1,"pieces":[{"from":")" + from + R"(","to":")" + to +
           R"(","terms":[{"re":")" + re + R"(","xpow":0,"freq":0}]}]}]})";
}

}  // namespace

TEST_CASE("equation parsing") {
    Equation eq = parse_equation(kA2);
    CHECK(eq.seq.support() == std::vector<int>{2});
    CHECK(eq.seq.find(2)->integral() == Scalar::pi_power(1, GaussRational(2)));
    CHECK(parse_equation(R"({"period":"2pi","coefficients":[]})").seq.is_zero());
}

TEST_CASE("equation parsing rejects bad documents") {
    CHECK_THROWS_AS(parse_equation(R"({"period":"2pi","coefficients":[],"extra":1})"), InputError);
    CHECK_THROWS_AS(parse_equation("not json"), InputError);
    CHECK_THROWS_AS(parse_equation(one_piece("0", "T/3", "1")), InputError);
    CHECK_THROWS_AS(parse_equation(one_piece("0", "T/2", "1")), InputError);  // does not reach T
    CHECK_THROWS_AS(parse_equation(one_piece("0", "T", "0.5")), InputError);
    CHECK(parse_equation_float(one_piece("0", "T", "0.5")).seq.find(1)->eval(1.0) == Complex(0.5));
    try {
        parse_equation(one_piece("0", "T/3", "1"));
    } catch (const InputError& e) {
        CHECK(std::string(e.what()).find("coefficients[0]") != std::string::npos);
    }
}

TEST_CASE("non-canonical periods are rescaled") {
    // a_1 = 1 on a period of length 1 equals a_1 = 1/(2 pi) on [0, 2 pi]
    std::string doc = one_piece("0", "T", "1");
    doc.replace(doc.find("2pi"), 3, "1");
    Equation eq = parse_equation(doc);
    CHECK(eq.meta.original_period == "1");
    CHECK(eq.seq.find(1)->integral() == Scalar(1L));
    CHECK(parse_period("pi", false).value == doctest::Approx(std::numbers::pi));
    CHECK(parse_period("3/2*pi", false).exact == Scalar::pi_power(1, GaussRational(Rational(3, 2))));
    CHECK_THROWS(parse_period("0.5", false));
    CHECK_THROWS(parse_period("-1", false));
}

TEST_CASE("render then parse is the identity") {
    std::mt19937_64 rng(23);
    RandomShape shape;
    shape.max_pieces = 3;
    shape.max_xpow = 2;
    for (int k = 0; k < 25; ++k) {
        CoeffSeq a = random_coeff_seq(rng, shape);
        CHECK(parse_equation(render_equation(a)).seq == a);
    }
    EquationMeta meta{"label", R"({"F":{}})", "2pi"};
    Equation eq = parse_equation(render_equation(CoeffSeq(), meta));
    CHECK(eq.meta.label == "label");
    CHECK(eq.meta.source_field == meta.source_field);
}

TEST_CASE("field parsing") {
    PlanarField h = parse_field(kHamiltonian);
    CHECK(h.F.empty());
    CHECK(h.G.at({2, 0}) == GaussRational(1));
    CHECK_THROWS_AS(parse_field(R"({"F":{"x^1":"1"},"G":{}})"), InputError);
    PlanarField c = parse_field(R"({"F":{"x^1 y^2":"1"},"G":{"y^3":"-2/3"}})");
    CHECK(c.degree == 3);
    CHECK(c.nonzero_count() == 2);
    CHECK(parse_field(R"({"F":{"x^2":["1","-1/2"]},"G":{}})").F.at({2, 0}) ==
          GaussRational(Rational(1), Rational(-1, 2)));
    CHECK_THROWS_AS(parse_field(R"({"F":{"x^13":"1"},"G":{}})"), InputError);
    CHECK(parse_field(render_field(c)).F == c.F);
}

TEST_CASE("small parsers") {
    CHECK(parse_word("1,2,1") == Word{1, 2, 1});
    CHECK_THROWS(parse_word("1,,2"));
    MomentSpec m = parse_moment_spec("1^2,2^1:3");
    CHECK(m.bases == std::vector<int>{1, 2, 3});
    CHECK(m.exponents == std::vector<int>{2, 1});
    CHECK(parse_moment_spec("3").bases == std::vector<int>{3});
    CHECK(input_digest("") == "fnv1a64:cbf29ce484222325");
}

TEST_CASE("cli exit codes") {
    CHECK(run({"center-check", "-", "--order", "6"}, R"({"period":"2pi","coefficients":[]})").code == 0);
    CHECK(run({"center-check", "-", "--order", "4", "--strict-verdict"}, kA2).code == 1);
    CHECK(run({"center-check", "-", "--order", "4"}, kA2).code == 0);
    CHECK(run({"center-check", "-"}, "{").code == 2);
    CHECK(run({"center-check", "/nonexistent/file.json"}).code == 2);
    CHECK(run({"bogus"}).code == 2);
    CHECK(run({"coeffs", "-", "--mode", "quantum"}, kA2).code == 2);
    CHECK(run({"--help"}).code == 0);
}

TEST_CASE("cli reports") {
    Run r = run({"center-check", "-", "--order", "6"}, R"({"period":"2pi","coefficients":[]})");
    json report = json::parse(r.out);
    CHECK(report["schema"] == "cfl-1");
    CHECK(report["mode"] == "exact");
    CHECK(report["results"]["verdict"]["is_center_up_to_N"] == true);
    CHECK(report["input_digest"].get<std::string>().rfind("fnv1a64:", 0) == 0);

    json coeffs = json::parse(run({"coeffs", "-", "--order", "4"}, kA2).out);
    CHECK(coeffs["results"]["coefficients"][3]["c"]["exact"] == "6*pi^2");
    json approx = json::parse(run({"coeffs", "-", "--order", "4", "--mode", "float"}, kA2).out);
    CHECK(approx["results"]["coefficients"][1]["c"]["decimal"] == "6.2831853071795862");

    Run pretty = run({"coeffs", "-", "--order", "2", "--pretty"}, kA2);
    CHECK(pretty.code == 0);
    CHECK(pretty.out.find("2*pi") != std::string::npos);
    CHECK_FALSE(json::accept(pretty.out));
}

TEST_CASE("reduce pipes into center-check") {
    Run reduced = run({"reduce", "-", "--order", "5"}, kHamiltonian);
    REQUIRE(reduced.code == 0);
    Run verdict = run({"center-check", "-", "--order", "5"}, reduced.out);
    REQUIRE(verdict.code == 0);
    json v = json::parse(verdict.out)["results"]["verdict"];
    CHECK(v["is_center_up_to_N"] == true);
    CHECK(v["is_universal_up_to_N"] == true);
}

TEST_CASE("group commands") {
    Run inv = run({"group", "inverse", "-"}, kA2);
    REQUIRE(inv.code == 0);
    CHECK(parse_equation(inv.out).seq.find(2)->eval(1.0) == Complex(-1.0));
    CHECK(run({"group", "concat", "-"}, kA2).code == 2);
}

TEST_CASE("verify suites") {
    Run r = run({"verify", "--suite", "shuffle", "--max-order", "4", "--trials", "3"});
    CHECK(r.code == 0);
    json report = json::parse(r.out);
    CHECK(report["results"]["all_passed"] == true);
    CHECK(run({"verify", "--suite", "nope"}).code == 2);
}

TEST_CASE("reports are deterministic apart from timing") {
    auto strip = [](std::string s) { return s.substr(0, s.find("\"timing_ms\"")); };
    std::vector<std::string> args{"moments", "-", "--max-degree", "3"};
    CHECK(strip(run(args, kA2).out) == strip(run(args, kA2).out));
    std::vector<std::string> vargs{"verify", "--suite", "group", "--trials", "2", "--seed", "9"};
    CHECK(strip(run(vargs).out) == strip(run(vargs).out));
}
