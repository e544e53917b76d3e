#include "cfl/verify.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

#include "cfl/group_ops.hpp"
#include "cfl/iterated.hpp"
#include "cfl/random.hpp"
#include "cfl/return_map.hpp"

namespace cfl {

namespace {

class Tallies {
public:
    IdentityTally& operator[](const std::string& name) {
        for (auto& t : tallies_) {
            if (t.name == name) {
                return t;
            }
        }
        IdentityTally fresh;
        fresh.name = name;
        tallies_.push_back(std::move(fresh));
        return tallies_.back();
    }

    void record(const std::string& name, bool ok, const std::string& context) {
        IdentityTally& t = (*this)[name];
        ++t.checked;
        if (ok) {
            ++t.passed;
        } else if (t.failures.size() < 5) {
            t.failures.push_back(context);
        }
    }

    std::vector<IdentityTally> take() { return std::move(tallies_); }

private:
    std::vector<IdentityTally> tallies_;
};

void suite_antiderivative(const VerifyOptions& o, std::mt19937_64& rng, Tallies& t) {
    RandomShape shape;
    shape.max_terms = 4;
    shape.max_xpow = 3;
    shape.max_freq = 3;
    for (int trial = 0; trial < o.trials; ++trial) {
        ExpPoly f = random_exp_poly(rng, shape);
        ExpPoly anti = f.antiderivative();
        t.record("d/dx antiderivative(f) = f", anti.derivative() == f, "trial " + std::to_string(trial));
        t.record("antiderivative(f)(0) = 0", anti.value_at_fraction(Rational(0)).is_zero(),
                 "trial " + std::to_string(trial));
        PiecewiseCoeff a = random_piecewise(rng, shape);
        PiecewiseCoeff tilde = a.tilde();
        bool continuous = true;
        for (std::size_t j = 1; j + 1 < tilde.breaks().size(); ++j) {
            continuous = continuous && tilde.value_at_break(j, true) == tilde.value_at_break(j, false);
        }
        t.record("tilde continuous at breakpoints", continuous, "trial " + std::to_string(trial));
    }
}

void suite_shuffle(const VerifyOptions& o, std::mt19937_64& rng, Tallies& t) {
    const std::vector<Word> words = words_up_to_order(std::max(1, o.max_order - 1));
    for (int trial = 0; trial < o.trials; ++trial) {
        IteratedIntegrals engine(random_coeff_seq(rng, RandomShape{}));
        for (const Word& u : words) {
            for (const Word& v : words) {
                if (u.order() + v.order() > o.max_order || v < u) {
                    continue;
                }
                bool ok = engine.integral(u) * engine.integral(v) == engine.sum(shuffle(u, v));
                t.record("I_u I_v = sum over u shuffle v", ok, u.str() + " x " + v.str());
            }
        }
    }
}

void suite_moments(const VerifyOptions& o, std::mt19937_64& rng, Tallies& t) {
    const int degree = std::min(o.max_order, 5);
    for (int trial = 0; trial < o.trials; ++trial) {
        CoeffSeq a = random_coeff_seq(rng, RandomShape{});
        IteratedIntegrals engine(a);
        for (const MomentSpec& spec : moment_specs_up_to(a.support(), degree)) {
            bool ok = engine.moment(spec) == engine.sum(moment_shuffle_expand(spec));
            t.record("moment = sum of expanded words", ok, spec.str());
        }
    }
}

void suite_pipelines(const VerifyOptions& o, std::mt19937_64& rng, Tallies& t) {
    const int order = std::max(2, o.max_order);
    for (int trial = 0; trial < o.trials; ++trial) {
        CoeffSeq a = random_coeff_seq(rng, RandomShape{});
        ReturnSeries via_words = return_coeffs_iterated(a, order);
        ReturnSeries via_transport = return_coeffs_transport(a, order);
        t.record("iterated = transport", via_words == via_transport, "trial " + std::to_string(trial));
        IteratedIntegrals engine(a);
        t.record("c_1 = I_(1)", via_words.c(1) == engine.integral(Word{1}), "trial " + std::to_string(trial));
        t.record("c_2 = I_(2) + 2 I_(1,1)",
                 via_words.c(2) == engine.integral(Word{2}) + engine.integral(Word{1, 1}) * GaussRational(2),
                 "trial " + std::to_string(trial));
    }
}

void suite_group(const VerifyOptions& o, std::mt19937_64& rng, Tallies& t) {
    const int order = std::clamp(o.max_order, 1, 6);
    RandomShape shape;
    shape.max_pieces = 1;
    for (int trial = 0; trial < o.trials; ++trial) {
        const std::string ctx = "trial " + std::to_string(trial);
        CoeffSeq a = random_coeff_seq(rng, shape);
        CoeffSeq b = random_coeff_seq(rng, shape);
        CoeffSeq ab = concat(a, b);
        t.record("P(a*b) = P(b) o P(a)",
                 return_coeffs_iterated(ab, order) ==
                     series_compose(return_coeffs_iterated(b, order), return_coeffs_iterated(a, order)),
                 ctx);
        t.record("P(a*a^-1) = id", return_coeffs_iterated(concat(a, inverse(a)), order).is_identity(), ctx);
        t.record("inverse(inverse(a)) = a", inverse(inverse(a)) == a, ctx);
        IteratedIntegrals ia(a);
        IteratedIntegrals ib(b);
        IteratedIntegrals iab(ab);
        IteratedIntegrals iinv(inverse(a));
        for (const Word& w : words_up_to_order(std::min(order, 5))) {
            Scalar chen;
            for (std::size_t cut = 0; cut <= w.length(); ++cut) {
                chen += ia.integral(w.prefix(cut)) * ib.integral(w.suffix_from(cut));
            }
            t.record("Chen deconcatenation", iab.integral(w) == chen, w.str());
            if (w.length() <= 4) {
                Scalar expected = ia.integral(w.reversed());
                if (w.length() % 2 == 1) {
                    expected = -expected;
                }
                t.record("antipode I_w(a^-1) = (-1)^k I_rev(w)(a)", iinv.integral(w) == expected, w.str());
            }
        }
    }
}

void suite_character(const VerifyOptions& o, std::mt19937_64& rng, Tallies& t) {
    RandomShape shape;
    shape.zero_mean = true;
    shape.max_pieces = 1;
    const int degree = std::min(o.max_order, 4);
    for (int trial = 0; trial < o.trials; ++trial) {
        CoeffSeq a = random_coeff_seq(rng, shape);
        CoeffSeq b = random_coeff_seq(rng, shape);
        t.record("a, b in X_*", in_Xstar(a) && in_Xstar(b), "trial " + std::to_string(trial));
        IteratedIntegrals ia(a);
        IteratedIntegrals ib(b);
        IteratedIntegrals iab(concat(a, b));
        std::vector<int> letters = a.support();
        for (int i : b.support()) {
            if (std::find(letters.begin(), letters.end(), i) == letters.end()) {
                letters.push_back(i);
            }
        }
        std::sort(letters.begin(), letters.end());
        for (const MomentSpec& spec : moment_specs_up_to(letters, degree)) {
            t.record("m(a*b) = m(a) + m(b)", iab.moment(spec) == ia.moment(spec) + ib.moment(spec), spec.str());
        }
    }
}

using SuiteFn = void (*)(const VerifyOptions&, std::mt19937_64&, Tallies&);

const std::vector<std::pair<std::string, SuiteFn>>& suites() {
    static const std::vector<std::pair<std::string, SuiteFn>> table{
        {"antiderivative", suite_antiderivative}, {"shuffle", suite_shuffle}, {"moments", suite_moments},
        {"pipelines", suite_pipelines},           {"group", suite_group},     {"character", suite_character},
    };
    return table;
}

}  // namespace

std::vector<std::string> verify_suite_names() {
    std::vector<std::string> names;
    for (const auto& [name, fn] : suites()) {
        names.push_back(name);
    }
    names.emplace_back("all");
    return names;
}

std::vector<IdentityTally> run_verify_suite(const std::string& suite, const VerifyOptions& options) {
    if (options.max_order < 1 || options.trials < 0) {
        throw std::invalid_argument("verify: max-order must be >= 1 and trials >= 0");
    }
    std::mt19937_64 rng(options.seed);
    Tallies tallies;
    bool matched = false;
    for (const auto& [name, fn] : suites()) {
        if (suite == "all" || suite == name) {
            fn(options, rng, tallies);
            matched = true;
        }
    }
    if (!matched) {
        throw std::invalid_argument("unknown verify suite '" + suite + "'");
    }
    return tallies.take();
}

}  // namespace cfl
