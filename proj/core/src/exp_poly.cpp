#include "cfl/exp_poly.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace cfl {

namespace {

// Binomial coefficient as a rational; p is small.
Rational binomial(int n, int k) {
    mpz_class r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return Rational(r);
}

template <class S>
S phase_factor(const Rational& turns) {
    GaussRational g;
    if (unit_phase(turns, g)) {
        return field<S>::from(g);
    }
    if constexpr (field<S>::exact) {
        throw std::domain_error("phase e^{2 pi i * " + to_string(turns) + "} is not a Gaussian rational");
    } else {
        double angle = 2.0 * std::numbers::pi * turns.get_d();
        return Complex(std::cos(angle), std::sin(angle));
    }
}

}  // namespace

bool unit_phase(const Rational& turns, GaussRational& out) {
    Rational quarter = turns * 4;
    if (quarter.get_den() != 1) {
        return false;
    }
    mpz_class k = quarter.get_num() % 4;
    out = i_power(k.get_si());
    return true;
}

template <ScalarField S>
ExpPolyT<S> ExpPolyT<S>::term(const S& c, int xpow, int freq) {
    ExpPolyT f;
    f.add_term(c, xpow, freq);
    return f;
}

template <ScalarField S>
S ExpPolyT<S>::coeff(Monomial m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? S{} : it->second;
}

template <ScalarField S>
void ExpPolyT<S>::add_term(const S& c, int xpow, int freq) {
    if (xpow < 0) {
        throw std::invalid_argument("negative power of x");
    }
    if (field<S>::is_zero(c)) {
        return;
    }
    auto [it, inserted] = terms_.try_emplace(Monomial{xpow, freq}, c);
    if (!inserted) {
        it->second += c;
        if (field<S>::is_zero(it->second)) {
            terms_.erase(it);
        }
    }
}

template <ScalarField S>
ExpPolyT<S>& ExpPolyT<S>::operator+=(const ExpPolyT& o) {
    for (const auto& [m, c] : o.terms_) {
        add_term(c, m.xpow, m.freq);
    }
    return *this;
}

template <ScalarField S>
ExpPolyT<S>& ExpPolyT<S>::operator-=(const ExpPolyT& o) {
    for (const auto& [m, c] : o.terms_) {
        add_term(-c, m.xpow, m.freq);
    }
    return *this;
}

template <ScalarField S>
ExpPolyT<S>& ExpPolyT<S>::operator*=(const S& c) {
    if (field<S>::is_zero(c)) {
        terms_.clear();
        return *this;
    }
    for (auto it = terms_.begin(); it != terms_.end();) {
        it->second = it->second * c;
        if (field<S>::is_zero(it->second)) {
            it = terms_.erase(it);
        } else {
            ++it;
        }
    }
    return *this;
}

template <ScalarField S>
ExpPolyT<S> ExpPolyT<S>::times(const ExpPolyT& o) const {
    ExpPolyT out;
    for (const auto& [ma, ca] : terms_) {
        for (const auto& [mb, cb] : o.terms_) {
            auto key = Monomial{ma.xpow + mb.xpow, ma.freq + mb.freq};
            auto [it, inserted] = out.terms_.try_emplace(key, ca * cb);
            if (!inserted) {
                it->second += ca * cb;
            }
        }
    }
    std::erase_if(out.terms_, [](const auto& kv) { return field<S>::is_zero(kv.second); });
    return out;
}

template <ScalarField S>
ExpPolyT<S> ExpPolyT<S>::antiderivative() const {
    ExpPolyT out;
    for (const auto& [m, c] : terms_) {
        const int p = m.xpow;
        if (m.freq == 0) {
            out.add_term(field<S>::divide(c, GaussRational(p + 1)), p + 1, 0);
            continue;
        }
        // Repeated integration by parts:
        //   int x^p e^{imx} = e^{imx} sum_j (-1)^j p!/(p-j)! x^{p-j} / (im)^{j+1}
        // then subtract the value at 0 (the j = p term).
        const GaussRational im_unit(Rational(0), Rational(m.freq));
        GaussRational falling(1);  // p!/(p-j)!
        GaussRational im_pow = im_unit;  // (im)^{j+1}
        for (int j = 0; j <= p; ++j) {
            GaussRational factor = falling / im_pow;
            if (j % 2 == 1) {
                factor = -factor;
            }
            S coeff = c * field<S>::from(factor);
            out.add_term(coeff, p - j, m.freq);
            if (j == p) {
                out.add_term(-coeff, 0, 0);
            }
            falling *= GaussRational(p - j);
            im_pow *= im_unit;
        }
    }
    return out;
}

template <ScalarField S>
ExpPolyT<S> ExpPolyT<S>::derivative() const {
    ExpPolyT out;
    for (const auto& [m, c] : terms_) {
        if (m.xpow > 0) {
            out.add_term(c * field<S>::from(GaussRational(m.xpow)), m.xpow - 1, m.freq);
        }
        if (m.freq != 0) {
            out.add_term(c * field<S>::from(GaussRational(Rational(0), Rational(m.freq))), m.xpow, m.freq);
        }
    }
    return out;
}

template <ScalarField S>
ExpPolyT<S> ExpPolyT<S>::affine(const Rational& alpha, const Rational& beta_over_pi) const {
    ExpPolyT out;
    for (const auto& [m, c] : terms_) {
        Rational new_freq = alpha * m.freq;
        if (new_freq.get_den() != 1) {
            throw std::invalid_argument("affine substitution produces a non-integral frequency");
        }
        // e^{im(alpha x + beta)} = e^{i m beta} e^{i (m alpha) x}; beta = b*pi is b/2 turns.
        S phase = phase_factor<S>(beta_over_pi * m.freq / 2);
        S base = c * phase;
        const int f = static_cast<int>(new_freq.get_num().get_si());
        // (alpha x + b pi)^p = sum_k C(p,k) alpha^k (b pi)^{p-k} x^k
        for (int k = 0; k <= m.xpow; ++k) {
            Rational r = binomial(m.xpow, k);
            for (int e = 0; e < k; ++e) {
                r *= alpha;
            }
            for (int e = 0; e < m.xpow - k; ++e) {
                r *= beta_over_pi;
            }
            if (sgn(r) == 0) {
                continue;
            }
            S factor = field<S>::from(GaussRational(r)) * field<S>::pi_power(m.xpow - k);
            out.add_term(base * factor, k, f);
        }
    }
    return out;
}

template <ScalarField S>
S ExpPolyT<S>::value_at_fraction(const Rational& frac) const {
    S total{};
    const Rational two_frac = frac * 2;
    for (const auto& [m, c] : terms_) {
        Rational power = 1;
        for (int e = 0; e < m.xpow; ++e) {
            power *= two_frac;
        }
        if (m.xpow > 0 && sgn(power) == 0) {
            continue;
        }
        S x_part = field<S>::from(GaussRational(power)) * field<S>::pi_power(m.xpow);
        total += c * x_part * phase_factor<S>(frac * m.freq);
    }
    return total;
}

template <ScalarField S>
Complex ExpPolyT<S>::eval(double x) const {
    Complex total(0.0, 0.0);
    for (const auto& [m, c] : terms_) {
        Complex v = field<S>::to_complex(c) * std::pow(x, m.xpow);
        if (m.freq != 0) {
            v *= Complex(std::cos(m.freq * x), std::sin(m.freq * x));
        }
        total += v;
    }
    return total;
}

template <ScalarField S>
int ExpPolyT<S>::max_abs_freq() const {
    int r = 0;
    for (const auto& [m, c] : terms_) {
        r = std::max(r, std::abs(m.freq));
    }
    return r;
}

template <ScalarField S>
int ExpPolyT<S>::max_xpow() const {
    int r = 0;
    for (const auto& [m, c] : terms_) {
        r = std::max(r, m.xpow);
    }
    return r;
}

template <ScalarField S>
bool ExpPolyT<S>::is_conj_symmetric() const {
    for (const auto& [m, c] : terms_) {
        S mirror = coeff(Monomial{m.xpow, -m.freq});
        if (!(field<S>::conj(c) == mirror)) {
            return false;
        }
    }
    return true;
}

template <ScalarField S>
double ExpPolyT<S>::sup_bound(double lo, double hi) const {
    double bound = 0.0;
    double reach = std::max(std::abs(lo), std::abs(hi));
    for (const auto& [m, c] : terms_) {
        bound += std::abs(field<S>::to_complex(c)) * std::pow(reach, m.xpow);
    }
    return bound;
}

template <ScalarField S>
ExpPolyT<Complex> ExpPolyT<S>::to_float() const {
    ExpPolyT<Complex> out;
    for (const auto& [m, c] : terms_) {
        out.add_term(field<S>::to_complex(c), m.xpow, m.freq);
    }
    return out;
}

template class ExpPolyT<Scalar>;
template class ExpPolyT<Complex>;

}  // namespace cfl
