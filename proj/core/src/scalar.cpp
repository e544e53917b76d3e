#include "cfl/scalar.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace cfl {

namespace {

bool all_digits(std::string_view s) {
    return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); });
}

}  // namespace

Rational parse_rational(std::string_view text) {
    std::string_view body = text;
    if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
        body.remove_prefix(1);
    }
    auto slash = body.find('/');
    std::string_view num = body.substr(0, slash);
    std::string_view den = slash == std::string_view::npos ? std::string_view("1") : body.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) {
        throw std::invalid_argument("not an exact rational: '" + std::string(text) + "'");
    }
    Rational q{mpz_class{std::string(num)}, mpz_class{std::string(den)}};
    if (sgn(q.get_den()) == 0) {
        throw std::invalid_argument("zero denominator: '" + std::string(text) + "'");
    }
    q.canonicalize();
    if (text.front() == '-') {
        q = -q;
    }
    return q;
}

bool is_decimal_literal(std::string_view text) {
    return text.find_first_of(".eE") != std::string_view::npos;
}

double parse_decimal(std::string_view text) {
    if (!is_decimal_literal(text)) {
        return parse_rational(text).get_d();
    }
    std::string s(text);
    std::size_t used = 0;
    double value = 0.0;
    try {
        value = std::stod(s, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != s.size() || !std::isfinite(value)) {
        throw std::invalid_argument("not a decimal number: '" + s + "'");
    }
    return value;
}

std::string to_string(const Rational& q) { return q.get_str(); }

bool is_dyadic(const Rational& q) {
    mpz_class den = q.get_den();
    return mpz_popcount(den.get_mpz_t()) == 1;
}

GaussRational& GaussRational::operator*=(const GaussRational& o) {
    Rational r = re * o.re - im * o.im;
    Rational i = re * o.im + im * o.re;
    re = std::move(r);
    im = std::move(i);
    return *this;
}

GaussRational& GaussRational::operator/=(const GaussRational& o) {
    Rational norm = o.re * o.re + o.im * o.im;
    if (sgn(norm) == 0) {
        throw std::domain_error("division by zero Gaussian rational");
    }
    *this *= o.conj();
    re /= norm;
    im /= norm;
    return *this;
}

GaussRational i_power(long k) {
    switch (((k % 4) + 4) % 4) {
    case 0: return {Rational(1), Rational(0)};
    case 1: return {Rational(0), Rational(1)};
    case 2: return {Rational(-1), Rational(0)};
    default: return {Rational(0), Rational(-1)};
    }
}

Scalar::Scalar(GaussRational c) {
    if (!c.is_zero()) {
        coeffs_.push_back(std::move(c));
    }
}

Scalar Scalar::pi_power(int k, GaussRational c) {
    Scalar s(std::move(c));
    if (!s.is_zero()) {
        s.low_ = k;
    }
    return s;
}

GaussRational Scalar::coeff(int k) const {
    if (k < low_ || k > high_power()) {
        return {};
    }
    return coeffs_[static_cast<std::size_t>(k - low_)];
}

bool Scalar::is_real() const {
    return std::all_of(coeffs_.begin(), coeffs_.end(), [](const GaussRational& c) { return c.is_real(); });
}

Scalar Scalar::conj() const {
    Scalar s = *this;
    for (auto& c : s.coeffs_) {
        c.im = -c.im;
    }
    return s;
}

Scalar Scalar::real_part() const {
    Scalar s = *this;
    for (auto& c : s.coeffs_) {
        c.im = 0;
    }
    s.normalize();
    return s;
}

Scalar Scalar::imag_part() const {
    Scalar s = *this;
    for (auto& c : s.coeffs_) {
        c.re = c.im;
        c.im = 0;
    }
    s.normalize();
    return s;
}

Complex Scalar::to_complex() const {
    // Horner from the highest power down, then rescale by pi^low.
    Complex acc(0.0, 0.0);
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
        acc = acc * std::numbers::pi + it->to_complex();
    }
    return acc * std::pow(std::numbers::pi, low_);
}

void Scalar::normalize() {
    std::size_t first = 0;
    while (first < coeffs_.size() && coeffs_[first].is_zero()) {
        ++first;
    }
    if (first == coeffs_.size()) {
        coeffs_.clear();
        low_ = 0;
        return;
    }
    std::size_t last = coeffs_.size();
    while (coeffs_[last - 1].is_zero()) {
        --last;
    }
    coeffs_.erase(coeffs_.begin() + static_cast<std::ptrdiff_t>(last), coeffs_.end());
    coeffs_.erase(coeffs_.begin(), coeffs_.begin() + static_cast<std::ptrdiff_t>(first));
    low_ += static_cast<int>(first);
}

Scalar& Scalar::operator+=(const Scalar& o) {
    if (o.is_zero()) {
        return *this;
    }
    if (is_zero()) {
        return *this = o;
    }
    int lo = std::min(low_, o.low_);
    int hi = std::max(high_power(), o.high_power());
    if (lo < low_) {
        coeffs_.insert(coeffs_.begin(), static_cast<std::size_t>(low_ - lo), GaussRational{});
        low_ = lo;
    }
    coeffs_.resize(static_cast<std::size_t>(hi - lo + 1));
    for (std::size_t k = 0; k < o.coeffs_.size(); ++k) {
        coeffs_[static_cast<std::size_t>(o.low_ - low_) + k] += o.coeffs_[k];
    }
    normalize();
    return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) { return *this += -o; }

Scalar operator-(const Scalar& a) {
    Scalar s = a;
    for (auto& c : s.coeffs_) {
        c.re = -c.re;
        c.im = -c.im;
    }
    return s;
}

Scalar operator*(const Scalar& a, const Scalar& b) {
    Scalar s;
    if (a.is_zero() || b.is_zero()) {
        return s;
    }
    s.low_ = a.low_ + b.low_;
    s.coeffs_.assign(a.coeffs_.size() + b.coeffs_.size() - 1, GaussRational{});
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
        if (a.coeffs_[i].is_zero()) {
            continue;
        }
        for (std::size_t j = 0; j < b.coeffs_.size(); ++j) {
            s.coeffs_[i + j] += a.coeffs_[i] * b.coeffs_[j];
        }
    }
    s.normalize();
    return s;
}

Scalar& Scalar::operator*=(const Scalar& o) { return *this = *this * o; }

Scalar& Scalar::operator*=(const GaussRational& c) {
    if (c.is_zero()) {
        coeffs_.clear();
        low_ = 0;
        return *this;
    }
    for (auto& x : coeffs_) {
        x *= c;
    }
    return *this;
}

Scalar& Scalar::operator/=(const GaussRational& c) {
    GaussRational inv = GaussRational(1) / c;
    return *this *= inv;
}

}  // namespace cfl
