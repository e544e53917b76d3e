#include "cfl/return_map.hpp"

#include "cfl/iterated.hpp"

namespace cfl {

template <ScalarField S>
bool ReturnSeriesT<S>::is_identity() const {
    for (const auto& c : coeffs) {
        if (!field<S>::is_zero(c)) {
            return false;
        }
    }
    return true;
}

template <ScalarField S>
Complex ReturnSeriesT<S>::evaluate(Complex r) const {
    // Horner on 1 + c_1 r + ... + c_N r^N, then times r.
    Complex acc(0.0, 0.0);
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
        acc = (acc + field<S>::to_complex(*it)) * r;
    }
    return r * (1.0 + acc);
}

std::uint64_t comb_coefficient(const Word& w) {
    if (w.empty()) {
        throw std::invalid_argument("comb_coefficient: empty word");
    }
    const int n = w.order();
    if (n > 20) {
        throw std::out_of_range("comb_coefficient: order above 20 overflows");
    }
    std::uint64_t product = 1;
    int partial = 0;
    for (int letter : w.letters) {
        partial += letter;
        product *= static_cast<std::uint64_t>(n - partial + 1);
    }
    return product;
}

template <ScalarField S>
ReturnSeriesT<S> return_coeffs_iterated(const CoeffSeqT<S>& a, int order) {
    if (order < 1) {
        throw std::invalid_argument("order must be >= 1");
    }
    IteratedIntegralsT<S> engine(a);
    auto series = ReturnSeriesT<S>::identity(order);
    for (int n = 1; n <= order; ++n) {
        S total{};
        for (const Word& w : compositions(n)) {
            S value = engine.integral(w);
            if (field<S>::is_zero(value)) {
                continue;
            }
            total += value * field<S>::from(GaussRational(static_cast<long>(comb_coefficient(w))));
        }
        series.coeffs[static_cast<std::size_t>(n - 1)] = total;
    }
    return series;
}

template <ScalarField S>
ReturnSeriesT<S> return_coeffs_transport(const CoeffSeqT<S>& a, int order) {
    if (order < 1) {
        throw std::invalid_argument("order must be >= 1");
    }
    using Function = PiecewiseCoeffT<S>;
    using Piece = typename Function::Piece;

    const Lattice lattice = a.lattice();
    const CoeffSeqT<S> seq = a.refined(lattice);
    const std::size_t pieces = lattice.size() - 1;
    const Function zero(lattice, std::vector<Piece>(pieces));
    const Function one(lattice, std::vector<Piece>(pieces, Piece::constant(field<S>::from(GaussRational(1)))));
    auto coefficient = [&](int i) -> const Function& {
        const Function* f = seq.find(i);
        return f == nullptr ? zero : *f;
    };
    auto product = [&](const Function& x, const Function& y) { return x.is_zero() || y.is_zero() ? zero : x * y; };

    const auto n_max = static_cast<std::size_t>(order);
    // u = 1 + sum c_k r^k; powers[j][k] = [r^k] u^j, only for k + j <= N + 1.
    std::vector<Function> c(n_max + 1, zero);
    c[0] = one;
    std::vector<std::vector<Function>> powers(n_max + 2);
    for (std::size_t j = 1; j <= n_max + 1; ++j) {
        powers[j].assign(n_max + 2 - j, zero);
        powers[j][0] = one;
    }

    auto series = ReturnSeriesT<S>::identity(order);
    for (std::size_t n = 1; n <= n_max; ++n) {
        Function derivative = zero;
        for (std::size_t i = 1; i <= n; ++i) {
            const Function& ai = coefficient(static_cast<int>(i));
            if (ai.is_zero()) {
                continue;
            }
            derivative += product(ai, powers[i + 1][n - i]);
        }
        c[n] = derivative.is_zero() ? zero : derivative.tilde();
        series.coeffs[n - 1] = c[n].value_at_break(pieces, true);

        powers[1][n] = c[n];
        for (std::size_t j = 2; j + n <= n_max + 1; ++j) {
            Function acc = powers[j - 1][n];
            for (std::size_t l = 1; l <= n; ++l) {
                acc += product(c[l], powers[j - 1][n - l]);
            }
            powers[j][n] = std::move(acc);
        }
    }
    return series;
}

namespace {

// Full coefficient vector s[0..N+1] with s[1] = 1.
template <ScalarField S>
std::vector<S> dense(const ReturnSeriesT<S>& f) {
    std::vector<S> s(f.coeffs.size() + 2);
    s[1] = field<S>::from(GaussRational(1));
    for (std::size_t n = 0; n < f.coeffs.size(); ++n) {
        s[n + 2] = f.coeffs[n];
    }
    return s;
}

template <ScalarField S>
std::vector<S> truncated_product(const std::vector<S>& x, const std::vector<S>& y) {
    std::vector<S> out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (field<S>::is_zero(x[i])) {
            continue;
        }
        for (std::size_t j = 0; i + j < out.size(); ++j) {
            if (!field<S>::is_zero(y[j])) {
                out[i + j] += x[i] * y[j];
            }
        }
    }
    return out;
}

}  // namespace

template <ScalarField S>
ReturnSeriesT<S> series_compose(const ReturnSeriesT<S>& f, const ReturnSeriesT<S>& g) {
    if (f.order() != g.order()) {
        throw std::invalid_argument("series_compose: truncation orders differ");
    }
    const std::vector<S> fd = dense(f);
    const std::vector<S> gd = dense(g);
    std::vector<S> result(fd.size());
    std::vector<S> g_power = gd;  // g^k, starting at k = 1
    for (std::size_t k = 1; k < fd.size(); ++k) {
        if (!field<S>::is_zero(fd[k])) {
            for (std::size_t m = 0; m < result.size(); ++m) {
                if (!field<S>::is_zero(g_power[m])) {
                    result[m] += fd[k] * g_power[m];
                }
            }
        }
        if (k + 1 < fd.size()) {
            g_power = truncated_product(g_power, gd);
        }
    }
    ReturnSeriesT<S> out = ReturnSeriesT<S>::identity(f.order());
    for (std::size_t n = 0; n < out.coeffs.size(); ++n) {
        out.coeffs[n] = result[n + 2];
    }
    return out;
}

template <ScalarField S>
ReturnSeriesT<S> series_inverse(const ReturnSeriesT<S>& f) {
    // Solve f(h(r)) = r order by order: with e_n = 0 the r^{n+1} coefficient
    // of f o h is exactly the correction needed (it enters linearly with
    // weight 1), so e_n = -[r^{n+1}] f(h).
    ReturnSeriesT<S> h = ReturnSeriesT<S>::identity(f.order());
    for (int n = 1; n <= f.order(); ++n) {
        ReturnSeriesT<S> probe = series_compose(f, h);
        h.coeffs[static_cast<std::size_t>(n - 1)] = -probe.c(n);
    }
    return h;
}

template <ScalarField S>
CenterVerdictT<S> center_check(const CoeffSeqT<S>& a, int order) {
    CenterVerdictT<S> verdict;
    verdict.order_checked = order;
    ReturnSeriesT<S> via_words = return_coeffs_iterated(a, order);
    ReturnSeriesT<S> via_transport = return_coeffs_transport(a, order);
    for (int n = 1; n <= order; ++n) {
        if (!field<S>::agree(via_words.c(n), via_transport.c(n))) {
            throw CrossCheckError("return-map pipelines disagree at c_" + std::to_string(n));
        }
    }
    verdict.series = via_words;
    for (int n = 1; n <= order; ++n) {
        if (!field<S>::negligible(via_words.c(n))) {
            verdict.first_nonzero = std::make_pair(n, via_words.c(n));
            break;
        }
    }
    verdict.is_center_up_to_n = !verdict.first_nonzero.has_value();
    if (verdict.is_center_up_to_n) {
        verdict.evidence.push_back("c_1..c_" + std::to_string(order) + " vanish (iterated and transport routes agree)");
    } else {
        verdict.evidence.push_back("c_" + std::to_string(verdict.first_nonzero->first) + " != 0");
    }

    IteratedIntegralsT<S> engine(a);
    for (const Word& w : words_up_to_order(order)) {
        S value = engine.integral(w);
        if (!field<S>::negligible(value)) {
            verdict.universal_witness = std::make_pair(w, value);
            break;
        }
    }
    verdict.is_universal_up_to_n = !verdict.universal_witness.has_value();
    if (verdict.is_universal_up_to_n) {
        verdict.evidence.push_back("I_w = 0 for all " + std::to_string((1u << order) - 1) + " words of order <= " +
                                   std::to_string(order));
        if (!verdict.is_center_up_to_n) {
            throw CrossCheckError("universal center with a nonzero return-map coefficient");
        }
    } else {
        verdict.evidence.push_back("I_" + verdict.universal_witness->first.str() + " != 0");
    }
    return verdict;
}

#define CFL_INSTANTIATE(S)                                                                   \
    template struct ReturnSeriesT<S>;                                                        \
    template ReturnSeriesT<S> return_coeffs_iterated(const CoeffSeqT<S>&, int);              \
    template ReturnSeriesT<S> return_coeffs_transport(const CoeffSeqT<S>&, int);             \
    template ReturnSeriesT<S> series_compose(const ReturnSeriesT<S>&, const ReturnSeriesT<S>&); \
    template ReturnSeriesT<S> series_inverse(const ReturnSeriesT<S>&);                       \
    template CenterVerdictT<S> center_check(const CoeffSeqT<S>&, int);

CFL_INSTANTIATE(Scalar)
CFL_INSTANTIATE(Complex)

#undef CFL_INSTANTIATE

}  // namespace cfl
