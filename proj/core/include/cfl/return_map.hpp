#ifndef CFL_RETURN_MAP_HPP
#define CFL_RETURN_MAP_HPP

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cfl/coeff.hpp"
#include "cfl/words.hpp"

namespace cfl {

/// Truncated series r + sum_{n=1}^{N} c_n r^{n+1}, an element of the
/// composition group of tangent-to-identity series up to order N.
template <ScalarField S>
struct ReturnSeriesT {
    std::vector<S> coeffs;  // coeffs[n-1] = c_n

    static ReturnSeriesT identity(int order) { return ReturnSeriesT{std::vector<S>(static_cast<std::size_t>(order))}; }

    [[nodiscard]] int order() const { return static_cast<int>(coeffs.size()); }
    [[nodiscard]] const S& c(int n) const { return coeffs.at(static_cast<std::size_t>(n - 1)); }
    [[nodiscard]] bool is_identity() const;
    [[nodiscard]] Complex evaluate(Complex r) const;

    friend bool operator==(const ReturnSeriesT&, const ReturnSeriesT&) = default;
};

using ReturnSeries = ReturnSeriesT<Scalar>;
using ReturnSeriesF = ReturnSeriesT<Complex>;

/// Raised when two routes that must agree exactly do not.
class CrossCheckError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Weight of I_w in c_n: prod_{m=1}^{k} (n - i_1 - ... - i_m + 1) with
/// n = order(w). Throws on the empty word or order > 20.
std::uint64_t comb_coefficient(const Word& w);

/// c_n = sum over compositions w of n of comb_coefficient(w) * I_w(a).
template <ScalarField S>
ReturnSeriesT<S> return_coeffs_iterated(const CoeffSeqT<S>& a, int order);

/// Independent route: substitute v = r(1 + sum c_n(x) r^n) into the ODE and
/// integrate the triangular system c_n' = sum_i a_i [r^{n-i}] u^{i+1}
/// symbolically, piece by piece.
template <ScalarField S>
ReturnSeriesT<S> return_coeffs_transport(const CoeffSeqT<S>& a, int order);

/// f o g up to the common order. Throws std::invalid_argument on mismatch.
template <ScalarField S>
ReturnSeriesT<S> series_compose(const ReturnSeriesT<S>& f, const ReturnSeriesT<S>& g);

/// Compositional inverse by triangular back-substitution.
template <ScalarField S>
ReturnSeriesT<S> series_inverse(const ReturnSeriesT<S>& f);

template <ScalarField S>
struct CenterVerdictT {
    int order_checked = 0;
    bool is_center_up_to_n = false;
    std::optional<std::pair<int, S>> first_nonzero;
    bool is_universal_up_to_n = false;
    /// First word with I_w != 0, when not universal.
    std::optional<std::pair<Word, S>> universal_witness;
    std::vector<std::string> evidence;
    ReturnSeriesT<S> series;
};

using CenterVerdict = CenterVerdictT<Scalar>;
using CenterVerdictF = CenterVerdictT<Complex>;

/// Order-N certificate: c_1 = ... = c_N = 0 via both symbolic routes (which
/// must agree, else CrossCheckError) and I_w = 0 for every word of order
/// <= N for the universal flag. In float mode "zero" means |.| <= 1e-9.
template <ScalarField S>
CenterVerdictT<S> center_check(const CoeffSeqT<S>& a, int order);

}  // namespace cfl

#endif
