#ifndef CFL_ITERATED_HPP
#define CFL_ITERATED_HPP

#include <map>
#include <mutex>

#include "cfl/coeff.hpp"
#include "cfl/words.hpp"

namespace cfl {

/// Basic iterated integrals of one coefficient sequence.
///
/// Index order: for w = (i_1, ..., i_k) the running function is
///   N_0 = 1,  N_m(x) = int_0^x a_{i_m}(s) N_{m-1}(s) ds,
/// so i_1 is integrated first (innermost, earliest time s_1) and
/// I_w = N_k(T) is the simplex integral over 0 <= s_1 <= ... <= s_k <= T of
/// a_{i_k}(s_k) ... a_{i_1}(s_1). Getting this backwards silently transposes
/// every word, so tests pin it with asymmetric data.
///
/// N_w is memoized per prefix; the cache is guarded and idempotent, so one
/// instance may be shared between threads.
template <ScalarField S>
class IteratedIntegralsT {
public:
    using Seq = CoeffSeqT<S>;
    using Function = PiecewiseCoeffT<S>;

    explicit IteratedIntegralsT(const Seq& a);

    /// I_w(a); the empty word gives 1, a missing coefficient gives 0.
    [[nodiscard]] S integral(const Word& w) const;
    /// The running integral N_w on the common lattice.
    [[nodiscard]] const Function& running(const Word& w) const;
    /// Sum of mult * I_w over a multiset.
    [[nodiscard]] S sum(const WordMultiset& words) const;

    /// Direct route: integrate the product of powers of the tilde functions.
    [[nodiscard]] S moment(const MomentSpec& spec) const;

    [[nodiscard]] const Seq& sequence() const { return a_; }
    [[nodiscard]] const Lattice& lattice() const { return lattice_; }
    [[nodiscard]] std::size_t cache_size() const;

private:
    const Function& coefficient(int i) const;

    Seq a_;
    Lattice lattice_;
    Function zero_;
    Function one_;
    mutable std::mutex mutex_;
    mutable std::map<Word, Function> memo_;
};

using IteratedIntegrals = IteratedIntegralsT<Scalar>;
using IteratedIntegralsF = IteratedIntegralsT<Complex>;

template <ScalarField S>
S iterated_integral(const Word& w, const CoeffSeqT<S>& a) {
    return IteratedIntegralsT<S>(a).integral(w);
}

template <ScalarField S>
S moment(const MomentSpec& spec, const CoeffSeqT<S>& a) {
    return IteratedIntegralsT<S>(a).moment(spec);
}

extern template class IteratedIntegralsT<Scalar>;
extern template class IteratedIntegralsT<Complex>;

}  // namespace cfl

#endif
