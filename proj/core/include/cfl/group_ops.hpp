#ifndef CFL_GROUP_OPS_HPP
#define CFL_GROUP_OPS_HPP

#include <optional>
#include <utility>

#include "cfl/coeff.hpp"
#include "cfl/words.hpp"

namespace cfl {

/// Path concatenation a*b: per index, 2 a_i(2t) on (0, T/2] and
/// 2 b_i(2t - T) on (T/2, T]. Throws std::length_error past
/// kMaxLatticeDepth.
template <ScalarField S>
CoeffSeqT<S> concat(const CoeffSeqT<S>& a, const CoeffSeqT<S>& b);

/// Path reversal a^{-1}: per index, -a_i(T - t).
template <ScalarField S>
CoeffSeqT<S> inverse(const CoeffSeqT<S>& a);

template <ScalarField S>
struct EquivalenceT {
    bool equivalent = false;
    std::optional<std::pair<Word, S>> witness;
};

/// a ~ b certified up to order N: I_w(a * b^{-1}) = 0 for all words of order
/// <= N. The witness is the first failing word in words_up_to_order order.
template <ScalarField S>
EquivalenceT<S> equivalent_up_to(const CoeffSeqT<S>& a, const CoeffSeqT<S>& b, int order);

/// Every supported a_i has zero mean over the period.
template <ScalarField S>
bool in_Xstar(const CoeffSeqT<S>& a);

}  // namespace cfl

#endif
