#include "cfl/group_ops.hpp"

#include <set>

#include "cfl/iterated.hpp"

namespace cfl {

template <ScalarField S>
CoeffSeqT<S> concat(const CoeffSeqT<S>& a, const CoeffSeqT<S>& b) {
    std::set<int> indices;
    for (const auto& [i, f] : a.entries()) {
        indices.insert(i);
    }
    for (const auto& [i, f] : b.entries()) {
        indices.insert(i);
    }
    const PiecewiseCoeffT<S> zero;
    CoeffSeqT<S> out;
    for (int i : indices) {
        const auto* ai = a.find(i);
        const auto* bi = b.find(i);
        out.set(i, PiecewiseCoeffT<S>::concat(ai != nullptr ? *ai : zero, bi != nullptr ? *bi : zero));
    }
    return out;
}

template <ScalarField S>
CoeffSeqT<S> inverse(const CoeffSeqT<S>& a) {
    CoeffSeqT<S> out;
    for (const auto& [i, f] : a.entries()) {
        out.set(i, f.reversed_negated());
    }
    return out;
}

template <ScalarField S>
EquivalenceT<S> equivalent_up_to(const CoeffSeqT<S>& a, const CoeffSeqT<S>& b, int order) {
    IteratedIntegralsT<S> engine(concat(a, inverse(b)));
    EquivalenceT<S> result;
    for (const Word& w : words_up_to_order(order)) {
        S value = engine.integral(w);
        if (!field<S>::negligible(value)) {
            result.witness = std::make_pair(w, value);
            return result;
        }
    }
    result.equivalent = true;
    return result;
}

template <ScalarField S>
bool in_Xstar(const CoeffSeqT<S>& a) {
    for (const auto& [i, f] : a.entries()) {
        if (!field<S>::negligible(f.integral())) {
            return false;
        }
    }
    return true;
}

#define CFL_INSTANTIATE(S)                                                                     \
    template CoeffSeqT<S> concat(const CoeffSeqT<S>&, const CoeffSeqT<S>&);                    \
    template CoeffSeqT<S> inverse(const CoeffSeqT<S>&);                                        \
    template EquivalenceT<S> equivalent_up_to(const CoeffSeqT<S>&, const CoeffSeqT<S>&, int); \
    template bool in_Xstar(const CoeffSeqT<S>&);

CFL_INSTANTIATE(Scalar)
CFL_INSTANTIATE(Complex)

#undef CFL_INSTANTIATE

}  // namespace cfl
