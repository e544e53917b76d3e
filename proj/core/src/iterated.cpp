#include "cfl/iterated.hpp"

namespace cfl {

template <ScalarField S>
IteratedIntegralsT<S>::IteratedIntegralsT(const Seq& a)
    : a_(a.refined(a.lattice())), lattice_(a.lattice()) {
    std::vector<typename Function::Piece> zeros(lattice_.size() - 1);
    std::vector<typename Function::Piece> ones(lattice_.size() - 1,
                                               Function::Piece::constant(field<S>::from(GaussRational(1))));
    zero_ = Function(lattice_, std::move(zeros));
    one_ = Function(lattice_, std::move(ones));
}

template <ScalarField S>
const typename IteratedIntegralsT<S>::Function& IteratedIntegralsT<S>::coefficient(int i) const {
    const Function* f = a_.find(i);
    return f == nullptr ? zero_ : *f;
}

template <ScalarField S>
const typename IteratedIntegralsT<S>::Function& IteratedIntegralsT<S>::running(const Word& w) const {
    if (w.empty()) {
        return one_;
    }
    {
        std::lock_guard lock(mutex_);
        auto it = memo_.find(w);
        if (it != memo_.end()) {
            return it->second;
        }
    }
    Function value;
    const Function& a_last = coefficient(w.letters.back());
    if (a_last.is_zero()) {
        value = zero_;
    } else {
        const Function& inner = running(w.prefix(w.length() - 1));
        value = inner.is_zero() ? zero_ : (a_last * inner).tilde();
    }
    std::lock_guard lock(mutex_);
    return memo_.try_emplace(w, std::move(value)).first->second;
}

template <ScalarField S>
S IteratedIntegralsT<S>::integral(const Word& w) const {
    if (w.empty()) {
        return field<S>::from(GaussRational(1));
    }
    const Function& n = running(w);
    return n.value_at_break(lattice_.size() - 1, true);
}

template <ScalarField S>
S IteratedIntegralsT<S>::sum(const WordMultiset& words) const {
    S total{};
    for (const auto& [w, mult] : words) {
        total += integral(w) * field<S>::from(GaussRational(mult));
    }
    return total;
}

template <ScalarField S>
S IteratedIntegralsT<S>::moment(const MomentSpec& spec) const {
    spec.validate();
    Function integrand = one_;
    for (std::size_t k = 0; k < spec.exponents.size(); ++k) {
        Function t = coefficient(spec.bases[k]).tilde();
        for (int e = 0; e < spec.exponents[k]; ++e) {
            integrand = integrand * t;
        }
    }
    integrand = integrand * coefficient(spec.bases.back());
    return integrand.integral();
}

template <ScalarField S>
std::size_t IteratedIntegralsT<S>::cache_size() const {
    std::lock_guard lock(mutex_);
    return memo_.size();
}

template class IteratedIntegralsT<Scalar>;
template class IteratedIntegralsT<Complex>;

}  // namespace cfl
