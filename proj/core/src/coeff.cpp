#include "cfl/coeff.hpp"

#include <algorithm>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <string>

namespace cfl {

Lattice merge_lattices(const Lattice& a, const Lattice& b) {
    Lattice out;
    out.reserve(a.size() + b.size());
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

int lattice_depth(const Lattice& lattice) {
    int depth = 0;
    for (const auto& t : lattice) {
        mpz_class den = t.get_den();
        depth = std::max(depth, static_cast<int>(mpz_sizeinbase(den.get_mpz_t(), 2)) - 1);
    }
    return depth;
}

namespace {

void validate_lattice(const Lattice& breaks, std::size_t piece_count) {
    if (breaks.size() < 2 || breaks.front() != 0 || breaks.back() != 1) {
        throw std::invalid_argument("breakpoints must start at 0 and end at T");
    }
    if (piece_count + 1 != breaks.size()) {
        throw std::invalid_argument("piece count does not match breakpoints");
    }
    for (std::size_t j = 0; j < breaks.size(); ++j) {
        if (!is_dyadic(breaks[j])) {
            throw std::invalid_argument("breakpoint " + to_string(breaks[j]) + "*T is not dyadic");
        }
        if (j > 0 && !(breaks[j - 1] < breaks[j])) {
            throw std::invalid_argument("breakpoints must be strictly increasing");
        }
    }
}

}  // namespace

template <ScalarField S>
PiecewiseCoeffT<S>::PiecewiseCoeffT() : PiecewiseCoeffT(Piece{}) {}

template <ScalarField S>
PiecewiseCoeffT<S>::PiecewiseCoeffT(Piece f) : breaks_{Rational(0), Rational(1)}, pieces_{std::move(f)} {}

template <ScalarField S>
PiecewiseCoeffT<S>::PiecewiseCoeffT(Lattice breaks, std::vector<Piece> pieces)
    : breaks_(std::move(breaks)), pieces_(std::move(pieces)) {
    validate_lattice(breaks_, pieces_.size());
}

template <ScalarField S>
bool PiecewiseCoeffT<S>::is_zero() const {
    return std::all_of(pieces_.begin(), pieces_.end(), [](const Piece& p) { return p.is_zero(); });
}

template <ScalarField S>
PiecewiseCoeffT<S> PiecewiseCoeffT<S>::refined(const Lattice& finer) const {
    if (finer == breaks_) {
        return *this;
    }
    std::vector<Piece> out;
    out.reserve(finer.size() - 1);
    std::size_t j = 1;
    for (std::size_t k = 1; k < finer.size(); ++k) {
        while (breaks_[j] < finer[k]) {
            ++j;
        }
        if (!std::binary_search(finer.begin(), finer.end(), breaks_[j])) {
            throw std::invalid_argument("refinement lattice does not contain all breakpoints");
        }
        out.push_back(pieces_[j - 1]);
    }
    return PiecewiseCoeffT(finer, std::move(out));
}

template <ScalarField S>
PiecewiseCoeffT<S> PiecewiseCoeffT<S>::simplified() const {
    Lattice breaks{breaks_.front()};
    std::vector<Piece> pieces{pieces_.front()};
    for (std::size_t j = 1; j < pieces_.size(); ++j) {
        if (pieces_[j] == pieces.back()) {
            continue;
        }
        breaks.push_back(breaks_[j]);
        pieces.push_back(pieces_[j]);
    }
    breaks.push_back(breaks_.back());
    return PiecewiseCoeffT(std::move(breaks), std::move(pieces));
}

template <ScalarField S>
PiecewiseCoeffT<S>& PiecewiseCoeffT<S>::operator+=(const PiecewiseCoeffT& o) {
    Lattice common = merge_lattices(breaks_, o.breaks_);
    *this = refined(common);
    PiecewiseCoeffT other = o.refined(common);
    for (std::size_t j = 0; j < pieces_.size(); ++j) {
        pieces_[j] += other.pieces_[j];
    }
    return *this;
}

template <ScalarField S>
PiecewiseCoeffT<S>& PiecewiseCoeffT<S>::operator-=(const PiecewiseCoeffT& o) {
    Lattice common = merge_lattices(breaks_, o.breaks_);
    *this = refined(common);
    PiecewiseCoeffT other = o.refined(common);
    for (std::size_t j = 0; j < pieces_.size(); ++j) {
        pieces_[j] -= other.pieces_[j];
    }
    return *this;
}

template <ScalarField S>
PiecewiseCoeffT<S>& PiecewiseCoeffT<S>::operator*=(const S& c) {
    for (auto& p : pieces_) {
        p *= c;
    }
    return *this;
}

template <ScalarField S>
PiecewiseCoeffT<S> PiecewiseCoeffT<S>::times(const PiecewiseCoeffT& o) const {
    if (breaks_ == o.breaks_) {
        std::vector<Piece> out;
        out.reserve(pieces_.size());
        for (std::size_t j = 0; j < pieces_.size(); ++j) {
            out.push_back(pieces_[j] * o.pieces_[j]);
        }
        PiecewiseCoeffT r;
        r.breaks_ = breaks_;
        r.pieces_ = std::move(out);
        return r;
    }
    Lattice common = merge_lattices(breaks_, o.breaks_);
    return refined(common).times(o.refined(common));
}

template <ScalarField S>
bool PiecewiseCoeffT<S>::equals(const PiecewiseCoeffT& o) const {
    if (breaks_ == o.breaks_) {
        return pieces_ == o.pieces_;
    }
    Lattice common = merge_lattices(breaks_, o.breaks_);
    return refined(common).pieces_ == o.refined(common).pieces_;
}

template <ScalarField S>
PiecewiseCoeffT<S> PiecewiseCoeffT<S>::tilde() const {
    PiecewiseCoeffT out;
    out.breaks_ = breaks_;
    out.pieces_.clear();
    out.pieces_.reserve(pieces_.size());
    S carried{};  // value of the antiderivative at the left end of the piece
    for (std::size_t j = 0; j < pieces_.size(); ++j) {
        Piece anti = pieces_[j].antiderivative();
        S shift = carried - anti.value_at_fraction(breaks_[j]);
        carried += anti.value_at_fraction(breaks_[j + 1]) - anti.value_at_fraction(breaks_[j]);
        anti += Piece::constant(shift);
        out.pieces_.push_back(std::move(anti));
    }
    return out;
}

template <ScalarField S>
S PiecewiseCoeffT<S>::integral() const {
    S total{};
    for (std::size_t j = 0; j < pieces_.size(); ++j) {
        Piece anti = pieces_[j].antiderivative();
        total += anti.value_at_fraction(breaks_[j + 1]) - anti.value_at_fraction(breaks_[j]);
    }
    return total;
}

template <ScalarField S>
S PiecewiseCoeffT<S>::value_at_break(std::size_t j, bool from_left) const {
    if (j >= breaks_.size() || (from_left && j == 0) || (!from_left && j + 1 == breaks_.size())) {
        throw std::out_of_range("no piece on that side of the breakpoint");
    }
    const Piece& p = from_left ? pieces_[j - 1] : pieces_[j];
    return p.value_at_fraction(breaks_[j]);
}

template <ScalarField S>
std::size_t PiecewiseCoeffT<S>::piece_index(double x) const {
    constexpr double period = 2.0 * std::numbers::pi;
    if (!(x >= 0.0 && x <= period)) {
        throw std::out_of_range("x = " + std::to_string(x) + " outside [0, 2pi]");
    }
    for (std::size_t j = 1; j < breaks_.size(); ++j) {
        if (x <= breaks_[j].get_d() * period) {
            return j - 1;
        }
    }
    return pieces_.size() - 1;
}

template <ScalarField S>
Complex PiecewiseCoeffT<S>::eval(double x) const {
    return pieces_[piece_index(x)].eval(x);
}

template <ScalarField S>
double PiecewiseCoeffT<S>::sup_bound() const {
    constexpr double period = 2.0 * std::numbers::pi;
    double bound = 0.0;
    for (std::size_t j = 0; j < pieces_.size(); ++j) {
        bound = std::max(bound, pieces_[j].sup_bound(breaks_[j].get_d() * period, breaks_[j + 1].get_d() * period));
    }
    return bound;
}

template <ScalarField S>
PiecewiseCoeffT<S> PiecewiseCoeffT<S>::concat(const PiecewiseCoeffT& a, const PiecewiseCoeffT& b) {
    const S two = field<S>::from(GaussRational(2));
    Lattice breaks;
    std::vector<Piece> pieces;
    for (std::size_t j = 0; j < a.pieces_.size(); ++j) {
        breaks.push_back(a.breaks_[j] / 2);
        pieces.push_back(a.pieces_[j].affine(Rational(2), Rational(0)) * two);
    }
    for (std::size_t j = 0; j < b.pieces_.size(); ++j) {
        breaks.push_back((b.breaks_[j] + 1) / 2);
        pieces.push_back(b.pieces_[j].affine(Rational(2), Rational(-2)) * two);
    }
    breaks.push_back(Rational(1));
    if (lattice_depth(breaks) > kMaxLatticeDepth) {
        throw std::length_error("concatenation exceeds the lattice depth limit of " +
                                std::to_string(kMaxLatticeDepth) + " halvings");
    }
    return PiecewiseCoeffT(std::move(breaks), std::move(pieces)).simplified();
}

template <ScalarField S>
PiecewiseCoeffT<S> PiecewiseCoeffT<S>::reversed_negated() const {
    Lattice breaks;
    std::vector<Piece> pieces;
    for (std::size_t j = pieces_.size(); j-- > 0;) {
        breaks.push_back(1 - breaks_[j + 1]);
        pieces.push_back(-pieces_[j].affine(Rational(-1), Rational(2)));
    }
    breaks.push_back(Rational(1));
    return PiecewiseCoeffT(std::move(breaks), std::move(pieces));
}

template <ScalarField S>
PiecewiseCoeffT<Complex> PiecewiseCoeffT<S>::to_float() const {
    std::vector<ExpPolyF> pieces;
    pieces.reserve(pieces_.size());
    for (const auto& p : pieces_) {
        pieces.push_back(p.to_float());
    }
    return PiecewiseCoeffT<Complex>(breaks_, std::move(pieces));
}

template <ScalarField S>
void CoeffSeqT<S>::set(int index, Entry f) {
    if (index < 1) {
        throw std::invalid_argument("coefficient index must be >= 1");
    }
    if (f.is_zero()) {
        entries_.erase(index);
    } else {
        entries_.insert_or_assign(index, std::move(f));
    }
}

template <ScalarField S>
const typename CoeffSeqT<S>::Entry* CoeffSeqT<S>::find(int index) const {
    auto it = entries_.find(index);
    return it == entries_.end() ? nullptr : &it->second;
}

template <ScalarField S>
std::vector<int> CoeffSeqT<S>::support() const {
    std::vector<int> out;
    for (const auto& [i, f] : entries_) {
        out.push_back(i);
    }
    return out;
}

template <ScalarField S>
int CoeffSeqT<S>::max_index() const {
    return entries_.empty() ? 0 : entries_.rbegin()->first;
}

template <ScalarField S>
Lattice CoeffSeqT<S>::lattice() const {
    Lattice out{Rational(0), Rational(1)};
    for (const auto& [i, f] : entries_) {
        out = merge_lattices(out, f.breaks());
    }
    return out;
}

template <ScalarField S>
CoeffSeqT<S> CoeffSeqT<S>::refined(const Lattice& finer) const {
    CoeffSeqT out;
    for (const auto& [i, f] : entries_) {
        out.entries_.emplace(i, f.refined(finer));
    }
    return out;
}

template <ScalarField S>
CoeffSeqT<Complex> CoeffSeqT<S>::to_float() const {
    CoeffSeqT<Complex> out;
    for (const auto& [i, f] : entries_) {
        out.set(i, f.to_float());
    }
    return out;
}

bool phases_exact(const CoeffSeq& a, std::string* why) {
    CoeffSeq fine = a.refined(a.lattice());
    Lattice lattice = a.lattice();
    for (std::size_t j = 0; j + 1 < lattice.size(); ++j) {
        long g = 0;
        for (const auto& [i, f] : fine.entries()) {
            for (const auto& [m, c] : f.pieces()[j].terms()) {
                g = std::gcd(g, static_cast<long>(std::abs(m.freq)));
            }
        }
        for (const Rational& t : {lattice[j], lattice[j + 1]}) {
            GaussRational unused;
            if (!unit_phase(t * g, unused)) {
                if (why != nullptr) {
                    *why = "frequency gcd " + std::to_string(g) + " on piece ending at " + to_string(lattice[j + 1]) +
                           "*T puts the phase at breakpoint " + to_string(t) + "*T outside Q(i)";
                }
                return false;
            }
        }
    }
    return true;
}

template class PiecewiseCoeffT<Scalar>;
template class PiecewiseCoeffT<Complex>;
template class CoeffSeqT<Scalar>;
template class CoeffSeqT<Complex>;

}  // namespace cfl
