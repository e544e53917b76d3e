#ifndef CFL_COEFF_HPP
#define CFL_COEFF_HPP

#include <map>
#include <vector>

#include "cfl/exp_poly.hpp"

namespace cfl {

/// Breakpoints 0 = t_0 < t_1 < ... < t_q = 1, each a dyadic rational, given
/// as fractions of the period.
using Lattice = std::vector<Rational>;

Lattice merge_lattices(const Lattice& a, const Lattice& b);
/// Largest j such that some breakpoint has denominator 2^j.
int lattice_depth(const Lattice& lattice);

/// Concatenation halves the lattice; chains deeper than this are rejected.
inline constexpr int kMaxLatticeDepth = 16;

/// A coefficient a_i: one ExpPoly per half-open interval (t_{j-1}, t_j].
/// Every piece is written in the global variable x, not a local one.
template <ScalarField S>
class PiecewiseCoeffT {
public:
    using Piece = ExpPolyT<S>;

    /// The zero function on a single piece.
    PiecewiseCoeffT();
    explicit PiecewiseCoeffT(Piece f);
    /// Throws std::invalid_argument unless breaks form a valid dyadic
    /// lattice with one piece per interval.
    PiecewiseCoeffT(Lattice breaks, std::vector<Piece> pieces);

    [[nodiscard]] const Lattice& breaks() const { return breaks_; }
    [[nodiscard]] const std::vector<Piece>& pieces() const { return pieces_; }
    [[nodiscard]] std::size_t piece_count() const { return pieces_.size(); }
    [[nodiscard]] bool is_zero() const;

    /// Same function on a finer lattice (which must contain breaks()).
    [[nodiscard]] PiecewiseCoeffT refined(const Lattice& finer) const;
    /// Merges adjacent identical pieces.
    [[nodiscard]] PiecewiseCoeffT simplified() const;

    PiecewiseCoeffT& operator+=(const PiecewiseCoeffT& o);
    PiecewiseCoeffT& operator-=(const PiecewiseCoeffT& o);
    PiecewiseCoeffT& operator*=(const S& c);
    friend PiecewiseCoeffT operator+(PiecewiseCoeffT a, const PiecewiseCoeffT& b) { return a += b; }
    friend PiecewiseCoeffT operator-(PiecewiseCoeffT a, const PiecewiseCoeffT& b) { return a -= b; }
    friend PiecewiseCoeffT operator*(PiecewiseCoeffT a, const S& c) { return a *= c; }
    friend PiecewiseCoeffT operator*(const PiecewiseCoeffT& a, const PiecewiseCoeffT& b) { return a.times(b); }
    /// Functional equality (lattices may differ).
    friend bool operator==(const PiecewiseCoeffT& a, const PiecewiseCoeffT& b) { return a.equals(b); }

    /// Cumulative antiderivative from 0: continuous, zero at 0.
    [[nodiscard]] PiecewiseCoeffT tilde() const;
    /// Integral over the whole period.
    [[nodiscard]] S integral() const;
    /// Exact value at breakpoint j, from the piece on its left (j >= 1) or
    /// on its right (j < q).
    [[nodiscard]] S value_at_break(std::size_t j, bool from_left) const;

    /// Numeric value at 0 <= x <= 2*pi; at a breakpoint the left piece wins.
    [[nodiscard]] Complex eval(double x) const;
    /// Index of the piece containing x under the half-open convention.
    [[nodiscard]] std::size_t piece_index(double x) const;
    [[nodiscard]] double sup_bound() const;

    /// x -> 2 a(2x) on (0, T/2] and 2 b(2x - T) on (T/2, T].
    static PiecewiseCoeffT concat(const PiecewiseCoeffT& a, const PiecewiseCoeffT& b);
    /// x -> -a(T - x).
    [[nodiscard]] PiecewiseCoeffT reversed_negated() const;

    [[nodiscard]] PiecewiseCoeffT<Complex> to_float() const;

private:
    PiecewiseCoeffT times(const PiecewiseCoeffT& o) const;
    bool equals(const PiecewiseCoeffT& o) const;

    Lattice breaks_;
    std::vector<Piece> pieces_;
};

/// Finitely supported sequence (a_1, a_2, ...) on the canonical period 2*pi.
/// Zero entries are never stored, so support() is the true support.
template <ScalarField S>
class CoeffSeqT {
public:
    using Entry = PiecewiseCoeffT<S>;
    using Entries = std::map<int, Entry>;

    CoeffSeqT() = default;

    void set(int index, Entry f);
    [[nodiscard]] const Entry* find(int index) const;
    [[nodiscard]] const Entries& entries() const { return entries_; }
    [[nodiscard]] std::vector<int> support() const;
    [[nodiscard]] int max_index() const;
    [[nodiscard]] bool is_zero() const { return entries_.empty(); }

    /// Union of all entry lattices ({0, 1} for the zero sequence).
    [[nodiscard]] Lattice lattice() const;
    [[nodiscard]] CoeffSeqT refined(const Lattice& finer) const;
    [[nodiscard]] CoeffSeqT<Complex> to_float() const;

    friend bool operator==(const CoeffSeqT& a, const CoeffSeqT& b) { return a.entries_ == b.entries_; }

private:
    Entries entries_;
};

using PiecewiseCoeff = PiecewiseCoeffT<Scalar>;
using PiecewiseCoeffF = PiecewiseCoeffT<Complex>;
using CoeffSeq = CoeffSeqT<Scalar>;
using CoeffSeqF = CoeffSeqT<Complex>;

/// Checks that every product of pieces stays evaluable in Q(i)[pi] at the
/// breakpoints: on each interval of the merged lattice, g * t must be a
/// multiple of pi/2 at both endpoints, where g is the gcd of all
/// frequencies present. The closure under concat/inverse preserves this.
/// On failure returns false and writes a description into why.
bool phases_exact(const CoeffSeq& a, std::string* why = nullptr);

extern template class PiecewiseCoeffT<Scalar>;
extern template class PiecewiseCoeffT<Complex>;
extern template class CoeffSeqT<Scalar>;
extern template class CoeffSeqT<Complex>;

}  // namespace cfl

#endif
