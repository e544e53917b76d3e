#ifndef CFL_IO_HPP
#define CFL_IO_HPP

#include <stdexcept>
#include <string>
#include <string_view>

#include "cfl/coeff.hpp"
#include "cfl/polar.hpp"
#include "cfl/words.hpp"

namespace cfl {

inline constexpr std::string_view kSchema = "cfl-1";

/// Malformed or unsupported input. The message starts with the JSON path
/// of the offending field when there is one.
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// "2*pi^2 + (0+1i)*pi - 3/2": highest power of pi first, complex
/// coefficients parenthesized, real ones signed through the joiner.
std::string render_scalar(const Scalar& s);
/// Inverse of render_scalar; also accepts spacing variants. Throws
/// InputError.
Scalar parse_scalar(std::string_view text);
/// 17 significant digits; "a+bi" when the imaginary part is nonzero.
std::string render_decimal(Complex z);

/// Period of the input equation, T = value (exact: q * pi^e with e in {0,1}).
struct Period {
    std::string text = "2pi";
    Scalar exact = Scalar::pi_power(1, GaussRational(2));
    double value = 6.283185307179586;
    [[nodiscard]] bool canonical() const { return text == "2pi"; }
};

Period parse_period(std::string_view text, bool allow_decimal);

struct EquationMeta {
    std::string label;
    std::string source_field;  // compact JSON of the planar field, if any
    std::string original_period = "2pi";
};

template <ScalarField S>
struct EquationT {
    CoeffSeqT<S> seq;
    EquationMeta meta;
};

using Equation = EquationT<Scalar>;
using EquationF = EquationT<Complex>;

/// Strict parse of an equation document. Coefficients given for another
/// period T are rescaled to 2*pi: frequency m means e^{2 pi i m x / T} and
/// c x^p picks up (T/2pi)^{p+1}. Exact mode rejects decimals and
/// breakpoint/frequency combinations whose phases leave Q(i).
Equation parse_equation(std::string_view text);
/// Float mode: decimals allowed, same schema.
EquationF parse_equation_float(std::string_view text);

/// Canonical (period "2pi") document; parse_equation(render_equation(a))
/// reproduces a exactly.
std::string render_equation(const CoeffSeq& a, const EquationMeta& meta = {});
std::string render_equation(const CoeffSeqF& a, const EquationMeta& meta = {});

/// {"F": {"x^p y^q": coeff}, "G": {...}} with coeff a rational string or a
/// [re, im] pair of rational strings.
PlanarField parse_field(std::string_view text, int degree_cap = 12);
std::string render_field(const PlanarField& field);

/// "i1^n1,i2^n2:i_{k+1}" (k may be 0: ":3" or "3").
MomentSpec parse_moment_spec(std::string_view text);
/// "1,2,1"
Word parse_word(std::string_view text);

/// FNV-1a 64-bit digest rendered as "fnv1a64:<16 hex digits>".
std::string input_digest(std::string_view bytes);

}  // namespace cfl

#endif
