#include "cfl/io.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <initializer_list>
#include <numbers>
#include <set>

#include "json.hpp"

namespace cfl {

using json = nlohmann::ordered_json;

namespace {

// ---------------------------------------------------------------- scalars

std::string coefficient_text(const GaussRational& c) {
    if (c.is_real()) {
        return to_string(abs(c.re));
    }
    std::string s = "(" + to_string(c.re);
    s += sgn(c.im) < 0 ? "-" : "+";
    return s + to_string(abs(c.im)) + "i)";
}

class ScalarParser {
public:
    explicit ScalarParser(std::string_view text) : s_(text) {}

    Scalar parse() {
        Scalar total;
        skip();
        bool negative = false;
        if (peek() == '-' || peek() == '+') {
            negative = get() == '-';
        }
        total += signed_term(negative);
        while (skip(), pos_ < s_.size()) {
            char op = get();
            if (op != '+' && op != '-') {
                fail("expected '+' or '-'");
            }
            total += signed_term(op == '-');
        }
        return total;
    }

private:
    Scalar signed_term(bool negative) {
        skip();
        GaussRational c(1);
        bool have_coeff = false;
        if (peek() == '(') {
            c = complex_coeff();
            have_coeff = true;
        } else if (std::isdigit(static_cast<unsigned char>(peek()))) {
            c = GaussRational(rational());
            have_coeff = true;
        }
        skip();
        int power = 0;
        if (have_coeff && peek() == '*') {
            get();
            skip();
            power = pi_part();
        } else if (peek() == 'p') {
            power = pi_part();
        } else if (!have_coeff) {
            fail("expected a coefficient or pi");
        }
        if (negative) {
            c = -c;
        }
        return Scalar::pi_power(power, c);
    }

    GaussRational complex_coeff() {
        get();  // '('
        skip();
        bool neg_re = false;
        if (peek() == '-' || peek() == '+') {
            neg_re = get() == '-';
        }
        Rational re = rational();
        skip();
        char op = get();
        if (op != '+' && op != '-') {
            fail("expected '+' or '-' inside complex coefficient");
        }
        skip();
        Rational im = rational();
        if (get() != 'i') {
            fail("expected 'i'");
        }
        skip();
        if (get() != ')') {
            fail("expected ')'");
        }
        return {neg_re ? -re : re, op == '-' ? -im : im};
    }

    Rational rational() {
        std::size_t start = pos_;
        while (std::isdigit(static_cast<unsigned char>(peek()))) {
            get();
        }
        if (peek() == '/') {
            get();
            while (std::isdigit(static_cast<unsigned char>(peek()))) {
                get();
            }
        }
        try {
            return parse_rational(s_.substr(start, pos_ - start));
        } catch (const std::invalid_argument&) {
            fail("malformed rational");
        }
    }

    int pi_part() {
        if (s_.substr(pos_, 2) != "pi") {
            fail("expected 'pi'");
        }
        pos_ += 2;
        skip();
        if (peek() != '^') {
            return 1;
        }
        get();
        skip();
        bool negative = false;
        if (peek() == '-') {
            negative = true;
            get();
        }
        std::size_t start = pos_;
        while (std::isdigit(static_cast<unsigned char>(peek()))) {
            get();
        }
        if (start == pos_) {
            fail("expected an exponent");
        }
        int e = std::stoi(std::string(s_.substr(start, pos_ - start)));
        return negative ? -e : e;
    }

    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) {
            ++pos_;
        }
    }
    [[nodiscard]] char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }
    char get() { return pos_ < s_.size() ? s_[pos_++] : '\0'; }
    [[noreturn]] void fail(const std::string& what) const {
        throw InputError("cannot parse scalar '" + std::string(s_) + "' at offset " + std::to_string(pos_) + ": " +
                         what);
    }

    std::string_view s_;
    std::size_t pos_ = 0;
};

// ---------------------------------------------------------------- json helpers

json parse_json(std::string_view text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw InputError(std::string("malformed JSON: ") + e.what());
    }
}

void check_keys(const json& obj, std::initializer_list<std::string_view> allowed, const std::string& path) {
    if (!obj.is_object()) {
        throw InputError(path + ": expected an object");
    }
    for (const auto& [key, value] : obj.items()) {
        bool known = false;
        for (auto a : allowed) {
            known = known || key == a;
        }
        if (!known) {
            throw InputError(path + "." + key + ": unknown field");
        }
    }
}

const json& require(const json& obj, const char* key, const std::string& path) {
    auto it = obj.find(key);
    if (it == obj.end()) {
        throw InputError(path + "." + key + ": missing required field");
    }
    return *it;
}

std::string require_string(const json& obj, const char* key, const std::string& path) {
    const json& v = require(obj, key, path);
    if (!v.is_string()) {
        throw InputError(path + "." + key + ": expected a string");
    }
    return v.get<std::string>();
}

int require_int(const json& obj, const char* key, const std::string& path) {
    const json& v = require(obj, key, path);
    if (!v.is_number_integer()) {
        throw InputError(path + "." + key + ": expected an integer");
    }
    return v.get<int>();
}

void check_schema(const json& doc, const std::string& path) {
    auto it = doc.find("schema");
    if (it != doc.end() && (!it->is_string() || it->get<std::string>() != kSchema)) {
        throw InputError(path + ".schema: unsupported schema (expected \"" + std::string(kSchema) + "\")");
    }
}

// ---------------------------------------------------------------- breakpoints

Rational parse_breakpoint(std::string s, const std::string& path) {
    std::erase_if(s, [](unsigned char c) { return std::isspace(c); });
    if (s == "0") {
        return Rational(0);
    }
    auto t = s.find('T');
    if (t == std::string::npos || s.find('T', t + 1) != std::string::npos) {
        throw InputError(path + ": breakpoint must be 0 or a multiple of T, got '" + s + "'");
    }
    std::string before = s.substr(0, t);
    std::string after = s.substr(t + 1);
    if (!before.empty() && before.back() == '*') {
        before.pop_back();
    }
    Rational value;
    try {
        value = before.empty() ? Rational(1) : parse_rational(before);
        if (!after.empty()) {
            if (after.front() != '/') {
                throw std::invalid_argument("trailing text");
            }
            value /= parse_rational(after.substr(1));
        }
    } catch (const std::exception&) {
        throw InputError(path + ": malformed breakpoint '" + s + "'");
    }
    if (sgn(value) < 0 || value > 1) {
        throw InputError(path + ": breakpoint '" + s + "' outside [0, T]");
    }
    if (!is_dyadic(value)) {
        throw InputError(path + ": breakpoint '" + s + "' is not a dyadic multiple of T");
    }
    return value;
}

std::string render_breakpoint(const Rational& f) {
    if (sgn(f) == 0) {
        return "0";
    }
    if (f == 1) {
        return "T";
    }
    std::string num = f.get_num() == 1 ? "" : f.get_num().get_str();
    return num + "T/" + f.get_den().get_str();
}

// ---------------------------------------------------------------- equations

template <ScalarField S>
struct CoeffCodec;

template <>
struct CoeffCodec<Scalar> {
    static Scalar parse(const std::string& text, const std::string& path) {
        if (is_decimal_literal(text)) {
            throw InputError(path + ": decimal '" + text + "' requires --mode float; use exact rationals like \"3/2\"");
        }
        Scalar s;
        try {
            s = parse_scalar(text);
        } catch (const InputError& e) {
            throw InputError(path + ": " + e.what());
        }
        if (!s.is_real()) {
            throw InputError(path + ": real and imaginary parts must be given separately");
        }
        return s;
    }
    static Scalar rescale(const Period& p) {
        // T / (2 pi)
        return p.exact * Scalar::pi_power(-1, GaussRational(Rational(1, 2)));
    }
    static Scalar make(const Scalar& re, const Scalar& im) { return re + im * GaussRational::i_unit(); }
};

template <>
struct CoeffCodec<Complex> {
    static Complex parse(const std::string& text, const std::string& path) {
        try {
            if (is_decimal_literal(text)) {
                return {parse_decimal(text), 0.0};
            }
            Scalar s = parse_scalar(text);
            if (!s.is_real()) {
                throw InputError("real and imaginary parts must be given separately");
            }
            return s.to_complex();
        } catch (const std::exception& e) {
            throw InputError(path + ": " + e.what());
        }
    }
    static Complex rescale(const Period& p) { return p.value / (2.0 * std::numbers::pi); }
    static Complex make(const Complex& re, const Complex& im) { return re + Complex(0.0, 1.0) * im; }
};

template <ScalarField S>
S power_of(const S& base, int n) {
    S r = field<S>::from(GaussRational(1));
    for (int k = 0; k < n; ++k) {
        r = r * base;
    }
    return r;
}

template <ScalarField S>
EquationT<S> parse_equation_impl(std::string_view text) {
    constexpr bool exact = field<S>::exact;
    json doc = parse_json(text);
    const std::string root = "$";
    check_keys(doc, {"schema", "period", "coefficients", "metadata"}, root);
    check_schema(doc, root);

    EquationT<S> eq;
    Period period = parse_period(require_string(doc, "period", root), !exact);
    eq.meta.original_period = period.text;
    const S scale = CoeffCodec<S>::rescale(period);

    if (auto it = doc.find("metadata"); it != doc.end()) {
        const std::string mpath = root + ".metadata";
        check_keys(*it, {"label", "source_field", "original_period"}, mpath);
        if (it->contains("label")) {
            eq.meta.label = require_string(*it, "label", mpath);
        }
        if (it->contains("source_field")) {
            eq.meta.source_field = (*it)["source_field"].dump();
        }
        if (it->contains("original_period") && period.canonical()) {
            eq.meta.original_period = require_string(*it, "original_period", mpath);
        }
    }

    const json& coeffs = require(doc, "coefficients", root);
    if (!coeffs.is_array()) {
        throw InputError(root + ".coefficients: expected an array");
    }
    std::set<int> seen;
    for (std::size_t ci = 0; ci < coeffs.size(); ++ci) {
        const std::string cpath = root + ".coefficients[" + std::to_string(ci) + "]";
        const json& entry = coeffs[ci];
        check_keys(entry, {"index", "pieces"}, cpath);
        const int index = require_int(entry, "index", cpath);
        if (index < 1) {
            throw InputError(cpath + ".index: must be >= 1");
        }
        if (!seen.insert(index).second) {
            throw InputError(cpath + ".index: duplicate index " + std::to_string(index));
        }
        const json& pieces = require(entry, "pieces", cpath);
        if (!pieces.is_array() || pieces.empty()) {
            throw InputError(cpath + ".pieces: expected a nonempty array");
        }
        Lattice breaks{Rational(0)};
        std::vector<ExpPolyT<S>> fs;
        for (std::size_t pi = 0; pi < pieces.size(); ++pi) {
            const std::string ppath = cpath + ".pieces[" + std::to_string(pi) + "]";
            const json& piece = pieces[pi];
            check_keys(piece, {"from", "to", "terms"}, ppath);
            Rational from = parse_breakpoint(require_string(piece, "from", ppath), ppath + ".from");
            Rational to = parse_breakpoint(require_string(piece, "to", ppath), ppath + ".to");
            if (from != breaks.back()) {
                throw InputError(ppath + ".from: pieces must be contiguous starting at 0");
            }
            if (!(from < to)) {
                throw InputError(ppath + ": zero-length or reversed piece");
            }
            breaks.push_back(to);
            const json& terms = require(piece, "terms", ppath);
            if (!terms.is_array()) {
                throw InputError(ppath + ".terms: expected an array");
            }
            ExpPolyT<S> f;
            for (std::size_t ti = 0; ti < terms.size(); ++ti) {
                const std::string tpath = ppath + ".terms[" + std::to_string(ti) + "]";
                const json& term = terms[ti];
                check_keys(term, {"re", "im", "xpow", "freq"}, tpath);
                S re = CoeffCodec<S>::parse(require_string(term, "re", tpath), tpath + ".re");
                S im{};
                if (term.contains("im")) {
                    im = CoeffCodec<S>::parse(require_string(term, "im", tpath), tpath + ".im");
                }
                const int xpow = require_int(term, "xpow", tpath);
                const int freq = require_int(term, "freq", tpath);
                if (xpow < 0) {
                    throw InputError(tpath + ".xpow: must be >= 0");
                }
                S c = CoeffCodec<S>::make(re, im);
                if (!period.canonical()) {
                    c = c * power_of(scale, xpow + 1);
                }
                f.add_term(c, xpow, freq);
            }
            fs.push_back(std::move(f));
        }
        if (breaks.back() != 1) {
            throw InputError(cpath + ".pieces: last piece must end at T");
        }
        eq.seq.set(index, PiecewiseCoeffT<S>(std::move(breaks), std::move(fs)));
    }
    if constexpr (exact) {
        std::string why;
        if (!phases_exact(eq.seq, &why)) {
            throw InputError(root + ".coefficients: unsupported frequency for the breakpoints: " + why);
        }
    }
    return eq;
}

std::string render_real(const Scalar& s) { return render_scalar(s); }
std::string render_real(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

template <ScalarField S>
std::pair<std::string, std::string> split_coefficient(const S& c) {
    if constexpr (field<S>::exact) {
        return {render_real(c.real_part()), render_real(c.imag_part())};
    } else {
        return {render_real(c.real()), render_real(c.imag())};
    }
}

template <ScalarField S>
std::string render_equation_impl(const CoeffSeqT<S>& a, const EquationMeta& meta) {
    json doc;
    doc["schema"] = kSchema;
    doc["period"] = "2pi";
    json coeffs = json::array();
    for (const auto& [index, f] : a.entries()) {
        json entry;
        entry["index"] = index;
        json pieces = json::array();
        for (std::size_t j = 0; j < f.piece_count(); ++j) {
            json piece;
            piece["from"] = render_breakpoint(f.breaks()[j]);
            piece["to"] = render_breakpoint(f.breaks()[j + 1]);
            json terms = json::array();
            for (const auto& [m, c] : f.pieces()[j].terms()) {
                auto [re, im] = split_coefficient(c);
                terms.push_back({{"re", re}, {"im", im}, {"xpow", m.xpow}, {"freq", m.freq}});
            }
            piece["terms"] = std::move(terms);
            pieces.push_back(std::move(piece));
        }
        entry["pieces"] = std::move(pieces);
        coeffs.push_back(std::move(entry));
    }
    doc["coefficients"] = std::move(coeffs);
    json m = json::object();
    if (!meta.label.empty()) {
        m["label"] = meta.label;
    }
    if (!meta.source_field.empty()) {
        m["source_field"] = json::parse(meta.source_field);
    }
    if (meta.original_period != "2pi") {
        m["original_period"] = meta.original_period;
    }
    if (!m.empty()) {
        doc["metadata"] = std::move(m);
    }
    return doc.dump(2) + "\n";
}

// ---------------------------------------------------------------- fields

std::pair<int, int> parse_monomial(const std::string& text, const std::string& path) {
    int p = 0;
    int q = 0;
    bool seen_x = false;
    bool seen_y = false;
    std::string token;
    auto flush = [&]() {
        if (token.empty()) {
            return;
        }
        char var = token[0];
        int exponent = 1;
        if (token.size() > 1) {
            if (token[1] != '^' || token.size() < 3 ||
                !std::all_of(token.begin() + 2, token.end(), [](unsigned char c) { return std::isdigit(c); })) {
                throw InputError(path + ": malformed monomial '" + text + "'");
            }
            exponent = std::stoi(token.substr(2));
        }
        if (var == 'x' && !seen_x) {
            p = exponent;
            seen_x = true;
        } else if (var == 'y' && !seen_y) {
            q = exponent;
            seen_y = true;
        } else {
            throw InputError(path + ": malformed monomial '" + text + "'");
        }
        token.clear();
    };
    for (char ch : text) {
        if (std::isspace(static_cast<unsigned char>(ch)) || ch == '*') {
            flush();
        } else {
            token += ch;
        }
    }
    flush();
    return {p, q};
}

GaussRational parse_field_coeff(const json& v, const std::string& path) {
    auto exact = [&](const json& s, const std::string& where) {
        if (!s.is_string()) {
            throw InputError(where + ": expected a rational string");
        }
        try {
            return parse_rational(s.get<std::string>());
        } catch (const std::invalid_argument& e) {
            throw InputError(where + ": " + e.what());
        }
    };
    if (v.is_array()) {
        if (v.size() != 2) {
            throw InputError(path + ": expected [re, im]");
        }
        return {exact(v[0], path + "[0]"), exact(v[1], path + "[1]")};
    }
    return GaussRational(exact(v, path));
}

std::string monomial_text(int p, int q) {
    std::string s;
    if (p > 0) {
        s += "x^" + std::to_string(p);
    }
    if (q > 0) {
        s += (s.empty() ? "" : " ") + std::string("y^") + std::to_string(q);
    }
    return s;
}

}  // namespace

std::string render_scalar(const Scalar& s) {
    if (s.is_zero()) {
        return "0";
    }
    std::string out;
    bool first = true;
    for (int k = s.high_power(); k >= s.low_power(); --k) {
        GaussRational c = s.coeff(k);
        if (c.is_zero()) {
            continue;
        }
        bool negative = c.is_real() && sgn(c.re) < 0;
        if (first) {
            out += negative ? "-" : "";
        } else {
            out += negative ? " - " : " + ";
        }
        first = false;
        std::string coeff = coefficient_text(c);
        if (k == 0) {
            out += coeff;
            continue;
        }
        if (coeff != "1") {
            out += coeff + "*";
        }
        out += "pi";
        if (k != 1) {
            out += "^" + std::to_string(k);
        }
    }
    return out;
}

Scalar parse_scalar(std::string_view text) {
    if (text.find_first_not_of(" \t") == std::string_view::npos) {
        throw InputError("empty scalar");
    }
    return ScalarParser(text).parse();
}

std::string render_decimal(Complex z) {
    char buf[96];
    if (z.imag() == 0.0) {
        std::snprintf(buf, sizeof buf, "%.17g", z.real());
    } else {
        std::snprintf(buf, sizeof buf, "%.17g%+.17gi", z.real(), z.imag());
    }
    return buf;
}

Period parse_period(std::string_view text, bool allow_decimal) {
    std::string s(text);
    std::erase_if(s, [](unsigned char c) { return std::isspace(c); });
    Period p;
    p.text = s;
    try {
        if (s.size() >= 2 && s.compare(s.size() - 2, 2, "pi") == 0) {
            std::string head = s.substr(0, s.size() - 2);
            if (!head.empty() && head.back() == '*') {
                head.pop_back();
            }
            Rational q = head.empty() ? Rational(1) : parse_rational(head);
            p.exact = Scalar::pi_power(1, GaussRational(q));
            p.value = q.get_d() * std::numbers::pi;
        } else if (is_decimal_literal(s)) {
            if (!allow_decimal) {
                throw InputError("decimal period '" + s + "' requires --mode float");
            }
            p.value = parse_decimal(s);
            p.exact = Scalar{};
        } else {
            Rational q = parse_rational(s);
            p.exact = Scalar(q);
            p.value = q.get_d();
        }
    } catch (const InputError& e) {
        throw InputError(std::string("$.period: ") + e.what());
    } catch (const std::exception&) {
        throw InputError("$.period: malformed period '" + s + "'");
    }
    if (!(p.value > 0.0)) {
        throw InputError("$.period: period must be positive");
    }
    if (p.exact == Scalar::pi_power(1, GaussRational(2))) {
        p.text = "2pi";
    }
    return p;
}

Equation parse_equation(std::string_view text) { return parse_equation_impl<Scalar>(text); }
EquationF parse_equation_float(std::string_view text) { return parse_equation_impl<Complex>(text); }

std::string render_equation(const CoeffSeq& a, const EquationMeta& meta) { return render_equation_impl(a, meta); }
std::string render_equation(const CoeffSeqF& a, const EquationMeta& meta) { return render_equation_impl(a, meta); }

PlanarField parse_field(std::string_view text, int degree_cap) {
    json doc = parse_json(text);
    const std::string root = "$";
    check_keys(doc, {"schema", "label", "F", "G"}, root);
    check_schema(doc, root);
    PlanarField field;
    int degree = 2;
    for (const char* name : {"F", "G"}) {
        BivariatePoly& poly = name[0] == 'F' ? field.F : field.G;
        auto it = doc.find(name);
        if (it == doc.end()) {
            continue;
        }
        const std::string path = root + "." + name;
        if (!it->is_object()) {
            throw InputError(path + ": expected an object of monomials");
        }
        for (const auto& [mono, value] : it->items()) {
            const std::string mpath = path + "[\"" + mono + "\"]";
            auto [p, q] = parse_monomial(mono, mpath);
            GaussRational c = parse_field_coeff(value, mpath);
            if (c.is_zero()) {
                continue;
            }
            if (p + q == 0) {
                throw InputError(mpath + ": constant term not allowed");
            }
            if (p + q == 1) {
                throw InputError(mpath + ": linear term not allowed (the linear part is fixed to (-y, x))");
            }
            if (p + q > degree_cap) {
                throw InputError(mpath + ": degree " + std::to_string(p + q) + " exceeds the cap " +
                                 std::to_string(degree_cap));
            }
            if (!poly.emplace(std::make_pair(p, q), c).second) {
                throw InputError(mpath + ": duplicate monomial");
            }
            degree = std::max(degree, p + q);
        }
    }
    field.degree = degree;
    field.validate();
    return field;
}

std::string render_field(const PlanarField& field) {
    json doc;
    for (const char* name : {"F", "G"}) {
        const BivariatePoly& poly = name[0] == 'F' ? field.F : field.G;
        json obj = json::object();
        for (const auto& [e, c] : poly) {
            if (c.is_real()) {
                obj[monomial_text(e.first, e.second)] = to_string(c.re);
            } else {
                obj[monomial_text(e.first, e.second)] = json::array({to_string(c.re), to_string(c.im)});
            }
        }
        doc[name] = std::move(obj);
    }
    return doc.dump();
}

MomentSpec parse_moment_spec(std::string_view text) {
    std::string s(text);
    std::erase_if(s, [](unsigned char c) { return std::isspace(c); });
    MomentSpec spec;
    auto colon = s.find(':');
    std::string head = colon == std::string::npos ? "" : s.substr(0, colon);
    std::string last = colon == std::string::npos ? s : s.substr(colon + 1);
    auto to_int = [&](const std::string& t) {
        if (t.empty() || !std::all_of(t.begin(), t.end(), [](unsigned char c) { return std::isdigit(c); })) {
            throw InputError("malformed moment spec '" + std::string(text) + "'");
        }
        return std::stoi(t);
    };
    std::size_t start = 0;
    while (!head.empty() && start <= head.size()) {
        auto comma = head.find(',', start);
        std::string item = head.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
        auto caret = item.find('^');
        spec.bases.push_back(to_int(item.substr(0, caret)));
        spec.exponents.push_back(caret == std::string::npos ? 1 : to_int(item.substr(caret + 1)));
        if (comma == std::string::npos) {
            break;
        }
        start = comma + 1;
    }
    spec.bases.push_back(to_int(last));
    try {
        spec.validate();
    } catch (const std::invalid_argument& e) {
        throw InputError(e.what());
    }
    return spec;
}

Word parse_word(std::string_view text) {
    std::string s(text);
    std::erase_if(s, [](unsigned char c) { return std::isspace(c) || c == '(' || c == ')'; });
    std::vector<int> letters;
    std::size_t start = 0;
    while (!s.empty() && start <= s.size()) {
        auto comma = s.find(',', start);
        std::string item = s.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
        if (item.empty() || !std::all_of(item.begin(), item.end(), [](unsigned char c) { return std::isdigit(c); }) ||
            std::stoi(item) < 1) {
            throw InputError("malformed word '" + std::string(text) + "'");
        }
        letters.push_back(std::stoi(item));
        if (comma == std::string::npos) {
            break;
        }
        start = comma + 1;
    }
    return Word(std::move(letters));
}

std::string input_digest(std::string_view bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "fnv1a64:%016llx", static_cast<unsigned long long>(h));
    return buf;
}

}  // namespace cfl
