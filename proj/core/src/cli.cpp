#include "cfl/cli.hpp"

#include <chrono>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "cfl/group_ops.hpp"
#include "cfl/io.hpp"
#include "cfl/iterated.hpp"
#include "cfl/numeric.hpp"
#include "cfl/polar.hpp"
#include "cfl/return_map.hpp"
#include "cfl/verify.hpp"

namespace cfl::cli {

using json = nlohmann::ordered_json;

namespace {

struct Flags {
    int order = 8;
    std::string mode = "exact";
    bool pretty = false;
    bool strict_verdict = false;
    std::uint64_t seed = 1;
};

void add_common(CLI::App* sub, Flags& f) {
    sub->add_option("--order", f.order, "Truncation order N")->check(CLI::Range(1, 20));
    sub->add_option("--mode", f.mode, "Scalar arithmetic")->check(CLI::IsMember({"exact", "float"}));
    sub->add_flag("--pretty", f.pretty, "Human-readable output instead of JSON");
    sub->add_flag("--strict-verdict", f.strict_verdict, "Exit 1 on a negative verdict");
    sub->add_option("--seed", f.seed, "Seed for randomized suites");
}

class Session {
public:
    Session(std::istream& in, std::ostream& out, const Flags& flags, std::string command)
        : in_(in), out_(out), flags_(flags), command_(std::move(command)), start_(std::chrono::steady_clock::now()) {}

    std::string read(const std::string& path) {
        std::string text;
        if (path == "-") {
            if (stdin_used_) {
                throw InputError("standard input can be read only once");
            }
            stdin_used_ = true;
            text.assign(std::istreambuf_iterator<char>(in_), {});
        } else {
            std::ifstream file(path, std::ios::binary);
            if (!file) {
                throw InputError("cannot open '" + path + "'");
            }
            text.assign(std::istreambuf_iterator<char>(file), {});
        }
        digest_input_ += text;
        digest_input_ += '\0';
        return text;
    }

    [[nodiscard]] bool exact() const { return flags_.mode == "exact"; }
    [[nodiscard]] const Flags& flags() const { return flags_; }

    json report(json results) const {
        json r;
        r["schema"] = kSchema;
        r["kind"] = "report";
        r["command"] = command_;
        r["input_digest"] = input_digest(digest_input_);
        r["mode"] = flags_.mode;
        r["results"] = std::move(results);
        return r;
    }

    void emit_report(json r) const {
        auto elapsed = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_);
        r["timing_ms"] = std::round(elapsed.count() * 1000.0) / 1000.0;
        if (flags_.pretty) {
            pretty(r, 0);
        } else {
            out_ << r.dump(2) << "\n";
        }
    }

    void emit_document(const std::string& doc) const { out_ << doc; }

private:
    void pretty(const json& j, int indent) const {
        const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
        for (const auto& [key, value] : j.items()) {
            if (value.is_object() && is_scalar_object(value)) {
                out_ << pad << key << ": " << scalar_line(value) << "\n";
            } else if (value.is_object()) {
                out_ << pad << key << ":\n";
                pretty(value, indent + 1);
            } else if (value.is_array()) {
                out_ << pad << key << ":\n";
                for (const auto& item : value) {
                    if (item.is_object() && !is_scalar_object(item)) {
                        out_ << pad << "  -\n";
                        pretty(item, indent + 2);
                    } else {
                        out_ << pad << "  - " << (item.is_object() ? scalar_line(item) : text(item)) << "\n";
                    }
                }
            } else {
                out_ << pad << key << ": " << text(value) << "\n";
            }
        }
    }

    static bool is_scalar_object(const json& j) { return j.contains("decimal") && j.size() <= 2; }
    static std::string scalar_line(const json& j) {
        std::string s = j.contains("exact") ? j["exact"].get<std::string>() + "  (" : "(";
        return s + j["decimal"].get<std::string>() + ")";
    }
    static std::string text(const json& j) { return j.is_string() ? j.get<std::string>() : j.dump(); }

    std::istream& in_;
    std::ostream& out_;
    Flags flags_;
    std::string command_;
    std::chrono::steady_clock::time_point start_;
    std::string digest_input_;
    bool stdin_used_ = false;
};

json scalar_json(const Scalar& s) { return {{"exact", render_scalar(s)}, {"decimal", render_decimal(s.to_complex())}}; }
json scalar_json(const Complex& z) { return {{"decimal", render_decimal(z)}}; }

template <ScalarField S>
json series_json(const ReturnSeriesT<S>& series) {
    json arr = json::array();
    for (int n = 1; n <= series.order(); ++n) {
        arr.push_back({{"n", n}, {"c", scalar_json(series.c(n))}});
    }
    return arr;
}

// ------------------------------------------------------------------ commands

template <ScalarField S>
EquationT<S> load(Session& s, const std::string& path) {
    if constexpr (field<S>::exact) {
        return parse_equation(s.read(path));
    } else {
        return parse_equation_float(s.read(path));
    }
}

template <ScalarField S>
int cmd_coeffs(Session& s, const std::string& path, std::optional<double> r) {
    const int order = s.flags().order;
    auto eq = load<S>(s, path);
    ReturnSeriesT<S> via_words = return_coeffs_iterated(eq.seq, order);
    ReturnSeriesT<S> via_transport = return_coeffs_transport(eq.seq, order);
    for (int n = 1; n <= order; ++n) {
        if (!field<S>::agree(via_words.c(n), via_transport.c(n))) {
            throw CrossCheckError("return-map pipelines disagree at c_" + std::to_string(n));
        }
    }
    const CoeffSeqF numeric_seq = eq.seq.to_float();
    const double radius = numeric_radius(numeric_seq);
    json results;
    results["order"] = order;
    results["original_period"] = eq.meta.original_period;
    results["coefficients"] = series_json(via_words);
    results["pipelines_agree"] = true;
    results["numeric_radius"] = radius;
    if (r) {
        Complex series_value = via_words.evaluate(*r);
        Complex numeric_value = return_map_numeric(numeric_seq, *r);
        results["numeric_check"] = {{"r", *r},
                                    {"series_value", render_decimal(series_value)},
                                    {"numeric_value", render_decimal(numeric_value)},
                                    {"abs_difference", std::abs(series_value - numeric_value)},
                                    {"within_radius", std::abs(*r) <= radius}};
    }
    s.emit_report(s.report(std::move(results)));
    return kOk;
}

template <ScalarField S>
int cmd_center(Session& s, const std::string& path) {
    const int order = s.flags().order;
    auto eq = load<S>(s, path);
    CenterVerdictT<S> v = center_check(eq.seq, order);
    json verdict;
    verdict["order_checked"] = v.order_checked;
    verdict["is_center_up_to_N"] = v.is_center_up_to_n;
    verdict["first_nonzero"] =
        v.first_nonzero ? json{{"n", v.first_nonzero->first}, {"value", scalar_json(v.first_nonzero->second)}}
                        : json(nullptr);
    verdict["is_universal_up_to_N"] = v.is_universal_up_to_n;
    verdict["universal_witness"] =
        v.universal_witness
            ? json{{"word", v.universal_witness->first.str()}, {"value", scalar_json(v.universal_witness->second)}}
            : json(nullptr);
    verdict["evidence"] = v.evidence;
    json results;
    results["coefficients"] = series_json(v.series);
    results["verdict"] = std::move(verdict);
    s.emit_report(s.report(std::move(results)));
    return !v.is_center_up_to_n && s.flags().strict_verdict ? kVerdictNegative : kOk;
}

template <ScalarField S>
int cmd_moments(Session& s, const std::string& path, const std::vector<std::string>& specs, int max_degree) {
    auto eq = load<S>(s, path);
    IteratedIntegralsT<S> engine(eq.seq);
    std::vector<MomentSpec> list;
    for (const auto& text : specs) {
        list.push_back(parse_moment_spec(text));
    }
    if (list.empty()) {
        list = moment_specs_up_to(eq.seq.support(), max_degree);
    }
    json arr = json::array();
    for (const MomentSpec& spec : list) {
        S direct = engine.moment(spec);
        S expanded = engine.sum(moment_shuffle_expand(spec));
        if (!field<S>::agree(direct, expanded)) {
            throw CrossCheckError("moment " + spec.str() + " disagrees with its word expansion");
        }
        arr.push_back({{"spec", spec.str()}, {"value", scalar_json(direct)}, {"vanishes", field<S>::negligible(direct)}});
    }
    json results;
    results["in_Xstar"] = in_Xstar(eq.seq);
    results["moments"] = std::move(arr);
    s.emit_report(s.report(std::move(results)));
    return kOk;
}

template <ScalarField S>
int cmd_iterated(Session& s, const std::string& path, const std::vector<std::string>& words, int max_order) {
    auto eq = load<S>(s, path);
    IteratedIntegralsT<S> engine(eq.seq);
    std::vector<Word> list;
    for (const auto& text : words) {
        list.push_back(parse_word(text));
    }
    if (list.empty()) {
        list = words_up_to_order(max_order);
    }
    json arr = json::array();
    for (const Word& w : list) {
        arr.push_back({{"word", w.str()}, {"order", w.order()}, {"value", scalar_json(engine.integral(w))}});
    }
    json results;
    results["integrals"] = std::move(arr);
    s.emit_report(s.report(std::move(results)));
    return kOk;
}

template <ScalarField S>
int cmd_group(Session& s, const std::string& op, const std::vector<std::string>& paths) {
    const std::size_t need = op == "inverse" ? 1 : 2;
    if (paths.size() != need) {
        throw InputError("group " + op + " expects " + std::to_string(need) + " equation file(s)");
    }
    auto a = load<S>(s, paths[0]);
    if (op == "inverse") {
        s.emit_document(render_equation(inverse(a.seq), EquationMeta{"inverse", "", "2pi"}));
        return kOk;
    }
    auto b = load<S>(s, paths[1]);
    if (op == "concat") {
        s.emit_document(render_equation(concat(a.seq, b.seq), EquationMeta{"concatenation", "", "2pi"}));
        return kOk;
    }
    const int order = s.flags().order;
    EquivalenceT<S> eqv = equivalent_up_to(a.seq, b.seq, order);
    json results;
    results["order_checked"] = order;
    results["equivalent_up_to_N"] = eqv.equivalent;
    results["witness"] = eqv.witness ? json{{"word", eqv.witness->first.str()}, {"value", scalar_json(eqv.witness->second)}}
                                     : json(nullptr);
    s.emit_report(s.report(std::move(results)));
    return !eqv.equivalent && s.flags().strict_verdict ? kVerdictNegative : kOk;
}

int cmd_reduce(Session& s, const std::string& path) {
    PlanarField f = parse_field(s.read(path));
    CoeffSeq seq = polar_reduce(f, s.flags().order);
    EquationMeta meta{"polar reduction to order " + std::to_string(s.flags().order), render_field(f), "2pi"};
    if (!s.flags().pretty) {
        s.emit_document(render_equation(seq, meta));
        return kOk;
    }
    json arr = json::array();
    for (const auto& [i, coeff] : seq.entries()) {
        json terms = json::array();
        for (const auto& [m, c] : coeff.pieces().front().terms()) {
            terms.push_back(render_scalar(c) + " * e^{" + std::to_string(m.freq) + "i phi}");
        }
        arr.push_back({{"index", i}, {"terms", std::move(terms)}});
    }
    json results;
    results["degree"] = f.degree;
    results["parameter_count"] = param_count(f.degree);
    results["coefficients"] = std::move(arr);
    s.emit_report(s.report(std::move(results)));
    return kOk;
}

int cmd_verify(Session& s, const std::string& suite, int max_order, int trials) {
    VerifyOptions options{max_order, trials, s.flags().seed};
    std::vector<IdentityTally> tallies = run_verify_suite(suite, options);
    json arr = json::array();
    bool all = true;
    for (const auto& t : tallies) {
        all = all && t.ok();
        arr.push_back({{"identity", t.name}, {"checked", t.checked}, {"passed", t.passed}, {"failures", t.failures}});
    }
    json results;
    results["suite"] = suite;
    results["max_order"] = max_order;
    results["trials"] = trials;
    results["seed"] = s.flags().seed;
    results["identities"] = std::move(arr);
    results["all_passed"] = all;
    s.emit_report(s.report(std::move(results)));
    return all ? kOk : kInternalError;
}

std::string join(const std::vector<std::string>& args) {
    std::string s;
    for (const auto& a : args) {
        s += (s.empty() ? "" : " ") + a;
    }
    return s;
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
    CLI::App app{"cfl: center problem toolkit for dv/dx = sum_i a_i(x) v^{i+1}", "cfl"};
    app.require_subcommand(1);
    Flags flags;

    std::string input;
    std::optional<double> numeric_r;
    std::vector<std::string> specs;
    std::vector<std::string> words;
    int max_degree = 3;
    int max_order = 3;
    int verify_order = 6;
    int trials = 20;
    std::string suite = "all";
    std::vector<std::string> group_inputs;

    auto* reduce = app.add_subcommand("reduce", "Polar reduction of a planar field to an equation document");
    reduce->add_option("field", input, "Field JSON ('-' for stdin)")->required();
    add_common(reduce, flags);

    auto* coeffs = app.add_subcommand("coeffs", "Return-map coefficients c_1..c_N");
    coeffs->add_option("equation", input, "Equation JSON ('-' for stdin)")->required();
    coeffs->add_option("--r", numeric_r, "Also compare with the numeric return map at this r");
    add_common(coeffs, flags);

    auto* center = app.add_subcommand("center-check", "Order-N center and universal-center certificate");
    center->add_option("equation", input, "Equation JSON ('-' for stdin)")->required();
    add_common(center, flags);

    auto* moments = app.add_subcommand("moments", "Moments, cross-checked against their word expansion");
    moments->add_option("equation", input, "Equation JSON ('-' for stdin)")->required();
    moments->add_option("--spec", specs, "Moment spec 'i1^n1,i2^n2:i' (repeatable)");
    moments->add_option("--max-degree", max_degree, "Enumerate all specs up to this total degree")
        ->check(CLI::Range(1, 8));
    add_common(moments, flags);

    auto* iterated = app.add_subcommand("iterated", "Basic iterated integrals I_w");
    iterated->add_option("equation", input, "Equation JSON ('-' for stdin)")->required();
    iterated->add_option("--word", words, "Word '1,2' (repeatable)");
    iterated->add_option("--max-order", max_order, "Enumerate all words up to this order")->check(CLI::Range(1, 12));
    add_common(iterated, flags);

    auto* group = app.add_subcommand("group", "Concatenation, inverse and finite-order equivalence");
    group->require_subcommand(1);
    std::string group_op;
    for (const char* op : {"concat", "inverse", "equiv"}) {
        auto* sub = group->add_subcommand(op);
        sub->add_option("inputs", group_inputs, "Equation JSON file(s)")->required();
        sub->callback([&group_op, op] { group_op = op; });
        add_common(sub, flags);
    }

    auto* verify = app.add_subcommand("verify", "Randomized identity suites");
    verify->add_option("--suite", suite, "Suite name")->check(CLI::IsMember(verify_suite_names()));
    verify->add_option("--max-order", verify_order, "Largest order exercised")->check(CLI::Range(1, 10));
    verify->add_option("--trials", trials, "Random inputs per suite")->check(CLI::NonNegativeNumber);
    add_common(verify, flags);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? kOk : kInputError;
    }

    Session session(in, out, flags, join(args));
    const bool exact = session.exact();
    try {
        if (reduce->parsed()) {
            return cmd_reduce(session, input);
        }
        if (coeffs->parsed()) {
            return exact ? cmd_coeffs<Scalar>(session, input, numeric_r) : cmd_coeffs<Complex>(session, input, numeric_r);
        }
        if (center->parsed()) {
            return exact ? cmd_center<Scalar>(session, input) : cmd_center<Complex>(session, input);
        }
        if (moments->parsed()) {
            return exact ? cmd_moments<Scalar>(session, input, specs, max_degree)
                         : cmd_moments<Complex>(session, input, specs, max_degree);
        }
        if (iterated->parsed()) {
            return exact ? cmd_iterated<Scalar>(session, input, words, max_order)
                         : cmd_iterated<Complex>(session, input, words, max_order);
        }
        if (group->parsed()) {
            return exact ? cmd_group<Scalar>(session, group_op, group_inputs)
                         : cmd_group<Complex>(session, group_op, group_inputs);
        }
        if (verify->parsed()) {
            return cmd_verify(session, suite, verify_order, trials);
        }
    } catch (const CrossCheckError& e) {
        err << "internal cross-check failure: " << e.what() << "\n";
        return kInternalError;
    } catch (const InputError& e) {
        err << "input error: " << e.what() << "\n";
        return kInputError;
    } catch (const NumericFailure& e) {
        err << "numeric failure: " << e.what() << "\n";
        return kInputError;
    } catch (const std::invalid_argument& e) {
        err << "input error: " << e.what() << "\n";
        return kInputError;
    } catch (const std::domain_error& e) {
        err << "input error: " << e.what() << "\n";
        return kInputError;
    } catch (const std::length_error& e) {
        err << "input error: " << e.what() << "\n";
        return kInputError;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return kInternalError;
    }
    return kInputError;
}

}  // namespace cfl::cli
