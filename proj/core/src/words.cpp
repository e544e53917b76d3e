#include "cfl/words.hpp"

#include <numeric>
#include <stdexcept>

namespace cfl {

Word::Word(std::initializer_list<int> l) : Word(std::vector<int>(l)) {}

Word::Word(std::vector<int> l) : letters(std::move(l)) {
    for (int i : letters) {
        if (i < 1) {
            throw std::invalid_argument("word letters must be positive");
        }
    }
}

int Word::order() const { return std::accumulate(letters.begin(), letters.end(), 0); }

Word Word::prefix(std::size_t n) const {
    Word w;
    w.letters.assign(letters.begin(), letters.begin() + static_cast<std::ptrdiff_t>(n));
    return w;
}

Word Word::suffix_from(std::size_t n) const {
    Word w;
    w.letters.assign(letters.begin() + static_cast<std::ptrdiff_t>(n), letters.end());
    return w;
}

Word Word::reversed() const {
    Word w;
    w.letters.assign(letters.rbegin(), letters.rend());
    return w;
}

Word Word::appended(int letter) const {
    Word w = *this;
    w.letters.push_back(letter);
    return w;
}

std::string Word::str() const {
    std::string s = "(";
    for (std::size_t k = 0; k < letters.size(); ++k) {
        if (k > 0) {
            s += ',';
        }
        s += std::to_string(letters[k]);
    }
    return s + ")";
}

Word concat(const Word& u, const Word& v) {
    Word w = u;
    w.letters.insert(w.letters.end(), v.letters.begin(), v.letters.end());
    return w;
}

namespace {

void compose_into(int remaining, Word& current, std::vector<Word>& out) {
    if (remaining == 0) {
        out.push_back(current);
        return;
    }
    for (int first = 1; first <= remaining; ++first) {
        current.letters.push_back(first);
        compose_into(remaining - first, current, out);
        current.letters.pop_back();
    }
}

void shuffle_into(const Word& u, std::size_t i, const Word& v, std::size_t j, Word& current, WordMultiset& out) {
    if (i == u.length() && j == v.length()) {
        ++out[current];
        return;
    }
    if (i < u.length()) {
        current.letters.push_back(u.letters[i]);
        shuffle_into(u, i + 1, v, j, current, out);
        current.letters.pop_back();
    }
    if (j < v.length()) {
        current.letters.push_back(v.letters[j]);
        shuffle_into(u, i, v, j + 1, current, out);
        current.letters.pop_back();
    }
}

}  // namespace

std::vector<Word> compositions(int n) {
    if (n < 1) {
        throw std::invalid_argument("compositions: n must be >= 1");
    }
    std::vector<Word> out;
    out.reserve(std::size_t{1} << (n - 1));
    Word current;
    compose_into(n, current, out);
    return out;
}

std::vector<Word> words_up_to_order(int max_order) {
    std::vector<Word> out;
    for (int n = 1; n <= max_order; ++n) {
        auto batch = compositions(n);
        out.insert(out.end(), batch.begin(), batch.end());
    }
    return out;
}

WordMultiset shuffle(const Word& u, const Word& v) {
    WordMultiset out;
    Word current;
    shuffle_into(u, 0, v, 0, current, out);
    return out;
}

void MomentSpec::validate() const {
    if (bases.size() != exponents.size() + 1) {
        throw std::invalid_argument("moment spec needs exactly one more base index than exponents");
    }
    for (int b : bases) {
        if (b < 1) {
            throw std::invalid_argument("moment base indices must be >= 1");
        }
    }
    for (int n : exponents) {
        if (n < 1) {
            throw std::invalid_argument("moment exponents must be >= 1");
        }
    }
}

int MomentSpec::total_degree() const { return std::accumulate(exponents.begin(), exponents.end(), 1); }

std::string MomentSpec::str() const {
    std::string s = "m^{";
    for (std::size_t k = 0; k < exponents.size(); ++k) {
        s += (k > 0 ? "," : "") + std::to_string(exponents[k]);
    }
    s += "}_{";
    for (std::size_t k = 0; k < bases.size(); ++k) {
        s += (k > 0 ? "," : "") + std::to_string(bases[k]);
    }
    return s + "}";
}

namespace {

void specs_into(const std::vector<int>& letters, int budget, MomentSpec& current, std::vector<MomentSpec>& out) {
    for (int last : letters) {
        MomentSpec s = current;
        s.bases.push_back(last);
        out.push_back(std::move(s));
    }
    for (int b : letters) {
        for (int n = 1; n <= budget; ++n) {
            current.bases.push_back(b);
            current.exponents.push_back(n);
            specs_into(letters, budget - n, current, out);
            current.bases.pop_back();
            current.exponents.pop_back();
        }
    }
}

}  // namespace

std::vector<MomentSpec> moment_specs_up_to(const std::vector<int>& letters, int max_degree) {
    std::vector<MomentSpec> out;
    if (max_degree < 1) {
        return out;
    }
    MomentSpec current;
    specs_into(letters, max_degree - 1, current, out);
    return out;
}

WordMultiset moment_shuffle_expand(const MomentSpec& spec) {
    spec.validate();
    WordMultiset acc{{Word{}, 1}};
    for (std::size_t k = 0; k < spec.exponents.size(); ++k) {
        for (int copy = 0; copy < spec.exponents[k]; ++copy) {
            WordMultiset next;
            for (const auto& [w, mult] : acc) {
                for (const auto& [s, m2] : shuffle(w, Word{spec.bases[k]})) {
                    next[s] += mult * m2;
                }
            }
            acc = std::move(next);
        }
    }
    WordMultiset out;
    for (const auto& [w, mult] : acc) {
        out[w.appended(spec.bases.back())] += mult;
    }
    return out;
}

}  // namespace cfl
