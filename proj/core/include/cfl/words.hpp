#ifndef CFL_WORDS_HPP
#define CFL_WORDS_HPP

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <string>
#include <vector>

namespace cfl {

/// Multi-index (i_1, ..., i_k) of a basic iterated integral. i_1 is the
/// letter attached to the earliest time s_1. The empty word is allowed.
struct Word {
    std::vector<int> letters;

    Word() = default;
    Word(std::initializer_list<int> l);
    explicit Word(std::vector<int> l);

    [[nodiscard]] int order() const;
    [[nodiscard]] std::size_t length() const { return letters.size(); }
    [[nodiscard]] bool empty() const { return letters.empty(); }
    [[nodiscard]] Word prefix(std::size_t n) const;
    [[nodiscard]] Word suffix_from(std::size_t n) const;
    [[nodiscard]] Word reversed() const;
    [[nodiscard]] Word appended(int letter) const;
    [[nodiscard]] std::string str() const;  // "(1,2)"

    friend auto operator<=>(const Word&, const Word&) = default;
    friend bool operator==(const Word&, const Word&) = default;
};

Word concat(const Word& u, const Word& v);

/// Words with multiplicities.
using WordMultiset = std::map<Word, std::int64_t>;

/// All 2^{n-1} ordered compositions of n, lexicographic. Requires n >= 1.
std::vector<Word> compositions(int n);

/// Every word of order 1..max_order, grouped by order, each group
/// lexicographic.
std::vector<Word> words_up_to_order(int max_order);

/// Shuffle product u ш v with multiplicities; total count C(|u|+|v|, |u|).
WordMultiset shuffle(const Word& u, const Word& v);

/// Moment indices: integral of tilde(a_{i_1})^{n_1} ... tilde(a_{i_k})^{n_k}
/// a_{i_{k+1}}. bases has k+1 entries, exponents k.
struct MomentSpec {
    std::vector<int> bases;
    std::vector<int> exponents;

    /// Throws std::invalid_argument unless sizes match and all entries >= 1.
    void validate() const;
    [[nodiscard]] int total_degree() const;  // sum of n_j plus one
    [[nodiscard]] std::string str() const;   // "m^{2,1}_{1,2,3}"
};

/// All moment specs with total degree <= max_degree over the given letters.
std::vector<MomentSpec> moment_specs_up_to(const std::vector<int>& letters, int max_degree);

/// Words w with moment(spec, a) = sum_w I_w(a) using plain summation:
/// shuffles of n_j copies of each single-letter word (i_j), each followed by
/// the final letter i_{k+1}. Multiplicities total (sum n_j)!.
WordMultiset moment_shuffle_expand(const MomentSpec& spec);

}  // namespace cfl

#endif
