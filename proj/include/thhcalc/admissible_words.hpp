#pragma once

#include "thhcalc/graded_hopf.hpp"
#include "thhcalc/report.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace thh {

enum class LetterKind { Mu, Rho, RhoK, PhiK };

struct Letter
{
    LetterKind kind = LetterKind::Mu;
    int k = 0;  // RhoK / PhiK only

    static Letter mu() { return {LetterKind::Mu, 0}; }
    static Letter rho() { return {LetterKind::Rho, 0}; }
    static Letter rho_k(int k) { return {LetterKind::RhoK, k}; }
    static Letter phi_k(int k) { return {LetterKind::PhiK, k}; }

    auto operator<=>(const Letter&) const = default;
};

bool is_admissible(const std::vector<Letter>& seq);

// A word read left to right; the first letter is the outermost operation.
class AdmissibleWord
{
public:
    explicit AdmissibleWord(std::vector<Letter> letters, std::vector<int> labels = {});
    // Parses the notation produced by to_string(), e.g. "ρρ⁰ρμ" or "rho rho^0 rho mu".
    static AdmissibleWord parse(const std::string& s);

    const std::vector<Letter>& letters() const { return letters_; }
    const std::vector<int>& labels() const { return labels_; }
    bool labeled() const { return !labels_.empty(); }
    std::size_t length() const { return letters_.size(); }
    const Letter& first() const { return letters_.front(); }

    // Prepend a letter (and label when labeled); throws if the result is not admissible.
    AdmissibleWord prepend(Letter l, int label = 0) const;
    AdmissibleWord with_labels(std::vector<int> labels) const;
    AdmissibleWord unlabeled() const { return AdmissibleWord(letters_); }

    auto operator<=>(const AdmissibleWord&) const = default;

private:
    std::vector<Letter> letters_;
    std::vector<int> labels_;
};

bool is_monic(const AdmissibleWord& w);
// degree by the recursion; saturates at UINT64_MAX
std::uint64_t degree(const AdmissibleWord& w, std::uint32_t p);
std::size_t rho_count(const AdmissibleWord& w);
std::string to_string(const AdmissibleWord& w);

// all admissible words of length n and degree <= D, sorted by (degree, letters)
std::vector<AdmissibleWord> enumerate_admissible(std::size_t n, std::uint64_t D, std::uint32_t p);
std::vector<AdmissibleWord> enumerate_monic(std::size_t n, std::uint64_t D, std::uint32_t p);

AlgebraSpec b_n_spec(std::size_t n, int D, std::uint32_t p);
// S sorted ascending and duplicate free; labels s_n on the first letter down to s_1 on mu
AlgebraSpec b_labeled_spec(const std::vector<int>& S, int D, std::uint32_t p);
std::vector<AdmissibleWord> labeled_monic(const std::vector<int>& S, std::uint64_t D, std::uint32_t p);

CheckReport check_word_lemma(std::size_t n, std::uint64_t D, std::uint32_t p);
// primitives of B_n per degree up to D, by the coproduct kernel and by counting
// monic words (the generators); both must agree and vanish in degrees 2pi-1, 2pi, i >= 2
CheckReport b_n_primitive_check(std::size_t n, int D, std::uint32_t p);
CheckReport digit_sum_checks(std::size_t n, std::uint64_t D, std::uint32_t p);

// degrees 2(p^{j_1}+...+p^{j_m}) <= D of mu-power products with m factors
std::vector<std::uint64_t> mu_product_degrees(std::size_t m, std::uint64_t D, std::uint32_t p);

}  // namespace thh
