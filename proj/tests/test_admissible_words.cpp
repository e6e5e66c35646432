#include "doctest.h"

#include "thhcalc/admissible_words.hpp"
#include "thhcalc/arith.hpp"

#include <set>

using namespace thh;

namespace {

// independent degree recursion, innermost letter last
std::uint64_t naive_degree(const std::vector<Letter>& w, std::uint64_t p)
{
    std::uint64_t d = 0;
    for (std::size_t i = w.size(); i-- > 0;) {
        std::uint64_t pk = 1;
        for (int j = 0; j < w[i].k; ++j)
            pk *= p;
        switch (w[i].kind) {
        case LetterKind::Mu: d = 2; break;
        case LetterKind::Rho: d = 1 + d; break;
        case LetterKind::RhoK: d = pk * (1 + d); break;
        case LetterKind::PhiK: d = pk * (2 + p * d); break;
        }
    }
    return d;
}

// which letter may stand directly left of which
bool may_precede(const Letter& left, const Letter& right)
{
    switch (right.kind) {
    case LetterKind::Mu: return left.kind == LetterKind::Rho;
    case LetterKind::Rho: return left.kind == LetterKind::RhoK;
    default: return left.kind == LetterKind::Rho || left.kind == LetterKind::PhiK;
    }
}

std::set<std::string> brute_force(std::size_t n, std::uint64_t D, std::uint32_t p, bool monic)
{
    std::vector<Letter> alphabet{Letter::mu(), Letter::rho()};
    for (int k = 0; k < 8; ++k) {
        alphabet.push_back(Letter::rho_k(k));
        alphabet.push_back(Letter::phi_k(k));
    }
    std::set<std::string> out;
    std::vector<std::vector<Letter>> layer{{Letter::mu()}};
    for (std::size_t len = 1; len < n; ++len) {
        std::vector<std::vector<Letter>> next;
        for (const auto& w : layer)
            for (const auto& l : alphabet)
                if (may_precede(l, w.front())) {
                    std::vector<Letter> v{l};
                    v.insert(v.end(), w.begin(), w.end());
                    if (naive_degree(v, p) <= D)
                        next.push_back(v);
                }
        layer.swap(next);
    }
    for (const auto& w : layer) {
        const auto& f = w.front();
        bool is_m = f.kind == LetterKind::Mu || f.kind == LetterKind::Rho || f.k == 0;
        if (!monic || is_m)
            out.insert(to_string(AdmissibleWord(w)));
    }
    return out;
}

}  // namespace

TEST_CASE("admissibility examples")
{
    CHECK(is_admissible({Letter::rho(), Letter::mu()}));
    CHECK_FALSE(is_admissible({Letter::phi_k(0), Letter::mu()}));
    CHECK(is_admissible({Letter::rho(), Letter::rho_k(0), Letter::rho(), Letter::mu()}));
    CHECK(is_admissible({Letter::mu()}));
    CHECK_THROWS_AS(AdmissibleWord({Letter::mu(), Letter::rho()}), ContractError);
}

TEST_CASE("monic and degree examples")
{
    CHECK(is_monic(AdmissibleWord::parse("ρμ")));
    CHECK_FALSE(is_monic(AdmissibleWord::parse("ρ¹ρμ")));
    CHECK(is_monic(AdmissibleWord::parse("μ")));
    CHECK(degree(AdmissibleWord::parse("μ"), 3) == 2);
    CHECK(degree(AdmissibleWord::parse("ρμ"), 3) == 3);
    CHECK(degree(AdmissibleWord::parse("φ⁰ρ¹ρμ"), 3) == 38);
    CHECK(degree(AdmissibleWord::parse("ρρ⁰ρμ"), 3) == 5);
    CHECK(degree(AdmissibleWord::parse("φ⁰ρ⁰ρμ"), 3) == 14);
    CHECK(degree(AdmissibleWord::parse("ρρ¹ρμ"), 3) == 13);
    CHECK(AdmissibleWord::parse("rho rho^0 rho mu") == AdmissibleWord::parse("ρρ⁰ρμ"));
}

TEST_CASE("enumeration matches brute force")
{
    for (std::uint32_t p : {3u, 5u})
        for (std::size_t n = 1; n <= 7; ++n) {
            std::uint64_t D = 4 * p * p;
            std::set<std::string> adm, mon;
            for (const auto& w : enumerate_admissible(n, D, p)) {
                CHECK(degree(w, p) == naive_degree(w.letters(), p));
                adm.insert(to_string(w));
            }
            for (const auto& w : enumerate_monic(n, D, p))
                mon.insert(to_string(w));
            CHECK(adm == brute_force(n, D, p, false));
            CHECK(mon == brute_force(n, D, p, true));
        }
}

TEST_CASE("monic words of small length")
{
    auto four = enumerate_monic(4, 40, 3);
    std::set<std::string> got;
    for (const auto& w : four)
        got.insert(to_string(w));
    CHECK(got == std::set<std::string>{"ρρ⁰ρμ", "ρρ¹ρμ", "φ⁰ρ⁰ρμ", "ρρ²ρμ", "φ⁰ρ¹ρμ"});
    auto three = enumerate_monic(3, 200, 5);
    REQUIRE(three.size() == 1);
    CHECK(to_string(three[0]) == "ρ⁰ρμ");
    CHECK(degree(three[0], 5) == 4);
    auto one = enumerate_monic(1, 2, 3);
    REQUIRE(one.size() == 1);
    CHECK(to_string(one[0]) == "μ");
}

TEST_CASE("B_n and labeled algebras")
{
    auto b1 = b_n_spec(1, 20, 3);
    REQUIRE(b1.size() == 1);
    CHECK(b1.generator(0).kind == GenKind::Polynomial);
    CHECK(b1.generator(0).degree == 2);
    auto b2 = b_n_spec(2, 20, 3);
    REQUIRE(b2.size() == 1);
    CHECK(b2.generator(0).kind == GenKind::Exterior);
    CHECK(b2.generator(0).degree == 3);
    auto b3 = b_n_spec(3, 20, 3);
    REQUIRE(b3.size() == 1);
    CHECK(b3.generator(0).kind == GenKind::DividedPower);
    CHECK(b3.generator(0).degree == 4);
    for (std::uint32_t p : {3u, 5u})
        for (std::size_t n = 2; n <= 6; ++n) {
            auto b = b_n_spec(n, 60, p);
            for (const auto& g : b.generators())
                CHECK((g.kind == GenKind::Exterior) == (g.degree % 2 == 1));
        }

    auto l12 = b_labeled_spec({1, 2}, 20, 3);
    REQUIRE(l12.size() == 1);
    CHECK(l12.generator(0).label == "ρ₂μ₁");
    auto l7 = b_labeled_spec({7}, 20, 3);
    REQUIRE(l7.size() == 1);
    CHECK(l7.generator(0).kind == GenKind::Polynomial);
    CHECK(b_labeled_spec({}, 20, 3).size() == 0);
}

TEST_CASE("word lemma and digit sums")
{
    CHECK(check_word_lemma(4, 100, 3).passed);
    CHECK(check_word_lemma(2, 50, 5).passed);
    CHECK(check_word_lemma(6, 50, 5).passed);
    for (std::uint32_t p : {3u, 5u})
        for (std::size_t n = 1; n <= p; ++n)
            CHECK(digit_sum_checks(n, 2 * p * p, p).passed);
    auto w = AdmissibleWord::parse("ρ⁰ρμ");
    CHECK(digit_sum(degree(w, 5) / 2, 5) == 3 - rho_count(w));
}

TEST_CASE("mu product degrees")
{
    // two factors at p = 3: 2(3^i + 3^j)
    auto d = mu_product_degrees(2, 40, 3);
    std::set<std::uint64_t> got(d.begin(), d.end()), expect;
    for (std::uint64_t a : {1, 3, 9, 27})
        for (std::uint64_t b : {1, 3, 9, 27})
            if (2 * (a + b) <= 40)
                expect.insert(2 * (a + b));
    CHECK(got == expect);
}

TEST_CASE("B_n primitives")
{
    for (std::uint32_t p : {3u, 5u})
        for (std::size_t n = 2; n <= 2 * p; ++n)
            CHECK(b_n_primitive_check(n, 12 * p, p).passed);
}
