#include "doctest.h"

#include "thhcalc/admissible_words.hpp"
#include "thhcalc/spectral_engine.hpp"

using namespace thh;

namespace {

// dims of P(x_0..)/(x_i^p) by bidegree, x_i in filtration 1
BidegreeTable truncated_dims(std::uint32_t p, const std::vector<int>& degs, int D)
{
    BidegreeTable acc{{{0, 0}, 1}};
    for (int d : degs) {
        BidegreeTable next;
        for (const auto& [bd, v] : acc)
            for (std::uint32_t e = 0; e < p; ++e) {
                int total = bd.first + bd.second + (int)e * d;
                if (total <= D)
                    next[{bd.first + (int)e, bd.second + (int)e * (d - 1)}] += v;
            }
        acc.swap(next);
    }
    return acc;
}

}  // namespace

TEST_CASE("Leibniz differential")
{
    AlgebraSpec s(3, 20);
    std::size_t x = s.add_generator({"x", 2, GenKind::Polynomial, 0});
    std::size_t y = s.add_generator({"y", 4, GenKind::Polynomial, 0});
    std::size_t a = s.add_generator({"a", 1, GenKind::Exterior, 0});
    SSTerm E(s, {2, 0, 0});
    DifferentialSpec d;
    d.images.emplace(x, Element::of(Monomial::gen(a), 3));
    Element xy = Element::of(Monomial({{(std::uint32_t)x, 1}, {(std::uint32_t)y, 1}}), 3);
    Element ay = Element::of(Monomial({{(std::uint32_t)y, 1}, {(std::uint32_t)a, 1}}), 3);
    CHECK(apply_differential(E, d, xy) == ay);
    CHECK(apply_differential(E, d, Element::one(3)).is_zero());
}

TEST_CASE("shift rule differential")
{
    AlgebraSpec s(3, 30);
    std::size_t x = s.add_generator({"x", 2, GenKind::DividedPower, 0});
    std::size_t y = s.add_generator({"y", 5, GenKind::Exterior, 0});
    SSTerm E(s, {1, 1});
    DifferentialSpec d;
    d.r = 2;
    d.shifts.emplace(x, ShiftRule(3, Element::of(Monomial::gen(y), 3)));
    CHECK(apply_differential(E, d, Element::of(Monomial::gen(x, 3), 3)) == Element::of(Monomial::gen(y), 3));
    CHECK(apply_differential(E, d, Element::of(Monomial::gen(x, 2), 3)).is_zero());
    CHECK(check_differential(E, d, 30).passed);
}

TEST_CASE("page homology")
{
    AlgebraSpec s(3, 20);
    std::size_t x = s.add_generator({"x", 2, GenKind::Polynomial, 0});
    std::size_t y = s.add_generator({"y", 3, GenKind::Exterior, 0});
    SSTerm E(s, {0, 2});
    DifferentialSpec zero;
    CHECK(page_homology(E, zero, 20) == bidegree_dims(E, 20));

    DifferentialSpec koszul;
    koszul.images.emplace(y, Element::of(Monomial::gen(x), 3));
    auto H = page_homology(E, koszul, 20);
    CHECK(H == BidegreeTable{{{0, 0}, 1}});

    // d(x) = y: d^2 fails the bidegree check
    DifferentialSpec bad;
    bad.images.emplace(x, Element::of(Monomial::gen(y), 3));
    CHECK_THROWS_AS(page_homology(E, bad, 20), ContractError);
}

TEST_CASE("p-term against the truncated polynomial algebra")
{
    for (auto [p, degs, D] : std::vector<std::tuple<std::uint32_t, std::vector<int>, int>>{
             {3, {2}, 30}, {3, {2, 2}, 30}, {3, {2, 4}, 30}, {5, {2}, 50}}) {
        auto r = verify_p_term(p, degs, D);
        CHECK(r.passed);
        auto expect = truncated_dims(p, degs, D);
        BidegreeTable got;
        for (const auto& row : r.details["table"])
            if (row[2].get<std::size_t>())
                got[{row[0].get<int>(), row[1].get<int>()}] = row[2].get<std::size_t>();
        CHECK(got == expect);
    }
}

TEST_CASE("change of basis cycles")
{
    CHECK(change_basis_cycles(3, 1, {0}, 18).passed);
    CHECK(change_basis_cycles(3, 1, {1}, 18).passed);
    CHECK(change_basis_cycles(3, 2, {1, 2}, 18).passed);
    CHECK(change_basis_cycles(5, 1, {2}, 10).passed);

    // gamma_3(z') = gamma_3(z) - gamma_0(z) gamma_3(x_0) for one x at p = 3
    AlgebraSpec s(3, 18);
    s.add_generator({"x0", 2, GenKind::DividedPower, 0});
    s.add_generator({"y1", 5, GenKind::Exterior, 0});
    s.add_generator({"z", 2, GenKind::DividedPower, 0});
    Element c = changed_cycle(s, 1, 1, {1});
    Element expect = Element::of(Monomial::gen(2, 3), 3) - Element::of(Monomial::gen(0, 3), 3);
    CHECK(c == expect);
}

TEST_CASE("two-column differential")
{
    auto T = TorusAlgebra::build(2, 5, 40, SteenrodSpec::full());
    auto E = hfpss_two_columns(T);
    auto tau1 = Element::of(Monomial::gen(*T.tau_index(1)), 5);
    auto d = E.d2(tau1);
    REQUIRE(d.size() == 2);
    CHECK(d[0] == Element::of(Monomial::gen(*T.mu_index(1), 5), 5));
    CHECK(d[1] == Element::of(Monomial::gen(*T.mu_index(2), 5), 5));
    for (const auto& e : E.d2(Element::one(5)))
        CHECK(e.is_zero());
    for (const auto& e : E.d2(Element::of(Monomial::gen(*T.xi_index(1)), 5)))
        CHECK(e.is_zero());
}

TEST_CASE("Rognes obstruction")
{
    for (auto [p, n] : std::vector<std::pair<std::uint32_t, int>>{{3, 2}, {5, 2}, {5, 3}, {3, 3}}) {
        auto r = rognes_check(p, n);
        CHECK(r.verdict() == "obstructed");
        CHECK(r.augmented_rank == r.rank + 1);
        auto c = rognes_check(p, n, true);
        CHECK(c.verdict() == "hit");
        for (int j = 0; j < n; ++j)
            CHECK(c.witness.at(j) == (j == n - 1 ? "1" : "0"));
    }
    // unknowns: monomials of weight p^{n-1} - p^j in n variables, j < n-1
    auto r = rognes_check(5, 3);
    CHECK(r.unknowns == 231 + 325);
    CHECK(r.to_json()["schema"] == "thhcalc/1");
}

TEST_CASE("shortest differential candidates")
{
    CHECK(shortest_candidates(b_n_ss_term(3, 50, 5), 50).empty());
    CHECK(shortest_candidates(b_n_ss_term(2, 50, 5), 50).empty());
    for (std::uint32_t p : {3u, 5u}) {
        AlgebraSpec s(p, 40);
        s.add_generator({"x", 2, GenKind::DividedPower, 0});
        s.add_generator({"y", 2 * (int)p - 1, GenKind::Exterior, 0});
        auto c = shortest_candidates(SSTerm(s, {1, 1}), 40);
        REQUIRE(c.size() == 1);
        CHECK(c[0].source == Bidegree{(int)p, (int)p});
        CHECK(c[0].target == Bidegree{1, 2 * (int)p - 2});
        CHECK(c[0].r == (int)p - 1);
    }
}
