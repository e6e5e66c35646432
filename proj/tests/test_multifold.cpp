#include "doctest.h"

#include "thhcalc/multifold.hpp"

#include <algorithm>

using namespace thh;

namespace {

// exact binomials for n <= 60
unsigned __int128 binom(unsigned n, unsigned k)
{
    if (k > n)
        return 0;
    unsigned __int128 r = 1;
    for (unsigned i = 1; i <= k; ++i)
        r = r * (n - k + i) / i;
    return r;
}

// dimension of span{r_1..r_{N-1}} modulo the coassociativity relations, by
// dense elimination over F_p on exact binomials
std::size_t naive_relation_dim(unsigned N, unsigned p)
{
    std::vector<std::vector<long long>> rows;
    for (unsigned a = 1; a < N; ++a)
        for (unsigned b = 1; a + b < N; ++b) {
            unsigned c = N - a - b;
            std::vector<long long> r(N - 1, 0);
            r[a + b - 1] += (long long)(binom(a + b, b) % p);
            r[a - 1] -= (long long)(binom(b + c, b) % p);
            for (auto& x : r)
                x = ((x % p) + p) % p;
            rows.push_back(r);
        }
    std::size_t rank = 0, cols = N - 1;
    for (std::size_t c = 0; c < cols && rank < rows.size(); ++c) {
        std::size_t piv = rank;
        while (piv < rows.size() && rows[piv][c] == 0)
            ++piv;
        if (piv == rows.size())
            continue;
        std::swap(rows[piv], rows[rank]);
        long long inv = 1;
        while ((rows[rank][c] * inv) % p != 1)
            ++inv;
        for (auto& x : rows[rank])
            x = x * inv % p;
        for (std::size_t r = 0; r < rows.size(); ++r)
            if (r != rank && rows[r][c]) {
                long long f = rows[r][c];
                for (std::size_t j = 0; j < cols; ++j)
                    rows[r][j] = ((rows[r][j] - f * rows[rank][j]) % (long long)p + p) % p;
            }
        ++rank;
    }
    return cols - rank;
}

}  // namespace

TEST_CASE("binom_div_p against exact binomials")
{
    CHECK(binom_div_p(9, 3, 3) == 1);
    CHECK(binom_div_p(3, 1, 3) == 1);
    CHECK(binom_div_p(25, 5, 5) == 1);
    for (unsigned p : {3u, 5u, 7u})
        for (unsigned n = p; n <= 60; n *= p)
            for (unsigned k = 1; k < n; ++k)
                CHECK(binom_div_p(n, k, p) == (Fp)(binom(n, k) / p % p));
    CHECK_THROWS_AS(binom_div_p(6, 1, 3), ContractError);
}

TEST_CASE("weight classification")
{
    CHECK(classify_weight(9, 3).type == WeightType::PrimePower);
    auto two = classify_weight(4, 3);
    CHECK(two.type == WeightType::TwoPowers);
    CHECK(two.m1 == 0);
    CHECK(two.m2 == 1);
    CHECK(classify_weight(5, 3).type == WeightType::Other);
    CHECK(classify_weight(6, 3).type == WeightType::Other);  // 3 + 3 is not two distinct powers
}

TEST_CASE("relation module examples")
{
    auto m4 = relation_module(4, 3);
    CHECK(m4.dimension == 2);
    for (Fp c : m4.normal_form[1])
        CHECK(c == 0);  // r_{2,2} = 0
    auto m9 = relation_module(9, 3);
    for (Fp c : m9.normal_form[0])
        CHECK(c == 0);  // r_{1,8} = 0
    auto m5 = relation_module(5, 3);
    REQUIRE(m5.dimension == 1);
    REQUIRE(m5.basis[0] == 3);
    CHECK(m5.normal_form[0][0] == 2);  // r_{1,4} = 2 r_{3,2}
}

TEST_CASE("relation module dimensions against dense elimination")
{
    for (unsigned p : {3u, 5u})
        for (unsigned N = 3; N <= 60; ++N) {
            auto m = relation_module(N, p);
            CHECK(m.check.passed);
            CHECK(m.dimension == naive_relation_dim(N, p));
        }
}

TEST_CASE("coproduct decomposition")
{
    CoproductTable mu4{4, {}};
    for (unsigned a = 1; a < 4; ++a)
        mu4.r.push_back((Fp)(binom(4, a) % 3));
    auto d = decompose_coproduct(mu4, 3);
    CHECK(d.accepted);
    CHECK(d.r_n == 1);
    CHECK(d.t == 0);

    CoproductTable steenrod{6, {1, 0, 0, 0, 0}};
    auto s = decompose_coproduct(steenrod, 5);
    CHECK(s.accepted);
    REQUIRE(s.skew_pair);
    CHECK(*s.skew_pair == std::pair<std::uint64_t, std::uint64_t>{1, 5});
    CHECK(s.t == 1);
    CHECK(s.r_n == 0);

    CoproductTable bad{4, {0, 1, 0}};
    auto b = decompose_coproduct(bad, 3);
    CHECK_FALSE(b.accepted);
    REQUIRE(b.failing);
    CHECK(*b.failing == std::make_tuple<std::uint64_t, std::uint64_t, std::uint64_t>(1, 1, 2));

    auto round = compose_coproduct(10, 3, 2, 0, 1);
    auto back = decompose_coproduct(round, 3);
    CHECK(back.accepted);
    CHECK(back.r_n == 2);
    CHECK(back.t == 1);
}

TEST_CASE("cube coproducts")
{
    using Mono = CubeElement::Mono;
    Fp p = 5;
    auto mu = [&](int w, std::uint32_t e) { return CubeElement::monomial({1, 2}, {}, p, Mono{{{w, -1}, e}}); };
    CubeElement split = cube_psi(1, mu(1, 1));
    CubeElement expect({1, 2}, {1}, p);
    expect.add_term(Mono{{{1, 0}, 1}}, 1);
    expect.add_term(Mono{{{1, 1}, 1}}, 1);
    CHECK(split == expect);
    CHECK(cube_psi(1, mu(2, 1)) == CubeElement::monomial({1, 2}, {1}, p, Mono{{{2, -1}, 1}}));

    CubeElement sq({1, 2}, {1}, p);
    sq.add_term(Mono{{{1, 0}, 2}}, 1);
    sq.add_term(Mono{{{1, 0}, 1}, {{1, 1}, 1}}, 2);
    sq.add_term(Mono{{{1, 1}, 2}}, 1);
    CHECK(cube_psi(1, mu(1, 2)) == sq);

    auto mm = CubeElement::monomial({1, 2}, {}, p, Mono{{{1, -1}, 1}, {{2, -1}, 1}});
    auto both = cube_psi_seq({1, 2}, mm);
    CHECK(both.terms().size() == 4);
    CHECK(both == cube_psi_seq({2, 1}, mm));
    CHECK(cube_psi_seq({1}, mm) == cube_psi(1, mm));
    CHECK(cube_order_check({1, 2, 3}, 20, 5).passed);
    CHECK(cube_order_check({1, 2}, 30, 3).passed);
}

TEST_CASE("pushout dimensions")
{
    CHECK(pushout_dimension_check({1, 2}, {}, 1, 20, 3).passed);
    CHECK(pushout_dimension_check({1, 2, 3}, {2}, 1, 16, 5).passed);
}

TEST_CASE("multifold solution spaces")
{
    for (std::size_t S = 1; S <= 3; ++S) {
        auto sp = multifold_solution_space(S, 2 * 9, 3);
        CHECK(sp.check.passed);
        CHECK(sp.families_in_kernel);
        CHECK(sp.family_rank == sp.kernel_dim);
        for (const auto& v : sp.kernel)
            CHECK(sp.is_solution(v));
    }
    auto sp = multifold_solution_space(2, 2 * 7, 3);
    CHECK(sp.matches);
    auto probe = multifold_solution_space(2, 14, 3);
    auto block = p_power_block(probe, 1, {4, 3}, 3);
    CHECK_FALSE(probe.is_solution(block));
    CHECK_THROWS_AS(multifold_solution_space(2, 100, 3), UnsupportedError);
}
