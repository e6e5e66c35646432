#include "doctest.h"

#include "thhcalc/torus_model.hpp"

#include <set>

using namespace thh;

namespace {

Element gen(const TorusAlgebra& T, const std::string& label, std::uint32_t e = 1, Fp c = 1)
{
    return Element::of(Monomial::gen(T.spec().index_of(label), e), T.prime(), c);
}

std::vector<std::size_t> naive_convolve(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b)
{
    std::vector<std::size_t> out(a.size(), 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; i + j < a.size(); ++j)
            out[i + j] += a[i] * b[j];
    return out;
}

}  // namespace

TEST_CASE("torus algebra generators")
{
    auto T1 = TorusAlgebra::build(1, 3, 12);
    REQUIRE(T1.spec().size() == 1);
    CHECK(T1.spec().generator(0).label == "μ₁");
    CHECK(T1.spec().generator(0).kind == GenKind::Polynomial);

    auto T2 = TorusAlgebra::build(2, 3, 12);
    std::set<std::string> labels;
    for (const auto& g : T2.spec().generators())
        labels.insert(g.label);
    CHECK(labels == std::set<std::string>{"μ₁", "μ₂", "ρ₂μ₁"});
    CHECK(T2.spec().generator(T2.spec().index_of("ρ₂μ₁")).kind == GenKind::Exterior);

    auto K = TorusAlgebra::build(2, 5, 9, SteenrodSpec::omit_tau(1));
    CHECK(K.v_degree() == 8);
    CHECK(K.tau_index(0).has_value());
    CHECK_FALSE(K.tau_index(1).has_value());
    CHECK(K.xi_index(1).has_value());
}

TEST_CASE("sigma examples")
{
    auto T = TorusAlgebra::build(2, 5, 30, SteenrodSpec::full());
    CHECK(sigma(2, gen(T, "μ₁"), T) == gen(T, "ρ₂μ₁"));
    Element sq = sigma(2, gen(T, "μ₁", 2), T);
    Element expect = multiply(gen(T, "μ₁", 1, 2), gen(T, "ρ₂μ₁"), T.spec());
    CHECK(sq == expect);
    CHECK(sigma(1, gen(T, "τ̄0"), T) == gen(T, "μ₁"));
    CHECK(sigma(2, gen(T, "τ̄1"), T) == gen(T, "μ₂", 5));
    CHECK(sigma(1, gen(T, "ξ̄1"), T).is_zero());
    CHECK(sigma(2, Element::one(5), T).is_zero());
    CHECK_THROWS_AS(sigma(1, gen(T, "μ₁"), T), UnsupportedError);
    CHECK_THROWS_AS(sigma(2, gen(T, "ρ₂μ₁"), T), UnsupportedError);

    auto small = TorusAlgebra::build(2, 5, 2);
    CHECK_THROWS_AS(sigma(2, gen(small, "μ₁"), small), OverflowError);
}

TEST_CASE("sigma at p = 3 kills mu^3")
{
    auto T = TorusAlgebra::build(2, 3, 20);
    CHECK(sigma(2, gen(T, "μ₁", 3), T).is_zero());
}

TEST_CASE("projections")
{
    auto T = TorusAlgebra::build(2, 3, 20);
    Element rho = gen(T, "ρ₂μ₁");
    CHECK(project_subtorus({1}, rho, T).is_zero());
    CHECK(project_subtorus({1}, gen(T, "μ₁", 3), T) == gen(T, "μ₁", 3));
    Element one_plus = Element::one(3) + gen(T, "μ₁");
    CHECK(project_subtorus({}, one_plus, T) == Element::one(3));
    CHECK(project_sphere(rho, T) == rho);
    CHECK(project_sphere(multiply(gen(T, "μ₁"), rho, T.spec()), T).is_zero());
    CHECK(project_sphere(Element::one(3), T) == Element::one(3));

    CHECK(in_p_ideal(rho, T));
    CHECK_FALSE(in_p_ideal(multiply(gen(T, "μ₁"), gen(T, "μ₂"), T.spec()), T));
    auto T5 = TorusAlgebra::build(2, 5, 20);
    Element s = sigma(2, gen(T5, "μ₁", 3), T5);
    CHECK(s == multiply(gen(T5, "μ₁", 2, 3), gen(T5, "ρ₂μ₁"), T5.spec()));
    CHECK(in_p_ideal(s, T5));
}

TEST_CASE("projection composition")
{
    auto T = TorusAlgebra::build(3, 3, 14);
    std::mt19937_64 rng(5);
    std::vector<std::vector<int>> subsets = {{}, {1}, {2}, {1, 2}, {1, 3}, {2, 3}, {1, 2, 3}};
    for (int t = 2; t <= 14; ++t) {
        Element a = random_homogeneous(T.spec(), t, rng);
        for (const auto& V : subsets)
            for (const auto& W : subsets) {
                std::vector<int> both;
                std::set_intersection(V.begin(), V.end(), W.begin(), W.end(), std::back_inserter(both));
                CHECK(project_subtorus(V, project_subtorus(W, a, T), T) == project_subtorus(both, a, T));
            }
    }
}

TEST_CASE("N_delta degree sets")
{
    const std::uint32_t p = 3;
    const std::uint64_t D = 60;
    auto single = n_delta_degrees({4}, {{4}}, D, p);
    CHECK(single == std::set<std::uint64_t>{2, 6, 18, 54});

    std::set<std::uint64_t> pairs;
    for (std::uint64_t a : {1, 3, 9, 27})
        for (std::uint64_t b : {1, 3, 9, 27})
            if (2 * (a + b) <= D)
                pairs.insert(2 * (a + b));
    CHECK(n_delta_degrees({1, 2}, {{1}, {2}}, D, p) == pairs);
    auto with_top = pairs;
    with_top.insert(3);
    CHECK(n_delta_degrees({1, 2}, {{1}, {2}, {1, 2}}, D, p) == with_top);
    CHECK_THROWS_AS(n_delta_degrees({1, 2}, {{1, 2}}, D, p), ContractError);
}

TEST_CASE("Poincare series of L(T^n) factors over subsets")
{
    for (std::uint32_t p : {3u, 5u}) {
        const int D = 4 * (int)p;
        for (int n = 1; n <= 3; ++n) {
            std::vector<std::size_t> expect(D + 1, 0);
            expect[0] = 1;
            // C(n,k) copies of B_k
            for (int k = 1; k <= n; ++k) {
                int copies = 1;
                for (int i = 0; i < k; ++i)
                    copies = copies * (n - i) / (i + 1);
                auto b = poincare_series(b_n_spec(k, D, p), D);
                for (int c = 0; c < copies; ++c)
                    expect = naive_convolve(expect, b);
            }
            CHECK(poincare_series(TorusAlgebra::build(n, p, D).spec(), D) == expect);
            CHECK(torus_poincare_check(n, p, D).passed);
        }
    }
}

TEST_CASE("sigma contract checks")
{
    for (std::uint32_t p : {3u, 5u}) {
        CHECK(sigma_image_check(2, p, 2 * (int)(p * p)).passed);
        CHECK(sigma_image_check(3, p, 6 * (int)p).passed);
        CHECK(sigma_derivation_check(2, p, 6 * (int)p, 300, 17).passed);
        CHECK(sigma_derivation_check(3, p, 6 * (int)p, 300, 18).passed);
    }
}

TEST_CASE("multifold primitive degrees")
{
    CHECK(multifold_primitive_degree_check(3, 5, 50).passed);
    CHECK(multifold_primitive_degree_check(2, 3, 50).passed);
    CHECK(proper_subsets(3).size() == 6);
}
