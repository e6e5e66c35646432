#include "doctest.h"

#include "thhcalc/graded_hopf.hpp"

using namespace thh;

namespace {

AlgebraSpec one_gen(Fp p, int D, const std::string& label, int deg, GenKind kind, int height = 0)
{
    AlgebraSpec s(p, D);
    s.add_generator({label, deg, kind, height});
    return s;
}

// series of one generator: exponents allowed by its kind
std::vector<std::size_t> gen_series(const GeneratorSpec& g, Fp p, int D)
{
    std::vector<std::size_t> s(D + 1, 0);
    int cap = g.kind == GenKind::Exterior ? 1 : g.kind == GenKind::Truncated ? (g.height ? g.height : (int)p) - 1 : D;
    for (int e = 0; e <= cap && e * g.degree <= D; ++e)
        s[e * g.degree] = 1;
    return s;
}

std::vector<std::size_t> product_series(const AlgebraSpec& spec, int D)
{
    std::vector<std::size_t> acc(D + 1, 0);
    acc[0] = 1;
    for (const auto& g : spec.generators()) {
        auto s = gen_series(g, spec.prime(), D);
        std::vector<std::size_t> next(D + 1, 0);
        for (int i = 0; i <= D; ++i)
            for (int j = 0; i + j <= D; ++j)
                next[i + j] += acc[i] * s[j];
        acc.swap(next);
    }
    return acc;
}

}  // namespace

TEST_CASE("spec validation")
{
    AlgebraSpec s(3, 10);
    CHECK_THROWS_AS(s.add_generator({"y", 2, GenKind::Exterior, 0}), ContractError);
    CHECK_THROWS_AS(s.add_generator({"x", 3, GenKind::Polynomial, 0}), ContractError);
    CHECK_THROWS_AS(s.add_generator({"x", 0, GenKind::Polynomial, 0}), ContractError);
    s.add_generator({"w", 2, GenKind::Truncated, 0});
    CHECK(s.generator(0).height == 3);
    CHECK_THROWS_AS(s.add_generator({"w", 4, GenKind::Polynomial, 0}), ContractError);
}

TEST_CASE("products")
{
    auto g = one_gen(5, 20, "x", 2, GenKind::DividedPower);
    Element x = Element::of(Monomial::gen(0), 5);
    CHECK(multiply(x, x, g) == Element::of(Monomial::gen(0, 2), 5, 2));

    AlgebraSpec e(3, 20);
    e.add_generator({"y1", 3, GenKind::Exterior, 0});
    e.add_generator({"y2", 5, GenKind::Exterior, 0});
    Element y1 = Element::of(Monomial::gen(0), 3), y2 = Element::of(Monomial::gen(1), 3);
    CHECK(multiply(y1, y1, e).is_zero());
    CHECK(multiply(y1, y2, e) == multiply(y2, y1, e).scaled(2));

    auto t = one_gen(3, 20, "w", 2, GenKind::Truncated);
    Element w = Element::of(Monomial::gen(0), 3);
    CHECK(!power(w, 2, t).is_zero());
    CHECK(power(w, 3, t).is_zero());

    auto small = one_gen(3, 4, "x", 2, GenKind::Polynomial);
    Element mu = Element::of(Monomial::gen(0), 3);
    CHECK_THROWS_AS(power(mu, 3, small), OverflowError);
    CHECK(power(mu, 3, small, Overflow::Truncate).is_zero());
}

TEST_CASE("coproducts")
{
    auto g = one_gen(3, 20, "x", 2, GenKind::DividedPower);
    auto psi = coproduct(Monomial::gen(0, 2), g);
    TensorSquareElement expect(3);
    expect.add_term(Monomial(), Monomial::gen(0, 2), 1);
    expect.add_term(Monomial::gen(0), Monomial::gen(0), 1);
    expect.add_term(Monomial::gen(0, 2), Monomial(), 1);
    CHECK(psi == expect);

    auto e = one_gen(3, 20, "y", 3, GenKind::Exterior);
    TensorSquareElement prim(3);
    prim.add_term(Monomial::gen(0), Monomial(), 1);
    prim.add_term(Monomial(), Monomial::gen(0), 1);
    CHECK(coproduct(Monomial::gen(0), e) == prim);

    auto pm = one_gen(5, 20, "mu", 2, GenKind::Polynomial);
    TensorSquareElement sq(5);
    sq.add_term(Monomial::gen(0, 2), Monomial(), 1);
    sq.add_term(Monomial::gen(0), Monomial::gen(0), 2);
    sq.add_term(Monomial(), Monomial::gen(0, 2), 1);
    CHECK(coproduct(Monomial::gen(0, 2), pm) == sq);
    CHECK(counit(Element::one(5)) == 1);
}

TEST_CASE("bases and Poincare series")
{
    auto pm = one_gen(3, 6, "mu", 2, GenKind::Polynomial);
    CHECK(basis(pm, 6) == std::vector<Monomial>{Monomial::gen(0, 3)});
    CHECK(poincare_series(pm, 6) == std::vector<std::size_t>{1, 0, 1, 0, 1, 0, 1});

    AlgebraSpec ym(3, 10);
    ym.add_generator({"y", 3, GenKind::Exterior, 0});
    ym.add_generator({"mu", 2, GenKind::Polynomial, 0});
    CHECK(basis(ym, 5) == std::vector<Monomial>{Monomial({{0, 1}, {1, 1}})});

    auto rm = one_gen(3, 6, "rm", 3, GenKind::Exterior);
    CHECK(poincare_series(rm, 6) == std::vector<std::size_t>{1, 0, 0, 1, 0, 0, 0});
    auto gx = one_gen(3, 12, "x", 4, GenKind::DividedPower);
    CHECK(basis(gx, 8) == std::vector<Monomial>{Monomial::gen(0, 2)});
    CHECK(poincare_series(gx, 12) == std::vector<std::size_t>{1, 0, 0, 0, 1, 0, 0, 0, 1, 0, 0, 0, 1});
}

TEST_CASE("Poincare series against the product of one-generator series")
{
    for (Fp p : {3u, 5u}) {
        AlgebraSpec s(p, 40);
        s.add_generator({"a", 2, GenKind::Polynomial, 0});
        s.add_generator({"b", 3, GenKind::Exterior, 0});
        s.add_generator({"c", 4, GenKind::DividedPower, 0});
        s.add_generator({"d", 6, GenKind::Truncated, 0});
        s.add_generator({"e", 2, GenKind::Truncated, 4});
        s.add_generator({"f", 7, GenKind::Exterior, 0});
        CHECK(poincare_series(s, 40) == product_series(s, 40));
    }
}

TEST_CASE("primitives")
{
    auto gx = one_gen(3, 12, "x", 4, GenKind::DividedPower);
    CHECK(primitive_basis(gx, 8).empty());
    CHECK(primitive_basis(gx, 4).size() == 1);
    for (Fp p : {3u, 5u}) {
        auto pm = one_gen(p, 4 * (int)p * (int)p, "mu", 2, GenKind::Polynomial);
        auto prim = primitive_basis(pm, 2 * (int)p);
        REQUIRE(prim.size() == 1);
        CHECK(prim[0].terms().begin()->first == Monomial::gen(0, p));
        // only mu^{p^j}
        for (int t = 2; t <= 4 * (int)p * (int)p; t += 2) {
            bool power = t == 2 || t == 2 * (int)p || t == 2 * (int)(p * p);
            CHECK(primitive_basis(pm, t).size() == (power ? 1u : 0u));
        }
    }
    auto rm = one_gen(3, 6, "rm", 3, GenKind::Exterior);
    CHECK(primitive_basis(rm, 3).size() == 1);
}

TEST_CASE("indecomposables")
{
    auto pm = one_gen(3, 10, "mu", 2, GenKind::Polynomial);
    auto d = indecomposable_dims(pm, 10);
    for (int t = 0; t <= 10; ++t)
        CHECK(d[t] == (t == 2 ? 1u : 0u));
    auto gx = one_gen(3, 18, "x", 2, GenKind::DividedPower);
    auto dg = indecomposable_dims(gx, 18);
    for (int t = 0; t <= 18; ++t)
        CHECK(dg[t] == ((t == 2 || t == 6 || t == 18) ? 1u : 0u));
    auto ey = one_gen(5, 12, "y", 5, GenKind::Exterior);
    auto de = indecomposable_dims(ey, 12);
    for (int t = 0; t <= 12; ++t)
        CHECK(de[t] == (t == 5 ? 1u : 0u));
}

TEST_CASE("dualize")
{
    AlgebraSpec s(3, 30);
    s.add_generator({"x", 3, GenKind::Exterior, 0});
    s.add_generator({"y", 4, GenKind::DividedPower, 0});
    auto d = dualize(s);
    REQUIRE(d.size() == 2);
    CHECK(d.generator(0).kind == GenKind::Exterior);
    CHECK(d.generator(1).kind == GenKind::Polynomial);
    CHECK(d.generator(1).degree == 4);
    CHECK(poincare_series(d, 30) == poincare_series(s, 30));
    CHECK_THROWS(dualize(one_gen(3, 10, "m", 2, GenKind::Polynomial)));
}

TEST_CASE("JSON round trip")
{
    AlgebraSpec s(5, 22);
    s.add_generator({"x", 3, GenKind::Exterior, 0});
    s.add_generator({"w", 2, GenKind::Truncated, 25});
    auto back = spec_from_json(to_json(s));
    CHECK(back.prime() == 5);
    CHECK(back.degree_bound() == 22);
    CHECK(back.generator(1).height == 25);
    CHECK(to_json(back) == to_json(s));
}

TEST_CASE("property suite on small algebras")
{
    for (Fp p : {3u, 5u}) {
        AlgebraSpec s(p, 16);
        s.add_generator({"x", 2, GenKind::Polynomial, 0});
        s.add_generator({"y", 3, GenKind::Exterior, 0});
        s.add_generator({"z", 4, GenKind::DividedPower, 0});
        auto r = hopf_property_suite(s, 200, 3);
        CHECK(r.passed);
        CHECK(r.details["cases_by_property"]["frobenius"] == 200);
    }
    // x^4 = 0 is not a Hopf ideal for a primitive x at p = 3
    AlgebraSpec bad(3, 12);
    bad.add_generator({"w", 2, GenKind::Truncated, 4});
    auto r = hopf_property_suite(bad, 100, 1);
    CHECK(r.details.contains("multiplicativity"));
}
