#include "thhcalc/arith.hpp"
#include "thhcalc/graded_hopf.hpp"

#include <tuple>

namespace thh {

Element random_homogeneous(const AlgebraSpec& spec, int t, std::mt19937_64& rng)
{
    const Fp p = spec.prime();
    Element a(p);
    auto mons = monomials_of_degree(spec, t);
    if (mons.empty())
        return a;
    while (a.is_zero())
        for (const auto& m : mons)
            a.add_term(m, (Fp)(rng() % p));
    return a;
}

namespace {

using Cube = std::map<std::tuple<Monomial, Monomial, Monomial>, Fp>;

// (psi (x) id) psi  when left, else (id (x) psi) psi
Cube iterated_coproduct(const Element& a, const AlgebraSpec& spec, bool left)
{
    const Field& F = spec.field();
    Cube out;
    const auto psi = coproduct(a, spec);
    for (const auto& [k, c] : psi.terms()) {
        const Monomial& split = left ? k.first : k.second;
        const auto inner = coproduct(split, spec);
        for (const auto& [kk, cc] : inner.terms()) {
            auto key = left ? std::make_tuple(kk.first, kk.second, k.second)
                            : std::make_tuple(k.first, kk.first, kk.second);
            Fp& slot = out[key];
            slot = F.add(slot, F.mul(c, cc));
            if (slot == 0)
                out.erase(key);
        }
    }
    return out;
}

// m^p by the exponent rule: polynomial exponents scale by p, truncated ones
// survive below the height, everything else dies
std::optional<Monomial> frobenius_monomial(const Monomial& m, const AlgebraSpec& spec)
{
    const std::uint32_t p = spec.prime();
    std::vector<Monomial::Factor> f;
    for (auto [g, e] : m.factors()) {
        const auto& gs = spec.generator(g);
        if (gs.kind == GenKind::Polynomial)
            f.push_back({g, e * p});
        else if (gs.kind == GenKind::Truncated && e * p < (std::uint32_t)(gs.height ? gs.height : (int)p))
            f.push_back({g, e * p});
        else
            return std::nullopt;
    }
    return Monomial(f);
}

std::vector<int> positive_degrees(const AlgebraSpec& spec, int D)
{
    std::vector<int> out;
    auto dims = poincare_series(spec, D);
    for (int t = 1; t <= D; ++t)
        if (dims[t])
            out.push_back(t);
    return out;
}

// a degree from `pool` that is at most `room`, or 0
int pick(const std::vector<int>& pool, int room, std::mt19937_64& rng)
{
    auto end = std::upper_bound(pool.begin(), pool.end(), room);
    std::size_t n = end - pool.begin();
    return n ? pool[rng() % n] : 0;
}

}  // namespace

CheckReport hopf_property_suite(const AlgebraSpec& spec, std::size_t trials, std::uint64_t seed)
{
    CheckReport r;
    r.id = "graded_hopf.properties";
    r.statement = "associativity, graded commutativity, coassociativity, psi(ab) = psi(a)psi(b), counit, "
                  "Frobenius, duality dims and the divided power splitting";
    r.params = {{"spec", to_json(spec)}, {"trials", trials}, {"seed", seed}};
    const int D = spec.degree_bound();
    const Field& F = spec.field();
    const std::uint32_t p = spec.prime();
    std::mt19937_64 rng(seed);
    auto pool = positive_degrees(spec, D);
    if (pool.empty()) {
        r.fail("no positive degree within the bound");
        return r;
    }
    auto sign = [&](int da, int db) { return (da % 2 && db % 2) ? F.neg(1) : (Fp)1; };
    std::map<std::string, std::size_t> counts;
    // x^h = 0 is compatible with a primitive x only for h a power of p
    bool bialgebra = true;
    for (const auto& g : spec.generators())
        if (g.kind == GenKind::Truncated && !is_power_of((std::uint64_t)g.height, p))
            bialgebra = false;
    if (!bialgebra)
        r.details["multiplicativity"] = "skipped: a truncation height is not a power of p";

    for (std::size_t i = 0; i < trials; ++i) {
        int ta = pick(pool, D, rng), tb = pick(pool, D - ta, rng), tc = pick(pool, D - ta - tb, rng);
        Element a = random_homogeneous(spec, ta, rng), b = random_homogeneous(spec, tb, rng),
                c = random_homogeneous(spec, tc, rng);
        Element ab = multiply(a, b, spec);

        ++counts["associativity"];
        if (!(multiply(ab, c, spec) == multiply(a, multiply(b, c, spec), spec)))
            r.fail("associativity fails on degrees " + std::to_string(ta) + "," + std::to_string(tb) + "," +
                   std::to_string(tc));

        ++counts["commutativity"];
        if (!(ab == multiply(b, a, spec).scaled(sign(ta, tb))))
            r.fail("graded commutativity fails: a = " + to_string(a, spec) + ", b = " + to_string(b, spec));

        if (bialgebra && ++counts["multiplicativity"] &&
            !(coproduct(ab, spec) == multiply(coproduct(a, spec), coproduct(b, spec), spec)))
            r.fail("psi(ab) != psi(a)psi(b): a = " + to_string(a, spec) + ", b = " + to_string(b, spec));

        ++counts["coassociativity"];
        if (iterated_coproduct(a, spec, true) != iterated_coproduct(a, spec, false))
            r.fail("coassociativity fails on " + to_string(a, spec));

        ++counts["counit"];
        Element left(p), right(p);
        const auto psi = coproduct(a, spec);
        for (const auto& [k, cc] : psi.terms()) {
            if (k.second.is_one())
                left.add_term(k.first, cc);
            if (k.first.is_one())
                right.add_term(k.second, cc);
        }
        if (!(left == a) || !(right == a))
            r.fail("counit fails on " + to_string(a, spec));
    }

    // basis monomials for coassociativity, all of them
    for (int t = 1; t <= D; ++t)
        for (const auto& m : monomials_of_degree(spec, t)) {
            ++counts["coassociativity"];
            Element e = Element::of(m, p);
            if (iterated_coproduct(e, spec, true) != iterated_coproduct(e, spec, false))
                r.fail("coassociativity fails on " + to_string(m, spec));
        }

    std::vector<int> even;
    for (int t : pool)
        if (t % 2 == 0)
            even.push_back(t);
    if (!even.empty()) {
        AlgebraSpec wide = spec;
        wide.set_degree_bound(D * (int)p);
        for (std::size_t i = 0; i < trials; ++i) {
            Element a = random_homogeneous(spec, even[rng() % even.size()], rng);
            Element expect(p);
            for (const auto& [m, c] : a.terms())
                if (auto fm = frobenius_monomial(m, spec))
                    expect.add_term(*fm, c);  // c^p = c
            ++counts["frobenius"];
            if (!(power(a, p, wide) == expect))
                r.fail("a^p differs from the Frobenius expansion for a = " + to_string(a, spec));
        }
    }

    bool dualizable = true, has_dp = false;
    for (const auto& g : spec.generators()) {
        dualizable = dualizable && (g.kind == GenKind::Exterior || g.kind == GenKind::DividedPower);
        has_dp = has_dp || g.kind == GenKind::DividedPower;
    }
    if (dualizable) {
        ++counts["duality"];
        if (poincare_series(dualize(spec), D) != poincare_series(spec, D))
            r.fail("dualize changes the Poincare series");
    }
    if (has_dp)
        for (std::size_t g = 0; g < spec.size(); ++g) {
            const auto& gs = spec.generator(g);
            if (gs.kind != GenKind::DividedPower)
                continue;
            AlgebraSpec gamma(p, D), split(p, D);
            gamma.add_generator({"x", gs.degree, GenKind::DividedPower, 0});
            for (std::uint64_t q = 1; (std::uint64_t)gs.degree * q <= (std::uint64_t)D; q *= p)
                split.add_generator({"g" + std::to_string(q), (int)(gs.degree * q), GenKind::Truncated, (int)p});
            ++counts["divided_power_splitting"];
            if (poincare_series(gamma, D) != poincare_series(split, D))
                r.fail("Gamma(" + gs.label + ") and its truncated splitting differ in dimension");
        }

    for (const auto& [k, v] : counts)
        r.cases += v;
    r.details["cases_by_property"] = counts;
    return r;
}

}  // namespace thh
