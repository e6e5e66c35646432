#include "thhcalc/torus_model.hpp"

#include "thhcalc/arith.hpp"

#include <algorithm>
#include <functional>

namespace thh {

std::vector<std::vector<int>> proper_subsets(int n)
{
    std::vector<std::vector<int>> out;
    for (unsigned mask = 1; mask + 1 < (1u << n); ++mask) {
        std::vector<int> U;
        for (int i = 0; i < n; ++i)
            if (mask & (1u << i))
                U.push_back(i + 1);
        out.push_back(U);
    }
    return out;
}

namespace {

std::vector<std::vector<int>> all_subsets(int n)
{
    auto out = proper_subsets(n);
    std::vector<int> top;
    for (int i = 1; i <= n; ++i)
        top.push_back(i);
    out.push_back(top);
    return out;
}

// by size, then lexicographically
void sort_family(std::vector<std::vector<int>>& f)
{
    std::sort(f.begin(), f.end(), [](const auto& a, const auto& b) {
        return a.size() != b.size() ? a.size() < b.size() : a < b;
    });
}

}  // namespace

TorusAlgebra TorusAlgebra::build(int n, std::uint32_t p, int D, SteenrodSpec steenrod)
{
    if (n < 1)
        throw ContractError("TorusAlgebra: n must be at least 1");
    TorusAlgebra T = build_delta(all_subsets(n), p, D, steenrod);
    T.n_ = n;
    return T;
}

TorusAlgebra TorusAlgebra::build_delta(const std::vector<std::vector<int>>& family, std::uint32_t p, int D,
                                       SteenrodSpec steenrod)
{
    TorusAlgebra T(p, D);
    T.family_ = family;
    for (const auto& U : T.family_) {
        if (U.empty())
            throw ContractError("TorusAlgebra: label sets must be nonempty");
        for (std::size_t i = 1; i < U.size(); ++i)
            if (!(U[i - 1] < U[i]))
                throw ContractError("TorusAlgebra: label sets must be strictly increasing");
        if (U.front() < 1)
            throw ContractError("TorusAlgebra: labels start at 1");
        T.n_ = std::max(T.n_, U.back());
    }
    sort_family(T.family_);
    if (std::adjacent_find(T.family_.begin(), T.family_.end()) != T.family_.end())
        throw ContractError("TorusAlgebra: repeated label set");

    for (const auto& U : T.family_) {
        AlgebraSpec part = b_labeled_spec(U, D, p);
        auto words = labeled_monic(U, D, p);
        for (std::size_t i = 0; i < words.size(); ++i) {
            std::size_t g = T.spec_.add_generator(part.generator(i));
            T.info_.push_back({TorusGenerator::Kind::Word, words[i], U, 0});
            T.words_.emplace(words[i], g);
        }
    }
    T.add_steenrod(steenrod);
    return T;
}

void TorusAlgebra::add_steenrod(SteenrodSpec s)
{
    steenrod_ = s;
    if (s.mode == SteenrodMode::None)
        return;
    const std::uint32_t p = prime();
    const int D = degree_bound();
    for (int i = 1; sat_mul(2, ipow(p, i)) - 2 <= (std::uint64_t)D; ++i) {
        std::size_t g = spec_.add_generator({"ξ̄" + std::to_string(i), (int)(2 * ipow(p, i) - 2), GenKind::Polynomial, 0});
        info_.push_back({TorusGenerator::Kind::Xi, std::nullopt, {}, i});
        xi_.emplace(i, g);
    }
    for (int i = 0; sat_mul(2, ipow(p, i)) - 1 <= (std::uint64_t)D; ++i) {
        if (s.mode == SteenrodMode::OmitTau && i == s.omit)
            continue;
        std::size_t g = spec_.add_generator({"τ̄" + std::to_string(i), (int)(2 * ipow(p, i) - 1), GenKind::Exterior, 0});
        info_.push_back({TorusGenerator::Kind::Tau, std::nullopt, {}, i});
        tau_.emplace(i, g);
    }
}

int TorusAlgebra::v_degree() const
{
    if (steenrod_.mode != SteenrodMode::OmitTau)
        return 0;
    return (int)(2 * ipow(prime(), steenrod_.omit) - 2);
}

std::optional<std::size_t> TorusAlgebra::word_index(const AdmissibleWord& w) const
{
    auto it = words_.find(w);
    if (it == words_.end())
        return std::nullopt;
    return it->second;
}

std::optional<std::size_t> TorusAlgebra::mu_index(int label) const
{
    return word_index(AdmissibleWord({Letter::mu()}, {label}));
}

std::optional<std::size_t> TorusAlgebra::xi_index(int i) const
{
    auto it = xi_.find(i);
    return it == xi_.end() ? std::nullopt : std::optional<std::size_t>(it->second);
}

std::optional<std::size_t> TorusAlgebra::tau_index(int i) const
{
    auto it = tau_.find(i);
    return it == tau_.end() ? std::nullopt : std::optional<std::size_t>(it->second);
}

namespace {

std::size_t require(const std::optional<std::size_t>& g, const char* what)
{
    if (!g)
        throw OverflowError(std::string("sigma: image generator outside the degree range: ") + what);
    return *g;
}

// sigma(gamma_{p^k} z) for an even monic word z = rho^0 z' or phi^0 z'
AdmissibleWord sigma_word_power(int v, const AdmissibleWord& z, int k)
{
    std::vector<Letter> ls = z.letters();
    ls[0].k = k;
    ls.insert(ls.begin(), Letter::rho());
    std::vector<int> lb = z.labels();
    lb.insert(lb.begin(), v);
    return AdmissibleWord(std::move(ls), std::move(lb));
}

}  // namespace

Element sigma_generator(int v, std::size_t g, std::uint32_t e, const TorusAlgebra& T)
{
    const Fp p = T.prime();
    const Field& F = T.spec().field();
    const TorusGenerator& info = T.info(g);
    Element out(p);
    if (e == 0)
        return out;
    switch (info.kind) {
    case TorusGenerator::Kind::Xi:
        return out;
    case TorusGenerator::Kind::Tau: {
        std::size_t mu = require(T.mu_index(v), "mu_v");
        auto pw = ipow(p, info.index);
        if (sat_mul(2, pw) > (std::uint64_t)T.degree_bound())
            throw OverflowError("sigma: mu_v power outside the degree range");
        out.add_term(Monomial::gen(mu, (std::uint32_t)pw), 1);
        return out;
    }
    case TorusGenerator::Kind::Word:
        break;
    }
    if (info.labels.back() >= v)
        throw UnsupportedError("sigma_v is only defined on labels smaller than v");
    const AdmissibleWord& z = *info.word;
    const GeneratorSpec& gs = T.spec().generator(g);
    switch (gs.kind) {
    case GenKind::Polynomial: {
        // e mu^{e-1} rho_v mu
        std::size_t img = require(T.word_index(z.prepend(Letter::rho(), v)), "rho_v mu");
        Fp c = F.reduce(e);
        if (c == 0)
            return out;
        Element a = Element::of(e > 1 ? Monomial::gen(g, e - 1) : Monomial(), p, c);
        return multiply(a, Element::of(Monomial::gen(img), p), T.spec());
    }
    case GenKind::Exterior: {
        std::size_t img = require(T.word_index(z.prepend(Letter::rho_k(0), v)), "rho^0_v y");
        out.add_term(Monomial::gen(img), 1);
        return out;
    }
    case GenKind::DividedPower: {
        // sum over the nonzero base-p digits of e
        auto d = digits(e, p);
        for (unsigned k = 0; k < d.size(); ++k) {
            if (d[k] == 0)
                continue;
            std::size_t img = require(T.word_index(sigma_word_power(v, z, (int)k)), "rho_v rho^k z");
            std::uint32_t rest = e - (std::uint32_t)ipow(p, k);
            Element a = Element::of(rest ? Monomial::gen(g, rest) : Monomial(), p);
            out += multiply(a, Element::of(Monomial::gen(img), p), T.spec());
        }
        return out;
    }
    case GenKind::Truncated:
        break;
    }
    throw UnsupportedError("sigma: truncated generators are not part of the model");
}

Element sigma(int v, const Element& a, const TorusAlgebra& T)
{
    const Fp p = T.prime();
    const Field& F = T.spec().field();
    Element out(p);
    for (const auto& [m, c] : a.terms()) {
        const auto& fs = m.factors();
        int prefix_degree = 0;
        for (std::size_t i = 0; i < fs.size(); ++i) {
            std::vector<Monomial::Factor> pre(fs.begin(), fs.begin() + i), post(fs.begin() + i + 1, fs.end());
            Element s = sigma_generator(v, fs[i].first, fs[i].second, T);
            if (!s.is_zero()) {
                Element left = Element::of(Monomial(pre), p, (prefix_degree % 2) ? F.neg(c) : c);
                Element term = multiply(multiply(left, s, T.spec()), Element::of(Monomial(post), p), T.spec());
                out += term;
            }
            prefix_degree += T.spec().generator(fs[i].first).degree * (int)fs[i].second;
        }
    }
    return out;
}

namespace {

Element project_if(const Element& a, const std::function<bool(std::size_t)>& keep)
{
    Element out(a.prime());
    for (const auto& [m, c] : a.terms()) {
        bool ok = std::all_of(m.factors().begin(), m.factors().end(), [&](const auto& f) { return keep(f.first); });
        if (ok)
            out.add_term(m, c);
    }
    return out;
}

}  // namespace

Element project_subtorus(const std::vector<int>& V, const Element& a, const TorusAlgebra& T)
{
    std::vector<int> Vs = V;
    std::sort(Vs.begin(), Vs.end());
    return project_if(a, [&](std::size_t g) {
        const auto& info = T.info(g);
        if (info.kind != TorusGenerator::Kind::Word)
            return true;
        return std::includes(Vs.begin(), Vs.end(), info.labels.begin(), info.labels.end());
    });
}

Element project_sphere(const Element& a, const TorusAlgebra& T)
{
    return project_if(a, [&](std::size_t g) {
        const auto& info = T.info(g);
        return info.kind == TorusGenerator::Kind::Word && (int)info.labels.size() == T.n() &&
               info.labels.front() == 1 && info.labels.back() == T.n();
    });
}

bool in_p_ideal(const Element& a, const TorusAlgebra& T)
{
    return project_if(a, [&](std::size_t g) {
               const auto& info = T.info(g);
               return info.kind == TorusGenerator::Kind::Word && info.labels.size() == 1;
           })
        .is_zero();
}

std::set<std::uint64_t> n_delta_degrees(const std::vector<int>& S, const std::vector<std::vector<int>>& delta,
                                        std::uint64_t D, std::uint32_t p)
{
    std::set<std::vector<int>> fam;
    for (auto U : delta) {
        std::sort(U.begin(), U.end());
        if (!U.empty())
            fam.insert(U);
    }
    // closed under nonempty subsets
    for (const auto& U : fam)
        for (unsigned mask = 1; mask + 1 < (1u << U.size()); ++mask) {
            std::vector<int> sub;
            for (std::size_t i = 0; i < U.size(); ++i)
                if (mask & (1u << i))
                    sub.push_back(U[i]);
            if (!fam.count(sub))
                throw ContractError("n_delta_degrees: family is not saturated");
        }
    std::vector<int> Ss = S;
    std::sort(Ss.begin(), Ss.end());

    std::map<std::size_t, std::vector<std::uint64_t>> word_degrees;  // by block size
    auto block_degrees = [&](std::size_t size) -> const std::vector<std::uint64_t>& {
        auto it = word_degrees.find(size);
        if (it != word_degrees.end())
            return it->second;
        std::vector<std::uint64_t> ds;
        if (size == 1) {
            for (unsigned i = 0; sat_mul(2, ipow(p, i)) <= D; ++i)
                ds.push_back(2 * ipow(p, i));
        }
        else {
            for (const auto& w : enumerate_monic(size, D, p))
                ds.push_back(degree(w, p));
            std::sort(ds.begin(), ds.end());
            ds.erase(std::unique(ds.begin(), ds.end()), ds.end());
        }
        return word_degrees.emplace(size, std::move(ds)).first->second;
    };

    std::set<std::uint64_t> out;
    if (Ss.empty())
        return out;
    // partitions: the block holding the smallest remaining label is chosen first
    std::function<void(std::vector<int>, std::set<std::uint64_t>)> rec = [&](std::vector<int> rest,
                                                                             std::set<std::uint64_t> sums) {
        if (rest.empty()) {
            out.insert(sums.begin(), sums.end());
            return;
        }
        for (const auto& U : fam) {
            if (U.front() != rest.front() || !std::includes(rest.begin(), rest.end(), U.begin(), U.end()))
                continue;
            std::set<std::uint64_t> next;
            for (auto s : sums)
                for (auto d : block_degrees(U.size()))
                    if (s + d <= D)
                        next.insert(s + d);
            if (next.empty())
                continue;
            std::vector<int> left;
            std::set_difference(rest.begin(), rest.end(), U.begin(), U.end(), std::back_inserter(left));
            rec(left, next);
        }
    };
    rec(Ss, {0});
    return out;
}

CheckReport multifold_primitive_degree_check(int n, std::uint32_t p, std::uint64_t D)
{
    CheckReport r;
    r.id = "torus.multifold_primitive_degrees";
    r.statement = "degrees of products of primitives over proper label sets avoid -1 mod 2p, reach 0 mod 2p only "
                  "through mu-power products, and miss the shifted word degrees";
    r.params = {{"n", n}, {"p", p}, {"max_degree", D}};
    if (n < 1 || (std::uint64_t)n > p)
        throw ContractError("multifold_primitive_degree_check: requires 1 <= n <= p");
    std::vector<int> S;
    for (int i = 1; i <= n; ++i)
        S.push_back(i);
    auto delta = proper_subsets(n);
    auto degs = n_delta_degrees(S, delta, D, p);
    // all-singleton partitions only
    std::vector<std::vector<int>> singles;
    for (int i = 1; i <= n; ++i)
        singles.push_back({i});
    auto mu_degs = n_delta_degrees(S, singles, D, p);
    r.details["mu_product_degrees"] = mu_degs;
    // mixed partitions: every degree from a partition using a block of size >= 2
    std::set<std::uint64_t> mixed;
    for (const auto& U : delta) {
        if (U.size() < 2)
            continue;
        // U as one block, the rest split arbitrarily
        std::vector<int> rest;
        std::set_difference(S.begin(), S.end(), U.begin(), U.end(), std::back_inserter(rest));
        std::vector<std::vector<int>> sub_delta;
        for (const auto& W : delta)
            if (std::includes(rest.begin(), rest.end(), W.begin(), W.end()))
                sub_delta.push_back(W);
        std::set<std::uint64_t> rest_degs = rest.empty() ? std::set<std::uint64_t>{0}
                                                          : n_delta_degrees(rest, sub_delta, D, p);
        for (const auto& w : enumerate_monic(U.size(), D, p))
            for (auto s : rest_degs)
                if (s + degree(w, p) <= D)
                    mixed.insert(s + degree(w, p));
    }
    r.details["degrees"] = degs;
    const std::uint64_t m2p = 2ull * p;
    for (auto d : degs) {
        ++r.cases;
        if (d >= 2 * m2p && d % m2p == m2p - 1)
            r.fail("primitive-product degree " + std::to_string(d) + " is -1 mod 2p");
    }
    for (auto d : mixed) {
        ++r.cases;
        if (d >= 2 * m2p && d % m2p == 0)
            r.fail("degree " + std::to_string(d) + " = 0 mod 2p is reached by a product with a long word");
    }
    // shifted word degrees
    for (const auto& x : enumerate_admissible(n, D + 1, p)) {
        std::uint64_t dx = degree(x, p);
        if (n >= 2 && dx % m2p == 0 && dx >= 1) {
            ++r.cases;
            if (degs.count(dx - 1))
                r.fail("word " + to_string(x) + " of degree 0 mod 2p has |x|-1 among primitive degrees");
        }
    }
    for (const auto& z : enumerate_admissible(n, D / p, p)) {
        std::uint64_t dz = degree(z, p);
        if (dz % 2 == 0 && dz * p <= D) {
            ++r.cases;
            if (degs.count(dz * p))
                r.fail("even word " + to_string(z) + " has p-th power degree among primitive degrees");
        }
    }
    return r;
}

CheckReport torus_poincare_check(int n, std::uint32_t p, int D)
{
    CheckReport r;
    r.id = "torus.poincare_factorization";
    r.statement = "dimensions of the torus model factor over label sets and as skeleton times the top algebra";
    r.params = {{"n", n}, {"p", p}, {"max_degree", D}};
    auto T = TorusAlgebra::build(n, p, D);
    auto full = poincare_series(T.spec(), D);
    std::vector<std::size_t> prod(D + 1, 0);
    prod[0] = 1;
    for (const auto& U : all_subsets(n))
        prod = convolve(prod, poincare_series(b_n_spec(U.size(), D, p), D), D);
    std::vector<std::size_t> split;
    if (n == 1)
        split = poincare_series(b_n_spec(1, D, p), D);
    else {
        auto skel = TorusAlgebra::build_delta(proper_subsets(n), p, D);
        split = convolve(poincare_series(skel.spec(), D), poincare_series(b_n_spec(n, D, p), D), D);
    }
    r.details["model"] = full;
    r.details["product"] = prod;
    r.details["skeleton_times_top"] = split;
    for (int t = 0; t <= D; ++t) {
        ++r.cases;
        if (full[t] != prod[t] || full[t] != split[t])
            r.fail("degree " + std::to_string(t) + ": model " + std::to_string(full[t]) + ", product " +
                   std::to_string(prod[t]) + ", skeleton " + std::to_string(split[t]));
    }
    return r;
}

CheckReport sigma_image_check(int n, std::uint32_t p, int D)
{
    CheckReport r;
    r.id = "torus.sigma_images";
    r.statement = "sigma images of generators lie in the kernel of the projection to the mu-polynomial algebra, and "
                  "their sphere projections are the prefixed words";
    r.params = {{"n", n}, {"p", p}, {"max_degree", D}};
    if (n < 2)
        throw ContractError("sigma_image_check: n must be at least 2");
    auto T = TorusAlgebra::build(n, p, D + 1);
    for (std::size_t g = 0; g < T.spec().size(); ++g) {
        const auto& info = T.info(g);
        const auto& gs = T.spec().generator(g);
        if (gs.degree > D)
            continue;
        for (int v = info.labels.back() + 1; v <= n; ++v) {
            // g itself, and for divided powers the p-power divided powers within range
            std::vector<std::uint32_t> exps = {1};
            if (gs.kind == GenKind::DividedPower)
                for (std::uint32_t e = p; (long long)e * gs.degree <= D; e *= p)
                    exps.push_back(e);
            for (auto e : exps) {
                Element s = sigma_generator(v, g, e, T);
                ++r.cases;
                if (!in_p_ideal(s, T))
                    r.fail("sigma_" + std::to_string(v) + " of " + to_string(Monomial::gen(g, e), T.spec()) +
                           " leaves the ideal");
                if (v != n)
                    continue;
                // predicted sphere image: the prefixed word when the labels fill {1..n-1}, else zero
                Element expect(p);
                if ((int)info.labels.size() == n - 1) {
                    const AdmissibleWord& z = *info.word;
                    AdmissibleWord w = z;
                    if (gs.kind == GenKind::Exterior)
                        w = z.prepend(Letter::rho_k(0), n);
                    else if (gs.kind == GenKind::Polynomial || e == 1)
                        w = z.prepend(Letter::rho(), n);
                    else {
                        std::vector<Letter> ls = z.letters();
                        ls[0].k = (int)log_p(e, p);
                        ls.insert(ls.begin(), Letter::rho());
                        std::vector<int> lb = z.labels();
                        lb.insert(lb.begin(), n);
                        w = AdmissibleWord(ls, lb);
                    }
                    expect.add_term(Monomial::gen(*T.word_index(w)), 1);
                }
                ++r.cases;
                if (!(project_sphere(s, T) == expect))
                    r.fail("sphere projection of sigma_" + std::to_string(n) + " of " +
                           to_string(Monomial::gen(g, e), T.spec()) + " differs from the prefixed word");
            }
        }
    }
    return r;
}

CheckReport sigma_derivation_check(int n, std::uint32_t p, int D, std::size_t trials, std::uint64_t seed)
{
    CheckReport r;
    r.id = "torus.sigma_derivation";
    r.statement = "sigma_v(ab) = sigma_v(a) b + (-1)^{|a|} a sigma_v(b) for v above every label";
    r.params = {{"n", n}, {"p", p}, {"max_degree", D}, {"trials", trials}, {"seed", seed}};
    if (n < 2)
        throw ContractError("sigma_derivation_check: n must be at least 2");
    auto T = TorusAlgebra::build(n, p, D + 1, SteenrodSpec::full());
    const AlgebraSpec& spec = T.spec();
    const Field& F = spec.field();
    auto eligible = [&](const Monomial& m) {
        for (auto [g, e] : m.factors()) {
            const auto& info = T.info(g);
            if (info.kind == TorusGenerator::Kind::Word && info.labels.back() >= n)
                return false;
        }
        return true;
    };
    std::vector<std::vector<Monomial>> by_degree(D + 1);
    std::vector<int> pool;
    for (int t = 1; t <= D; ++t) {
        for (auto& m : monomials_of_degree(spec, t))
            if (eligible(m))
                by_degree[t].push_back(std::move(m));
        if (!by_degree[t].empty())
            pool.push_back(t);
    }
    if (pool.empty() || 2 * pool.front() > D) {
        r.fail("no eligible pair within the bound");
        return r;
    }
    std::mt19937_64 rng(seed);
    auto random_element = [&](int t) {
        Element a(p);
        while (a.is_zero())
            for (const auto& m : by_degree[t])
                a.add_term(m, (Fp)(rng() % p));
        return a;
    };
    for (std::size_t i = 0; i < trials; ++i) {
        int ta = pool[rng() % pool.size()];
        std::vector<int> room;
        for (int t : pool)
            if (ta + t <= D)
                room.push_back(t);
        if (room.empty()) {
            --i;
            continue;
        }
        int tb = room[rng() % room.size()];
        Element a = random_element(ta), b = random_element(tb);
        Element lhs = sigma(n, multiply(a, b, spec), T);
        Element rhs = multiply(sigma(n, a, T), b, spec) + multiply(a, sigma(n, b, T), spec).scaled(ta % 2 ? F.neg(1) : 1);
        ++r.cases;
        if (!(lhs == rhs))
            r.fail("derivation law fails: a = " + to_string(a, spec) + ", b = " + to_string(b, spec));
    }
    return r;
}

}  // namespace thh
