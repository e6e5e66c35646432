#include "thhcalc/spectral_engine.hpp"

#include "thhcalc/admissible_words.hpp"
#include "thhcalc/arith.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace thh {

SSTerm::SSTerm(AlgebraSpec spec, std::vector<int> filtration, int page)
    : spec_(std::move(spec)), filt_(std::move(filtration)), page_(page)
{
    if (filt_.size() != spec_.size())
        throw ContractError("SSTerm: one filtration degree per generator");
    for (std::size_t g = 0; g < filt_.size(); ++g)
        if (filt_[g] < 0 || filt_[g] > spec_.generator(g).degree)
            throw ContractError("SSTerm: filtration outside the first quadrant");
}

Bidegree SSTerm::bidegree(const Monomial& m) const
{
    int s = 0, total = 0;
    for (auto [g, e] : m.factors()) {
        s += filt_.at(g) * (int)e;
        total += spec_.generator(g).degree * (int)e;
    }
    return {s, total - s};
}

std::map<Bidegree, std::vector<Monomial>> SSTerm::basis_by_bidegree(int total) const
{
    std::map<Bidegree, std::vector<Monomial>> out;
    if (total < 0)
        return out;
    for (auto& m : monomials_of_degree(spec_, total))
        out[bidegree(m)].push_back(std::move(m));
    return out;
}

namespace {

Element differential_of_power(const SSTerm& E, const DifferentialSpec& d, std::size_t g, std::uint32_t e,
                              Overflow mode)
{
    const AlgebraSpec& spec = E.spec();
    const Fp p = spec.prime();
    if (auto it = d.shifts.find(g); it != d.shifts.end()) {
        const ShiftRule& rule = it->second;
        if (e < rule.shift)
            return Element(p);
        Element base = Element::of(Monomial::gen(g, e - rule.shift), p);
        return multiply(base, rule.multiplier, spec, mode);
    }
    auto it = d.images.find(g);
    if (it == d.images.end())
        return Element(p);
    const Element& img = it->second;
    switch (spec.generator(g).kind) {
    case GenKind::Exterior:
        return img;
    case GenKind::DividedPower:
        return multiply(Element::of(Monomial::gen(g, e - 1), p), img, spec, mode);
    case GenKind::Polynomial:
    case GenKind::Truncated: {
        Fp c = spec.field().reduce(e);
        if (c == 0)
            return Element(p);
        return multiply(Element::of(Monomial::gen(g, e - 1), p, c), img, spec, mode);
    }
    }
    return Element(p);
}

}  // namespace

Element apply_differential(const SSTerm& E, const DifferentialSpec& d, const Element& a, Overflow mode)
{
    const AlgebraSpec& spec = E.spec();
    const Fp p = spec.prime();
    const Field& F = spec.field();
    Element out(p);
    for (const auto& [m, c] : a.terms()) {
        const auto& fs = m.factors();
        int prefix_degree = 0;
        for (std::size_t i = 0; i < fs.size(); ++i) {
            Element dg = differential_of_power(E, d, fs[i].first, fs[i].second, mode);
            if (!dg.is_zero()) {
                std::vector<Monomial::Factor> pre(fs.begin(), fs.begin() + i), post(fs.begin() + i + 1, fs.end());
                Element left = Element::of(Monomial(pre), p, (prefix_degree % 2) ? F.neg(c) : c);
                out += multiply(multiply(left, dg, spec, mode), Element::of(Monomial(post), p), spec, mode);
            }
            prefix_degree += spec.generator(fs[i].first).degree * (int)fs[i].second;
        }
    }
    return out;
}

CheckReport check_differential(const SSTerm& E, const DifferentialSpec& d, int D)
{
    CheckReport r;
    r.id = "spectral.differential";
    r.statement = "the Leibniz extension squares to zero and shifts bidegree by (-r, r-1)";
    r.params = {{"r", d.r}, {"max_degree", D}, {"p", E.spec().prime()}};
    AlgebraSpec spec = E.spec();
    spec.set_degree_bound(std::max(D, spec.degree_bound()));
    SSTerm big(spec, E.filtration(), E.page());
    const Fp p = spec.prime();
    for (int t = 0; t <= D; ++t)
        for (const auto& m : monomials_of_degree(spec, t)) {
            ++r.cases;
            Element dm = apply_differential(big, d, Element::of(m, p));
            auto [s, u] = big.bidegree(m);
            for (const auto& [mm, c] : dm.terms())
                if (big.bidegree(mm) != Bidegree{s - d.r, u + d.r - 1}) {
                    r.fail("bidegree shift fails on " + to_string(m, spec));
                    break;
                }
            if (!apply_differential(big, d, dm).is_zero())
                r.fail("d^2 nonzero on " + to_string(m, spec));
        }
    return r;
}

namespace {

FpSparseMatrix differential_matrix(const SSTerm& E, const DifferentialSpec& d, const std::vector<Monomial>& src,
                                   const std::vector<Monomial>& dst)
{
    const Fp p = E.spec().prime();
    std::map<Monomial, std::size_t> index;
    for (std::size_t i = 0; i < dst.size(); ++i)
        index.emplace(dst[i], i);
    FpSparseMatrix M(dst.size(), src.size(), p);
    for (std::size_t j = 0; j < src.size(); ++j) {
        Element dm = apply_differential(E, d, Element::of(src[j], p));
        for (const auto& [m, c] : dm.terms()) {
            auto it = index.find(m);
            if (it == index.end())
                throw ContractError("differential leaves its target bidegree");
            M.add(it->second, j, c);
        }
    }
    return M;
}

const std::vector<Monomial>& bucket(const std::map<Bidegree, std::vector<Monomial>>& b, Bidegree key)
{
    static const std::vector<Monomial> empty;
    auto it = b.find(key);
    return it == b.end() ? empty : it->second;
}

}  // namespace

BidegreeTable page_homology(const SSTerm& E, const DifferentialSpec& d, int D)
{
    auto chk = check_differential(E, d, D + 1);
    if (!chk.passed)
        throw ContractError("page_homology: " + chk.failures.front());
    AlgebraSpec spec = E.spec();
    spec.set_degree_bound(std::max(D + 1, spec.degree_bound()));
    SSTerm big(spec, E.filtration(), E.page());
    std::vector<std::map<Bidegree, std::vector<Monomial>>> by_total(D + 2);
    for (int t = 0; t <= D + 1; ++t)
        by_total[t] = big.basis_by_bidegree(t);
    const int r = d.r;
    BidegreeTable out;
    for (int t = 0; t <= D; ++t)
        for (const auto& [bd, mons] : by_total[t]) {
            auto [s, u] = bd;
            const auto& below = bucket(by_total[t > 0 ? t - 1 : 0], {s - r, u + r - 1});
            const auto& above = bucket(by_total[t + 1], {s + r, u - r + 1});
            FpSparseMatrix d_out = differential_matrix(big, d, mons, below);
            FpSparseMatrix d_in = differential_matrix(big, d, above, mons);
            std::size_t h = homology_dim(d_in, d_out);
            if (h)
                out[bd] = h;
        }
    return out;
}

BidegreeTable bidegree_dims(const SSTerm& E, int D)
{
    AlgebraSpec spec = E.spec();
    spec.set_degree_bound(std::max(D, spec.degree_bound()));
    SSTerm big(spec, E.filtration(), E.page());
    BidegreeTable out;
    for (int t = 0; t <= D; ++t)
        for (const auto& [bd, mons] : big.basis_by_bidegree(t))
            out[bd] = mons.size();
    return out;
}

std::vector<Candidate> shortest_candidates(const SSTerm& E, int max_total_degree)
{
    AlgebraSpec spec = E.spec();
    spec.set_degree_bound(std::max(max_total_degree, spec.degree_bound()));
    SSTerm big(spec, E.filtration(), E.page());
    const std::uint32_t p = spec.prime();

    // bidegrees of algebra generators: gamma_{p^k} for divided powers
    std::set<Bidegree> indec;
    for (std::size_t g = 0; g < spec.size(); ++g) {
        const auto& gs = spec.generator(g);
        if (gs.kind == GenKind::DividedPower) {
            for (std::uint64_t e = 1; (std::uint64_t)gs.degree * e <= (std::uint64_t)max_total_degree; e *= p)
                indec.insert(big.bidegree(Monomial::gen(g, (std::uint32_t)e)));
        }
        else if (gs.degree <= max_total_degree) {
            indec.insert(big.bidegree(Monomial::gen(g)));
        }
    }
    // generators are primitive, so primitives are spanned by x (exterior,
    // divided power) and x^{p^k} (polynomial, truncated below the height)
    std::set<Bidegree> prim;
    for (std::size_t g = 0; g < spec.size(); ++g) {
        const auto& gs = spec.generator(g);
        std::uint64_t cap = 1;
        if (gs.kind == GenKind::Polynomial)
            cap = UINT64_MAX;
        else if (gs.kind == GenKind::Truncated)
            cap = (std::uint64_t)(gs.height ? gs.height : (int)p) - 1;
        for (std::uint64_t e = 1; e <= cap && (std::uint64_t)gs.degree * e < (std::uint64_t)max_total_degree;
             e *= p)
            prim.insert(big.bidegree(Monomial::gen(g, (std::uint32_t)e)));
    }

    std::vector<Candidate> out;
    for (const auto& src : indec)
        for (const auto& dst : prim) {
            int r = src.first - dst.first;
            if (r >= 2 && dst.second == src.second + r - 1)
                out.push_back({src, dst, r});
        }
    return out;
}

SSTerm b_n_ss_term(std::size_t n, int D, std::uint32_t p)
{
    if (n < 2)
        throw ContractError("b_n_ss_term: n must be at least 2");
    AlgebraSpec spec = b_n_spec(n, D, p);
    auto words = enumerate_monic(n, D, p);
    std::vector<int> filt;
    for (std::size_t i = 0; i < words.size(); ++i) {
        if (spec.generator(i).label != to_string(words[i]))
            throw ContractError("b_n_ss_term: generator order differs from the word enumeration");
        filt.push_back(words[i].first().kind == LetterKind::PhiK ? 2 : 1);
    }
    return SSTerm(spec, filt);
}

CheckReport verify_p_term(std::uint32_t p, const std::vector<int>& x_degrees, int D)
{
    CheckReport r;
    r.id = "spectral.p_term";
    r.statement = "divided powers with d(gamma_{p+k} x_i) = gamma_k(x_i) y_{i+1} leave the truncated polynomial "
                  "algebra on the x_i";
    r.params = {{"p", p}, {"x_degrees", x_degrees}, {"max_degree", D}};
    AlgebraSpec spec(p, D + 1), trunc(p, D);
    std::vector<int> filt, tfilt;
    for (std::size_t i = 0; i < x_degrees.size(); ++i) {
        spec.add_generator({"x" + std::to_string(i), x_degrees[i], GenKind::DividedPower, 0});
        filt.push_back(1);
        trunc.add_generator({"x" + std::to_string(i), x_degrees[i], GenKind::Truncated, (int)p});
        tfilt.push_back(1);
    }
    DifferentialSpec d;
    d.r = (int)p - 1;
    for (std::size_t i = 0; i < x_degrees.size(); ++i) {
        int ydeg = (int)p * x_degrees[i] - 1;
        if (ydeg > D + 1)
            continue;
        std::size_t y = spec.add_generator({"y" + std::to_string(i + 1), ydeg, GenKind::Exterior, 0});
        filt.push_back(1);
        d.shifts.emplace(i, ShiftRule(p, Element::of(Monomial::gen(y), p)));
    }
    SSTerm E(spec, filt), T(trunc, tfilt);
    auto chk = check_differential(E, d, D + 1);
    r.merge(chk);
    if (!chk.passed)
        return r;
    auto H = page_homology(E, d, D);
    auto expect = bidegree_dims(T, D);
    std::set<Bidegree> keys;
    for (const auto& [k, v] : H)
        keys.insert(k);
    for (const auto& [k, v] : expect)
        keys.insert(k);
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& k : keys) {
        std::size_t h = H.count(k) ? H.at(k) : 0, e = expect.count(k) ? expect.at(k) : 0;
        rows.push_back({k.first, k.second, h, e});
        ++r.cases;
        if (h != e)
            r.fail("bidegree (" + std::to_string(k.first) + "," + std::to_string(k.second) + "): homology " +
                   std::to_string(h) + ", truncated algebra " + std::to_string(e));
    }
    r.details["table"] = rows;  // s, t, homology, expected
    return r;
}

Element changed_cycle(const AlgebraSpec& spec, std::size_t L, int k, const std::vector<Fp>& r_coeffs)
{
    const Fp p = spec.prime();
    const Field& F = spec.field();
    const std::size_t z = 2 * L;
    if (k == 0)
        return Element::of(Monomial::gen(z), p);
    const std::uint64_t pk = ipow(p, k), jmax = ipow(p, k - 1);
    Element out(p);
    std::vector<std::uint32_t> alpha(L, 0);
    for (std::uint64_t j = 0; j <= jmax; ++j) {
        // compositions alpha of j into L parts
        std::function<void(std::size_t, std::uint64_t)> rec = [&](std::size_t i, std::uint64_t left) {
            if (i == L) {
                if (left != 0)
                    return;
                Fp c = (j % 2) ? F.neg(1) : 1;
                std::vector<Monomial::Factor> fs;
                for (std::size_t l = 0; l < L; ++l) {
                    c = F.mul(c, F.pow(F.reduce(r_coeffs[l]), alpha[l]));  // 0^0 = 1
                    if (alpha[l])
                        fs.emplace_back((std::uint32_t)l, (std::uint32_t)(p * alpha[l]));
                }
                if (pk > p * j)
                    fs.emplace_back((std::uint32_t)z, (std::uint32_t)(pk - p * j));
                if (c)
                    out.add_term(Monomial(fs), c);
                return;
            }
            for (std::uint64_t a = 0; a <= left; ++a) {
                alpha[i] = (std::uint32_t)a;
                rec(i + 1, left - a);
            }
            alpha[i] = 0;
        };
        if (L == 0) {
            if (j == 0)
                out.add_term(Monomial::gen(z, (std::uint32_t)pk), 1);
            continue;
        }
        rec(0, j);
    }
    return out;
}

CheckReport change_basis_cycles(std::uint32_t p, int k_max, const std::vector<Fp>& r_coeffs, int D)
{
    CheckReport r;
    r.id = "spectral.change_of_basis";
    r.statement = "the corrected divided powers of z are cycles with vanishing p-th powers and give an invertible "
                  "change of basis";
    r.params = {{"p", p}, {"k_max", k_max}, {"r", r_coeffs}, {"max_degree", D}};
    if (k_max < 1)
        throw ContractError("change_basis_cycles: k_max must be at least 1");
    const std::size_t L = r_coeffs.size();
    const int need = (int)(2 * ipow(p, k_max));
    if (D < need)
        throw ContractError("change_basis_cycles: max_degree must reach 2p^k_max");
    const int bound = (int)(2 * ipow(p, k_max + 1));
    AlgebraSpec spec(p, std::max(D, bound));
    std::vector<int> filt;
    for (std::size_t l = 0; l < L; ++l) {
        spec.add_generator({"x" + std::to_string(l), 2, GenKind::DividedPower, 0});
        filt.push_back(1);
    }
    for (std::size_t l = 0; l < L; ++l) {
        spec.add_generator({"y" + std::to_string(l + 1), 2 * (int)p - 1, GenKind::Exterior, 0});
        filt.push_back(1);
    }
    spec.add_generator({"z", 2, GenKind::DividedPower, 0});
    filt.push_back(1);
    const Field& F = spec.field();
    DifferentialSpec d;
    d.r = (int)p - 1;
    Element zimg(p);
    for (std::size_t l = 0; l < L; ++l) {
        d.shifts.emplace(l, ShiftRule(p, Element::of(Monomial::gen(L + l), p)));
        zimg.add_term(Monomial::gen(L + l), F.reduce(r_coeffs[l]));
    }
    d.shifts.emplace(2 * L, ShiftRule(p, zimg));
    SSTerm E(spec, filt);

    auto chk = check_differential(E, d, D);
    r.merge(chk);

    std::vector<Element> cyc;
    nlohmann::json forms = nlohmann::json::array();
    int k_top = k_max;
    while (2 * ipow(p, k_top + 1) <= (std::uint64_t)D)
        ++k_top;
    for (int k = 0; k <= k_top; ++k)
        cyc.push_back(changed_cycle(spec, L, k, r_coeffs));
    for (int k = 1; k <= k_max; ++k) {
        const Element& c = cyc[k];
        forms.push_back(to_string(c, spec));
        ++r.cases;
        if (!apply_differential(E, d, c).is_zero())
            r.fail("d of the corrected gamma_{p^" + std::to_string(k) + "}(z) is nonzero");
        ++r.cases;
        if (!power(c, p, spec).is_zero())
            r.fail("p-th power of the corrected gamma_{p^" + std::to_string(k) + "}(z) is nonzero");
    }
    r.details["cycles"] = forms;

    // gamma_e(z) -> prod_k gamma_{p^k}(z')^{e_k} / e_k!, other factors fixed
    AlgebraSpec small = spec;
    small.set_degree_bound(D);
    for (int t = 0; t <= D; ++t) {
        auto B = monomials_of_degree(small, t);
        if (B.empty())
            continue;
        std::map<Monomial, std::size_t> index;
        for (std::size_t i = 0; i < B.size(); ++i)
            index.emplace(B[i], i);
        FpSparseMatrix M(B.size(), B.size(), p);
        for (std::size_t j = 0; j < B.size(); ++j) {
            std::vector<Monomial::Factor> rest;
            std::uint32_t e = 0;
            for (auto f : B[j].factors()) {
                if (f.first == 2 * L)
                    e = f.second;
                else
                    rest.push_back(f);
            }
            Element img = Element::of(Monomial(rest), p);
            auto dg = digits(e, p);
            for (unsigned k = 0; k < dg.size(); ++k) {
                if (dg[k] == 0)
                    continue;
                Fp fact = 1;
                for (std::uint64_t i = 2; i <= dg[k]; ++i)
                    fact = F.mul(fact, (Fp)i);
                img = multiply(img, power(cyc.at(k), (unsigned)dg[k], small).scaled(F.inv(fact)), small);
            }
            for (const auto& [m, c] : img.terms())
                M.add(index.at(m), j, c);
        }
        ++r.cases;
        if (rank(M) != B.size())
            r.fail("change of basis singular in degree " + std::to_string(t));
    }
    return r;
}

std::vector<Element> TwoColumnTerm::d2(const Element& x) const
{
    std::vector<Element> out;
    for (int i = 1; i <= T_.n(); ++i)
        out.push_back(sigma(i, x, T_));
    return out;
}

TwoColumnTerm hfpss_two_columns(const TorusAlgebra& T)
{
    return TwoColumnTerm(T);
}

nlohmann::json RognesResult::to_json() const
{
    nlohmann::json j = {{"schema", "thhcalc/1"},
                        {"p", p},
                        {"n", n},
                        {"control", control},
                        {"verdict", verdict()},
                        {"unknowns", unknowns},
                        {"equations", equations},
                        {"rank", rank},
                        {"augmented_rank", augmented_rank},
                        {"rank_gap", augmented_rank - rank}};
    if (hit) {
        nlohmann::json w = nlohmann::json::object();
        for (const auto& [k, v] : witness)
            w["z" + std::to_string(k)] = v;
        j["witness"] = w;
    }
    return j;
}

namespace {

// mu-monomials of weight w (degree 2w) in the labels 1..n
std::vector<Monomial> mu_monomials(const TorusAlgebra& T, std::uint64_t w)
{
    std::vector<Monomial> out;
    const int n = T.n();
    std::vector<std::uint32_t> e(n, 0);
    std::function<void(int, std::uint64_t)> rec = [&](int i, std::uint64_t left) {
        if (i == n - 1) {
            e[i] = (std::uint32_t)left;
            std::vector<Monomial::Factor> fs;
            for (int k = 0; k < n; ++k)
                if (e[k])
                    fs.emplace_back((std::uint32_t)*T.mu_index(k + 1), e[k]);
            out.emplace_back(fs);
            return;
        }
        for (std::uint64_t a = 0; a <= left; ++a) {
            e[i] = (std::uint32_t)a;
            rec(i + 1, left - a);
        }
    };
    rec(0, w);
    std::sort(out.begin(), out.end());
    return out;
}

bool is_mu_monomial(const Monomial& m, const TorusAlgebra& T)
{
    return std::all_of(m.factors().begin(), m.factors().end(), [&](const auto& f) {
        const auto& info = T.info(f.first);
        return info.kind == TorusGenerator::Kind::Word && info.labels.size() == 1;
    });
}

}  // namespace

RognesResult rognes_check(std::uint32_t p, int n, bool control)
{
    if (n < 1)
        throw ContractError("rognes_check: n must be at least 1");
    const std::uint64_t top = ipow(p, n - 1);
    if (top > 5000 || n > 6)
        throw UnsupportedError("rognes_check: working degree above the size guard");
    const int D = (int)(2 * top);
    TorusAlgebra T = TorusAlgebra::build(n, p, D, control ? SteenrodSpec::full() : SteenrodSpec::omit_tau(n - 1));
    TwoColumnTerm E = hfpss_two_columns(T);
    const Fp pp = p;

    // target coordinates: t_i times a mu-monomial of degree 2p^{n-1}
    auto target_basis = mu_monomials(T, top);
    std::map<Monomial, std::size_t> tindex;
    for (std::size_t i = 0; i < target_basis.size(); ++i)
        tindex.emplace(target_basis[i], i);
    const std::size_t rows = (std::size_t)n * target_basis.size();
    auto coord = [&](int i, const Monomial& m) { return (std::size_t)(i - 1) * target_basis.size() + tindex.at(m); };

    struct Column
    {
        int j;
        Monomial m;
    };
    std::vector<Column> cols;
    std::vector<SparseRow> col_entries;
    for (int j = 0; j < n; ++j) {
        auto tau = T.tau_index(j);
        if (!tau)
            continue;
        // d^2(tau_j m) = d^2(tau_j) m - tau_j d^2(m); the second term is tau-divisible
        auto d2tau = E.d2(Element::of(Monomial::gen(*tau), pp));
        for (const auto& m : mu_monomials(T, top - ipow(p, j))) {
            std::map<std::size_t, Fp> entries;
            for (int i = 1; i <= n; ++i) {
                Element prod = multiply(d2tau[i - 1], Element::of(m, pp), T.spec());
                for (const auto& [mm, c] : prod.terms())
                    if (is_mu_monomial(mm, T))
                        entries[coord(i, mm)] = T.spec().field().add(entries[coord(i, mm)], c);
            }
            SparseRow col;
            for (auto [k, v] : entries)
                if (v)
                    col.emplace_back((std::uint32_t)k, v);
            cols.push_back({j, m});
            col_entries.push_back(std::move(col));
        }
    }
    FpSparseMatrix M(rows, cols.size(), p);
    for (std::size_t c = 0; c < cols.size(); ++c)
        for (auto [k, v] : col_entries[c])
            M.set(k, c, v);
    std::vector<Fp> b(rows, 0);
    for (int i = 1; i <= n; ++i)
        b[coord(i, Monomial::gen(*T.mu_index(i), (std::uint32_t)top))] = 1;

    RognesResult res;
    res.p = p;
    res.n = n;
    res.control = control;
    res.unknowns = cols.size();
    res.equations = rows;
    res.rank = rank(M);
    FpSparseMatrix Mb(rows, cols.size() + 1, p);
    for (std::size_t c = 0; c < cols.size(); ++c)
        for (auto [k, v] : col_entries[c])
            Mb.set(k, c, v);
    for (std::size_t k = 0; k < rows; ++k)
        if (b[k])
            Mb.set(k, cols.size(), b[k]);
    res.augmented_rank = rank(Mb);
    auto sol = solve_membership(M, b);
    res.hit = sol.has_value();
    if (res.hit) {
        // prefer the witness z_{n-1} = 1 when it solves the system
        std::vector<Fp> w(cols.size(), 0);
        for (std::size_t c = 0; c < cols.size(); ++c)
            if (cols[c].j == n - 1 && cols[c].m.is_one())
                w[c] = 1;
        if (M.apply(w) == b)
            sol = w;
        std::map<int, Element> zs;
        for (std::size_t c = 0; c < cols.size(); ++c) {
            auto it = zs.try_emplace(cols[c].j, Element(pp)).first;
            if ((*sol)[c])
                it->second.add_term(cols[c].m, (*sol)[c]);
        }
        for (const auto& [j, z] : zs)
            res.witness[(int)j] = z.is_zero() ? "0" : to_string(z, T.spec());
    }
    return res;
}

}  // namespace thh
