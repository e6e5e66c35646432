#include "thhcalc/multifold.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace thh {

Fp binom_div_p(std::uint64_t n, std::uint64_t k, std::uint32_t p)
{
    if (!is_power_of(n, p) || n == 1)
        throw ContractError("binom_div_p: n must be a positive power of p");
    if (k == 0 || k >= n)
        throw ContractError("binom_div_p: k out of range");
    // binom(n,k) = prod_{i=1}^{k} (n-k+i)/i, tracking the p-adic valuation and unit part
    Field F(p);
    long long v = 0;
    Fp unit = 1;
    for (std::uint64_t i = 1; i <= k; ++i) {
        std::uint64_t num = n - k + i, den = i;
        while (num % p == 0) {
            num /= p;
            ++v;
        }
        while (den % p == 0) {
            den /= p;
            --v;
        }
        unit = F.mul(unit, F.mul(F.reduce((long long)(num % p)), F.inv(F.reduce((long long)(den % p)))));
    }
    if (v < 1)
        throw ContractError("binom_div_p: binomial not divisible by p");
    return v == 1 ? unit : 0;
}

WeightInfo classify_weight(std::uint64_t N, std::uint32_t p)
{
    if (N < 2)
        throw ContractError("classify_weight: N must be at least 2");
    WeightInfo w{};
    auto d = digits(N, p);
    if (is_power_of(N, p)) {
        w.type = WeightType::PrimePower;
        w.m = log_p(N, p) - 1;
        return w;
    }
    std::vector<unsigned> ones;
    bool two_powers = digit_sum(N, p) == 2;
    for (unsigned i = 0; i < d.size(); ++i)
        if (d[i] == 1)
            ones.push_back(i);
    if (two_powers && ones.size() == 2) {
        w.type = WeightType::TwoPowers;
        w.m1 = ones[0];
        w.m2 = ones[1];
        return w;
    }
    w.type = WeightType::Other;
    w.m = (unsigned)d.size() - 1;
    w.top_digit = d.back();
    return w;
}

namespace {

const char* weight_name(WeightType t)
{
    switch (t) {
    case WeightType::PrimePower:
        return "prime_power";
    case WeightType::TwoPowers:
        return "two_powers";
    default:
        return "other";
    }
}

// Rows: the relations binom(a+b,b) r_{a+b} - binom(b+c,b) r_a over a,b,c >= 1, a+b+c = N.
// Column k-1 holds the symbol r_{k,N-k}.
FpSparseMatrix relation_matrix(std::uint64_t N, std::uint32_t p)
{
    Field F(p);
    std::vector<std::pair<std::uint64_t, std::uint64_t>> rels;
    for (std::uint64_t a = 1; a + 2 <= N; ++a)
        for (std::uint64_t b = 1; a + b + 1 <= N; ++b)
            rels.emplace_back(a, b);
    FpSparseMatrix R(rels.size(), N - 1, p);
    for (std::size_t i = 0; i < rels.size(); ++i) {
        auto [a, b] = rels[i];
        std::uint64_t c = N - a - b;
        R.add(i, a + b - 1, lucas(a + b, b, p));
        R.add(i, a - 1, F.neg(lucas(b + c, b, p)));
    }
    return R;
}

}  // namespace

RelationModule relation_module(std::uint64_t N, std::uint32_t p)
{
    if (N < 3)
        throw ContractError("relation_module: N must be at least 3");
    Field F(p);
    RelationModule out;
    out.N = N;
    out.p = p;
    out.info = classify_weight(N, p);
    const auto& info = out.info;

    FpSparseMatrix R = relation_matrix(N, p);
    auto ech = detail::echelon(R, true);
    out.dimension = (N - 1) - ech.pivot_cols.size();

    std::vector<char> is_pivot(N - 1, 0);
    std::vector<std::size_t> pivot_of(N - 1, 0);
    for (std::size_t i = 0; i < ech.pivot_cols.size(); ++i) {
        is_pivot[ech.pivot_cols[i]] = 1;
        pivot_of[ech.pivot_cols[i]] = i;
    }
    std::vector<std::uint32_t> free_cols;
    std::vector<std::size_t> free_pos(N - 1, 0);
    for (std::uint32_t c = 0; c < N - 1; ++c)
        if (!is_pivot[c]) {
            free_pos[c] = free_cols.size();
            free_cols.push_back(c);
        }
    // class of r_k in the quotient, in coordinates on the free columns
    auto remainder = [&](std::uint64_t k) {
        std::vector<Fp> v(free_cols.size(), 0);
        std::uint32_t c = (std::uint32_t)(k - 1);
        if (!is_pivot[c]) {
            v[free_pos[c]] = 1;
            return v;
        }
        for (auto [col, val] : ech.pivot_rows[pivot_of[c]])
            if (col != c)
                v[free_pos[col]] = F.sub(v[free_pos[col]], val);
        return v;
    };

    switch (info.type) {
    case WeightType::PrimePower:
    case WeightType::Other:
        out.basis = {ipow(p, info.m)};
        break;
    case WeightType::TwoPowers:
        out.basis = {ipow(p, info.m2), ipow(p, info.m1)};
        break;
    }

    CheckReport& r = out.check;
    r.id = "multifold.relation_module";
    r.statement = "quotient by the coassociativity relations has the closed-form dimension and normal forms";
    r.params = {{"N", N}, {"p", p}};
    r.details["type"] = weight_name(info.type);
    r.details["dimension"] = out.dimension;

    std::size_t expected_dim = info.type == WeightType::TwoPowers ? 2 : 1;
    ++r.cases;
    if (out.dimension != expected_dim) {
        r.fail("dimension " + std::to_string(out.dimension) + ", expected " + std::to_string(expected_dim));
        return out;
    }

    // coordinates of the chosen basis symbols in the free-column chart; invertible when they form a basis
    std::size_t d = out.dimension;
    std::vector<std::vector<Fp>> B;  // B[j] = remainder(basis[j])
    for (auto b : out.basis)
        B.push_back(remainder(b));
    FpSparseMatrix Bm(d, d, p);
    for (std::size_t j = 0; j < d; ++j)
        for (std::size_t f = 0; f < d; ++f)
            Bm.set(f, j, B[j][f]);
    ++r.cases;
    if (rank(Bm) != d) {
        r.fail("chosen basis symbols are dependent in the quotient");
        return out;
    }
    out.normal_form.resize(N - 1);
    for (std::uint64_t k = 1; k < N; ++k) {
        auto sol = solve_membership(Bm, remainder(k));
        out.normal_form[k - 1] = *sol;  // Bm is invertible
    }

    Fp n_inv = info.type == WeightType::Other ? F.inv(F.reduce((long long)info.top_digit)) : 0;
    for (std::uint64_t k = 1; k < N; ++k) {
        std::vector<Fp> expect(d, 0);
        switch (info.type) {
        case WeightType::PrimePower:
            expect[0] = binom_div_p(N, k, p);
            break;
        case WeightType::Other:
            expect[0] = F.mul(lucas(N, k, p), n_inv);
            break;
        case WeightType::TwoPowers:
            if (k == out.basis[0])
                expect[0] = 1;
            else if (k == out.basis[1])
                expect[1] = 1;
            break;
        }
        ++r.cases;
        if (expect != out.normal_form[k - 1])
            r.fail("normal form of r_{" + std::to_string(k) + "," + std::to_string(N - k) +
                   "} differs from the closed form");
    }
    return out;
}

CoproductDecomposition decompose_coproduct(const CoproductTable& table, std::uint32_t p)
{
    const std::uint64_t N = table.N;
    if (N < 2 || table.r.size() != N - 1)
        throw ContractError("decompose_coproduct: table must hold r_{a,N-a} for 0 < a < N");
    Field F(p);
    auto r = [&](std::uint64_t a) { return F.reduce((long long)table.r[a - 1]); };
    CoproductDecomposition out;
    for (std::uint64_t a = 1; a + 2 <= N; ++a)
        for (std::uint64_t b = 1; a + b + 1 <= N; ++b) {
            std::uint64_t c = N - a - b;
            Fp lhs = F.mul(lucas(a + b, b, p), r(a + b));
            Fp rhs = F.mul(lucas(b + c, b, p), r(a));
            if (lhs != rhs) {
                out.failing = std::make_tuple(a, b, c);
                return out;
            }
        }
    out.accepted = true;
    auto info = classify_weight(N, p);
    switch (info.type) {
    case WeightType::PrimePower:
        out.r_p = r(ipow(p, info.m));
        break;
    case WeightType::TwoPowers: {
        std::uint64_t n1 = ipow(p, info.m1), n2 = ipow(p, info.m2);
        out.r_n = r(n2);
        out.skew_pair = std::make_pair(n1, n2);
        out.t = F.sub(r(n1), r(n2));
        break;
    }
    case WeightType::Other:
        out.r_n = F.mul(F.inv(F.reduce((long long)info.top_digit)), r(ipow(p, info.m)));
        break;
    }
    return out;
}

CoproductTable compose_coproduct(std::uint64_t N, std::uint32_t p, Fp r_n, Fp r_p, Fp t)
{
    Field F(p);
    auto info = classify_weight(N, p);
    CoproductTable out{N, std::vector<Fp>(N - 1, 0)};
    for (std::uint64_t a = 1; a < N; ++a) {
        Fp v = F.mul(F.reduce(r_n), lucas(N, a, p));
        if (info.type == WeightType::PrimePower)
            v = F.add(v, F.mul(F.reduce(r_p), binom_div_p(N, a, p)));
        out.r[a - 1] = v;
    }
    if (info.type == WeightType::TwoPowers) {
        std::uint64_t n1 = ipow(p, info.m1);
        out.r[n1 - 1] = F.add(out.r[n1 - 1], F.reduce(t));
    }
    return out;
}

// ---- cubes ----

CubeElement::CubeElement(std::vector<int> V, std::vector<int> U, Fp p) : V_(std::move(V)), U_(std::move(U)), p_(p)
{
    std::sort(V_.begin(), V_.end());
    std::sort(U_.begin(), U_.end());
    if (std::adjacent_find(V_.begin(), V_.end()) != V_.end() || std::adjacent_find(U_.begin(), U_.end()) != U_.end())
        throw ContractError("CubeElement: repeated label");
    if (!std::includes(V_.begin(), V_.end(), U_.begin(), U_.end()))
        throw ContractError("CubeElement: U must be a subset of V");
}

CubeElement CubeElement::monomial(std::vector<int> V, std::vector<int> U, Fp p, const Mono& m, Fp c)
{
    CubeElement x(std::move(V), std::move(U), p);
    x.add_term(m, c);
    return x;
}

void CubeElement::add_term(Mono m, Fp c)
{
    Field F(p_);
    c = F.reduce(c);
    std::sort(m.begin(), m.end());
    Mono canon;
    for (auto& [var, e] : m) {
        auto [label, corner] = var;
        bool in_v = std::binary_search(V_.begin(), V_.end(), label);
        bool in_u = std::binary_search(U_.begin(), U_.end(), label);
        if (!in_v || (in_u && corner < 0) || (!in_u && corner >= 0) || corner > 1)
            throw ContractError("CubeElement: variable outside the cube");
        if (e == 0)
            continue;
        if (!canon.empty() && canon.back().first == var)
            canon.back().second += e;
        else
            canon.emplace_back(var, e);
    }
    if (c == 0)
        return;
    auto it = terms_.find(canon);
    if (it == terms_.end())
        terms_.emplace(std::move(canon), c);
    else if ((it->second = F.add(it->second, c)) == 0)
        terms_.erase(it);
}

std::string CubeElement::to_string() const
{
    if (terms_.empty())
        return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        if (!first)
            os << " + ";
        first = false;
        if (c != 1 || m.empty())
            os << c;
        bool lead = c == 1;
        for (const auto& [var, e] : m) {
            if (!lead)
                os << "·";
            lead = false;
            os << "μ" << var.first;
            if (var.second >= 0)
                os << "^(" << var.second << ")";
            if (e != 1)
                os << "^" << e;
        }
    }
    return os.str();
}

CubeElement cube_psi(int u, const CubeElement& x)
{
    const auto& V = x.V();
    const auto& U = x.U();
    if (!std::binary_search(V.begin(), V.end(), u) || std::binary_search(U.begin(), U.end(), u))
        throw ContractError("cube_psi: label must lie in V\\U");
    std::vector<int> U2 = U;
    U2.insert(std::upper_bound(U2.begin(), U2.end(), u), u);
    CubeElement out(V, U2, x.prime());
    Field F(x.prime());
    const CubeElement::Var var{u, -1};
    for (const auto& [m, c] : x.terms()) {
        std::uint32_t e = 0;
        CubeElement::Mono rest;
        for (const auto& ve : m) {
            if (ve.first == var)
                e = ve.second;
            else
                rest.push_back(ve);
        }
        // (mu^(0) + mu^(1))^e
        for (std::uint32_t i = 0; i <= e; ++i) {
            Fp b = lucas(e, i, x.prime());
            if (b == 0)
                continue;
            CubeElement::Mono mm = rest;
            mm.push_back({{u, 0}, i});
            mm.push_back({{u, 1}, e - i});
            out.add_term(mm, F.mul(b, c));
        }
    }
    return out;
}

CubeElement cube_psi_seq(const std::vector<int>& seq, const CubeElement& x)
{
    std::vector<int> s = seq;
    std::sort(s.begin(), s.end());
    if (std::adjacent_find(s.begin(), s.end()) != s.end())
        throw ContractError("cube_psi_seq: labels must be distinct");
    CubeElement y = x;
    for (int u : seq)
        y = cube_psi(u, y);
    return y;
}

bool order_independent(const std::vector<int>& seq, const CubeElement& x)
{
    std::vector<int> perm = seq;
    std::sort(perm.begin(), perm.end());
    const CubeElement ref = cube_psi_seq(perm, x);
    while (std::next_permutation(perm.begin(), perm.end()))
        if (!(cube_psi_seq(perm, x) == ref))
            return false;
    return true;
}

CheckReport cube_order_check(const std::vector<int>& S, int D, std::uint32_t p)
{
    CheckReport r;
    r.id = "multifold.order_independence";
    r.statement = "iterated cube coproducts agree for every ordering of the labels";
    r.params = {{"labels", S}, {"max_degree", D}, {"p", p}};
    std::vector<std::uint32_t> e(S.size(), 0);
    std::function<void(std::size_t, int)> rec = [&](std::size_t i, int budget) {
        if (i == S.size()) {
            CubeElement::Mono m;
            for (std::size_t j = 0; j < S.size(); ++j)
                m.push_back({{S[j], -1}, e[j]});
            auto x = CubeElement::monomial(S, {}, p, m);
            ++r.cases;
            if (!order_independent(S, x))
                r.fail("order dependence on " + x.to_string());
            return;
        }
        for (int k = 0; 2 * k <= budget; ++k) {
            e[i] = (std::uint32_t)k;
            rec(i + 1, budget - 2 * k);
        }
    };
    rec(0, D);
    return r;
}

namespace {

// dims of a polynomial algebra on k degree-2 generators, t = 0..D
std::vector<std::size_t> polynomial_dims(std::size_t k, int D)
{
    std::vector<std::size_t> s(D + 1, 0);
    s[0] = 1;
    for (std::size_t g = 0; g < k; ++g)
        for (int t = 2; t <= D; ++t)
            s[t] += s[t - 2];
    return s;
}

}  // namespace

CheckReport pushout_dimension_check(const std::vector<int>& V, const std::vector<int>& U, int v, int D,
                                    std::uint32_t p)
{
    CheckReport r;
    r.id = "multifold.pushout_dimensions";
    r.statement = "the cube over V with U pinched, tensored over the cube without v, has the dimensions of the cube "
                  "with v pinched";
    r.params = {{"V", V}, {"U", U}, {"v", v}, {"max_degree", D}, {"p", p}};
    CubeElement probe(V, U, p);  // validates V, U
    if (!std::binary_search(probe.V().begin(), probe.V().end(), v) ||
        std::binary_search(probe.U().begin(), probe.U().end(), v))
        throw ContractError("pushout_dimension_check: v must lie in V\\U");
    std::size_t vars = V.size() + U.size();  // split labels contribute two variables
    auto A = polynomial_dims(vars, D);
    auto C = polynomial_dims(vars - 1, D);
    auto target = polynomial_dims(vars + 1, D);
    // A is free over C, so the tensor product has series A^2 / C
    std::vector<long long> num(D + 1, 0), q(D + 1, 0);
    for (int i = 0; i <= D; ++i)
        for (int j = 0; i + j <= D; ++j)
            num[i + j] += (long long)(A[i] * A[j]);
    for (int t = 0; t <= D; ++t) {
        long long acc = num[t];
        for (int i = 1; i <= t; ++i)
            acc -= (long long)C[i] * q[t - i];
        q[t] = acc;  // C[0] = 1
    }
    r.details["tensor"] = q;
    r.details["target"] = target;
    for (int t = 0; t <= D; ++t) {
        ++r.cases;
        if (q[t] != (long long)target[t])
            r.fail("degree " + std::to_string(t) + ": " + std::to_string(q[t]) + " vs " + std::to_string(target[t]));
    }
    return r;
}

// ---- iterated structure solver ----

bool SolutionSpace::is_solution(const std::vector<Fp>& v) const
{
    auto img = constraints.apply(v);
    return std::all_of(img.begin(), img.end(), [](Fp x) { return x == 0; });
}

namespace {

bool is_p_power(std::uint64_t n, std::uint32_t p) { return n >= 1 && is_power_of(n, p); }

void for_each_composition(std::size_t parts, std::uint64_t total, std::uint64_t min_part,
                          const std::function<void(const std::vector<std::uint64_t>&)>& fn)
{
    std::vector<std::uint64_t> b(parts, 0);
    std::function<void(std::size_t, std::uint64_t)> rec = [&](std::size_t i, std::uint64_t left) {
        if (i + 1 == parts) {
            if (left >= min_part) {
                b[i] = left;
                fn(b);
            }
            return;
        }
        for (std::uint64_t x = min_part; x + min_part * (parts - i - 1) <= left; ++x) {
            b[i] = x;
            rec(i + 1, left - x);
        }
    };
    if (parts == 0) {
        if (total == 0)
            fn(b);
        return;
    }
    rec(0, total);
}

}  // namespace

std::vector<Fp> p_power_block(const SolutionSpace& space, int s, const std::vector<std::uint64_t>& b,
                              std::uint32_t p)
{
    std::vector<Fp> v(space.unknowns, 0);
    for (std::uint64_t a = 1; a < b[s]; ++a) {
        auto it = space.index.find({s, b, a});
        if (it == space.index.end())
            throw ContractError("p_power_block: coordinate outside the table");
        v[it->second] = binom_div_p(b[s], a, p);
    }
    return v;
}

SolutionSpace multifold_solution_space(std::size_t S, std::uint64_t target_degree, std::uint32_t p)
{
    if (S < 1 || S > 3)
        throw ContractError("multifold_solution_space: 1 <= |S| <= 3");
    if (target_degree % 2 != 0 || target_degree < 4)
        throw ContractError("multifold_solution_space: target degree must be even and at least 4");
    const std::uint64_t N = target_degree / 2;
    if (N > 40)
        throw UnsupportedError("multifold_solution_space: weight above the size guard (40)");
    Field F(p);
    SolutionSpace sp;

    // unknowns: for each s, b in N^S with |b| = N, b_s >= 2, and 0 < a < b_s
    for (std::size_t s = 0; s < S; ++s)
        for_each_composition(S, N, 0, [&](const std::vector<std::uint64_t>& b) {
            if (b[s] < 2)
                return;
            for (std::uint64_t a = 1; a < b[s]; ++a) {
                sp.index.emplace(std::make_tuple((int)s, b, a), sp.coordinates.size());
                sp.coordinates.emplace_back((int)s, b, a);
            }
        });
    sp.unknowns = sp.coordinates.size();
    auto idx = [&](std::size_t s, const std::vector<std::uint64_t>& b, std::uint64_t a) {
        return sp.index.at({(int)s, b, a});
    };

    std::vector<SparseRow> rows;
    auto push = [&](std::map<std::size_t, Fp> row) {
        SparseRow out;
        for (auto [c, v] : row)
            if (v)
                out.emplace_back((std::uint32_t)c, v);
        if (!out.empty())
            rows.push_back(std::move(out));
    };
    std::size_t counit_rows = 0, coassoc_rows = 0, commute_rows = 0;

    for (std::size_t s = 0; s < S; ++s)
        for_each_composition(S, N, 0, [&](const std::vector<std::uint64_t>& b) {
            const std::uint64_t w = b[s];
            if (w < 2)
                return;
            bool has_zero = false;
            for (std::size_t k = 0; k < S; ++k)
                if (k != s && b[k] == 0)
                    has_zero = true;
            if (has_zero) {
                // counit in a direction k with no mu_k present
                for (std::uint64_t a = 1; a < w; ++a) {
                    push({{idx(s, b, a), 1}});
                    ++counit_rows;
                }
            }
            // coassociativity in direction s at fixed mu_{S\s} exponent
            for (std::uint64_t a = 1; a + 2 <= w; ++a)
                for (std::uint64_t bb = 1; a + bb + 1 <= w; ++bb) {
                    std::uint64_t c = w - a - bb;
                    std::map<std::size_t, Fp> row;
                    row[idx(s, b, a + bb)] = F.add(row[idx(s, b, a + bb)], lucas(a + bb, bb, p));
                    row[idx(s, b, a)] = F.sub(row[idx(s, b, a)], lucas(bb + c, bb, p));
                    push(row);
                    ++coassoc_rows;
                }
        });

    // commutation of the reduced coproducts in directions i and k
    for (std::size_t i = 0; i < S; ++i)
        for (std::size_t k = i + 1; k < S; ++k)
            for_each_composition(S, N, 1, [&](const std::vector<std::uint64_t>& b) {
                for (std::uint64_t ai = 1; ai < b[i]; ++ai)
                    for (std::uint64_t ak = 1; ak < b[k]; ++ak) {
                        std::map<std::size_t, Fp> row;
                        row[idx(i, b, ai)] = F.add(row[idx(i, b, ai)], lucas(b[k], ak, p));
                        row[idx(k, b, ak)] = F.sub(row[idx(k, b, ak)], lucas(b[i], ai, p));
                        push(row);
                        ++commute_rows;
                    }
            });

    sp.equations = rows.size();
    FpSparseMatrix M(rows.size(), sp.unknowns, p);
    for (std::size_t r = 0; r < rows.size(); ++r)
        for (auto [c, v] : rows[r])
            M.set(r, c, v);
    sp.constraints = M;
    sp.kernel = kernel_basis(M);
    sp.kernel_dim = sp.kernel.size();

    // claimed families
    std::vector<std::vector<Fp>> fam;
    std::vector<std::string> fam_names;
    auto bstr = [](const std::vector<std::uint64_t>& b) {
        std::string s = "(";
        for (std::size_t i = 0; i < b.size(); ++i)
            s += (i ? "," : "") + std::to_string(b[i]);
        return s + ")";
    };
    for_each_composition(S, N, 1, [&](const std::vector<std::uint64_t>& b) {
        std::vector<Fp> v(sp.unknowns, 0);
        bool nonzero = false;
        for (std::size_t s = 0; s < S; ++s)
            for (std::uint64_t a = 1; a < b[s]; ++a) {
                Fp c = lucas(b[s], a, p);
                v[idx(s, b, a)] = c;
                nonzero |= c != 0;
            }
        if (nonzero) {
            fam.push_back(std::move(v));
            fam_names.push_back("shared" + bstr(b));
        }
        bool all_powers = std::all_of(b.begin(), b.end(), [&](std::uint64_t x) { return is_p_power(x, p); });
        if (all_powers)
            for (std::size_t s = 0; s < S; ++s)
                if (b[s] >= p) {
                    fam.push_back(p_power_block(sp, (int)s, b, p));
                    fam_names.push_back("divided" + bstr(b) + "@" + std::to_string(s));
                }
    });
    for (std::size_t s = 0; s < S; ++s)
        for_each_composition(S, N, 1, [&](const std::vector<std::uint64_t>& b) {
            for (std::size_t k = 0; k < S; ++k)
                if (k != s && !is_p_power(b[k], p))
                    return;
            std::uint64_t w = b[s];
            for (std::uint64_t c1 = 1; c1 < w; c1 *= p) {
                std::uint64_t c2 = w - c1;
                if (c2 > c1 && is_p_power(c2, p)) {
                    std::vector<Fp> v(sp.unknowns, 0);
                    v[idx(s, b, c1)] = 1;
                    fam.push_back(std::move(v));
                    fam_names.push_back("skew" + bstr(b) + "@" + std::to_string(s));
                }
            }
        });
    sp.family_size = fam.size();

    CheckReport& r = sp.check;
    r.id = "multifold.solution_space";
    r.statement = "coefficient tables satisfying counit, coassociativity and commutation are spanned by the shared, "
                  "divided p-power and skew families";
    r.params = {{"S", S}, {"target_degree", target_degree}, {"p", p}};
    for (std::size_t f = 0; f < fam.size(); ++f) {
        ++r.cases;
        if (!sp.is_solution(fam[f])) {
            sp.families_in_kernel = false;
            r.fail("family " + fam_names[f] + " violates the constraints");
        }
    }
    FpSparseMatrix Fm(fam.size(), sp.unknowns, p);
    for (std::size_t f = 0; f < fam.size(); ++f)
        for (std::size_t c = 0; c < sp.unknowns; ++c)
            if (fam[f][c])
                Fm.set(f, c, fam[f][c]);
    sp.family_rank = rank(Fm);
    ++r.cases;
    sp.matches = sp.families_in_kernel && sp.family_rank == sp.kernel_dim;
    if (sp.family_rank != sp.kernel_dim)
        r.fail("family rank " + std::to_string(sp.family_rank) + " vs solution dimension " +
               std::to_string(sp.kernel_dim));
    r.details = {{"unknowns", sp.unknowns},
                 {"equations", sp.equations},
                 {"counit_equations", counit_rows},
                 {"coassociativity_equations", coassoc_rows},
                 {"commutation_equations", commute_rows},
                 {"solution_dimension", sp.kernel_dim},
                 {"family_rank", sp.family_rank},
                 {"families", fam_names}};
    return sp;
}

}  // namespace thh
