#include "thhcalc/graded_hopf.hpp"

#include "thhcalc/arith.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace thh {

const char* kind_name(GenKind k)
{
    switch (k) {
    case GenKind::Exterior: return "exterior";
    case GenKind::Polynomial: return "polynomial";
    case GenKind::Truncated: return "truncated";
    case GenKind::DividedPower: return "divided_power";
    }
    return "?";
}

GenKind kind_from_name(const std::string& s)
{
    if (s == "exterior")
        return GenKind::Exterior;
    if (s == "polynomial")
        return GenKind::Polynomial;
    if (s == "truncated")
        return GenKind::Truncated;
    if (s == "divided_power")
        return GenKind::DividedPower;
    throw ContractError("unknown generator kind '" + s + "'");
}

AlgebraSpec::AlgebraSpec(Fp p, int degree_bound) : field_(p), degree_bound_(degree_bound)
{
    if (degree_bound < 0)
        throw ContractError("negative degree bound");
}

AlgebraSpec::AlgebraSpec(Fp p, int degree_bound, const std::vector<GeneratorSpec>& gens)
    : AlgebraSpec(p, degree_bound)
{
    for (const auto& g : gens)
        add_generator(g);
}

std::size_t AlgebraSpec::add_generator(GeneratorSpec g)
{
    if (g.degree <= 0)
        throw ContractError("generator '" + g.label + "' must have positive degree");
    bool odd = g.degree % 2 != 0;
    if (odd != (g.kind == GenKind::Exterior))
        throw ContractError("generator '" + g.label + "': exterior generators have odd degree, all others even");
    if (g.kind == GenKind::Truncated) {
        if (g.height == 0)
            g.height = (int)prime();
        if (g.height < 2)
            throw ContractError("truncation height must be at least 2");
    }
    else {
        g.height = 0;
    }
    if (index_.count(g.label))
        throw ContractError("duplicate generator label '" + g.label + "'");
    index_.emplace(g.label, gens_.size());
    gens_.push_back(std::move(g));
    return gens_.size() - 1;
}

void AlgebraSpec::set_degree_bound(int d)
{
    if (d < 0)
        throw ContractError("negative degree bound");
    degree_bound_ = d;
}

std::size_t AlgebraSpec::index_of(const std::string& label) const
{
    auto it = index_.find(label);
    if (it == index_.end())
        throw ContractError("unknown generator '" + label + "'");
    return it->second;
}

std::uint32_t AlgebraSpec::max_exponent(std::size_t g) const
{
    const auto& gs = gens_.at(g);
    switch (gs.kind) {
    case GenKind::Exterior: return 1;
    case GenKind::Truncated: return (std::uint32_t)gs.height - 1;
    default: return UINT32_MAX;
    }
}

Monomial::Monomial(std::vector<Factor> factors) : f_(std::move(factors))
{
    std::sort(f_.begin(), f_.end());
    for (std::size_t i = 0; i < f_.size(); ++i) {
        if (f_[i].second == 0)
            throw ContractError("monomial factor with zero exponent");
        if (i && f_[i].first == f_[i - 1].first)
            throw ContractError("monomial with repeated generator");
    }
}

Monomial Monomial::gen(std::size_t g, std::uint32_t e)
{
    if (e == 0)
        return Monomial();
    return Monomial({{(std::uint32_t)g, e}});
}

std::uint32_t Monomial::exponent(std::size_t g) const
{
    for (auto [i, e] : f_)
        if (i == g)
            return e;
    return 0;
}

Element Element::one(Fp p)
{
    return of(Monomial(), p);
}

Element Element::of(const Monomial& m, Fp p, Fp c)
{
    Element e(p);
    e.add_term(m, c);
    return e;
}

Fp Element::coefficient(const Monomial& m) const
{
    auto it = terms_.find(m);
    return it == terms_.end() ? 0 : it->second;
}

void Element::add_term(const Monomial& m, Fp c)
{
    c %= p_;
    if (c == 0)
        return;
    auto [it, inserted] = terms_.emplace(m, c);
    if (!inserted) {
        it->second = (it->second + c) % p_;
        if (it->second == 0)
            terms_.erase(it);
    }
}

Element& Element::operator+=(const Element& o)
{
    if (o.p_ != p_)
        throw ContractError("adding elements over different primes");
    for (const auto& [m, c] : o.terms_)
        add_term(m, c);
    return *this;
}

Element& Element::operator-=(const Element& o)
{
    if (o.p_ != p_)
        throw ContractError("subtracting elements over different primes");
    for (const auto& [m, c] : o.terms_)
        add_term(m, p_ - c);
    return *this;
}

Element Element::operator+(const Element& o) const
{
    Element r = *this;
    r += o;
    return r;
}

Element Element::operator-(const Element& o) const
{
    Element r = *this;
    r -= o;
    return r;
}

Element Element::scaled(Fp c) const
{
    Element r(p_);
    c %= p_;
    if (c == 0)
        return r;
    for (const auto& [m, v] : terms_)
        r.terms_.emplace(m, (Fp)((std::uint64_t)v * c % p_));
    return r;
}

void TensorSquareElement::add_term(const Monomial& a, const Monomial& b, Fp c)
{
    c %= p_;
    if (c == 0)
        return;
    auto [it, inserted] = terms_.emplace(Key{a, b}, c);
    if (!inserted) {
        it->second = (it->second + c) % p_;
        if (it->second == 0)
            terms_.erase(it);
    }
}

TensorSquareElement& TensorSquareElement::operator+=(const TensorSquareElement& o)
{
    for (const auto& [k, c] : o.terms_)
        add_term(k.first, k.second, c);
    return *this;
}

int degree(const Monomial& m, const AlgebraSpec& spec)
{
    long long d = 0;
    for (auto [g, e] : m.factors())
        d += (long long)e * spec.generator(g).degree;
    if (d > INT32_MAX)
        throw OverflowError("monomial degree exceeds int range");
    return (int)d;
}

int degree(const Element& a, const AlgebraSpec& spec)
{
    if (a.is_zero())
        throw ContractError("degree of the zero element");
    int d = degree(a.terms().begin()->first, spec);
    for (const auto& [m, c] : a.terms())
        if (degree(m, spec) != d)
            throw ContractError("element is not homogeneous");
    return d;
}

bool is_homogeneous(const Element& a, const AlgebraSpec& spec)
{
    if (a.is_zero())
        return true;
    int d = degree(a.terms().begin()->first, spec);
    for (const auto& [m, c] : a.terms())
        if (degree(m, spec) != d)
            return false;
    return true;
}

void validate(const Monomial& m, const AlgebraSpec& spec)
{
    for (auto [g, e] : m.factors()) {
        if (g >= spec.size())
            throw ContractError("monomial refers to an unknown generator");
        if (e > spec.max_exponent(g))
            throw ContractError("exponent exceeds the nilpotence bound of '" + spec.generator(g).label + "'");
    }
}

namespace {

bool odd_gen(const AlgebraSpec& spec, std::uint32_t g)
{
    return spec.generator(g).degree % 2 != 0;
}

// per-generator coefficient of x^i * x^j (or gamma_i * gamma_j)
Fp merge_coefficient(const AlgebraSpec& spec, std::uint32_t g, std::uint32_t i, std::uint32_t j)
{
    const auto& gs = spec.generator(g);
    switch (gs.kind) {
    case GenKind::Exterior: return 0;
    case GenKind::Polynomial: return 1;
    case GenKind::Truncated: return (i + j < (std::uint32_t)gs.height) ? 1 : 0;
    case GenKind::DividedPower: return lucas(i + j, i, spec.prime());
    }
    return 0;
}

// number of transpositions of odd factors needed to sort a*b into generator order
bool koszul_odd(const Monomial& a, const Monomial& b, const AlgebraSpec& spec)
{
    bool s = false;
    for (auto [h, eh] : b.factors()) {
        if (!odd_gen(spec, h))
            continue;
        for (auto [g, eg] : a.factors())
            if (g > h && odd_gen(spec, g))
                s = !s;
    }
    return s;
}

}  // namespace

std::pair<Fp, Monomial> multiply(const Monomial& a, const Monomial& b, const AlgebraSpec& spec)
{
    const Field& F = spec.field();
    Fp coef = 1;
    std::vector<Monomial::Factor> out;
    const auto &fa = a.factors(), &fb = b.factors();
    std::size_t i = 0, j = 0;
    while (i < fa.size() || j < fb.size()) {
        if (j == fb.size() || (i < fa.size() && fa[i].first < fb[j].first))
            out.push_back(fa[i++]);
        else if (i == fa.size() || fb[j].first < fa[i].first)
            out.push_back(fb[j++]);
        else {
            Fp c = merge_coefficient(spec, fa[i].first, fa[i].second, fb[j].second);
            if (c == 0)
                return {0, Monomial()};
            coef = F.mul(coef, c);
            out.emplace_back(fa[i].first, fa[i].second + fb[j].second);
            ++i;
            ++j;
        }
    }
    if (koszul_odd(a, b, spec))
        coef = F.neg(coef);
    return {coef, Monomial(std::move(out))};
}

Element multiply(const Element& a, const Element& b, const AlgebraSpec& spec, Overflow mode)
{
    const Field& F = spec.field();
    Element r(spec.prime());
    for (const auto& [ma, ca] : a.terms())
        for (const auto& [mb, cb] : b.terms()) {
            auto [c, m] = multiply(ma, mb, spec);
            if (c == 0)
                continue;
            if (degree(m, spec) > spec.degree_bound()) {
                if (mode == Overflow::Strict)
                    throw OverflowError("product exceeds degree bound " + std::to_string(spec.degree_bound()));
                continue;
            }
            r.add_term(m, F.mul(c, F.mul(ca, cb)));
        }
    return r;
}

Element power(const Element& a, unsigned e, const AlgebraSpec& spec, Overflow mode)
{
    Element r = Element::one(spec.prime());
    for (unsigned i = 0; i < e; ++i)
        r = multiply(r, a, spec, mode);
    return r;
}

TensorSquareElement coproduct(const Monomial& m, const AlgebraSpec& spec)
{
    const Field& F = spec.field();
    TensorSquareElement out(spec.prime());
    const auto& fs = m.factors();
    std::vector<Monomial::Factor> left, right;
    std::function<void(std::size_t, Fp, bool, bool)> rec = [&](std::size_t idx, Fp coef, bool sign, bool right_odd) {
        if (idx == fs.size()) {
            out.add_term(Monomial(left), Monomial(right), sign ? F.neg(coef) : coef);
            return;
        }
        auto [g, e] = fs[idx];
        const auto& gs = spec.generator(g);
        for (std::uint32_t i = 0; i <= e; ++i) {
            Fp c = (gs.kind == GenKind::Polynomial || gs.kind == GenKind::Truncated) ? lucas(e, i, spec.prime()) : 1;
            if (c == 0)
                continue;
            bool left_odd = gs.kind == GenKind::Exterior && i == 1;
            bool r_odd = gs.kind == GenKind::Exterior && i == 0;
            if (i)
                left.emplace_back(g, i);
            if (e - i)
                right.emplace_back(g, e - i);
            rec(idx + 1, F.mul(coef, c), sign != (left_odd && right_odd), right_odd != r_odd);
            if (i)
                left.pop_back();
            if (e - i)
                right.pop_back();
        }
    };
    rec(0, 1, false, false);
    return out;
}

TensorSquareElement coproduct(const Element& a, const AlgebraSpec& spec, Overflow mode)
{
    TensorSquareElement out(spec.prime());
    for (const auto& [m, c] : a.terms()) {
        if (mode == Overflow::Strict && degree(m, spec) > spec.degree_bound())
            throw OverflowError("coproduct input exceeds degree bound");
        const auto psi = coproduct(m, spec);
        for (const auto& [k, v] : psi.terms())
            out.add_term(k.first, k.second, spec.field().mul(v, c));
    }
    return out;
}

TensorSquareElement reduced_coproduct(const Element& a, const AlgebraSpec& spec)
{
    TensorSquareElement out = coproduct(a, spec, Overflow::Truncate);
    const Fp p = spec.prime();
    const Monomial one;
    for (const auto& [m, c] : a.terms()) {
        out.add_term(m, one, p - c);
        out.add_term(one, m, p - c);
    }
    Fp eps = counit(a);
    out.add_term(one, one, eps);
    return out;
}

TensorSquareElement tensor(const Element& a, const Element& b)
{
    TensorSquareElement out(a.prime());
    for (const auto& [ma, ca] : a.terms())
        for (const auto& [mb, cb] : b.terms())
            out.add_term(ma, mb, (Fp)((std::uint64_t)ca * cb % a.prime()));
    return out;
}

TensorSquareElement multiply(const TensorSquareElement& x, const TensorSquareElement& y, const AlgebraSpec& spec)
{
    const Field& F = spec.field();
    TensorSquareElement out(spec.prime());
    for (const auto& [k1, c1] : x.terms())
        for (const auto& [k2, c2] : y.terms()) {
            auto [ca, ac] = multiply(k1.first, k2.first, spec);
            if (ca == 0)
                continue;
            auto [cb, bd] = multiply(k1.second, k2.second, spec);
            if (cb == 0)
                continue;
            Fp c = F.mul(F.mul(c1, c2), F.mul(ca, cb));
            if ((degree(k1.second, spec) % 2) && (degree(k2.first, spec) % 2))
                c = F.neg(c);
            out.add_term(ac, bd, c);
        }
    return out;
}

Fp counit(const Element& a)
{
    return a.coefficient(Monomial());
}

std::vector<Monomial> monomials_of_degree(const AlgebraSpec& spec, int t)
{
    std::vector<Monomial> out;
    if (t < 0)
        return out;
    std::vector<std::uint32_t> gens;
    for (std::uint32_t g = 0; g < spec.size(); ++g)
        if (spec.generator(g).degree <= t)
            gens.push_back(g);
    std::vector<Monomial::Factor> cur;
    std::function<void(std::size_t, int)> rec = [&](std::size_t idx, int rem) {
        if (rem == 0) {
            out.emplace_back(cur);
            return;
        }
        if (idx == gens.size())
            return;
        std::uint32_t g = gens[idx];
        int d = spec.generator(g).degree;
        std::uint32_t cap = std::min<std::uint32_t>(spec.max_exponent(g), (std::uint32_t)(rem / d));
        for (std::uint32_t e = 0; e <= cap; ++e) {
            if (e)
                cur.emplace_back(g, e);
            rec(idx + 1, rem - (int)e * d);
            if (e)
                cur.pop_back();
        }
    };
    rec(0, t);
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Monomial> basis(const AlgebraSpec& spec, int t)
{
    if (t > spec.degree_bound())
        throw ContractError("basis requested above the degree bound");
    return monomials_of_degree(spec, t);
}

std::vector<std::size_t> convolve(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b, int D)
{
    std::vector<std::size_t> out(D + 1, 0);
    for (std::size_t i = 0; i < a.size() && (int)i <= D; ++i) {
        if (!a[i])
            continue;
        for (std::size_t j = 0; j < b.size() && (int)(i + j) <= D; ++j)
            out[i + j] += a[i] * b[j];
    }
    return out;
}

std::vector<std::size_t> poincare_series(const AlgebraSpec& spec, int D)
{
    std::vector<std::size_t> s(D + 1, 0);
    if (D < 0)
        return {};
    s[0] = 1;
    for (std::size_t g = 0; g < spec.size(); ++g) {
        const auto& gs = spec.generator(g);
        std::vector<std::size_t> f(D + 1, 0);
        std::uint32_t cap = spec.max_exponent(g);
        for (std::uint64_t e = 0; e <= cap && (std::uint64_t)e * gs.degree <= (std::uint64_t)D; ++e)
            f[e * gs.degree] = 1;
        s = convolve(s, f, D);
    }
    return s;
}

std::vector<Element> primitive_basis(const AlgebraSpec& spec, const std::vector<Monomial>& span)
{
    const Fp p = spec.prime();
    std::map<TensorSquareElement::Key, std::size_t> rows;
    std::vector<std::vector<std::pair<std::size_t, Fp>>> cols(span.size());
    for (std::size_t j = 0; j < span.size(); ++j) {
        auto psi = reduced_coproduct(Element::of(span[j], p), spec);
        for (const auto& [k, c] : psi.terms()) {
            auto [it, ins] = rows.emplace(k, rows.size());
            cols[j].emplace_back(it->second, c);
        }
    }
    FpSparseMatrix m(rows.size(), span.size(), p);
    for (std::size_t j = 0; j < span.size(); ++j)
        for (auto [r, c] : cols[j])
            m.set(r, j, c);
    std::vector<Element> out;
    for (const auto& v : kernel_basis(m)) {
        Element e(p);
        for (std::size_t j = 0; j < v.size(); ++j)
            e.add_term(span[j], v[j]);
        out.push_back(std::move(e));
    }
    return out;
}

std::vector<Element> primitive_basis(const AlgebraSpec& spec, int t)
{
    if (t <= 0)
        return {};
    return primitive_basis(spec, basis(spec, t));
}

std::vector<std::size_t> indecomposable_dims(const AlgebraSpec& spec, int D)
{
    std::vector<std::vector<Monomial>> bases(D + 1);
    for (int t = 1; t <= D; ++t)
        bases[t] = monomials_of_degree(spec, t);
    std::vector<std::size_t> dims(D + 1, 0);
    for (int t = 1; t <= D; ++t) {
        const auto& B = bases[t];
        if (B.empty())
            continue;
        std::map<Monomial, std::size_t> row_of;
        for (std::size_t i = 0; i < B.size(); ++i)
            row_of.emplace(B[i], i);
        // columns: products u*v with 0 < |u| <= |v|; one column per distinct image line
        std::map<std::size_t, Fp> image_rows;
        for (int a = 1; 2 * a <= t; ++a)
            for (std::size_t i = 0; i < bases[a].size(); ++i)
                for (std::size_t j = (2 * a == t ? i : 0); j < bases[t - a].size(); ++j) {
                    auto [c, m] = multiply(bases[a][i], bases[t - a][j], spec);
                    if (c)
                        image_rows.emplace(row_of.at(m), c);
                }
        FpSparseMatrix mat(B.size(), image_rows.size(), spec.prime());
        std::size_t col = 0;
        for (auto [r, c] : image_rows)
            mat.set(r, col++, c);
        dims[t] = B.size() - rank(mat);
    }
    return dims;
}

AlgebraSpec dualize(const AlgebraSpec& spec)
{
    AlgebraSpec out(spec.prime(), spec.degree_bound());
    for (const auto& g : spec.generators()) {
        GeneratorSpec d = g;
        d.label = g.label + "*";
        if (g.kind == GenKind::Exterior)
            d.kind = GenKind::Exterior;
        else if (g.kind == GenKind::DividedPower)
            d.kind = GenKind::Polynomial;
        else
            throw UnsupportedError(std::string("dualize: unsupported generator kind ") + kind_name(g.kind));
        out.add_generator(d);
    }
    return out;
}

std::string to_string(const Monomial& m, const AlgebraSpec& spec)
{
    if (m.is_one())
        return "1";
    std::ostringstream os;
    bool first = true;
    for (auto [g, e] : m.factors()) {
        if (!first)
            os << "·";
        first = false;
        const auto& gs = spec.generator(g);
        if (gs.kind == GenKind::DividedPower)
            os << "γ_" << e << "(" << gs.label << ")";
        else if (e == 1)
            os << gs.label;
        else
            os << gs.label << "^" << e;
    }
    return os.str();
}

std::string to_string(const Element& a, const AlgebraSpec& spec)
{
    if (a.is_zero())
        return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : a.terms()) {
        if (!first)
            os << " + ";
        first = false;
        if (c != 1)
            os << c << "*";
        os << to_string(m, spec);
    }
    return os.str();
}

std::string to_string(const TensorSquareElement& a, const AlgebraSpec& spec)
{
    if (a.is_zero())
        return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [k, c] : a.terms()) {
        if (!first)
            os << " + ";
        first = false;
        if (c != 1)
            os << c << "*";
        os << to_string(k.first, spec) << "⊗" << to_string(k.second, spec);
    }
    return os.str();
}

nlohmann::json to_json(const AlgebraSpec& spec)
{
    nlohmann::json gens = nlohmann::json::array();
    for (const auto& g : spec.generators()) {
        nlohmann::json j = {{"label", g.label}, {"degree", g.degree}, {"kind", kind_name(g.kind)}};
        if (g.kind == GenKind::Truncated)
            j["height"] = g.height;
        gens.push_back(j);
    }
    return {{"schema", "thhcalc/1"}, {"p", spec.prime()}, {"degree_bound", spec.degree_bound()}, {"generators", gens}};
}

AlgebraSpec spec_from_json(const nlohmann::json& j)
{
    if (!j.contains("p") || !j.contains("generators"))
        throw ContractError("algebra JSON needs 'p' and 'generators'");
    AlgebraSpec spec(j.at("p").get<Fp>(), j.value("degree_bound", 0));
    for (const auto& g : j.at("generators")) {
        GeneratorSpec gs;
        gs.label = g.at("label").get<std::string>();
        gs.degree = g.at("degree").get<int>();
        gs.kind = kind_from_name(g.at("kind").get<std::string>());
        gs.height = g.value("height", 0);
        spec.add_generator(gs);
    }
    return spec;
}

nlohmann::json poincare_json(const AlgebraSpec& spec, const std::vector<std::size_t>& dims)
{
    nlohmann::json j = to_json(spec);
    j["dims"] = dims;
    return j;
}

}  // namespace thh
