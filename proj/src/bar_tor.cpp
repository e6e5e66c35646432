#include "thhcalc/bar_tor.hpp"

#include <algorithm>
#include <functional>

namespace thh {

TruncatedAlgebra::TruncatedAlgebra(const AlgebraSpec& spec, int D) : spec_(spec), D_(D)
{
    spec_.set_degree_bound(std::max(D, spec.degree_bound()));
    bases_.resize(D + 1);
    index_.resize(D + 1);
    for (int t = 0; t <= D; ++t) {
        bases_[t] = monomials_of_degree(spec_, t);
        for (std::size_t i = 0; i < bases_[t].size(); ++i)
            index_[t].emplace(bases_[t][i], i);
    }
}

std::size_t TruncatedAlgebra::index(int t, const Monomial& m) const
{
    return index_.at(t).at(m);
}

std::pair<Fp, std::size_t> TruncatedAlgebra::product(int ta, std::size_t ia, int tb, std::size_t ib) const
{
    if (ta + tb > D_)
        return {0, 0};
    auto [c, m] = multiply(bases_[ta][ia], bases_[tb][ib], spec_);
    if (c == 0)
        return {0, 0};
    return {c, index(ta + tb, m)};
}

BarComplex::BarComplex(const TruncatedAlgebra& A) : A_(A) {}

const std::vector<BarComplex::Cell>& BarComplex::cells(int s, int t)
{
    auto key = std::make_pair(s, t);
    auto it = cells_.find(key);
    if (it != cells_.end())
        return it->second;
    std::vector<Cell> out;
    if (s == 0) {
        if (t == 0)
            out.emplace_back();
    }
    else if (t >= s && t <= A_.max_degree()) {
        Cell cur;
        std::function<void(int, int)> rec = [&](int slots, int rem) {
            if (slots == 0) {
                if (rem == 0)
                    out.push_back(cur);
                return;
            }
            int hi = rem - (slots - 1);
            for (int d = 1; d <= hi; ++d) {
                const auto& B = A_.basis(d);
                for (std::uint32_t i = 0; i < B.size(); ++i) {
                    cur.emplace_back(d, i);
                    rec(slots - 1, rem - d);
                    cur.pop_back();
                }
            }
        };
        rec(s, t);
    }
    auto& idx = index_[key];
    for (std::size_t i = 0; i < out.size(); ++i)
        idx.emplace(out[i], i);
    return cells_.emplace(key, std::move(out)).first->second;
}

FpSparseMatrix BarComplex::differential(int s, int t)
{
    const Field& F = A_.spec().field();
    const auto& src = cells(s, t);
    const auto& dst = (s >= 1) ? cells(s - 1, t) : cells(0, -1);
    FpSparseMatrix d(dst.size(), src.size(), F.p());
    if (s < 2)
        return d;
    const auto& dst_index = index_.at({s - 1, t});
    for (std::size_t j = 0; j < src.size(); ++j) {
        const Cell& c = src[j];
        for (int i = 1; i < s; ++i) {
            auto [coef, k] = A_.product(c[i - 1].first, c[i - 1].second, c[i].first, c[i].second);
            if (coef == 0)
                continue;
            Cell merged;
            merged.reserve(s - 1);
            merged.insert(merged.end(), c.begin(), c.begin() + (i - 1));
            merged.emplace_back(c[i - 1].first + c[i].first, (std::uint32_t)k);
            merged.insert(merged.end(), c.begin() + i + 1, c.end());
            Fp v = (i % 2) ? F.neg(coef) : coef;
            d.add(dst_index.at(merged), j, v);
        }
    }
    return d;
}

TorTable tor_dims(const AlgebraSpec& spec, int D, int max_total)
{
    int min_deg = INT32_MAX;
    for (const auto& g : spec.generators())
        min_deg = std::min(min_deg, g.degree);
    TruncatedAlgebra A(spec, D);
    BarComplex bar(A);
    TorTable table;
    for (int t = 0; t <= D; ++t) {
        int s_max = (min_deg == INT32_MAX) ? 0 : t / min_deg;
        for (int s = 0; s <= s_max; ++s) {
            if (max_total >= 0 && s + t > max_total)
                break;
            if (s == 0) {
                if (t == 0)
                    table[{0, 0}] = 1;
                continue;
            }
            FpSparseMatrix d_out = bar.differential(s, t);
            FpSparseMatrix d_in = bar.differential(s + 1, t);
            std::size_t h = homology_dim(d_in, d_out);
            if (h)
                table[{s, t}] = h;
        }
    }
    return table;
}

std::vector<std::size_t> total_degree_dims(const TorTable& table, int D)
{
    std::vector<std::size_t> out(D + 1, 0);
    for (const auto& [st, dim] : table)
        if (st.first + st.second <= D)
            out[st.first + st.second] += dim;
    return out;
}

CheckReport verify_tor_iso(const AlgebraSpec& a, const AlgebraSpec& b, int D)
{
    CheckReport r;
    r.id = "bar_tor.iso";
    r.statement = "total-degree dimensions of Tor over the first algebra equal the dimensions of the second";
    r.params = {{"max_degree", D}, {"p", a.prime()}, {"source_generators", a.size()}, {"target_generators", b.size()}};
    auto tor = total_degree_dims(tor_dims(a, D, D), D);
    auto dims = poincare_series(b, D);
    r.details["tor"] = tor;
    r.details["target"] = dims;
    for (int m = 0; m <= D; ++m) {
        ++r.cases;
        if (tor[m] != dims[m]) {
            r.fail("first mismatch at total degree " + std::to_string(m) + ": Tor " + std::to_string(tor[m]) +
                   " vs " + std::to_string(dims[m]));
            r.details["first_mismatch"] = m;
            break;
        }
    }
    return r;
}

}  // namespace thh
