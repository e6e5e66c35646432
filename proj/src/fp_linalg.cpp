#include "thhcalc/fp_linalg.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace thh {

bool is_prime(std::uint64_t n)
{
    if (n < 2)
        return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0)
            return false;
    return true;
}

Field::Field(std::uint32_t p) : p_(p)
{
    if (p < 3 || p >= (1u << 16) || !is_prime(p))
        throw ContractError("modulus must be an odd prime below 65536, got " + std::to_string(p));
}

Fp Field::reduce(long long a) const
{
    long long r = a % (long long)p_;
    return static_cast<Fp>(r < 0 ? r + p_ : r);
}

Fp Field::pow(Fp a, std::uint64_t e) const
{
    Fp r = 1;
    while (e) {
        if (e & 1)
            r = mul(r, a);
        a = mul(a, a);
        e >>= 1;
    }
    return r;
}

Fp Field::inv(Fp a) const
{
    if (a % p_ == 0)
        throw ContractError("inverse of zero in F_p");
    return pow(a, p_ - 2);
}

FpSparseMatrix::FpSparseMatrix(std::size_t rows, std::size_t cols, Fp p)
    : rows_(rows), cols_(cols), field_(p), data_(rows)
{
}

FpSparseMatrix FpSparseMatrix::identity(std::size_t n, Fp p)
{
    FpSparseMatrix m(n, n, p);
    for (std::size_t i = 0; i < n; ++i)
        m.data_[i].emplace_back((std::uint32_t)i, 1);
    return m;
}

FpSparseMatrix FpSparseMatrix::from_dense(const std::vector<std::vector<long long>>& rows, std::size_t cols, Fp p)
{
    FpSparseMatrix m(rows.size(), cols, p);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != cols)
            throw ContractError("ragged dense matrix");
        for (std::size_t c = 0; c < cols; ++c)
            m.set(r, c, m.field_.reduce(rows[r][c]));
    }
    return m;
}

void FpSparseMatrix::check_index(std::size_t r, std::size_t c) const
{
    if (r >= rows_ || c >= cols_)
        throw ContractError("matrix index out of range");
}

Fp FpSparseMatrix::get(std::size_t r, std::size_t c) const
{
    check_index(r, c);
    const auto& row = data_[r];
    auto it = std::lower_bound(row.begin(), row.end(), std::make_pair((std::uint32_t)c, Fp(0)));
    return (it != row.end() && it->first == c) ? it->second : 0;
}

void FpSparseMatrix::set(std::size_t r, std::size_t c, Fp v)
{
    check_index(r, c);
    v %= field_.p();
    auto& row = data_[r];
    auto it = std::lower_bound(row.begin(), row.end(), std::make_pair((std::uint32_t)c, Fp(0)));
    if (it != row.end() && it->first == c) {
        if (v == 0)
            row.erase(it);
        else
            it->second = v;
    }
    else if (v != 0) {
        row.insert(it, {(std::uint32_t)c, v});
    }
}

void FpSparseMatrix::add(std::size_t r, std::size_t c, Fp v)
{
    check_index(r, c);
    set(r, c, field_.add(get(r, c), v % field_.p()));
}

std::size_t FpSparseMatrix::nonzeros() const
{
    std::size_t n = 0;
    for (const auto& row : data_)
        n += row.size();
    return n;
}

std::vector<Fp> FpSparseMatrix::apply(const std::vector<Fp>& x) const
{
    if (x.size() != cols_)
        throw ContractError("vector length does not match column count");
    std::vector<Fp> y(rows_, 0);
    for (std::size_t r = 0; r < rows_; ++r) {
        Fp acc = 0;
        for (auto [c, v] : data_[r])
            acc = field_.add(acc, field_.mul(v, x[c] % field_.p()));
        y[r] = acc;
    }
    return y;
}

FpSparseMatrix FpSparseMatrix::operator*(const FpSparseMatrix& rhs) const
{
    if (cols_ != rhs.rows_)
        throw ContractError("matrix product dimension mismatch");
    if (field_.p() != rhs.prime())
        throw ContractError("matrix product over different primes");
    FpSparseMatrix out(rows_, rhs.cols_, field_.p());
    std::vector<Fp> acc(rhs.cols_, 0);
    std::vector<char> seen(rhs.cols_, 0);
    std::vector<std::uint32_t> touched;
    for (std::size_t r = 0; r < rows_; ++r) {
        for (auto [k, a] : data_[r])
            for (auto [c, b] : rhs.data_[k]) {
                if (!seen[c]) {
                    seen[c] = 1;
                    touched.push_back(c);
                }
                acc[c] = field_.add(acc[c], field_.mul(a, b));
            }
        std::sort(touched.begin(), touched.end());
        for (auto c : touched) {
            if (acc[c])
                out.data_[r].emplace_back(c, acc[c]);
            acc[c] = 0;
            seen[c] = 0;
        }
        touched.clear();
    }
    return out;
}

FpSparseMatrix FpSparseMatrix::transpose() const
{
    FpSparseMatrix t(cols_, rows_, field_.p());
    for (std::size_t r = 0; r < rows_; ++r)
        for (auto [c, v] : data_[r])
            t.data_[c].emplace_back((std::uint32_t)r, v);
    return t;
}

std::vector<std::vector<Fp>> FpSparseMatrix::to_dense() const
{
    std::vector<std::vector<Fp>> d(rows_, std::vector<Fp>(cols_, 0));
    for (std::size_t r = 0; r < rows_; ++r)
        for (auto [c, v] : data_[r])
            d[r][c] = v;
    return d;
}

namespace detail {
namespace {

constexpr std::size_t kDenseLimit = 64;

// a - f*b on sorted sparse rows
SparseRow axpy(const SparseRow& a, Fp f, const SparseRow& b, const Field& F)
{
    SparseRow out;
    out.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    Fp nf = F.neg(f);
    while (i < a.size() || j < b.size()) {
        if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
            out.push_back(a[i++]);
        }
        else if (i == a.size() || b[j].first < a[i].first) {
            out.emplace_back(b[j].first, F.mul(nf, b[j].second));
            ++j;
        }
        else {
            Fp v = F.add(a[i].second, F.mul(nf, b[j].second));
            if (v)
                out.emplace_back(a[i].first, v);
            ++i;
            ++j;
        }
    }
    return out;
}

void normalize(SparseRow& row, const Field& F)
{
    Fp inv = F.inv(row.front().second);
    for (auto& e : row)
        e.second = F.mul(e.second, inv);
}

Echelon dense_echelon(const FpSparseMatrix& m, bool reduced)
{
    const Field& F = m.field();
    auto a = m.to_dense();
    const std::size_t R = m.rows(), C = m.cols();
    std::size_t r = 0;
    std::vector<std::uint32_t> pcols;
    for (std::size_t c = 0; c < C && r < R; ++c) {
        std::size_t piv = r;
        while (piv < R && a[piv][c] == 0)
            ++piv;
        if (piv == R)
            continue;
        std::swap(a[piv], a[r]);
        Fp inv = F.inv(a[r][c]);
        for (std::size_t k = c; k < C; ++k)
            a[r][k] = F.mul(a[r][k], inv);
        std::size_t start = reduced ? 0 : r + 1;
        for (std::size_t i = start; i < R; ++i) {
            if (i == r || a[i][c] == 0)
                continue;
            Fp f = a[i][c];
            for (std::size_t k = c; k < C; ++k)
                if (a[r][k])
                    a[i][k] = F.sub(a[i][k], F.mul(f, a[r][k]));
        }
        pcols.push_back((std::uint32_t)c);
        ++r;
    }
    Echelon e;
    e.pivot_cols = pcols;
    for (std::size_t i = 0; i < pcols.size(); ++i) {
        SparseRow row;
        for (std::size_t k = 0; k < C; ++k)
            if (a[i][k])
                row.emplace_back((std::uint32_t)k, a[i][k]);
        e.pivot_rows.push_back(std::move(row));
    }
    return e;
}

Echelon sparse_echelon(const FpSparseMatrix& m, bool reduced, std::optional<std::uint32_t> pinned_last)
{
    const Field& F = m.field();
    const std::size_t C = m.cols();
    // Columns with fewer entries are eliminated first; ties keep index order.
    std::vector<std::size_t> count(C, 0);
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (auto [c, v] : m.row(r))
            ++count[c];
    std::vector<std::uint32_t> perm(C);  // new -> old
    std::iota(perm.begin(), perm.end(), 0u);
    std::stable_sort(perm.begin(), perm.end(), [&](std::uint32_t x, std::uint32_t y) {
        bool px = pinned_last && *pinned_last == x, py = pinned_last && *pinned_last == y;
        if (px != py)
            return py;
        return count[x] < count[y];
    });
    std::vector<std::uint32_t> pos(C);  // old -> new
    for (std::uint32_t i = 0; i < C; ++i)
        pos[perm[i]] = i;

    std::map<std::uint32_t, SparseRow> pivots;  // keyed by leading (new) column
    for (std::size_t r = 0; r < m.rows(); ++r) {
        SparseRow row;
        row.reserve(m.row(r).size());
        for (auto [c, v] : m.row(r))
            row.emplace_back(pos[c], v);
        std::sort(row.begin(), row.end());
        while (!row.empty()) {
            auto it = pivots.find(row.front().first);
            if (it == pivots.end())
                break;
            row = axpy(row, row.front().second, it->second, F);
        }
        if (row.empty())
            continue;
        normalize(row, F);
        pivots.emplace(row.front().first, std::move(row));
    }

    if (reduced) {
        for (auto it = pivots.rbegin(); it != pivots.rend(); ++it) {
            SparseRow& row = it->second;
            std::size_t i = 1;
            while (i < row.size()) {
                auto pit = pivots.find(row[i].first);
                if (pit == pivots.end() || pit->first == it->first) {
                    ++i;
                    continue;
                }
                Fp f = row[i].second;
                row = axpy(row, f, pit->second, F);
                // entries before position i are untouched: pivot rows only reach columns >= their lead
            }
        }
    }

    Echelon e;
    for (auto& [lead, row] : pivots) {
        SparseRow orig;
        orig.reserve(row.size());
        for (auto [c, v] : row)
            orig.emplace_back(perm[c], v);
        std::sort(orig.begin(), orig.end());
        e.pivot_cols.push_back(perm[lead]);
        e.pivot_rows.push_back(std::move(orig));
    }
    return e;
}

}  // namespace

Echelon echelon(const FpSparseMatrix& m, bool reduced, Method method, std::optional<std::uint32_t> pinned_last)
{
    if (pinned_last && *pinned_last >= m.cols())
        throw ContractError("pinned column out of range");
    if (method == Method::Auto)
        method = (m.rows() < kDenseLimit && m.cols() < kDenseLimit) ? Method::Dense : Method::Sparse;
    if (method == Method::Dense) {
        if (pinned_last && *pinned_last + 1 != m.cols())
            throw ContractError("dense elimination only supports pinning the last column");
        return dense_echelon(m, reduced);
    }
    return sparse_echelon(m, reduced, pinned_last);
}

}  // namespace detail

std::size_t rank(const FpSparseMatrix& m, detail::Method method)
{
    return detail::echelon(m, false, method).pivot_cols.size();
}

std::size_t rank(const FpSparseMatrix& m)
{
    return rank(m, detail::Method::Auto);
}

std::vector<std::vector<Fp>> kernel_basis(const FpSparseMatrix& m)
{
    auto e = detail::echelon(m, true);
    const Field& F = m.field();
    std::vector<char> is_pivot(m.cols(), 0);
    for (auto c : e.pivot_cols)
        is_pivot[c] = 1;
    // column f of the reduced rows, gathered per free column
    std::vector<std::vector<std::pair<std::uint32_t, Fp>>> by_free(m.cols());
    for (std::size_t i = 0; i < e.pivot_rows.size(); ++i)
        for (auto [c, v] : e.pivot_rows[i])
            if (!is_pivot[c])
                by_free[c].emplace_back(e.pivot_cols[i], v);
    std::vector<std::vector<Fp>> basis;
    for (std::uint32_t f = 0; f < m.cols(); ++f) {
        if (is_pivot[f])
            continue;
        std::vector<Fp> v(m.cols(), 0);
        v[f] = 1;
        for (auto [pc, val] : by_free[f])
            v[pc] = F.neg(val);
        basis.push_back(std::move(v));
    }
    return basis;
}

std::optional<std::vector<Fp>> solve_membership(const FpSparseMatrix& m, const std::vector<Fp>& b)
{
    if (b.size() != m.rows())
        throw ContractError("right-hand side length does not match row count");
    const std::size_t C = m.cols();
    FpSparseMatrix aug(m.rows(), C + 1, m.prime());
    for (std::size_t r = 0; r < m.rows(); ++r) {
        for (auto [c, v] : m.row(r))
            aug.set(r, c, v);
        aug.set(r, C, b[r] % m.prime());
    }
    auto e = detail::echelon(aug, true, detail::Method::Auto, (std::uint32_t)C);
    std::vector<Fp> x(C, 0);
    for (std::size_t i = 0; i < e.pivot_cols.size(); ++i) {
        if (e.pivot_cols[i] == C)
            return std::nullopt;
        const auto& row = e.pivot_rows[i];
        if (!row.empty() && row.back().first == C)
            x[e.pivot_cols[i]] = row.back().second;
    }
    return x;
}

std::size_t homology_dim(const FpSparseMatrix& d_in, const FpSparseMatrix& d_out)
{
    if (d_in.rows() != d_out.cols())
        throw ContractError("homology_dim: d_in target and d_out source have different dimensions");
    if (!(d_out * d_in).is_zero())
        throw ContractError("homology_dim: d_out * d_in is not zero");
    std::size_t middle = d_out.cols();
    return middle - rank(d_out) - rank(d_in);
}

}  // namespace thh
