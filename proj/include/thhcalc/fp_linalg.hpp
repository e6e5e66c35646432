#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace thh {

using Fp = std::uint32_t;

// Raised when a documented precondition of an operation does not hold.
class ContractError : public std::logic_error
{
public:
    using std::logic_error::logic_error;
};

// Raised in strict mode when a product leaves the degree window.
class OverflowError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

// Raised when an input lies outside the implemented domain of a formula.
class UnsupportedError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

bool is_prime(std::uint64_t n);

class Field
{
public:
    // p must be an odd prime below 2^16 so products fit in 32 bits.
    explicit Field(std::uint32_t p);

    Fp p() const { return p_; }
    Fp reduce(long long a) const;
    Fp add(Fp a, Fp b) const
    {
        Fp s = a + b;
        return s >= p_ ? s - p_ : s;
    }
    Fp sub(Fp a, Fp b) const { return a >= b ? a - b : a + p_ - b; }
    Fp neg(Fp a) const { return a == 0 ? 0 : p_ - a; }
    Fp mul(Fp a, Fp b) const { return static_cast<Fp>((std::uint64_t)a * b % p_); }
    Fp pow(Fp a, std::uint64_t e) const;
    Fp inv(Fp a) const;

private:
    Fp p_;
};

using SparseRow = std::vector<std::pair<std::uint32_t, Fp>>;

class FpSparseMatrix
{
public:
    FpSparseMatrix(std::size_t rows, std::size_t cols, Fp p);

    static FpSparseMatrix identity(std::size_t n, Fp p);
    static FpSparseMatrix from_dense(const std::vector<std::vector<long long>>& rows, std::size_t cols, Fp p);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    Fp prime() const { return field_.p(); }
    const Field& field() const { return field_; }

    Fp get(std::size_t r, std::size_t c) const;
    void set(std::size_t r, std::size_t c, Fp v);
    void add(std::size_t r, std::size_t c, Fp v);
    const SparseRow& row(std::size_t r) const { return data_[r]; }
    std::size_t nonzeros() const;
    bool is_zero() const { return nonzeros() == 0; }

    std::vector<Fp> apply(const std::vector<Fp>& x) const;
    FpSparseMatrix operator*(const FpSparseMatrix& rhs) const;
    FpSparseMatrix transpose() const;
    std::vector<std::vector<Fp>> to_dense() const;

private:
    void check_index(std::size_t r, std::size_t c) const;

    std::size_t rows_, cols_;
    Field field_;
    std::vector<SparseRow> data_;
};

std::size_t rank(const FpSparseMatrix& m);
std::vector<std::vector<Fp>> kernel_basis(const FpSparseMatrix& m);
std::optional<std::vector<Fp>> solve_membership(const FpSparseMatrix& m, const std::vector<Fp>& b);
std::size_t homology_dim(const FpSparseMatrix& d_in, const FpSparseMatrix& d_out);

namespace detail {

// Row echelon data in the original column indexing. When reduced is set the
// pivot rows are in reduced form: no pivot row has an entry in another pivot column.
struct Echelon
{
    std::vector<std::uint32_t> pivot_cols;
    std::vector<SparseRow> pivot_rows;  // leading entry 1 at pivot_cols[i]
};

enum class Method { Auto, Dense, Sparse };

// pinned_last: column index that must be ordered after every other column.
Echelon echelon(const FpSparseMatrix& m, bool reduced, Method method = Method::Auto,
                std::optional<std::uint32_t> pinned_last = std::nullopt);

}  // namespace detail

std::size_t rank(const FpSparseMatrix& m, detail::Method method);

}  // namespace thh
