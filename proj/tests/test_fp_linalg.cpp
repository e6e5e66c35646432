#include "doctest.h"

#include "thhcalc/fp_linalg.hpp"

#include <random>

using namespace thh;

namespace {

FpSparseMatrix random_matrix(std::size_t r, std::size_t c, Fp p, std::mt19937& rng, int density = 2)
{
    FpSparseMatrix m(r, c, p);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j)
            if ((int)(rng() % density) == 0)
                m.set(i, j, rng() % p);
    return m;
}

// every vector of F_p^n, in lexicographic order
std::vector<std::vector<Fp>> all_vectors(std::size_t n, Fp p)
{
    std::vector<std::vector<Fp>> out{{}};
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<std::vector<Fp>> next;
        for (const auto& v : out)
            for (Fp a = 0; a < p; ++a) {
                auto w = v;
                w.push_back(a);
                next.push_back(w);
            }
        out.swap(next);
    }
    return out;
}

bool is_zero(const std::vector<Fp>& v)
{
    for (Fp a : v)
        if (a)
            return false;
    return true;
}

}  // namespace

TEST_CASE("rank examples")
{
    CHECK(rank(FpSparseMatrix::identity(3, 5)) == 3);
    CHECK(rank(FpSparseMatrix::from_dense({{1, 2}, {2, 4}}, 2, 5)) == 1);
    CHECK(rank(FpSparseMatrix(4, 7, 3)) == 0);
}

TEST_CASE("kernel and membership examples")
{
    CHECK(kernel_basis(FpSparseMatrix::identity(2, 3)).empty());
    auto k = kernel_basis(FpSparseMatrix::from_dense({{1, 1}}, 2, 3));
    REQUIRE(k.size() == 1);
    CHECK((k[0][0] + k[0][1]) % 3 == 0);
    CHECK_FALSE(is_zero(k[0]));
    auto k2 = kernel_basis(FpSparseMatrix::from_dense({{1, 2}, {2, 4}}, 2, 5));
    REQUIRE(k2.size() == 1);
    CHECK((k2[0][0] + 2 * k2[0][1]) % 5 == 0);

    std::vector<Fp> b{1, 2, 0};
    CHECK(solve_membership(FpSparseMatrix::identity(3, 7), b) == b);
    CHECK_FALSE(solve_membership(FpSparseMatrix(2, 2, 3), {1, 0}).has_value());
    auto x = solve_membership(FpSparseMatrix::from_dense({{1}, {2}}, 1, 5), {2, 4});
    REQUIRE(x);
    CHECK(*x == std::vector<Fp>{2});
}

TEST_CASE("homology examples")
{
    CHECK(homology_dim(FpSparseMatrix(2, 0, 3), FpSparseMatrix(0, 2, 3)) == 2);
    CHECK(homology_dim(FpSparseMatrix::identity(1, 3), FpSparseMatrix(0, 1, 3)) == 0);
    CHECK(homology_dim(FpSparseMatrix(2, 0, 3), FpSparseMatrix::from_dense({{1, 1}}, 2, 3)) == 1);
    // d_out d_in != 0
    CHECK_THROWS_AS(homology_dim(FpSparseMatrix::identity(1, 3), FpSparseMatrix::identity(1, 3)), ContractError);
}

TEST_CASE("kernel, rank and membership against exhaustive search")
{
    std::mt19937 rng(12345);
    for (Fp p : {3u, 5u}) {
        std::size_t max_cols = p == 3 ? 6 : 4;
        for (int trial = 0; trial < 60; ++trial) {
            std::size_t r = 1 + rng() % 5, c = 1 + rng() % max_cols;
            auto m = random_matrix(r, c, p, rng);
            std::size_t zeros = 0;
            auto vecs = all_vectors(c, p);
            for (const auto& v : vecs)
                zeros += is_zero(m.apply(v));
            auto kb = kernel_basis(m);
            std::size_t expect = 1;
            for (std::size_t i = 0; i < kb.size(); ++i)
                expect *= p;
            CHECK(zeros == expect);
            CHECK(rank(m) + kb.size() == c);
            for (const auto& v : kb)
                CHECK(is_zero(m.apply(v)));

            // membership: b in the image iff some v maps to it
            std::vector<Fp> b(r);
            for (auto& x : b)
                x = rng() % p;
            bool reachable = false;
            for (const auto& v : vecs)
                if (m.apply(v) == b) {
                    reachable = true;
                    break;
                }
            auto sol = solve_membership(m, b);
            CHECK(sol.has_value() == reachable);
            if (sol)
                CHECK(m.apply(*sol) == b);
        }
    }
}

TEST_CASE("dense and sparse elimination agree")
{
    std::mt19937 rng(7);
    for (int trial = 0; trial < 40; ++trial) {
        auto m = random_matrix(10 + rng() % 40, 10 + rng() % 40, 7, rng, 1 + trial % 6);
        CHECK(rank(m, detail::Method::Dense) == rank(m, detail::Method::Sparse));
        CHECK(rank(m) == rank(m.transpose()));
    }
}

TEST_CASE("homology of a random complex matches rank bookkeeping")
{
    std::mt19937 rng(99);
    for (int trial = 0; trial < 30; ++trial) {
        // d_out = A, d_in = columns of ker A
        auto a = random_matrix(4, 7, 3, rng);
        auto kb = kernel_basis(a);
        std::size_t use = kb.empty() ? 0 : rng() % (kb.size() + 1);
        FpSparseMatrix d_in(7, use, 3);
        for (std::size_t j = 0; j < use; ++j)
            for (std::size_t i = 0; i < 7; ++i)
                d_in.set(i, j, kb[j][i]);
        CHECK(homology_dim(d_in, a) == kb.size() - use);
    }
}

TEST_CASE("field arithmetic and preconditions")
{
    Field F(7);
    for (Fp a = 1; a < 7; ++a)
        CHECK(F.mul(a, F.inv(a)) == 1);
    CHECK(F.reduce(-1) == 6);
    CHECK(F.pow(3, 6) == 1);
    CHECK_THROWS_AS(Field(9), ContractError);
    CHECK(is_prime(65521));
    CHECK_FALSE(is_prime(1));
}
