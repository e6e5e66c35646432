#include "doctest.h"

#include "thhcalc/arith.hpp"

#include <vector>

using namespace thh;

TEST_CASE("lucas agrees with Pascal's triangle mod p")
{
    for (std::uint32_t p : {3u, 5u, 7u, 11u}) {
        std::vector<std::uint32_t> row{1};
        for (std::uint64_t n = 0; n <= 300; ++n) {
            for (std::uint64_t k = 0; k <= n + 3; ++k)
                CHECK(lucas(n, k, p) == (k <= n ? row[k] : 0u));
            std::vector<std::uint32_t> next(n + 2, 1);
            for (std::size_t k = 1; k <= n; ++k)
                next[k] = (row[k - 1] + row[k]) % p;
            row.swap(next);
        }
    }
}

TEST_CASE("lucas examples")
{
    CHECK(lucas(10, 4, 3) == 0);  // C(10,4) = 210
    for (std::uint64_t n : {0ull, 7ull, 1000ull})
        CHECK(lucas(n, 0, 5) == 1);
    for (unsigned i = 1; i <= 4; ++i)
        for (std::uint64_t k = 1; k < ipow(3, i); ++k)
            CHECK(lucas(ipow(3, i), k, 3) == 0);
}

TEST_CASE("digits and powers")
{
    CHECK(digits(0, 3).empty());
    CHECK(digits(11, 3) == std::vector<std::uint64_t>{2, 0, 1});
    for (std::uint64_t n = 0; n < 2000; ++n) {
        std::uint64_t s = 0;
        for (std::uint64_t m = n; m; m /= 5)
            s += m % 5;
        CHECK(digit_sum(n, 5) == s);
    }
    CHECK(is_power_of(1, 3));
    CHECK(is_power_of(243, 3));
    CHECK_FALSE(is_power_of(6, 3));
    CHECK_FALSE(is_power_of(0, 3));
    CHECK(log_p(625, 5) == 4);
    CHECK(ipow(7, 0) == 1);
    CHECK(ipow(2, 70) == UINT64_MAX);
    CHECK(sat_mul(UINT64_MAX / 2, 3) == UINT64_MAX);
    CHECK(sat_add(UINT64_MAX - 1, 5) == UINT64_MAX);
}
