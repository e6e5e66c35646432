#include "thhcalc/arith.hpp"

#include "thhcalc/fp_linalg.hpp"

#include <limits>

namespace thh {

std::vector<std::uint64_t> digits(std::uint64_t n, std::uint64_t p)
{
    std::vector<std::uint64_t> d;
    while (n) {
        d.push_back(n % p);
        n /= p;
    }
    return d;
}

std::uint64_t digit_sum(std::uint64_t n, std::uint64_t p)
{
    std::uint64_t s = 0;
    while (n) {
        s += n % p;
        n /= p;
    }
    return s;
}

bool is_power_of(std::uint64_t n, std::uint64_t p)
{
    if (n == 0)
        return false;
    while (n % p == 0)
        n /= p;
    return n == 1;
}

unsigned log_p(std::uint64_t n, std::uint64_t p)
{
    if (!is_power_of(n, p))
        throw ContractError("log_p: argument is not a power of p");
    unsigned m = 0;
    while (n > 1) {
        n /= p;
        ++m;
    }
    return m;
}

std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b)
{
    constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
    if (a != 0 && b > kMax / a)
        return kMax;
    return a * b;
}

std::uint64_t sat_add(std::uint64_t a, std::uint64_t b)
{
    constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
    return a > kMax - b ? kMax : a + b;
}

std::uint64_t ipow(std::uint64_t p, unsigned e)
{
    std::uint64_t r = 1;
    while (e--)
        r = sat_mul(r, p);
    return r;
}

std::uint32_t lucas(std::uint64_t n, std::uint64_t k, std::uint32_t p)
{
    if (k > n)
        return 0;
    Field F(p);
    // small binomials mod p from factorials; digits are < p so no factor of p appears
    std::vector<Fp> fact(p, 1);
    for (std::uint32_t i = 1; i < p; ++i)
        fact[i] = F.mul(fact[i - 1], i);
    Fp r = 1;
    while (n || k) {
        std::uint64_t a = n % p, b = k % p;
        if (b > a)
            return 0;
        r = F.mul(r, F.mul(fact[a], F.inv(F.mul(fact[b], fact[a - b]))));
        n /= p;
        k /= p;
    }
    return r;
}

}  // namespace thh
