#pragma once

#include <cstdint>
#include <vector>

namespace thh {

// base-p digits, least significant first
std::vector<std::uint64_t> digits(std::uint64_t n, std::uint64_t p);
std::uint64_t digit_sum(std::uint64_t n, std::uint64_t p);
bool is_power_of(std::uint64_t n, std::uint64_t p);
// exponent m with n = p^m; n must be a power of p
unsigned log_p(std::uint64_t n, std::uint64_t p);
// p^e, saturating at UINT64_MAX
std::uint64_t ipow(std::uint64_t p, unsigned e);
std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b);
std::uint64_t sat_add(std::uint64_t a, std::uint64_t b);

// binom(n, k) mod p via base-p digits
std::uint32_t lucas(std::uint64_t n, std::uint64_t k, std::uint32_t p);

}  // namespace thh
