#pragma once

#include <cstdint>
#include <vector>

namespace aslab::field_core {

bool is_prime(std::uint64_t n);

// Distinct prime divisors in increasing order.
std::vector<std::uint64_t> prime_divisors(std::uint64_t n);

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t mod);

// Inverse of a modulo a prime p; a must be nonzero mod p.
std::uint32_t inv_mod_prime(std::uint32_t a, std::uint32_t p);

// p^e, or 0 when the result would exceed `limit`.
std::uint64_t checked_pow(std::uint64_t p, std::uint32_t e, std::uint64_t limit);

}  // namespace aslab::field_core
