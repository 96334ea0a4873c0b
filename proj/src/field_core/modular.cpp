#include "aslab/field_core/modular.hpp"

#include "aslab/error.hpp"

namespace aslab::field_core {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

std::vector<std::uint64_t> prime_divisors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t mod) {
  unsigned __int128 result = 1 % mod;
  unsigned __int128 b = base % mod;
  while (exp > 0) {
    if (exp & 1) result = result * b % mod;
    b = b * b % mod;
    exp >>= 1;
  }
  return static_cast<std::uint64_t>(result);
}

std::uint32_t inv_mod_prime(std::uint32_t a, std::uint32_t p) {
  require(a % p != 0, ErrorCode::DivisionByZero, "inverse of zero mod " + std::to_string(p));
  return static_cast<std::uint32_t>(pow_mod(a, p - 2, p));
}

std::uint64_t checked_pow(std::uint64_t p, std::uint32_t e, std::uint64_t limit) {
  std::uint64_t r = 1;
  for (std::uint32_t i = 0; i < e; ++i) {
    if (r > limit / p) return 0;
    r *= p;
  }
  return r;
}

}  // namespace aslab::field_core
