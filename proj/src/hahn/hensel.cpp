#include "aslab/hahn/hensel.hpp"

#include <stdexcept>

#include "aslab/error.hpp"
#include "aslab/field_core/modular.hpp"

namespace aslab::hahn {

namespace {

HahnElem as_defect(const HahnElem& a, const HahnElem& b, const HahnElem& x) { return a * x.wp() - b; }

}  // namespace

SeriesLift hs_hensel_lift_as(const HahnElem& a, const HahnElem& b, const FFElem& x0, const Rational& cap) {
  require(!a.is_zero() && a.val() == 0, ErrorCode::NonUnit, "leading coefficient a must be a unit (v(a) = 0)");
  require(b.is_zero() || b.val() >= 0, ErrorCode::InvalidArgument, "b must have non-negative valuation");
  require(x0.field() == a.base(), ErrorCode::InvalidArgument, "residue root from a different field");
  require(cap > 0, ErrorCode::InsufficientPrecision, "lift cap must be positive");
  const auto& f = *a.base();
  auto a0 = a.coeff(0);
  auto b0 = b.coeff(0);
  if (f.mul(a0, f.wp(x0.code())) != b0) {
    fail(ErrorCode::NotAResidueRoot, x0.to_string() + " is not a residue root of a(T^p - T) - b");
  }
  Rational work_cap = cap;
  if (a.cap()) work_cap = std::min(work_cap, *a.cap());
  if (b.cap()) work_cap = std::min(work_cap, *b.cap());
  require(work_cap > 0, ErrorCode::InsufficientPrecision, "inputs are not known above valuation 0");

  auto ax = a.exact_part();
  auto bx = b.exact_part();
  HahnElem x = HahnElem::constant(a.base(), a.group(), x0.code());
  SeriesLift out{x, {}};
  std::optional<Rational> prev;
  while (true) {
    auto defect = as_defect(ax, bx, x).truncated(work_cap);
    if (defect.is_zero()) {
      out.defect_valuations.push_back(work_cap);
      break;
    }
    auto v = defect.val();
    out.defect_valuations.push_back(v);
    if (prev && *prev > 0 && v < 2 * *prev) {
      throw std::logic_error("Newton defect valuation failed to double: " + aslab::to_string(*prev) + " -> " +
                             aslab::to_string(v));
    }
    prev = v;
    // f'(x) = -a, so the Newton step is x + f(x)/a.
    x = (x + hs_div(defect.exact_part(), ax, work_cap)).exact_part().truncated(work_cap).exact_part();
  }
  out.root = x.truncated(work_cap);
  return out;
}

PadicInt PadicInt::make(std::uint32_t p, std::uint32_t prec, std::int64_t value) {
  require(field_core::is_prime(p), ErrorCode::InvalidArgument, "p-adic base must be prime");
  require(prec >= 1 && prec <= padic_max_prec(p), ErrorCode::InvalidArgument,
          "p-adic precision must be in [1," + std::to_string(padic_max_prec(p)) + "]");
  PadicInt r{p, prec, 0};
  auto m = static_cast<std::int64_t>(r.modulus());
  r.value = static_cast<std::uint64_t>(((value % m) + m) % m);
  return r;
}

std::uint64_t PadicInt::modulus() const { return field_core::checked_pow(p, prec, std::uint64_t{1} << 62); }

std::string PadicInt::to_string() const {
  return std::to_string(value) + " mod " + std::to_string(p) + "^" + std::to_string(prec);
}

std::uint32_t padic_max_prec(std::uint32_t p) {
  std::uint32_t e = 0;
  std::uint64_t r = 1;
  while (r <= ((std::uint64_t{1} << 62) / p)) {
    r *= p;
    ++e;
  }
  return e;
}

std::uint32_t padic_val(std::uint64_t n, std::uint32_t p, std::uint32_t prec) {
  if (n == 0) return prec;
  std::uint32_t v = 0;
  while (n % p == 0 && v < prec) {
    n /= p;
    ++v;
  }
  return v;
}

namespace {

using u128 = unsigned __int128;

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<u128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  while (e > 0) {
    if (e & 1) r = mulmod(r, a, m);
    a = mulmod(a, a, m);
    e >>= 1;
  }
  return r;
}

// Inverse of a unit modulo m by the extended Euclidean algorithm.
std::uint64_t invmod(std::uint64_t a, std::uint64_t m) {
  __int128 r0 = m, r1 = a % m, s0 = 0, s1 = 1;
  while (r1 != 0) {
    auto q = r0 / r1;
    auto r2 = r0 - q * r1;
    r0 = r1;
    r1 = r2;
    auto s2 = s0 - q * s1;
    s0 = s1;
    s1 = s2;
  }
  require(r0 == 1, ErrorCode::NonUnit, "not a unit modulo " + std::to_string(m));
  auto r = s0 % static_cast<__int128>(m);
  if (r < 0) r += m;
  return static_cast<std::uint64_t>(r);
}

}  // namespace

PadicLift padic_hensel_lift_as(const PadicInt& a, const PadicInt& b, std::uint64_t x0, std::uint32_t prec) {
  require(a.p == b.p, ErrorCode::InvalidArgument, "p-adic inputs with different primes");
  const auto p = a.p;
  require(prec >= 1 && prec <= std::min(a.prec, b.prec), ErrorCode::InsufficientPrecision,
          "requested precision exceeds the input precision");
  require(a.value % p != 0, ErrorCode::NonUnit, "a must be a unit mod " + std::to_string(p));
  const auto m = field_core::checked_pow(p, prec, std::uint64_t{1} << 62);
  auto av = a.value % m;
  auto bv = b.value % m;
  auto f = [&](std::uint64_t x) {
    auto w = (powmod(x, p, m) + m - x % m) % m;
    return (mulmod(av, w, m) + m - bv) % m;
  };
  {
    auto x = x0 % p;
    auto w = (powmod(x, p, p) + p - x) % p;
    if ((av % p) * w % p != bv % p) {
      fail(ErrorCode::NotAResidueRoot, std::to_string(x0) + " is not a root of a(T^p - T) - b mod " + std::to_string(p));
    }
  }
  PadicLift out;
  std::uint64_t x = x0 % m;
  std::uint32_t prev = 0;
  while (true) {
    auto fx = f(x);
    auto v = padic_val(fx, p, prec);
    out.defect_valuations.push_back(v);
    if (v >= prec) break;
    if (prev > 0 && v < std::min(2 * prev, prec)) {
      throw std::logic_error("p-adic Newton defect failed to double: " + std::to_string(prev) + " -> " +
                             std::to_string(v));
    }
    prev = v;
    // f'(x) = a(p x^(p-1) - 1), a unit.
    auto deriv = mulmod(av, (mulmod(p % m, powmod(x, p - 1, m), m) + m - 1) % m, m);
    auto step = mulmod(fx, invmod(deriv, m), m);
    x = (x + m - step) % m;
  }
  out.root = PadicInt{p, prec, x};
  return out;
}

}  // namespace aslab::hahn
