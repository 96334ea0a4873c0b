#include "aslab/field_core/zp_poly.hpp"

#include <algorithm>

#include "aslab/error.hpp"
#include "aslab/field_core/modular.hpp"

namespace aslab::field_core {

ZpPoly::ZpPoly(std::uint32_t p, std::vector<std::uint32_t> coeffs) : p_(p), c_(std::move(coeffs)) {
  for (auto& c : c_) c %= p_;
  trim();
}

ZpPoly ZpPoly::constant(std::uint32_t p, std::int64_t c) {
  auto r = static_cast<std::int64_t>(p);
  return ZpPoly(p, {static_cast<std::uint32_t>(((c % r) + r) % r)});
}

ZpPoly ZpPoly::monomial(std::uint32_t p, std::uint32_t c, std::size_t degree) {
  std::vector<std::uint32_t> v(degree + 1, 0);
  v[degree] = c;
  return ZpPoly(p, std::move(v));
}

ZpPoly ZpPoly::linear_root(std::uint32_t p, std::uint32_t a) { return ZpPoly(p, {(p - a % p) % p, 1}); }

void ZpPoly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

std::uint32_t ZpPoly::eval(std::uint32_t x) const {
  std::uint64_t acc = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = (acc * x + *it) % p_;
  return static_cast<std::uint32_t>(acc);
}

ZpPoly ZpPoly::monic() const {
  if (is_zero()) return *this;
  return scaled(inv_mod_prime(leading(), p_));
}

ZpPoly ZpPoly::scaled(std::uint32_t c) const {
  std::vector<std::uint32_t> v(c_.size());
  for (std::size_t i = 0; i < c_.size(); ++i) v[i] = static_cast<std::uint32_t>(std::uint64_t{c_[i]} * c % p_);
  return ZpPoly(p_, std::move(v));
}

ZpPoly ZpPoly::taylor_shift(std::uint32_t a) const {
  // Horner with (t + a) as the step.
  ZpPoly result(p_);
  ZpPoly step(p_, {a % p_, 1});
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) result = result * step + ZpPoly(p_, {*it});
  return result;
}

ZpPoly ZpPoly::frobenius() const {
  if (is_zero()) return *this;
  std::vector<std::uint32_t> v(c_.size() == 0 ? 0 : (c_.size() - 1) * p_ + 1, 0);
  for (std::size_t i = 0; i < c_.size(); ++i) v[i * p_] = c_[i];
  return ZpPoly(p_, std::move(v));
}

ZpPoly operator+(const ZpPoly& a, const ZpPoly& b) {
  std::vector<std::uint32_t> v(std::max(a.c_.size(), b.c_.size()), 0);
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = (a.coeff(i) + b.coeff(i)) % a.p_;
  return ZpPoly(a.p_, std::move(v));
}

ZpPoly ZpPoly::operator-() const {
  std::vector<std::uint32_t> v(c_.size());
  for (std::size_t i = 0; i < c_.size(); ++i) v[i] = (p_ - c_[i]) % p_;
  return ZpPoly(p_, std::move(v));
}

ZpPoly operator-(const ZpPoly& a, const ZpPoly& b) { return a + (-b); }

ZpPoly operator*(const ZpPoly& a, const ZpPoly& b) {
  if (a.is_zero() || b.is_zero()) return ZpPoly(a.p_);
  std::vector<std::uint64_t> acc(a.c_.size() + b.c_.size() - 1, 0);
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i] == 0) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j) acc[i + j] += std::uint64_t{a.c_[i]} * b.c_[j];
    // Coefficients are below 4096, so 64 rows of products fit in 64 bits before reducing.
    if (i % 64 == 63) {
      for (auto& x : acc) x %= a.p_;
    }
  }
  std::vector<std::uint32_t> v(acc.size());
  for (std::size_t i = 0; i < acc.size(); ++i) v[i] = static_cast<std::uint32_t>(acc[i] % a.p_);
  return ZpPoly(a.p_, std::move(v));
}

std::pair<ZpPoly, ZpPoly> ZpPoly::divmod(const ZpPoly& a, const ZpPoly& b) {
  require(!b.is_zero(), ErrorCode::DivisionByZero, "polynomial division by zero");
  const auto p = a.p_;
  if (a.degree() < b.degree()) return {ZpPoly(p), a};
  std::vector<std::uint32_t> rem = a.c_;
  std::vector<std::uint32_t> quo(a.c_.size() - b.c_.size() + 1, 0);
  const auto inv_lead = inv_mod_prime(b.leading(), p);
  for (std::size_t i = quo.size(); i-- > 0;) {
    auto top = rem[i + b.c_.size() - 1];
    if (top == 0) continue;
    auto f = static_cast<std::uint32_t>(std::uint64_t{top} * inv_lead % p);
    quo[i] = f;
    for (std::size_t j = 0; j < b.c_.size(); ++j) {
      auto sub = static_cast<std::uint32_t>(std::uint64_t{f} * b.c_[j] % p);
      rem[i + j] = (rem[i + j] + p - sub) % p;
    }
  }
  return {ZpPoly(p, std::move(quo)), ZpPoly(p, std::move(rem))};
}

ZpPoly ZpPoly::gcd(ZpPoly a, ZpPoly b) {
  while (!b.is_zero()) {
    auto r = divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

ZpPoly ZpPoly::powmod(ZpPoly base, std::uint64_t exp, const ZpPoly& mod) {
  ZpPoly result = divmod(ZpPoly::constant(base.p_, 1), mod).second;
  base = divmod(base, mod).second;
  while (exp > 0) {
    if (exp & 1) result = divmod(result * base, mod).second;
    base = divmod(base * base, mod).second;
    exp >>= 1;
  }
  return result;
}

std::string ZpPoly::to_string(char var) const {
  if (is_zero()) return "0";
  std::string out;
  for (std::size_t i = c_.size(); i-- > 0;) {
    auto c = c_[i];
    if (c == 0) continue;
    if (!out.empty()) out += "+";
    if (i == 0) {
      out += std::to_string(c);
      continue;
    }
    if (c != 1) out += std::to_string(c) + "*";
    out += var;
    if (i > 1) out += "^" + std::to_string(i);
  }
  return out;
}

bool is_irreducible(const ZpPoly& f) {
  const auto n = f.degree();
  if (n <= 0) return false;
  if (n == 1) return true;
  const auto p = f.p();
  const ZpPoly x(p, {0, 1});
  // x^(p^j) mod f by repeated p-th powering.
  auto frob_iter = [&](std::uint32_t j) {
    ZpPoly r = x;
    for (std::uint32_t i = 0; i < j; ++i) r = ZpPoly::powmod(r, p, f);
    return r;
  };
  if (!(frob_iter(static_cast<std::uint32_t>(n)) == ZpPoly::divmod(x, f).second)) return false;
  for (auto r : prime_divisors(static_cast<std::uint64_t>(n))) {
    auto h = frob_iter(static_cast<std::uint32_t>(n / r)) - x;
    if (ZpPoly::gcd(f, h).degree() != 0) return false;
  }
  return true;
}

ZpPoly first_irreducible(std::uint32_t p, std::uint32_t k) {
  require(k >= 1, ErrorCode::InvalidArgument, "extension degree must be >= 1");
  const std::uint64_t count = checked_pow(p, k, std::uint64_t{1} << 40);
  require(count != 0, ErrorCode::BudgetExceeded, "field too large");
  for (std::uint64_t code = 0; code < count; ++code) {
    std::vector<std::uint32_t> c(k + 1, 0);
    auto rest = code;
    for (std::uint32_t i = 0; i < k; ++i) {
      c[i] = static_cast<std::uint32_t>(rest % p);
      rest /= p;
    }
    c[k] = 1;
    ZpPoly f(p, std::move(c));
    if (is_irreducible(f)) return f;
  }
  fail(ErrorCode::InvalidArgument, "no irreducible polynomial found");
}

}  // namespace aslab::field_core
