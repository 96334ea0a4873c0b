#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace aslab::field_core {

// Dense univariate polynomial over Z/p, coefficients low degree first, no trailing zeros.
class ZpPoly {
 public:
  ZpPoly() = default;
  explicit ZpPoly(std::uint32_t p) : p_(p) {}
  ZpPoly(std::uint32_t p, std::vector<std::uint32_t> coeffs);

  static ZpPoly constant(std::uint32_t p, std::int64_t c);
  static ZpPoly monomial(std::uint32_t p, std::uint32_t c, std::size_t degree);
  // t - a
  static ZpPoly linear_root(std::uint32_t p, std::uint32_t a);

  std::uint32_t p() const { return p_; }
  bool is_zero() const { return c_.empty(); }
  // -1 for the zero polynomial.
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  std::uint32_t coeff(std::size_t i) const { return i < c_.size() ? c_[i] : 0; }
  std::uint32_t leading() const { return c_.empty() ? 0 : c_.back(); }
  const std::vector<std::uint32_t>& coeffs() const { return c_; }
  bool is_monic() const { return leading() == 1; }

  std::uint32_t eval(std::uint32_t x) const;
  ZpPoly monic() const;
  ZpPoly scaled(std::uint32_t c) const;
  // f(t + a)
  ZpPoly taylor_shift(std::uint32_t a) const;
  // f(t)^p, which equals f(t^p) in characteristic p.
  ZpPoly frobenius() const;

  friend ZpPoly operator+(const ZpPoly& a, const ZpPoly& b);
  friend ZpPoly operator-(const ZpPoly& a, const ZpPoly& b);
  friend ZpPoly operator*(const ZpPoly& a, const ZpPoly& b);
  ZpPoly operator-() const;
  friend bool operator==(const ZpPoly& a, const ZpPoly& b) { return a.p_ == b.p_ && a.c_ == b.c_; }

  // Quotient and remainder; divisor must be nonzero.
  static std::pair<ZpPoly, ZpPoly> divmod(const ZpPoly& a, const ZpPoly& b);
  static ZpPoly gcd(ZpPoly a, ZpPoly b);
  static ZpPoly powmod(ZpPoly base, std::uint64_t exp, const ZpPoly& mod);

  std::string to_string(char var = 't') const;

 private:
  void trim();

  std::uint32_t p_ = 2;
  std::vector<std::uint32_t> c_;
};

// Rabin's irreducibility test over Z/p.
bool is_irreducible(const ZpPoly& f);

// The monic irreducible of degree k whose lower coefficient vector, read as the
// base-p integer sum c_i p^i, is smallest.
ZpPoly first_irreducible(std::uint32_t p, std::uint32_t k);

}  // namespace aslab::field_core
