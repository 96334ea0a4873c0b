#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "aslab/field_core/zp_poly.hpp"

namespace aslab::field_core {

// Element of F_p(t) kept as num/den with den monic and gcd(num, den) = 1.
class RatFunc {
 public:
  explicit RatFunc(std::uint32_t p = 2);
  RatFunc(ZpPoly num, ZpPoly den);
  explicit RatFunc(ZpPoly num);

  static RatFunc constant(std::uint32_t p, std::int64_t c);
  static RatFunc t(std::uint32_t p);
  // c * (t - a)^(-n) for a finite pole a, n >= 0.
  static RatFunc pole_power(std::uint32_t p, std::uint32_t a, std::uint32_t n, std::uint32_t c);

  std::uint32_t p() const { return num_.p(); }
  const ZpPoly& num() const { return num_; }
  const ZpPoly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }

  friend RatFunc operator+(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator-(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator*(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator/(const RatFunc& a, const RatFunc& b);
  RatFunc operator-() const;
  RatFunc pow(std::int64_t e) const;
  friend bool operator==(const RatFunc& a, const RatFunc& b) { return a.num_ == b.num_ && a.den_ == b.den_; }

  // "num" when den = 1, otherwise "(num)/(den)"; accepted back by parse_ratfunc.
  std::string to_string() const;

 private:
  void normalize();

  ZpPoly num_;
  ZpPoly den_;
};

RatFunc rf_wp(const RatFunc& x);

// Expression grammar: integers, t, + - * / ^ (integer exponents, possibly negative), parentheses.
RatFunc parse_ratfunc(std::uint32_t p, std::string_view text);

struct PolarTerm {
  std::optional<std::uint32_t> pole;  // nullopt is the point at infinity
  std::uint32_t order = 1;
  std::uint32_t coeff = 1;

  friend bool operator==(const PolarTerm&, const PolarTerm&) = default;
};

// Canonical representative of x + wp(F_p(t)): polar terms with orders prime to p,
// sorted with finite poles ascending then infinity, orders ascending within a pole.
struct ASReducedForm {
  std::uint32_t p = 2;
  std::vector<PolarTerm> polar;
  std::uint32_t constant = 0;

  bool is_zero() const { return polar.empty() && constant == 0; }
  RatFunc realize() const;
  std::string to_string() const;

  friend bool operator==(const ASReducedForm&, const ASReducedForm&) = default;
};

struct ASReduction {
  ASReducedForm form;
  RatFunc witness;
};

// x = wp(witness) + form.realize(). Poles must be F_p-rational or at infinity.
ASReduction rf_as_reduce(const RatFunc& x);

bool rf_wp_member(const RatFunc& x, const RatFunc& a);

}  // namespace aslab::field_core
