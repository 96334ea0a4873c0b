#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "aslab/field_core/galois_field.hpp"
#include "aslab/rational.hpp"

namespace aslab::hahn {

using field_core::FFElem;
using field_core::FieldPtr;
using Code = field_core::GaloisField::Code;

enum class GroupKind { IntZ, RatQ, ZinvP };

struct ValueGroupTag {
  GroupKind kind = GroupKind::RatQ;
  std::uint32_t p = 0;  // only meaningful for ZinvP

  static ValueGroupTag integers() { return {GroupKind::IntZ, 0}; }
  static ValueGroupTag rationals() { return {GroupKind::RatQ, 0}; }
  static ValueGroupTag zinv(std::uint32_t p) { return {GroupKind::ZinvP, p}; }

  bool contains(const Rational& e) const;
  // Closed under division by the characteristic p.
  bool p_divisible(std::uint32_t p) const;
  // "Z", "Q", "Z[1/p^inf]"
  std::string to_string() const;

  friend bool operator==(const ValueGroupTag&, const ValueGroupTag&) = default;
};

// Finite-support element of F_q((Gamma)), optionally known only modulo t^cap.
class HahnElem {
 public:
  using Terms = std::map<Rational, Code>;

  HahnElem(FieldPtr base, ValueGroupTag group, std::optional<Rational> cap = std::nullopt);
  static HahnElem monomial(FieldPtr base, ValueGroupTag group, Code c, const Rational& e);
  static HahnElem constant(FieldPtr base, ValueGroupTag group, Code c) { return monomial(base, group, c, 0); }

  const FieldPtr& base() const { return base_; }
  const ValueGroupTag& group() const { return group_; }
  const Terms& terms() const { return terms_; }
  const std::optional<Rational>& cap() const { return cap_; }
  std::uint32_t p() const { return base_->p(); }

  // No nonzero term below the cap (an exact zero when there is no cap).
  bool is_zero() const { return terms_.empty(); }
  bool is_exact() const { return !cap_.has_value(); }
  Code coeff(const Rational& e) const;
  // Least exponent; ZeroArgument when there are no terms.
  Rational val() const;
  // Lower bound on the valuation: val() if nonzero, otherwise the cap (nullopt for exact zero).
  std::optional<Rational> val_lower() const;

  // Adds c*t^e; exponents at or beyond the cap are dropped.
  void add_term(const Rational& e, Code c);
  // Drops terms at or beyond n and lowers the cap to n if needed.
  HahnElem truncated(const Rational& n) const;
  // Same element with the cap removed (treats the known part as exact).
  HahnElem exact_part() const;

  HahnElem operator-() const;
  friend HahnElem operator+(const HahnElem& a, const HahnElem& b);
  friend HahnElem operator-(const HahnElem& a, const HahnElem& b);
  friend HahnElem operator*(const HahnElem& a, const HahnElem& b);
  HahnElem scaled(Code c) const;
  HahnElem shifted(const Rational& e) const;  // multiply by t^e
  HahnElem frobenius() const;
  HahnElem wp() const;

  // Equal as truncated elements: all terms below the smaller cap agree.
  bool equal_mod_cap(const HahnElem& o) const;
  friend bool operator==(const HahnElem& a, const HahnElem& b) {
    return a.base_ == b.base_ && a.group_ == b.group_ && a.terms_ == b.terms_ && a.cap_ == b.cap_;
  }

  // Series literal, e.g. "1*t^(0) + 1*t^(1/2) + O(t^(3))"; "0" for exact zero.
  std::string to_string() const;

 private:
  void check_compatible(const HahnElem& o) const;

  FieldPtr base_;
  ValueGroupTag group_;
  Terms terms_;
  std::optional<Rational> cap_;
};

// x / y. The quotient is computed to absolute precision `prec` when the inverse of y
// has infinite support; the output cap is further limited by the caps of x and y.
HahnElem hs_div(const HahnElem& x, const HahnElem& y, std::optional<Rational> prec = std::nullopt);

enum class ArithOp { Add, Mul, Div };
HahnElem hs_arith(ArithOp op, const HahnElem& x, const HahnElem& y, std::optional<Rational> prec = std::nullopt);

Rational hs_val(const HahnElem& x);
// Coefficient at exponent 0; requires v(x) >= 0. The zero element has residue 0.
FFElem hs_residue(const HahnElem& x);
HahnElem hs_lift(const FFElem& r, ValueGroupTag group);

// Grammar: terms c*t^(a/b) (also c*t^n, t^e, c, t) joined by + or -, optional "+ O(t^(N))".
HahnElem parse_series(FieldPtr base, ValueGroupTag group, std::string_view text);

}  // namespace aslab::hahn
