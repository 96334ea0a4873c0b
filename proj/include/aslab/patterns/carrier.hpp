#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "aslab/field_core/galois_field.hpp"
#include "aslab/field_core/rat_func.hpp"
#include "aslab/hahn/hensel.hpp"
#include "aslab/hahn/series.hpp"

namespace aslab::patterns {

using field_core::FFElem;
using field_core::PrimePower;
using field_core::RatFunc;
using hahn::HahnElem;
using hahn::PadicInt;
using hahn::ValueGroupTag;

enum class CarrierKind { FiniteField, RatFuncField, Hahn, Padic };

struct Carrier {
  CarrierKind kind = CarrierKind::FiniteField;
  PrimePower field = PrimePower::make(2, 1);  // F_q, the base of F_q((G)), or F_p for F_p(t) / Q_p
  ValueGroupTag group = ValueGroupTag::integers();
  std::uint32_t padic_prec = 20;

  static Carrier finite_field(PrimePower pp) { return {CarrierKind::FiniteField, pp, {}, 0}; }
  static Carrier rat_func(std::uint32_t p) { return {CarrierKind::RatFuncField, PrimePower::make(p, 1), {}, 0}; }
  static Carrier hahn(PrimePower base, ValueGroupTag g) { return {CarrierKind::Hahn, base, g, 0}; }
  static Carrier padic(std::uint32_t p, std::uint32_t prec);

  std::uint32_t p() const { return field.p; }
  field_core::FieldPtr base() const { return field_core::GaloisField::get(field); }
  // "F9", "F2(t)", "F2((Q))", "F4((Z))", "F3((Z[1/3^inf]))", "Qp(3)"
  std::string to_string() const;

  friend bool operator==(const Carrier&, const Carrier&) = default;
};

// Also accepts "F2((t))" / "F4((s))" for the Z-valued series field. `padic_prec` is used for Qp(p).
Carrier parse_carrier(std::string_view text, std::uint32_t padic_prec = 20);

using CarrierElem = std::variant<FFElem, RatFunc, HahnElem, PadicInt>;

CarrierElem parse_elem(const Carrier& c, std::string_view text);
std::string format_elem(const CarrierElem& x);
bool elem_in_carrier(const Carrier& c, const CarrierElem& x);

CarrierElem elem_zero(const Carrier& c);
CarrierElem elem_one(const Carrier& c);
// t^e in series carriers and F_p(t) (e integral there); OracleDomainError elsewhere.
CarrierElem elem_monomial(const Carrier& c, const Rational& e, std::uint32_t coeff_code = 1);
CarrierElem elem_add(const CarrierElem& a, const CarrierElem& b);
CarrierElem elem_sub(const CarrierElem& a, const CarrierElem& b);
CarrierElem elem_mul(const CarrierElem& a, const CarrierElem& b);
// Division by a nonzero element; series quotients are computed to `prec` when infinite.
CarrierElem elem_div(const CarrierElem& a, const CarrierElem& b, const Rational& prec = 16);
bool elem_is_zero(const CarrierElem& a);
bool elem_equal(const CarrierElem& a, const CarrierElem& b);

// Coordinates of K/wp(K) as an F_p-vector space, restricted to what a given element touches.
// place: pole code (UINT32_MAX = infinity) for F_p(t), 0 otherwise; index: pole order for F_p(t),
// reduced exponent for series (0 is the constant class); digit: F_p coordinate.
struct CoordKey {
  std::uint32_t place = 0;
  Rational index;
  std::uint32_t digit = 0;

  friend bool operator==(const CoordKey&, const CoordKey&) = default;
  friend bool operator<(const CoordKey& a, const CoordKey& b) {
    if (a.place != b.place) return a.place < b.place;
    if (a.index != b.index) return a.index < b.index;
    return a.digit < b.digit;
  }
};
using QuotientCoords = std::map<CoordKey, std::uint32_t>;  // nonzero entries only

// F_p-linear map K -> K/wp(K); y is in wp(K) iff the result is empty.
QuotientCoords quotient_coords(const CarrierElem& y);

// Exact decisions through the membership machinery of field_core / hahn.
class FieldOracle {
 public:
  explicit FieldOracle(Carrier c) : c_(std::move(c)) {}
  const Carrier& carrier() const { return c_; }

  // x in y_1 ... y_n * wp(K)
  bool sat_phi(const CarrierElem& x, const std::vector<CarrierElem>& ys) const;
  // x + z in y * wp(K)
  bool sat_psi(const CarrierElem& x, const CarrierElem& y, const CarrierElem& z) const;

 private:
  Carrier c_;
};

}  // namespace aslab::patterns
