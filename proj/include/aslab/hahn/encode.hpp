#pragma once

#include <string>
#include <vector>

#include "aslab/field_core/galois_field.hpp"

namespace aslab::hahn {

using field_core::FieldPtr;

// Univariate polynomial over F_q, coefficient codes low degree first, no trailing zeros.
class FFPoly {
 public:
  explicit FFPoly(FieldPtr f, std::vector<field_core::GaloisField::Code> coeffs = {});

  const FieldPtr& field() const { return f_; }
  const std::vector<field_core::GaloisField::Code>& coeffs() const { return c_; }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }

  field_core::GaloisField::Code eval(field_core::GaloisField::Code x) const;
  bool has_root() const;
  FFPoly derivative() const;

  friend FFPoly operator+(const FFPoly& a, const FFPoly& b);
  friend FFPoly operator*(const FFPoly& a, const FFPoly& b);
  friend bool operator==(const FFPoly& a, const FFPoly& b) { return a.f_ == b.f_ && a.c_ == b.c_; }
  FFPoly pow(unsigned e) const;
  static FFPoly gcd(FFPoly a, FFPoly b);

  std::string to_string(char var = 'z') const;

 private:
  void trim();

  FieldPtr f_;
  std::vector<field_core::GaloisField::Code> c_;
};

// D(z1, z2) = sum_i r_i z1^i z2^(n-i) for d = sum_i r_i z^i of degree n.
struct HomogeneousPoly {
  FieldPtr field;
  std::vector<field_core::GaloisField::Code> coeffs;  // coeffs[i] multiplies z1^i z2^(n-i)

  unsigned degree() const { return static_cast<unsigned>(coeffs.size()) - 1; }
  field_core::GaloisField::Code eval(field_core::GaloisField::Code u, field_core::GaloisField::Code v) const;
  FFPoly compose(const FFPoly& a, const FFPoly& b) const;  // D(a(z), b(z))
  std::string to_string() const;
};

// Requires d separable and rootless over its field (RootedD otherwise).
HomogeneousPoly homogenize(const FFPoly& d);

// D(f1, D(f2, ... D(f_{m-1}, f_m))). A single polynomial is returned unchanged.
FFPoly no_common_root_encode(const std::vector<FFPoly>& fs, const FFPoly& d);
// Same with D already homogenized, for callers encoding many tuples.
FFPoly no_common_root_encode(const std::vector<FFPoly>& fs, const HomogeneousPoly& D);

// First rootless monic quadratic over the field in coefficient-code order.
FFPoly default_rootless_poly(const FieldPtr& f);

}  // namespace aslab::hahn
