#pragma once

#include <cstdint>
#include <memory>
#include <mutex>
#include <string>
#include <string_view>
#include <vector>

#include "aslab/field_core/zp_poly.hpp"

namespace aslab::field_core {

struct PrimePower {
  std::uint32_t p = 2;
  std::uint32_t k = 1;
  std::uint32_t q = 2;

  // Validates p prime below 4096, k >= 1, q = p^k <= 2^20.
  static PrimePower make(std::uint32_t p, std::uint32_t k);
  // Accepts a prime power q.
  static PrimePower from_order(std::uint64_t q);

  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

std::string to_string(const PrimePower& pp);

// F_q with elements encoded as integers sum c_i p^i, where c_i are the coefficients
// of the polynomial representative modulo the fixed irreducible. Codes 0..p-1 are the
// prime subfield. Instances are shared and cached per (p,k).
class GaloisField {
 public:
  using Code = std::uint32_t;

  static std::shared_ptr<const GaloisField> get(PrimePower pp);
  static std::shared_ptr<const GaloisField> get(std::uint32_t p, std::uint32_t k) {
    return get(PrimePower::make(p, k));
  }

  const PrimePower& order() const { return pp_; }
  std::uint32_t p() const { return pp_.p; }
  std::uint32_t k() const { return pp_.k; }
  std::uint32_t q() const { return pp_.q; }
  const ZpPoly& modulus() const { return modulus_; }
  Code generator() const { return gen_; }

  Code add(Code a, Code b) const;
  Code sub(Code a, Code b) const;
  Code neg(Code a) const;
  Code mul(Code a, Code b) const;
  Code inv(Code a) const;
  Code div(Code a, Code b) const { return mul(a, inv(b)); }
  Code pow(Code a, std::uint64_t e) const;
  // Scalar multiple by an integer (reduced mod p).
  Code scale(Code a, std::int64_t n) const;

  Code frob(Code a) const { return pow(a, p()); }
  // Inverse Frobenius (unique p-th root).
  Code frob_inv(Code a) const { return pow(a, q() / p()); }
  Code wp(Code a) const { return sub(frob(a), a); }
  // Absolute trace to the prime field, returned as a code < p.
  Code trace(Code a) const;
  // Some y with wp(y) = a, or -1 when a is not in the image.
  std::int64_t wp_preimage(Code a) const;

  std::uint32_t digit(Code a, std::uint32_t i) const { return digits_of(a)[i]; }
  std::vector<std::uint32_t> digits_of(Code a) const;
  Code from_digits(const std::vector<std::uint32_t>& d) const;

  // "[c0,c1,...]" for k > 1, plain integer for k = 1.
  std::string format(Code a) const;
  // Accepts both the bracketed coefficient form and a plain integer (read mod p).
  Code parse(std::string_view text) const;

 private:
  explicit GaloisField(PrimePower pp);
  void build_tables();
  Code slow_mul(Code a, Code b) const;

  PrimePower pp_;
  ZpPoly modulus_;
  Code gen_ = 1;
  std::vector<std::uint32_t> pow_p_;
  std::vector<Code> exp_;
  std::vector<std::uint32_t> log_;
  mutable std::once_flag preimage_once_;
  mutable std::vector<std::int32_t> preimage_;
};

using FieldPtr = std::shared_ptr<const GaloisField>;

// Element bundled with its field.
class FFElem {
 public:
  FFElem() = default;
  FFElem(FieldPtr field, GaloisField::Code code) : field_(std::move(field)), code_(code) {}

  static FFElem zero(FieldPtr f) { return FFElem(std::move(f), 0); }
  static FFElem one(FieldPtr f) { return FFElem(std::move(f), 1); }
  static FFElem integer(FieldPtr f, std::int64_t n);

  const FieldPtr& field() const { return field_; }
  GaloisField::Code code() const { return code_; }
  bool is_zero() const { return code_ == 0; }

  FFElem operator+(const FFElem& o) const { return {field_, field_->add(code_, o.code_)}; }
  FFElem operator-(const FFElem& o) const { return {field_, field_->sub(code_, o.code_)}; }
  FFElem operator*(const FFElem& o) const { return {field_, field_->mul(code_, o.code_)}; }
  FFElem operator/(const FFElem& o) const { return {field_, field_->div(code_, o.code_)}; }
  FFElem operator-() const { return {field_, field_->neg(code_)}; }
  FFElem pow(std::uint64_t e) const { return {field_, field_->pow(code_, e)}; }
  FFElem inv() const { return {field_, field_->inv(code_)}; }

  friend bool operator==(const FFElem& a, const FFElem& b) { return a.code_ == b.code_ && a.field_ == b.field_; }

  std::string to_string() const { return field_->format(code_); }

 private:
  FieldPtr field_;
  GaloisField::Code code_ = 0;
};

FFElem ff_wp(const FFElem& x);
FFElem ff_trace(const FFElem& x);
bool ff_wp_member(const FFElem& x);
// Number of distinct Artin-Schreier extensions: (p^d - 1)/(p - 1) with d = dim F_q/wp(F_q).
std::uint64_t ff_as_ext_count(const PrimePower& field);
// Dimension over F_p of F_q/wp(F_q), computed from the rank of wp as an F_p-linear map.
std::uint32_t ff_wp_cokernel_dim(const PrimePower& field);

}  // namespace aslab::field_core
