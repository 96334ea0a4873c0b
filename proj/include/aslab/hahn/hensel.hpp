#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "aslab/hahn/series.hpp"

namespace aslab::hahn {

struct SeriesLift {
  HahnElem root;
  // Valuation of a(x^p - x) - b before each Newton step; the last entry is the
  // first defect that vanished below the cap (recorded as the cap itself).
  std::vector<Rational> defect_valuations;
};

// Root x of a(x^p - x) = b modulo t^cap with residue x0, by Newton iteration.
// Requires v(a) = 0, v(b) >= 0 and a0(x0^p - x0) = b0 on residues.
SeriesLift hs_hensel_lift_as(const HahnElem& a, const HahnElem& b, const FFElem& x0, const Rational& cap);

struct PadicInt {
  std::uint32_t p = 2;
  std::uint32_t prec = 1;
  std::uint64_t value = 0;

  static PadicInt make(std::uint32_t p, std::uint32_t prec, std::int64_t value);
  std::uint64_t modulus() const;
  std::string to_string() const;  // "value mod p^prec"
  friend bool operator==(const PadicInt&, const PadicInt&) = default;
};

// Largest precision with p^prec below 2^62.
std::uint32_t padic_max_prec(std::uint32_t p);
// p-adic valuation of n modulo p^prec (prec when n is 0 mod p^prec).
std::uint32_t padic_val(std::uint64_t n, std::uint32_t p, std::uint32_t prec);

struct PadicLift {
  PadicInt root;
  std::vector<std::uint32_t> defect_valuations;
};

PadicLift padic_hensel_lift_as(const PadicInt& a, const PadicInt& b, std::uint64_t x0, std::uint32_t prec);

}  // namespace aslab::hahn
