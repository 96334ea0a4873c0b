#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "aslab/hahn/series.hpp"

namespace aslab::hahn {

// A negative term c*t^e of the input, handled by the infinite witness
// sum_{k>=1} c^(p^-k) t^(e/p^k). The emitted witness holds the first `depth` terms,
// so wp(witness) misses exactly c^(p^-depth) t^(e/p^depth) for this term.
struct TelescopeTail {
  Rational exponent;
  Code coeff = 0;
  std::uint32_t depth = 0;
};

enum class ObstructionStatus { InImage, BlockedExponent, ResidueObstruction };

struct Obstruction {
  ObstructionStatus status = ObstructionStatus::InImage;
  std::optional<HahnElem> witness;
  std::vector<TelescopeTail> tails;
  Rational blocked_exponent;
  std::optional<FFElem> residue;

  bool in_image() const { return status == ObstructionStatus::InImage; }
  // Sum of what the truncated telescoping witnesses leave over.
  HahnElem tail_remainder() const;
  // "in-image", "blocked-exponent -1", "residue-obstruction 1"
  std::string summary() const;
};

struct ObstructionOptions {
  // Witness precision used when the input is exact.
  Rational witness_cap = 8;
  // Number of telescoping terms emitted per negative term (p-divisible groups).
  std::uint32_t telescope_depth = 8;
};

// Decides x in wp(F_q((Gamma))) and returns a witness or the first blocking certificate.
Obstruction hs_wp_obstruction(const HahnElem& x, const ObstructionOptions& opts = {});

// Decides x in a*wp(K), i.e. the obstruction of x/a.
Obstruction hs_coset_functional(const HahnElem& x, const HahnElem& a, const ObstructionOptions& opts = {});

// True iff wp(w) + tail_remainder agrees with x below the witness cap.
bool witness_verifies(const HahnElem& x, const Obstruction& ob);

}  // namespace aslab::hahn
