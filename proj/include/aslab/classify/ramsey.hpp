#pragma once

#include <cstdint>
#include <optional>

namespace aslab::classify {

struct RamseyValue {
  std::optional<std::uint64_t> exact;
  std::uint64_t upper_bound = 0;
};

// Upper bound for R_r(s): binom(2s-2, s-1) for r = 2, r (R_{r-1}(s) - 1) + 2 above.
std::uint64_t ramsey_upper(unsigned r, unsigned s);

// Smallest n such that every r-colouring of the edges of K_n has a monochromatic K_s,
// by exhaustive search. BudgetExceeded when the colourings to enumerate exceed the budget.
std::uint64_t ramsey_exact(unsigned r, unsigned s);

// Exact when the search fits the budget, always with the recursive upper bound.
RamseyValue ramsey_value(unsigned r, unsigned s);

// N + R_2(N) + ... + R_k(N), using exact values where the search is feasible.
std::uint64_t step4_constant(unsigned n, unsigned k);

}  // namespace aslab::classify
