#pragma once

#include <cstdint>
#include <optional>
#include <vector>

namespace aslab {

// Dense linear algebra over the prime field Z/p. Matrices are row-major lists of rows.
using FpVector = std::vector<std::uint32_t>;
using FpMatrix = std::vector<FpVector>;

std::size_t fp_rank(FpMatrix a, std::uint32_t p);

// Some x with a·x = b, or nullopt. `cols` is needed when a has no rows.
std::optional<FpVector> fp_solve(FpMatrix a, FpVector b, std::size_t cols, std::uint32_t p);

// Basis of {x : a·x = 0}.
FpMatrix fp_kernel(FpMatrix a, std::size_t cols, std::uint32_t p);

}  // namespace aslab
