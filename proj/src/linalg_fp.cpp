#include "aslab/linalg_fp.hpp"

#include "aslab/field_core/modular.hpp"

namespace aslab {

namespace {

// Reduced row echelon form in place; returns pivot columns. If `rhs` is given it
// is carried along as an augmented column.
std::vector<std::size_t> rref(FpMatrix& a, FpVector* rhs, std::size_t cols, std::uint32_t p) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < cols && row < a.size(); ++col) {
    std::size_t sel = row;
    while (sel < a.size() && a[sel][col] % p == 0) ++sel;
    if (sel == a.size()) continue;
    std::swap(a[sel], a[row]);
    if (rhs) std::swap((*rhs)[sel], (*rhs)[row]);
    auto inv = field_core::inv_mod_prime(a[row][col] % p, p);
    for (auto& v : a[row]) v = static_cast<std::uint32_t>(std::uint64_t{v % p} * inv % p);
    if (rhs) (*rhs)[row] = static_cast<std::uint32_t>(std::uint64_t{(*rhs)[row] % p} * inv % p);
    for (std::size_t r = 0; r < a.size(); ++r) {
      if (r == row) continue;
      auto f = a[r][col] % p;
      if (f == 0) continue;
      for (std::size_t c = 0; c < cols; ++c) {
        a[r][c] = static_cast<std::uint32_t>((a[r][c] % p + std::uint64_t{p - f} * a[row][c]) % p);
      }
      if (rhs) (*rhs)[r] = static_cast<std::uint32_t>(((*rhs)[r] % p + std::uint64_t{p - f} * (*rhs)[row]) % p);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

}  // namespace

std::size_t fp_rank(FpMatrix a, std::uint32_t p) {
  if (a.empty()) return 0;
  auto cols = a.front().size();
  return rref(a, nullptr, cols, p).size();
}

std::optional<FpVector> fp_solve(FpMatrix a, FpVector b, std::size_t cols, std::uint32_t p) {
  auto pivots = rref(a, &b, cols, p);
  for (std::size_t r = pivots.size(); r < a.size(); ++r) {
    if (b[r] % p != 0) return std::nullopt;
  }
  FpVector x(cols, 0);
  for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = b[r] % p;
  return x;
}

FpMatrix fp_kernel(FpMatrix a, std::size_t cols, std::uint32_t p) {
  auto pivots = rref(a, nullptr, cols, p);
  std::vector<bool> is_pivot(cols, false);
  for (auto c : pivots) is_pivot[c] = true;
  FpMatrix basis;
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    FpVector v(cols, 0);
    v[free] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = (p - a[r][free] % p) % p;
    basis.push_back(std::move(v));
  }
  return basis;
}

}  // namespace aslab
