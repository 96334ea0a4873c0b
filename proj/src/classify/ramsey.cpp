#include <limits>
#include <vector>

#include "aslab/budget.hpp"
#include "aslab/classify/ramsey.hpp"
#include "aslab/error.hpp"

namespace aslab::classify {

namespace {

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  require(b == 0 || a <= std::numeric_limits<std::uint64_t>::max() / b, ErrorCode::InvalidArgument,
          "Ramsey bound exceeds 64 bits");
  return a * b;
}

std::uint64_t checked_add(std::uint64_t a, std::uint64_t b) {
  require(a <= std::numeric_limits<std::uint64_t>::max() - b, ErrorCode::InvalidArgument, "Ramsey bound exceeds 64 bits");
  return a + b;
}

std::uint64_t binom(std::uint64_t n, std::uint64_t k) {
  std::uint64_t out = 1;
  for (std::uint64_t i = 1; i <= k; ++i) out = checked_mul(out, n - k + i) / i;
  return out;
}

// Saturating r^e.
std::uint64_t colourings(std::uint64_t r, std::uint64_t e) {
  std::uint64_t out = 1;
  for (std::uint64_t i = 0; i < e; ++i) {
    if (out > std::numeric_limits<std::uint64_t>::max() / r) return std::numeric_limits<std::uint64_t>::max();
    out *= r;
  }
  return out;
}

// Whether some r-colouring of K_n has no monochromatic K_s (odometer over edge colours).
bool has_good_colouring(unsigned r, unsigned s, unsigned n) {
  std::vector<std::pair<unsigned, unsigned>> edges;
  std::vector<std::vector<std::size_t>> edge_id(n, std::vector<std::size_t>(n));
  for (unsigned i = 0; i < n; ++i)
    for (unsigned j = i + 1; j < n; ++j) {
      edge_id[i][j] = edges.size();
      edges.emplace_back(i, j);
    }
  std::vector<std::vector<unsigned>> cliques;
  std::vector<unsigned> pick;
  auto gen = [&](auto&& self, unsigned from) -> void {
    if (pick.size() == s) {
      cliques.push_back(pick);
      return;
    }
    for (unsigned v = from; v < n; ++v) {
      pick.push_back(v);
      self(self, v + 1);
      pick.pop_back();
    }
  };
  gen(gen, 0);

  std::vector<unsigned> colour(edges.size(), 0);
  while (true) {
    bool mono_found = false;
    for (const auto& c : cliques) {
      const unsigned first = colour[edge_id[c[0]][c[1]]];
      bool mono = true;
      for (std::size_t a = 0; a < c.size() && mono; ++a)
        for (std::size_t b = a + 1; b < c.size() && mono; ++b) mono = colour[edge_id[c[a]][c[b]]] == first;
      if (mono) {
        mono_found = true;
        break;
      }
    }
    if (!mono_found) return true;
    std::size_t i = 0;
    while (i < colour.size() && ++colour[i] == r) colour[i++] = 0;
    if (i == colour.size()) return false;
  }
}

}  // namespace

std::uint64_t ramsey_upper(unsigned r, unsigned s) {
  require(r >= 1 && s >= 1, ErrorCode::InvalidArgument, "Ramsey numbers need r >= 1 and s >= 1");
  if (s <= 2) return s;
  if (r == 1) return s;
  if (r == 2) return binom(2ull * s - 2, s - 1);
  return checked_add(checked_mul(r, ramsey_upper(r - 1, s) - 1), 2);
}

std::uint64_t ramsey_exact(unsigned r, unsigned s) {
  require(r >= 1 && s >= 1, ErrorCode::InvalidArgument, "Ramsey numbers need r >= 1 and s >= 1");
  if (s <= 2 || r == 1) return s;
  const auto upper = ramsey_upper(r, s);
  for (std::uint64_t n = s; n < upper; ++n) {
    check_budget(colourings(r, n * (n - 1) / 2), "edge colourings");
    if (!has_good_colouring(r, s, static_cast<unsigned>(n))) return n;
  }
  return upper;
}

RamseyValue ramsey_value(unsigned r, unsigned s) {
  RamseyValue out;
  out.upper_bound = ramsey_upper(r, s);
  try {
    out.exact = ramsey_exact(r, s);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::BudgetExceeded) throw;
  }
  return out;
}

std::uint64_t step4_constant(unsigned n, unsigned k) {
  require(n >= 1 && k >= 1, ErrorCode::InvalidArgument, "step4_constant needs N >= 1 and k >= 1");
  std::uint64_t total = n;
  for (unsigned r = 2; r <= k; ++r) total = checked_add(total, ramsey_upper(r, n));
  return total;
}

}  // namespace aslab::classify
