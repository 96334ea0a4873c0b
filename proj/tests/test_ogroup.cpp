#include <doctest.h>

#include <random>

#include "aslab/error.hpp"
#include "aslab/ogroup/ogroup.hpp"

using namespace aslab;
using namespace aslab::ogroup;

namespace {

// Convex subgroups of a finite lex product of archimedean classes are exactly the tails
// T_i = 0 x ... x 0 x G_i x ... x G_n. Recompute Delta_0 / Delta_p by scanning them.
std::pair<std::size_t, std::size_t> tails_oracle(const GroupElem& vp) {
  const auto n = vp.coords.size();
  auto contains = [&](std::size_t i) {
    for (std::size_t k = 0; k < i; ++k)
      if (vp.coords[k] != 0) return false;
    return true;
  };
  std::size_t delta0 = 0;  // smallest tail containing vp: largest index that still contains it
  for (std::size_t i = 0; i <= n; ++i)
    if (contains(i)) delta0 = i;
  std::size_t deltap = n + 1;  // largest tail avoiding vp: smallest index that avoids it
  for (std::size_t i = n + 1; i-- > 0;)
    if (!contains(i)) deltap = i;
  return {delta0, deltap};
}

// Samples of [0, vp] and checks divisibility by p coordinate-wise.
bool roughly_oracle(const GroupDescriptor& g, const GroupElem& vp, std::uint32_t p) {
  std::vector<Rational> probes = {0, 1, Rational(1, 2), Rational(1, 3), Rational(1, 5), Rational(1, 4),
                                  Rational(1, 9), Rational(2, 3), Rational(-1, 1), Rational(-1, 3)};
  const auto n = g.components.size();
  std::size_t j = 0;
  while (vp.coords[j] == 0) ++j;
  for (std::size_t pos = j; pos < n; ++pos) {
    for (const auto& probe : probes) {
      GroupElem gamma{std::vector<Rational>(n, 0)};
      Rational value = probe;
      if (pos == j) {
        if (probe <= 0 || probe > vp.coords[j]) continue;
      }
      if (!g.components[pos].contains(value)) continue;
      gamma.coords[pos] = value;
      if (pos > j && value < 0) continue;
      // gamma lies in [0, vp]; test gamma / p.
      if (!g.components[pos].contains(value / Rational(p))) return false;
    }
  }
  return true;
}

}  // namespace

TEST_CASE("group syntax") {
  auto g = parse_group("Z * Q * Z[1/p^inf] * R", 3u);
  CHECK(g.to_string() == "Z * Q * Z[1/3^inf] * R");
  CHECK(parse_group(g.to_string()) == g);
  CHECK_THROWS_AS(parse_group("Z * "), Error);
  CHECK_THROWS_AS(parse_group("Z[1/p^inf]"), Error);
  CHECK_THROWS_AS(parse_group("Z[1/4^inf]"), Error);
  CHECK(parse_group_elem("0, 1/2").coords[1] == Rational(1, 2));
  CHECK_THROWS_AS(validate(parse_group("Z"), parse_group_elem("1/2")), Error);
  CHECK_THROWS_AS(validate(parse_group("Z[1/3^inf]"), parse_group_elem("1/2")), Error);
}

TEST_CASE("standard decomposition examples") {
  auto d1 = og_standard_decomp(parse_group("Q"), parse_group_elem("1"));
  CHECK(d1.delta0_start == 0);
  CHECK(tail_to_string(parse_group("Q"), d1.deltap_start) == "{0}");
  CHECK(d1.quotient == ArchClass::rationals());

  auto g2 = parse_group("Z * Z[1/3^inf]");
  auto d2 = og_standard_decomp(g2, parse_group_elem("0,1"));
  CHECK(d2.delta0_start == 1);
  CHECK(d2.quotient == ArchClass::zinv(3));
  CHECK(og_roughly_p_divisible(g2, parse_group_elem("0,1"), 3));
  CHECK_FALSE(og_p_divisible(g2, 3));
  CHECK_FALSE(og_finitely_ramified(g2, parse_group_elem("0,1"), d2).has_value());

  auto g3 = parse_group("Z * Z");
  auto d3 = og_standard_decomp(g3, parse_group_elem("1,0"));
  CHECK(d3.delta0_start == 0);
  CHECK(tail_to_string(g3, d3.deltap_start) == "Z");
  CHECK(d3.quotient == ArchClass::integers());

  auto z = parse_group("Z");
  CHECK(*og_finitely_ramified(z, parse_group_elem("1"), og_standard_decomp(z, parse_group_elem("1"))) == 1);
  CHECK(*og_finitely_ramified(z, parse_group_elem("3"), og_standard_decomp(z, parse_group_elem("3"))) == 3);
  CHECK_FALSE(og_roughly_p_divisible(z, parse_group_elem("1"), 2));
  CHECK(og_p_divisible(parse_group("Q"), 5));

  CHECK_THROWS_AS(og_standard_decomp(z, parse_group_elem("0")), Error);
  CHECK_THROWS_AS(og_standard_decomp(g3, parse_group_elem("-1,5")), Error);
}

TEST_CASE("decomposition invariants on random descriptors") {
  std::mt19937_64 rng(17);
  const std::vector<ArchClass> classes = {ArchClass::integers(), ArchClass::rationals(), ArchClass::zinv(2),
                                          ArchClass::zinv(3), ArchClass::real_like()};
  for (int trial = 0; trial < 2000; ++trial) {
    GroupDescriptor g;
    std::uint32_t p = trial % 2 ? 2 : 3;
    auto n = 1 + rng() % 4;
    for (std::size_t i = 0; i < n; ++i) g.components.push_back(classes[rng() % classes.size()]);
    GroupElem vp{std::vector<Rational>(n, 0)};
    auto lead = rng() % n;
    for (std::size_t i = lead; i < n; ++i) {
      std::int64_t num = static_cast<std::int64_t>(rng() % 7) - (i == lead ? 0 : 3);
      if (i == lead) num += 1;
      vp.coords[i] = Rational(num);
    }
    auto dec = og_standard_decomp(g, vp);
    auto [o0, op] = tails_oracle(vp);
    CHECK(dec.delta0_start == o0);
    CHECK(dec.deltap_start == op);
    // Sandwich: vp in Delta_0, not in Delta_p, Delta_p strictly smaller.
    CHECK(dec.deltap_start > dec.delta0_start);
    CHECK(dec.quotient == g.components[dec.delta0_start]);
    CHECK(og_roughly_p_divisible(g, vp, p) == roughly_oracle(g, vp, p));
    if (og_p_divisible(g, p)) CHECK(og_roughly_p_divisible(g, vp, p));
    // Moving the leading coordinate to a more significant component never shrinks Delta_0.
    if (lead > 0) {
      GroupElem bigger = vp;
      bigger.coords[lead - 1] = 1;
      CHECK(og_standard_decomp(g, bigger).delta0_start <= dec.delta0_start);
    }
  }
}
