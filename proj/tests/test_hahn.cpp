#include <doctest.h>

#include <random>

#include "aslab/error.hpp"
#include "aslab/hahn/encode.hpp"
#include "aslab/hahn/hensel.hpp"
#include "aslab/hahn/obstruction.hpp"
#include "aslab/hahn/series.hpp"

using namespace aslab;
using namespace aslab::hahn;
using field_core::GaloisField;

namespace {

const ValueGroupTag kQ = ValueGroupTag::rationals();
const ValueGroupTag kZ = ValueGroupTag::integers();

HahnElem S(const FieldPtr& f, ValueGroupTag g, const char* text) { return parse_series(f, g, text); }

HahnElem random_series(const FieldPtr& f, ValueGroupTag g, std::mt19937_64& rng, int lo, int hi, int denom) {
  std::uniform_int_distribution<int> num(lo * denom, hi * denom);
  std::uniform_int_distribution<std::uint32_t> coef(0, f->q() - 1);
  std::uniform_int_distribution<int> count(0, 5);
  HahnElem x(f, g);
  for (int i = count(rng); i > 0; --i) {
    Rational e(num(rng), denom);
    if (g.contains(e)) x.add_term(e, coef(rng));
  }
  return x;
}

}  // namespace

TEST_CASE("series arithmetic examples") {
  auto f2 = GaloisField::get(2, 1);
  CHECK((S(f2, kZ, "t") + S(f2, kZ, "t")).is_zero());
  CHECK(S(f2, kQ, "t^(1/2)") * S(f2, kQ, "t^(1/2)") == S(f2, kQ, "t"));
  auto q = hs_div(S(f2, kZ, "1"), S(f2, kZ, "1 + t"), Rational(3));
  CHECK(q.to_string() == "1 + t + t^2 + O(t^3)");
  CHECK((q * S(f2, kZ, "1 + t")).equal_mod_cap(S(f2, kZ, "1")));
  CHECK_THROWS_AS(hs_div(S(f2, kZ, "1"), HahnElem(f2, kZ)), Error);
  CHECK(hs_div(S(f2, kQ, "t^3"), S(f2, kQ, "t^(3/2)")) == S(f2, kQ, "t^(3/2)"));
  // Product of two capped elements keeps only what both determine.
  auto a = S(f2, kZ, "1 + t + O(t^3)");
  auto b = S(f2, kZ, "t + O(t^2)");
  CHECK(*(a * b).cap() == 2);
  CHECK_THROWS_AS(S(f2, kZ, "t + O(t^2)") * S(f2, kZ, "t + O(t^1)"), Error);
}

TEST_CASE("valuation, residue and lift") {
  auto f2 = GaloisField::get(2, 1);
  auto f4 = GaloisField::get(2, 2);
  CHECK(hs_val(S(f2, kZ, "t^2 + t^5")) == 2);
  CHECK(hs_residue(S(f2, kZ, "1 + t")).code() == 1);
  FFElem w(f4, 2);
  CHECK(hs_residue(hs_lift(w, kQ)) == w);
  CHECK_THROWS_AS(hs_val(HahnElem(f2, kZ)), Error);
  CHECK_THROWS_AS(hs_residue(S(f2, kZ, "t^-1")), Error);
}

TEST_CASE("series syntax round-trips") {
  std::mt19937_64 rng(3);
  auto f9 = GaloisField::get(3, 2);
  for (int i = 0; i < 300; ++i) {
    auto x = random_series(f9, kQ, rng, -3, 3, 4);
    if (i % 3 == 0) x = x.truncated(Rational(4));
    CHECK(parse_series(f9, kQ, x.to_string()) == x);
  }
  auto f2 = GaloisField::get(2, 1);
  CHECK(S(f2, kQ, "1*t^(1/2) + O(t^(3))").to_string() == "t^(1/2) + O(t^3)");
  CHECK(S(f2, kQ, "t^-1").to_string() == "t^(-1)");
  CHECK_THROWS_AS(S(f2, kZ, "t^(1/2)"), Error);
  CHECK_THROWS_AS(S(f2, kZ, "t + O(t)"), Error);
  CHECK_THROWS_AS(S(f2, kZ, "t t"), Error);
}

TEST_CASE("valuation laws on random samples") {
  std::mt19937_64 rng(11);
  for (auto [p, k] : {std::pair{2u, 1u}, {3u, 1u}, {2u, 2u}}) {
    auto f = GaloisField::get(p, k);
    for (int i = 0; i < 300; ++i) {
      auto x = random_series(f, kQ, rng, -4, 4, 6);
      auto y = random_series(f, kQ, rng, -4, 4, 6);
      if (x.is_zero() || y.is_zero()) continue;
      CHECK(hs_val(x * y) == hs_val(x) + hs_val(y));
      auto s = x + y;
      if (!s.is_zero()) CHECK(hs_val(s) >= std::min(hs_val(x), hs_val(y)));
      if (hs_val(x) != hs_val(y)) CHECK(hs_val(s) == std::min(hs_val(x), hs_val(y)));
      auto wx = x.wp();
      if (hs_val(x) < 0) CHECK(hs_val(wx) == Rational(p) * hs_val(x));
      if (hs_val(x) > 0) CHECK(hs_val(wx) == hs_val(x));
      CHECK((x + y).wp() == x.wp() + y.wp());
    }
  }
}

TEST_CASE("obstruction examples") {
  auto f2 = GaloisField::get(2, 1);
  auto ob = hs_wp_obstruction(S(f2, kQ, "t"));
  REQUIRE(ob.in_image());
  CHECK(ob.witness->to_string() == "t + t^2 + t^4 + O(t^8)");
  CHECK(witness_verifies(S(f2, kQ, "t"), ob));

  auto one = hs_wp_obstruction(S(f2, kQ, "1"));
  CHECK(one.status == ObstructionStatus::ResidueObstruction);
  CHECK(one.summary() == "residue-obstruction 1");

  auto blocked = hs_wp_obstruction(S(f2, kZ, "t^-1"));
  CHECK(blocked.status == ObstructionStatus::BlockedExponent);
  CHECK(blocked.blocked_exponent == -1);
  CHECK(blocked.summary() == "blocked-exponent -1");

  auto tel = hs_wp_obstruction(S(f2, kQ, "t^-1"));
  REQUIRE(tel.in_image());
  CHECK(tel.witness->coeff(Rational(-1, 2)) == 1);
  CHECK(tel.witness->coeff(Rational(-1, 4)) == 1);
  CHECK(tel.tails.size() == 1);
  CHECK(tel.tail_remainder() == S(f2, kQ, "t^(-1/256)"));
  CHECK(witness_verifies(S(f2, kQ, "t^-1"), tel));

  // A p-divisible negative exponent over Z carries into the next one:
  // t^-2 + t^-1 = wp(t^-1) lies in the image although -1 alone is blocked.
  auto sum = hs_wp_obstruction(S(f2, kZ, "t^-2 + t^-1"));
  REQUIRE(sum.in_image());
  CHECK(witness_verifies(S(f2, kZ, "t^-2 + t^-1"), sum));
  CHECK(hs_wp_obstruction(S(f2, kZ, "t^-4")).status == ObstructionStatus::BlockedExponent);

  CHECK_THROWS_AS(hs_wp_obstruction(S(f2, kQ, "t^-1 + O(t^0)")), Error);
}

TEST_CASE("coset functional examples") {
  auto f2 = GaloisField::get(2, 1);
  CHECK(hs_coset_functional(S(f2, kQ, "t^3"), S(f2, kQ, "t^3")).summary() == "residue-obstruction 1");
  CHECK(hs_coset_functional(S(f2, kQ, "t^2"), S(f2, kQ, "t")).in_image());
  CHECK(hs_coset_functional(S(f2, kQ, "1 + t"), S(f2, kQ, "1 + t")).summary() == "residue-obstruction 1");
  CHECK_THROWS_AS(hs_coset_functional(S(f2, kQ, "t"), HahnElem(f2, kQ)), Error);
}

namespace {

// Independent membership oracle over F_p((Z)): x in wp(K) iff some f supported on
// exponents [lo, 0] with wp(f) - x having no term of exponent <= 0. Any solution has
// v(f) >= lo when v(x) >= p*lo, and the positive part is always solvable.
bool brute_member_z(const HahnElem& x, int lo) {
  const auto& f = *x.base();
  const auto q = f.q();
  const int width = 1 - lo;
  std::uint64_t total = 1;
  for (int i = 0; i < width; ++i) total *= q;
  for (std::uint64_t code = 0; code < total; ++code) {
    HahnElem g(x.base(), x.group());
    auto rest = code;
    for (int i = 0; i < width; ++i) {
      g.add_term(Rational(lo + i), static_cast<Code>(rest % q));
      rest /= q;
    }
    auto diff = g.wp() - x;
    if (diff.is_zero() || diff.val() > 0) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("obstruction over Z agrees with brute force on exponent windows") {
  for (auto [p, k] : {std::pair{2u, 1u}, {3u, 1u}, {2u, 2u}}) {
    auto f = GaloisField::get(p, k);
    const int lo_exp = -static_cast<int>(2 * p);
    // All elements supported on [lo_exp, 2] with coefficients in the prime field (q^k for F_4).
    const int width = 3 - lo_exp;
    std::uint64_t total = 1;
    for (int i = 0; i < width; ++i) total *= (k == 1 ? p : 2);
    for (std::uint64_t code = 0; code < total; ++code) {
      HahnElem x(f, kZ);
      auto rest = code;
      for (int i = 0; i < width; ++i) {
        auto base = k == 1 ? p : 2;
        // For F_4 use coefficients {0, w} to exercise non-prime residues.
        Code c = static_cast<Code>(rest % base);
        if (k > 1 && c == 1) c = 2;
        x.add_term(Rational(lo_exp + i), c);
        rest /= base;
      }
      auto ob = hs_wp_obstruction(x);
      CHECK(ob.in_image() == brute_member_z(x, -2));
      if (ob.in_image()) CHECK(witness_verifies(x, ob));
    }
  }
}

TEST_CASE("obstruction functional over F_p((Q)) is additive and collapses to one coefficient") {
  std::mt19937_64 rng(5);
  for (auto [p, k] : {std::pair{2u, 1u}, {3u, 1u}, {2u, 3u}}) {
    auto f = GaloisField::get(p, k);
    auto functional = [&](const HahnElem& x) {
      auto ob = hs_wp_obstruction(x);
      return ob.in_image() ? Code{0} : f->trace(ob.residue->code());
    };
    for (int i = 0; i < 200; ++i) {
      auto x = random_series(f, kQ, rng, -3, 3, 4);
      auto y = random_series(f, kQ, rng, -3, 3, 4);
      CHECK(functional(x + y) == f->add(functional(x), functional(y)));
      auto ob = hs_wp_obstruction(x);
      if (ob.in_image()) CHECK(witness_verifies(x, ob));
    }
    // Monomial grid: x = c t^e against a = t^g passes iff e != g or Tr(c) = 0.
    for (int e4 = -8; e4 <= 8; ++e4) {
      for (int g4 = -8; g4 <= 8; ++g4) {
        for (Code c = 1; c < f->q(); ++c) {
          auto x = HahnElem::monomial(f, kQ, c, Rational(e4, 4));
          auto a = HahnElem::monomial(f, kQ, 1, Rational(g4, 4));
          bool expect = e4 != g4 || f->trace(c) == 0;
          CHECK(hs_coset_functional(x, a).in_image() == expect);
        }
      }
    }
  }
}

TEST_CASE("Hensel lifting examples") {
  auto f2 = GaloisField::get(2, 1);
  auto one = S(f2, kZ, "1");
  auto r1 = hs_hensel_lift_as(one, S(f2, kZ, "t"), FFElem::zero(f2), 8);
  CHECK(r1.root.to_string() == "t + t^2 + t^4 + O(t^8)");
  auto r2 = hs_hensel_lift_as(one, HahnElem(f2, kZ), FFElem::one(f2), 8);
  CHECK(r2.root.exact_part() == one);
  auto r3 = hs_hensel_lift_as(one, S(f2, kZ, "t"), FFElem::one(f2), 8);
  CHECK(r3.root.to_string() == "1 + t + t^2 + t^4 + O(t^8)");
  CHECK_THROWS_AS(hs_hensel_lift_as(one, S(f2, kZ, "1"), FFElem::zero(f2), 8), Error);
  CHECK_THROWS_AS(hs_hensel_lift_as(S(f2, kZ, "t"), S(f2, kZ, "t"), FFElem::zero(f2), 8), Error);

  auto a = PadicInt::make(3, 4, 1);
  CHECK(padic_hensel_lift_as(a, PadicInt::make(3, 4, 3), 0, 4).root.value == 51);
  CHECK(padic_hensel_lift_as(a, PadicInt::make(3, 4, 0), 1, 4).root.value == 1);
  CHECK(padic_hensel_lift_as(PadicInt::make(2, 5, 1), PadicInt::make(2, 5, 2), 0, 5).root.value == 2);
  CHECK_THROWS_AS(padic_hensel_lift_as(PadicInt::make(3, 4, 3), PadicInt::make(3, 4, 3), 0, 4), Error);
  CHECK_THROWS_AS(padic_hensel_lift_as(a, PadicInt::make(3, 4, 1), 0, 4), Error);
}

TEST_CASE("Hensel contracts on random instances") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 200; ++trial) {
    std::uint32_t p = trial % 2 ? 2 : 3;
    auto f = GaloisField::get(p, 1 + trial % 3);
    auto a = random_series(f, kQ, rng, 1, 3, 3);
    a.add_term(0, 1 + static_cast<Code>(rng() % (f->q() - 1)));
    auto b = random_series(f, kQ, rng, 1, 3, 3);
    Code x0 = static_cast<Code>(rng() % f->q());
    b.add_term(0, f->mul(a.coeff(0), f->wp(x0)));
    Rational cap(6);
    auto lift = hs_hensel_lift_as(a, b, FFElem(f, x0), cap);
    auto residual = (a * lift.root.wp() - b).truncated(cap);
    CHECK(residual.is_zero());
    CHECK(lift.root.coeff(0) == x0);
    for (std::size_t i = 1; i + 1 < lift.defect_valuations.size(); ++i) {
      CHECK(lift.defect_valuations[i] >= 2 * lift.defect_valuations[i - 1]);
    }
  }
  for (int trial = 0; trial < 200; ++trial) {
    std::uint32_t p = trial % 2 ? 2 : 5;
    std::uint32_t prec = 1 + static_cast<std::uint32_t>(rng() % 12);
    auto a = PadicInt::make(p, prec, static_cast<std::int64_t>(rng() % 1000) * p + 1);
    std::uint64_t x0 = rng() % p;
    auto m = a.modulus();
    // b = a(x0^p - x0) + p*r, so x0 is a residue root.
    std::uint64_t w = 1;
    for (std::uint32_t i = 0; i < p; ++i) w = w * x0 % m;
    auto base = static_cast<std::int64_t>(((a.value % m) * ((w + m - x0) % m)) % m);
    auto b = PadicInt::make(p, prec, base + static_cast<std::int64_t>(p) * static_cast<std::int64_t>(rng() % 1000));
    auto lift = padic_hensel_lift_as(a, b, x0, prec);
    unsigned __int128 x = lift.root.value;
    unsigned __int128 xp = 1;
    for (std::uint32_t i = 0; i < p; ++i) xp = xp * x % m;
    auto lhs = static_cast<std::uint64_t>((a.value % m) * ((xp + m - x) % m) % m);
    CHECK(lhs == b.value);
    CHECK(lift.root.value % p == x0);
  }
}

TEST_CASE("homogenization and no-common-root encoding") {
  auto f2 = GaloisField::get(2, 1);
  auto d = default_rootless_poly(f2);
  CHECK(d.to_string() == "z^2 + z + 1");
  auto D = homogenize(d);
  CHECK(D.to_string() == "z1^2 + z1*z2 + z2^2");
  for (Code u = 0; u < 2; ++u)
    for (Code v = 0; v < 2; ++v) CHECK((D.eval(u, v) == 0) == (u == 0 && v == 0));
  FFPoly z(f2, {0, 1});
  FFPoly z1(f2, {1, 1});
  CHECK_FALSE(no_common_root_encode({z, z1}, d).has_root());
  CHECK(no_common_root_encode({z, z * z1}, d).has_root());
  CHECK_THROWS_AS(homogenize(FFPoly(f2, {0, 1, 1})), Error);
  CHECK(no_common_root_encode({z1}, d) == z1);
}

TEST_CASE("homogenized form vanishes only at the origin for every small field") {
  for (std::uint32_t q : {2u, 3u, 4u, 5u, 7u, 8u, 9u, 11u, 13u, 16u, 17u, 19u, 23u, 25u, 27u, 29u, 31u, 32u, 37u,
                          41u, 43u, 47u, 49u, 53u, 59u, 61u, 64u}) {
    auto f = GaloisField::get(field_core::PrimePower::from_order(q));
    auto D = homogenize(default_rootless_poly(f));
    for (Code u = 0; u < q; ++u)
      for (Code v = 0; v < q; ++v) CHECK((D.eval(u, v) == 0) == (u == 0 && v == 0));
  }
}
