#include <doctest.h>

#include <cmath>
#include <functional>
#include <random>
#include <set>

#include "aslab/error.hpp"
#include "aslab/field_core/galois_field.hpp"
#include "aslab/patterns/patterns.hpp"

using namespace aslab;
using namespace aslab::patterns;

namespace {

Carrier C(const char* s) { return parse_carrier(s); }
CarrierElem E(const Carrier& c, const std::string& s) { return parse_elem(c, s); }

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an aslab::Error");
  return ErrorCode::InvalidArgument;
}

// Membership in wp(K) for exact series, computed from two facts: positive exponents are
// always in wp(K), and c t^(pe) = c^(1/p) t^e + wp(c^(1/p) t^e). Over a p-divisible group
// every negative term telescopes away; over Z a negative exponent prime to p is an obstruction.
bool series_wp_oracle(HahnElem y) {
  const auto f = y.base();
  const auto p = static_cast<std::int64_t>(f->p());
  if (!y.group().p_divisible(f->p())) {
    while (!y.is_zero() && y.val() < 0) {
      const auto e = y.val();
      if (e.numerator() % p != 0) return false;
      auto u = HahnElem::monomial(f, y.group(), f->frob_inv(y.coeff(e)), e / p);
      y = y - u.wp();
    }
  }
  return f->trace(y.coeff(0)) == 0;
}

HahnElem random_series(const Carrier& c, std::mt19937_64& rng, int lo, int hi, int den = 1) {
  HahnElem y(c.base(), c.group);
  const auto terms = rng() % 5;
  for (std::size_t i = 0; i < terms; ++i) {
    const auto e = Rational(static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(hi - lo + 1)) + lo, den);
    y = y + HahnElem::monomial(c.base(), c.group, static_cast<hahn::Code>(rng() % c.field.q), e);
  }
  return y;
}

IPnPattern example_ip() {
  auto c = C("F2((Q))");
  IPnPattern p;
  p.carrier = c;
  p.n = 1;
  p.m = 3;
  p.params = {{E(c, "1"), E(c, "t"), E(c, "t^2")}};
  for (std::uint64_t j = 0; j < 8; ++j) {
    HahnElem b(c.base(), c.group);
    for (int i = 0; i < 3; ++i) {
      if (!(j >> i & 1u)) b = b + HahnElem::monomial(c.base(), c.group, 1, i);
    }
    p.cols.push_back({j, b});
  }
  return p;
}

// Solution set of one cell over a finite field: {x : x + z in a * wp(F_q)}.
std::set<hahn::Code> cell_solutions(const field_core::GaloisField& f, hahn::Code a, hahn::Code z) {
  std::set<hahn::Code> image;
  for (hahn::Code t = 0; t < f.q(); ++t) image.insert(f.mul(a, f.wp(t)));
  std::set<hahn::Code> out;
  for (hahn::Code x = 0; x < f.q(); ++x)
    if (image.count(f.add(x, z))) out.insert(x);
  return out;
}

bool brute_consistent(const field_core::GaloisField& f, const std::vector<std::pair<hahn::Code, hahn::Code>>& cells) {
  for (hahn::Code x = 0; x < f.q(); ++x) {
    bool all = true;
    for (auto [a, z] : cells) all = all && cell_solutions(f, a, z).count(x);
    if (all) return true;
  }
  return false;
}

std::vector<std::vector<bool>> incidence_of(const Pattern& p) { return verify_pattern(p).incidence; }

// IP-style pattern over a finite field: m nonzero parameters, random columns whose masks
// record the true incidence, so both in- and out-cells occur.
IPnPattern random_ff_ip(const Carrier& c, std::size_t m, std::size_t cols, std::mt19937_64& rng) {
  IPnPattern p;
  p.carrier = c;
  p.n = 1;
  p.m = m;
  p.params.resize(1);
  for (std::size_t i = 0; i < m; ++i) p.params[0].push_back(FFElem(c.base(), 1 + static_cast<hahn::Code>(rng() % (c.field.q - 1))));
  FieldOracle o(c);
  for (std::size_t j = 0; j < cols; ++j) {
    CarrierElem b = FFElem(c.base(), static_cast<hahn::Code>(rng() % c.field.q));
    std::uint64_t mask = 0;
    for (std::size_t i = 0; i < m; ++i)
      if (o.sat_phi(b, {p.params[0][i]})) mask |= std::uint64_t{1} << i;
    p.cols.push_back({mask, b});
  }
  return p;
}

}  // namespace

TEST_CASE("verify_ip on the monomial pattern over F2((Q))") {
  auto p = example_ip();
  auto r = verify_ip(p);
  CHECK(r.verified);
  CHECK(r.mismatches.empty());
  REQUIRE(r.incidence.size() == 3);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 8; ++j) CHECK(r.incidence[i][j] == ((j >> i & 1u) != 0));

  SUBCASE("empty pattern") {
    IPnPattern e;
    e.carrier = p.carrier;
    e.params = {{}};
    CHECK(verify_ip(e).verified);
  }
  SUBCASE("corrupting b of the empty set gives exactly one mismatch") {
    p.cols[0].b = E(p.carrier, "t + t^2");
    auto bad = verify_ip(p);
    CHECK_FALSE(bad.verified);
    REQUIRE(bad.mismatches.size() == 1);
    CHECK(bad.mismatches[0] == "(0, 0)");
  }
}

TEST_CASE("verify_ipn example and collapse to IP") {
  auto c = C("F2((Q))");
  IPnPattern p;
  p.carrier = c;
  p.n = 2;
  p.m = 2;
  p.params = {{E(c, "1"), E(c, "t")}, {E(c, "1"), E(c, "t^3")}};
  for (std::uint64_t j = 0; j < 16; ++j) {
    HahnElem b(c.base(), c.group);
    for (std::size_t cell = 0; cell < 4; ++cell) {
      const auto i1 = cell / 2, i2 = cell % 2;
      if (!(j >> cell & 1u)) b = b + HahnElem::monomial(c.base(), c.group, 1, static_cast<std::int64_t>(i1 + 3 * i2));
    }
    p.cols.push_back({j, b});
  }
  CHECK(verify_ipn(p).verified);
  CHECK(code_of([&] { verify_ip(p); }) == ErrorCode::InvalidArgument);
  auto g = gen_ipn(c, 2, 2);
  REQUIRE(g.params == p.params);
  REQUIRE(g.cols.size() == p.cols.size());
  for (std::size_t j = 0; j < g.cols.size(); ++j) {
    CHECK(g.cols[j].mask == p.cols[j].mask);
    CHECK(elem_equal(g.cols[j].b, p.cols[j].b));
  }

  SUBCASE("one corrupted column") {
    p.cols[5].b = elem_add(p.cols[5].b, E(c, "t^4"));  // flips cell (1,1) only
    auto r = verify_ipn(p);
    REQUIRE(r.mismatches.size() == 1);
    CHECK(r.mismatches[0] == "(3, 5)");
  }
  SUBCASE("n = 1 collapses") {
    auto ip = example_ip();
    CHECK(verify_ipn(ip).incidence == verify_ip(ip).incidence);
  }
}

TEST_CASE("generators produce the documented patterns") {
  auto g = gen_ip(C("F2((Q))"), 3);
  auto ex = example_ip();
  CHECK(g.params == ex.params);
  REQUIRE(g.cols.size() == 8);
  for (std::size_t j = 0; j < 8; ++j) CHECK(elem_equal(g.cols[j].b, ex.cols[j].b));

  for (const char* c : {"F2((Q))", "F3(t)", "F9", "F2((Z))"}) {
    auto e = gen_ip(C(c), 0);
    CHECK(e.m == 0);
    CHECK(e.cols.empty());
    CHECK(verify_ip(e).verified);
  }
  CHECK(code_of([] { gen_ip(C("Qp(3)"), 2); }) == ErrorCode::OracleDomainError);
  CHECK(code_of([] { gen_ip(C("F2"), 2); }) == ErrorCode::SearchExhausted);
}

TEST_CASE("gen_ip over carriers without p-divisible value group") {
  for (const char* name : {"F2(t)", "F3(t)", "F2((Z))", "F4((Z))", "F3((Z))"}) {
    CAPTURE(name);
    for (std::size_t m = 1; m <= 3; ++m) {
      auto p = gen_ip(C(name), m);
      CHECK(verify_ip(p).verified);
    }
  }
  CHECK(verify_ipn(gen_ipn(C("F2(t)"), 2, 2)).verified);
  CHECK(verify_ipn(gen_ipn(C("F3((Z))"), 2, 2)).verified);
}

TEST_CASE("monomial IP construction over F2((Q)) for m up to 10") {
  for (std::size_t m = 1; m <= 10; ++m) {
    auto p = gen_ip(C("F2((Q))"), m);
    auto r = verify_ip(p);
    CHECK(r.verified);
    CHECK(r.incidence.size() * r.incidence[0].size() == m << m);
  }
}

TEST_CASE("TP2 over a finite group ambient") {
  TP2Pattern p;
  p.group = conditions::FinAbGroup::product({2, 2});
  const auto& g = *p.group;
  p.rows = 2;
  p.cols = 2;
  p.k = 2;
  const auto e10 = g.from_coords({1, 0}), e01 = g.from_coords({0, 1});
  p.group_gens = {{{e10}, {e10}}, {{e01}, {e01}}};
  p.group_shift = {{0, e01}, {0, e10}};
  auto r = verify_tp2(p);
  CHECK(r.verified);
  CHECK(r.row_checks.size() == 2);
  CHECK(r.path_checks.size() == 4);

  TP2Pattern same = p;
  same.rows = 1;
  same.group_gens = {{{e10}, {e10}}};
  same.group_shift = {{0, 0}};
  auto bad = verify_tp2(same);
  CHECK_FALSE(bad.verified);
  REQUIRE(bad.mismatches.size() == 1);
  CHECK(bad.mismatches[0] == "row 0 {0,1} consistent");
}

TEST_CASE("verify_tp2 agrees with enumeration over finite fields") {
  std::mt19937_64 rng(7);
  for (std::uint32_t q : {2u, 3u, 4u, 5u, 8u, 9u, 16u, 27u, 32u, 64u, 128u, 256u}) {
    auto c = Carrier::finite_field(PrimePower::from_order(q));
    auto f = c.base();
    for (int trial = 0; trial < 6; ++trial) {
      TP2Pattern p;
      p.carrier = c;
      p.rows = 1 + rng() % 3;
      p.cols = 1 + rng() % 3;
      p.k = 2;
      std::vector<std::vector<std::pair<hahn::Code, hahn::Code>>> raw(p.rows);
      p.a.resize(p.rows);
      p.z.resize(p.rows);
      for (std::size_t i = 0; i < p.rows; ++i) {
        for (std::size_t j = 0; j < p.cols; ++j) {
          const auto a = static_cast<hahn::Code>(1 + rng() % (q - 1));
          const auto z = static_cast<hahn::Code>(rng() % q);
          raw[i].emplace_back(a, z);
          p.a[i].push_back(FFElem(f, a));
          p.z[i].push_back(FFElem(f, z));
        }
      }
      auto r = verify_tp2(p);
      for (const auto& rc : r.row_checks) {
        std::vector<std::pair<hahn::Code, hahn::Code>> cells;
        for (auto j : rc.cells) cells.push_back(raw[rc.row][j]);
        CHECK(rc.consistent == brute_consistent(*f, cells));
      }
      CHECK(r.path_checks.size() == static_cast<std::size_t>(std::pow(p.cols, p.rows)));
      for (const auto& pc : r.path_checks) {
        std::vector<std::pair<hahn::Code, hahn::Code>> cells;
        for (std::size_t i = 0; i < p.rows; ++i) cells.push_back(raw[i][pc.path[i]]);
        CHECK(pc.consistent == brute_consistent(*f, cells));
      }
    }
  }
}

TEST_CASE("verify_tp2 agrees with enumeration over group ambients") {
  std::mt19937_64 rng(11);
  for (const auto& moduli : std::vector<std::vector<std::uint32_t>>{{2, 2}, {2, 2, 2, 2}, {3, 3}, {4, 2}, {2, 2, 2, 2, 2, 2, 2, 2}}) {
    const auto g = conditions::FinAbGroup::product(moduli);
    for (int trial = 0; trial < 20; ++trial) {
      TP2Pattern p;
      p.group = g;
      p.rows = 1 + rng() % 3;
      p.cols = 1 + rng() % 3;
      p.k = 2 + rng() % 2;
      p.group_gens.assign(p.rows, std::vector<std::vector<conditions::Elem>>(p.cols));
      p.group_shift.assign(p.rows, std::vector<conditions::Elem>(p.cols));
      std::vector<std::vector<conditions::Subgroup>> subs(p.rows);
      for (std::size_t i = 0; i < p.rows; ++i) {
        for (std::size_t j = 0; j < p.cols; ++j) {
          const auto ngens = rng() % 3;
          for (std::size_t t = 0; t < ngens; ++t) p.group_gens[i][j].push_back(static_cast<conditions::Elem>(rng() % g.order()));
          p.group_shift[i][j] = static_cast<conditions::Elem>(rng() % g.order());
          subs[i].push_back(conditions::Subgroup::generated(g, p.group_gens[i][j]));
        }
      }
      auto consistent = [&](const std::vector<std::pair<std::size_t, std::size_t>>& cells) {
        for (conditions::Elem x = 0; x < g.order(); ++x) {
          bool all = true;
          for (auto [i, j] : cells) all = all && subs[i][j].contains(g.add(x, p.group_shift[i][j]));
          if (all) return true;
        }
        return false;
      };
      auto r = verify_tp2(p);
      for (const auto& rc : r.row_checks) {
        std::vector<std::pair<std::size_t, std::size_t>> cells;
        for (auto j : rc.cells) cells.emplace_back(rc.row, j);
        CHECK(rc.consistent == consistent(cells));
      }
      for (const auto& pc : r.path_checks) {
        std::vector<std::pair<std::size_t, std::size_t>> cells;
        for (std::size_t i = 0; i < p.rows; ++i) cells.emplace_back(i, pc.path[i]);
        CHECK(pc.consistent == consistent(cells));
      }
    }
  }
}

TEST_CASE("gen_tp2 search") {
  auto p = gen_tp2(C("F2((t))"), 2, 3);
  auto r = verify_tp2(p);
  CHECK(r.verified);
  CHECK(r.path_checks.size() == 9);
  CHECK(r.row_checks.size() == 6);
  auto again = gen_tp2(C("F2((t))"), 2, 3);
  CHECK(format_pattern(again) == format_pattern(p));

  CHECK(verify_tp2(gen_tp2(C("F2((t))"), 1, 1)).verified);
  CHECK(verify_tp2(gen_tp2(C("F3(t)"), 2, 2)).verified);
  CHECK(code_of([] { gen_tp2(C("F2((Q))"), 2, 3); }) == ErrorCode::SearchExhausted);
  CHECK(code_of([] { gen_tp2(C("Qp(2)"), 1, 2); }) == ErrorCode::OracleDomainError);
  CHECK(code_of([] { gen_tp2(C("F2((t))"), 4, 4); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("rows over F_p((Q)) hold at most p pairwise inconsistent cells") {
  CHECK(verify_tp2(gen_tp2(C("F2((Q))"), 1, 2)).verified);
  CHECK(code_of([] { gen_tp2(C("F2((Q))"), 1, 3); }) == ErrorCode::SearchExhausted);
  CHECK(verify_tp2(gen_tp2(C("F3((Q))"), 1, 3)).verified);
  CHECK(code_of([] { gen_tp2(C("F3((Q))"), 1, 4); }) == ErrorCode::SearchExhausted);
}

TEST_CASE("quotient coordinates vanish exactly on wp(K)") {
  std::mt19937_64 rng(3);
  for (const char* name : {"F2((Z))", "F3((Z))", "F4((Z))", "F9((Z))", "F2((Q))", "F3((Q))", "F2((Z[1/2^inf]))"}) {
    CAPTURE(name);
    auto c = C(name);
    FieldOracle o(c);
    const int den = c.group == hahn::ValueGroupTag::integers() ? 1 : static_cast<int>(c.p() * c.p());
    for (int trial = 0; trial < 400; ++trial) {
      auto y = random_series(c, rng, -9 * den, 6 * den, den);
      const bool expect = series_wp_oracle(y);
      CHECK(quotient_coords(y).empty() == expect);
      CHECK(o.sat_phi(y, {elem_one(c)}) == expect);
      // wp(w) + y has the same class as y.
      auto w = random_series(c, rng, -6 * den, 6 * den, den);
      CHECK(quotient_coords(elem_add(y, w.wp())) == quotient_coords(y));
    }
  }
  for (std::uint32_t p : {2u, 3u, 5u}) {
    auto c = Carrier::rat_func(p);
    FieldOracle o(c);
    for (int trial = 0; trial < 300; ++trial) {
      RatFunc y(p);
      const auto terms = rng() % 4;
      for (std::size_t i = 0; i < terms; ++i) {
        const auto coeff = static_cast<std::uint32_t>(1 + rng() % (p - 1));
        if (rng() % 2) {
          y = y + RatFunc::t(p).pow(static_cast<std::int64_t>(rng() % 7)) * RatFunc::constant(p, coeff);
        } else {
          y = y + RatFunc::pole_power(p, static_cast<std::uint32_t>(rng() % p), static_cast<std::uint32_t>(1 + rng() % 5), coeff);
        }
      }
      auto w = RatFunc::t(p).pow(static_cast<std::int64_t>(rng() % 4)) + RatFunc::pole_power(p, 1 % p, 2, 1);
      CHECK(quotient_coords(y).empty() == o.sat_phi(y, {elem_one(c)}));
      CHECK(quotient_coords(y + field_core::rf_wp(w)) == quotient_coords(y));
    }
  }
}

TEST_CASE("lifting through the residue map") {
  auto f4 = C("F4");
  auto s4 = C("F4((s))");
  IPnPattern p;
  p.carrier = f4;
  p.m = 1;
  p.params = {{E(f4, "1")}};
  FieldOracle o(f4);
  for (hahn::Code b = 0; b < 4; ++b) {
    CarrierElem x = FFElem(f4.base(), b);
    p.cols.push_back({o.sat_phi(x, {p.params[0][0]}) ? 1u : 0u, x});
  }
  // wp(F4) = {0, 1}
  CHECK(p.cols[0].mask == 1);
  CHECK(p.cols[1].mask == 1);
  CHECK(p.cols[2].mask == 0);
  CHECK(p.cols[3].mask == 0);
  auto lifted = lift_pattern(p, s4);
  CHECK(verify_pattern(lifted).verified);
  CHECK(incidence_of(lifted) == incidence_of(p));

  auto perturbed = lift_pattern(p, s4, {true, 5});
  CHECK(incidence_of(perturbed) == incidence_of(p));
  const auto w = FFElem(f4.base(), 2);
  auto b = elem_add(hahn::hs_lift(w, s4.group), E(s4, "t"));
  CHECK_FALSE(FieldOracle(s4).sat_phi(b, {elem_one(s4)}));

  auto back = std::get<IPnPattern>(residue_pattern(perturbed, f4));
  CHECK(format_pattern(back) == format_pattern(p));

  IPnPattern empty;
  empty.carrier = f4;
  empty.params = {{}};
  auto le = std::get<IPnPattern>(lift_pattern(empty, s4));
  CHECK(le.cols.empty());
  CHECK(le.carrier == s4);

  CHECK(code_of([&] { lift_pattern(p, C("F2((s))")); }) == ErrorCode::ResidueMismatch);
  CHECK(code_of([&] { lift_pattern(p, C("Qp(2)")); }) == ErrorCode::ResidueMismatch);
  auto bad = std::get<IPnPattern>(lifted);
  bad.params[0][0] = E(s4, "t");
  CHECK(code_of([&] { residue_pattern(bad, f4); }) == ErrorCode::NonIntegralInput);
  bad = std::get<IPnPattern>(lifted);
  bad.cols[0].b = E(s4, "t^-1");
  CHECK(code_of([&] { residue_pattern(bad, f4); }) == ErrorCode::NonIntegralInput);
}

TEST_CASE("lifting preserves incidence on random fixtures") {
  std::mt19937_64 rng(19);
  for (const char* name : {"F4", "F8", "F2", "F3", "F5"}) {
    auto c = C(name);
    std::vector<Carrier> targets = {Carrier::hahn(c.field, hahn::ValueGroupTag::integers()),
                                    Carrier::hahn(c.field, hahn::ValueGroupTag::rationals())};
    if (c.field.k == 1) targets.push_back(Carrier::padic(c.p(), 12));
    for (int trial = 0; trial < 25; ++trial) {
      auto p = random_ff_ip(c, 1 + rng() % 4, 6, rng);
      REQUIRE(verify_ip(p).verified);
      for (const auto& t : targets) {
        CAPTURE(t.to_string());
        CHECK(incidence_of(lift_pattern(p, t)) == incidence_of(p));
        CHECK(incidence_of(lift_pattern(p, t, {true, static_cast<std::uint64_t>(trial)})) == incidence_of(p));
      }
    }
  }
}

TEST_CASE("lifting a TP2 pattern over F4") {
  auto f4 = C("F4");
  auto f = f4.base();
  TP2Pattern p;
  p.carrier = f4;
  p.rows = 2;
  p.cols = 2;
  // Row 0: cosets of wp(F4) = {0,1}; row 1: cosets of w * wp(F4) = {0,w}.
  p.a = {{FFElem(f, 1), FFElem(f, 1)}, {FFElem(f, 2), FFElem(f, 2)}};
  p.z = {{FFElem(f, 0), FFElem(f, 2)}, {FFElem(f, 0), FFElem(f, 1)}};
  auto r = verify_tp2(p);
  REQUIRE(r.verified);
  for (const char* t : {"F4((s))", "F4((Q))"}) {
    auto lifted = std::get<TP2Pattern>(lift_pattern(p, C(t)));
    auto lr = verify_tp2(lifted);
    CHECK(lr.verified);
    REQUIRE(lr.row_checks.size() == r.row_checks.size());
    for (std::size_t i = 0; i < r.row_checks.size(); ++i) CHECK(lr.row_checks[i].consistent == r.row_checks[i].consistent);
    for (std::size_t i = 0; i < r.path_checks.size(); ++i) CHECK(lr.path_checks[i].consistent == r.path_checks[i].consistent);
  }
}

TEST_CASE("pattern files round trip") {
  std::mt19937_64 rng(23);
  std::size_t count = 0;
  const std::vector<const char*> carriers = {"F4", "F9", "F2((Q))", "F3((Z))", "F4((Z[1/2^inf]))", "F2(t)", "F5(t)", "Qp(3)"};
  for (int trial = 0; trial < 1100; ++trial) {
    auto c = C(carriers[trial % carriers.size()]);
    auto random_elem = [&]() -> CarrierElem {
      switch (c.kind) {
        case CarrierKind::FiniteField: return FFElem(c.base(), static_cast<hahn::Code>(rng() % c.field.q));
        case CarrierKind::Hahn: return random_series(c, rng, -6, 6, c.group == hahn::ValueGroupTag::integers() ? 1 : 4);
        case CarrierKind::RatFuncField: {
          auto x = RatFunc::t(c.p()).pow(static_cast<std::int64_t>(rng() % 5) - 2) + RatFunc::constant(c.p(), static_cast<std::int64_t>(rng() % 7));
          return x / (RatFunc::t(c.p()) + RatFunc::constant(c.p(), 1 + static_cast<std::int64_t>(rng() % 3)));
        }
        case CarrierKind::Padic: return PadicInt::make(c.p(), c.padic_prec, static_cast<std::int64_t>(rng() % 100000));
      }
      return elem_zero(c);
    };
    Pattern pat;
    if (trial % 2 == 0) {
      IPnPattern p;
      p.carrier = c;
      p.n = 1 + rng() % 2;
      p.m = rng() % 3;
      p.params.assign(p.n, {});
      for (auto& row : p.params)
        for (std::size_t i = 0; i < p.m; ++i) row.push_back(random_elem());
      std::size_t cells = p.m == 0 ? 0 : p.cells();
      for (int j = 0; j < 3 && cells > 0; ++j) p.cols.push_back({rng() % (std::uint64_t{1} << cells), random_elem()});
      pat = p;
    } else {
      TP2Pattern p;
      p.carrier = c;
      p.rows = 1 + rng() % 2;
      p.cols = 1 + rng() % 3;
      p.k = 2 + rng() % 2;
      p.a.resize(p.rows);
      p.z.resize(p.rows);
      for (std::size_t i = 0; i < p.rows; ++i)
        for (std::size_t j = 0; j < p.cols; ++j) {
          p.a[i].push_back(random_elem());
          p.z[i].push_back(random_elem());
        }
      pat = p;
    }
    const auto text = format_pattern(pat);
    const auto parsed = parse_pattern(text, c.padic_prec);
    CHECK(format_pattern(parsed) == text);
    ++count;
  }
  CHECK(count >= 1000);

  TP2Pattern g;
  g.group = conditions::FinAbGroup::product({2, 2});
  g.rows = 1;
  g.cols = 2;
  g.group_gens = {{{1}, {}}};
  g.group_shift = {{0, 3}};
  const auto text = format_pattern(g);
  CHECK(text.find("carrier: group [2,2]") != std::string::npos);
  CHECK(format_pattern(parse_pattern(text)) == text);

  CHECK(code_of([] { parse_pattern("pattern: ip\ncarrier: F2((Q))\nm: 1\nrows:\n"); }) == ErrorCode::ParseError);
  CHECK(code_of([] { parse_pattern("pattern: nope\n"); }) == ErrorCode::ParseError);
  CHECK(code_of([] { parse_pattern("carrier: F2\nm: 1\n"); }) == ErrorCode::ParseError);
}
