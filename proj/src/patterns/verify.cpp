#include <limits>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

#include "aslab/budget.hpp"
#include "aslab/error.hpp"
#include "aslab/linalg_fp.hpp"
#include "aslab/patterns/patterns.hpp"

namespace aslab::patterns {

namespace {

std::uint64_t checked_power(std::uint64_t base, std::size_t e, const char* what) {
  std::uint64_t r = 1;
  for (std::size_t i = 0; i < e; ++i) {
    r *= base;
    check_budget(r, what);
  }
  return r;
}

CarrierElem scalar(const Carrier& c, std::uint32_t s) {
  switch (c.kind) {
    case CarrierKind::FiniteField: return FFElem(c.base(), s % c.p());
    case CarrierKind::RatFuncField: return RatFunc::constant(c.p(), s);
    case CarrierKind::Hahn: return HahnElem::constant(c.base(), c.group, s % c.p());
    case CarrierKind::Padic: return PadicInt::make(c.p(), c.padic_prec, s);
  }
  return elem_zero(c);
}

// Elements whose quotient coordinates include the given key, used to span the window.
std::vector<CarrierElem> window_generators(const Carrier& c, const CoordKey& key) {
  std::vector<CarrierElem> out;
  if (c.kind == CarrierKind::Hahn) {
    const auto& f = *c.base();
    for (const auto& e : {key.index, key.index * Rational(c.p())}) {
      if (e > 0) continue;
      std::uint32_t code = 1;
      for (std::uint32_t d = 0; d < f.k(); ++d, code *= f.p()) out.push_back(HahnElem::monomial(c.base(), c.group, code, e));
    }
  } else if (c.kind == CarrierKind::RatFuncField) {
    constexpr auto inf = std::numeric_limits<std::uint32_t>::max();
    const auto order = static_cast<std::int64_t>(key.index.numerator());
    for (auto n : {order, order * static_cast<std::int64_t>(c.p())}) {
      if (key.place == inf) {
        out.push_back(RatFunc::t(c.p()).pow(n));
      } else if (key.place == inf - 1) {
        out.push_back(RatFunc::constant(c.p(), 1));
        break;
      } else {
        out.push_back(RatFunc::pole_power(c.p(), key.place, static_cast<std::uint32_t>(n), 1));
      }
    }
  } else if (c.kind == CarrierKind::Padic) {
    out.push_back(scalar(c, 1));
  }
  return out;
}

std::optional<CarrierElem> finite_field_witness(const Carrier& c, const std::vector<CarrierElem>& a,
                                                const std::vector<CarrierElem>& z) {
  auto f = c.base();
  const auto q = f->q();
  std::vector<bool> image(q, false);
  for (hahn::Code x = 0; x < q; ++x) image[f->wp(x)] = true;
  std::vector<bool> alive(q, true);
  for (std::size_t i = 0; i < a.size(); ++i) {
    const auto ai = std::get<FFElem>(a[i]).code();
    const auto zi = std::get<FFElem>(z[i]).code();
    std::vector<bool> coset(q, false);
    // a_i * wp(F_q) - z_i
    for (hahn::Code y = 0; y < q; ++y) {
      if (image[y]) coset[f->sub(f->mul(ai, y), zi)] = true;
    }
    for (hahn::Code x = 0; x < q; ++x) alive[x] = alive[x] && coset[x];
  }
  for (hahn::Code x = 0; x < q; ++x) {
    if (alive[x]) return FFElem(f, x);
  }
  return std::nullopt;
}

}  // namespace

std::size_t IPnPattern::cells() const {
  std::size_t c = 1;
  for (std::size_t i = 0; i < n; ++i) c *= m;
  return c;
}

std::vector<CarrierElem> IPnPattern::cell_params(std::size_t cell) const {
  std::vector<CarrierElem> out(n, elem_one(carrier));
  for (std::size_t k = n; k-- > 0;) {
    out[k] = params[k][cell % m];
    cell /= m;
  }
  return out;
}

std::vector<std::uint64_t> designated_columns(std::size_t cells) {
  require(cells <= 64, ErrorCode::InvalidArgument, "at most 64 cells can be indexed by a column mask");
  std::vector<std::uint64_t> out;
  const std::uint64_t full = cells == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << cells) - 1;
  if (cells <= 8) {
    for (std::uint64_t j = 0; j <= full; ++j) out.push_back(j);
    return out;
  }
  out.push_back(0);
  out.push_back(full);
  for (std::size_t c = 0; c < cells; ++c) out.push_back(std::uint64_t{1} << c);
  for (std::size_t c = 0; c < cells; ++c) out.push_back(full & ~(std::uint64_t{1} << c));
  return out;
}

VerifyReport verify_ipn(const IPnPattern& p) {
  require(p.n >= 1, ErrorCode::InvalidArgument, "IP_n patterns need n >= 1");
  require(p.params.size() == p.n, ErrorCode::InvalidArgument, "pattern has the wrong number of parameter lists");
  for (const auto& row : p.params) {
    require(row.size() == p.m, ErrorCode::InvalidArgument, "parameter lists must all have length m");
    for (const auto& x : row) {
      require(elem_in_carrier(p.carrier, x), ErrorCode::OracleDomainError,
              "parameter " + format_elem(x) + " is not in " + p.carrier.to_string());
    }
  }
  const auto cells = p.cells();
  require(cells <= 64, ErrorCode::InvalidArgument, "patterns are limited to 64 cells");
  check_budget(static_cast<std::uint64_t>(cells) * p.cols.size(), "pattern cells");
  FieldOracle oracle(p.carrier);
  VerifyReport r;
  r.incidence.assign(cells, std::vector<bool>(p.cols.size(), false));
  r.expected = r.incidence;
  for (std::size_t cell = 0; cell < cells; ++cell) {
    const auto ys = p.cell_params(cell);
    for (std::size_t j = 0; j < p.cols.size(); ++j) {
      const bool got = oracle.sat_phi(p.cols[j].b, ys);
      const bool want = (p.cols[j].mask >> cell & 1u) != 0;
      r.incidence[cell][j] = got;
      r.expected[cell][j] = want;
      if (got != want) r.mismatches.push_back("(" + std::to_string(cell) + ", " + std::to_string(p.cols[j].mask) + ")");
    }
  }
  r.verified = r.mismatches.empty();
  return r;
}

VerifyReport verify_ip(const IPnPattern& p) {
  require(p.n == 1, ErrorCode::InvalidArgument, "IP patterns have one parameter list");
  require(p.m <= 20, ErrorCode::InvalidArgument, "IP patterns are limited to m <= 20");
  return verify_ipn(p);
}

std::optional<CarrierElem> joint_witness(const Carrier& c, const std::vector<CarrierElem>& a,
                                         const std::vector<CarrierElem>& z) {
  require(a.size() == z.size() && !a.empty(), ErrorCode::InvalidArgument, "joint_witness needs matching conditions");
  for (std::size_t i = 0; i < a.size(); ++i) {
    require(elem_in_carrier(c, a[i]) && elem_in_carrier(c, z[i]), ErrorCode::OracleDomainError,
            "condition outside " + c.to_string());
  }
  if (c.kind == CarrierKind::FiniteField) return finite_field_witness(c, a, z);

  FieldOracle oracle(c);
  bool same_a = true;
  for (const auto& ai : a) same_a = same_a && elem_equal(ai, a[0]);
  if (same_a) {
    // One subgroup: consistent iff all z lie in one coset, and then -z_0 works.
    for (std::size_t i = 1; i < z.size(); ++i) {
      if (!oracle.sat_phi(elem_sub(z[i], z[0]), {a[0]})) return std::nullopt;
    }
    return elem_sub(elem_zero(c), z[0]);
  }
  for (const auto& ai : a) {
    require(!elem_is_zero(ai), ErrorCode::OracleDomainError, "window solving needs nonzero parameters");
  }

  // Window: a_i times generators of every quotient coordinate touched by some z_j / a_j.
  std::vector<QuotientCoords> rhs;
  std::set<CoordKey> keys = {CoordKey{}};
  if (c.kind == CarrierKind::RatFuncField) keys = {CoordKey{std::numeric_limits<std::uint32_t>::max() - 1, 0, 0}};
  for (std::size_t j = 0; j < a.size(); ++j) {
    rhs.push_back(quotient_coords(elem_div(z[j], a[j])));
    for (const auto& [key, v] : rhs.back()) keys.insert(CoordKey{key.place, key.index, 0});
  }
  std::vector<CarrierElem> window;
  for (const auto& ai : a) {
    for (const auto& key : keys) {
      for (auto& g : window_generators(c, key)) window.push_back(elem_mul(ai, g));
    }
  }
  check_budget(window.size() * a.size(), "TP2 window");

  std::map<std::pair<std::size_t, CoordKey>, std::size_t> row_of;
  std::vector<std::vector<std::pair<std::size_t, std::uint32_t>>> columns(window.size());
  auto row_index = [&](std::size_t j, const CoordKey& key) {
    auto [it, fresh] = row_of.try_emplace({j, key}, row_of.size());
    return it->second;
  };
  for (std::size_t w = 0; w < window.size(); ++w) {
    for (std::size_t j = 0; j < a.size(); ++j) {
      for (const auto& [key, v] : quotient_coords(elem_div(window[w], a[j]))) columns[w].emplace_back(row_index(j, key), v);
    }
  }
  std::vector<std::pair<std::size_t, std::uint32_t>> target;
  for (std::size_t j = 0; j < a.size(); ++j) {
    for (const auto& [key, v] : rhs[j]) target.emplace_back(row_index(j, key), (c.p() - v) % c.p());
  }
  FpMatrix mat(row_of.size(), FpVector(window.size(), 0));
  for (std::size_t w = 0; w < window.size(); ++w) {
    for (auto [r, v] : columns[w]) mat[r][w] = v;
  }
  FpVector b(row_of.size(), 0);
  for (auto [r, v] : target) b[r] = v;
  auto sol = fp_solve(mat, b, window.size(), c.p());
  if (!sol) {
    if (c.kind == CarrierKind::Padic) return std::nullopt;  // x mod p is all that matters
    fail(ErrorCode::WindowTooSmall, "no solution with support in the " + std::to_string(window.size()) +
                                        "-element window; the conditions may still be consistent");
  }
  CarrierElem x = elem_zero(c);
  for (std::size_t w = 0; w < window.size(); ++w) {
    if ((*sol)[w] != 0) x = elem_add(x, elem_mul(window[w], scalar(c, (*sol)[w])));
  }
  for (std::size_t j = 0; j < a.size(); ++j) {
    if (!oracle.sat_psi(x, a[j], z[j])) {
      throw std::logic_error("window solution " + format_elem(x) + " fails condition " + std::to_string(j));
    }
  }
  return x;
}

namespace {

struct GroupCells {
  const conditions::FinAbGroup& g;
  std::vector<std::vector<boost::dynamic_bitset<>>> sets;  // solution set of each cell

  GroupCells(const TP2Pattern& p) : g(*p.group) {
    sets.resize(p.rows);
    for (std::size_t i = 0; i < p.rows; ++i) {
      for (std::size_t j = 0; j < p.cols; ++j) {
        auto h = conditions::Subgroup::generated(g, p.group_gens[i][j]);
        boost::dynamic_bitset<> s(g.order());
        const auto shift = p.group_shift[i][j];
        // {x : x + shift in H} = H - shift
        for (auto e = h.bits().find_first(); e != boost::dynamic_bitset<>::npos; e = h.bits().find_next(e)) {
          s.set(g.add(static_cast<conditions::Elem>(e), g.neg(shift)));
        }
        sets[i].push_back(std::move(s));
      }
    }
  }

  std::optional<conditions::Elem> witness(const std::vector<std::pair<std::size_t, std::size_t>>& cells) const {
    boost::dynamic_bitset<> acc(g.order());
    acc.set();
    for (auto [i, j] : cells) acc &= sets[i][j];
    auto first = acc.find_first();
    if (first == boost::dynamic_bitset<>::npos) return std::nullopt;
    return static_cast<conditions::Elem>(first);
  }
};

bool next_combination(std::vector<std::size_t>& c, std::size_t n) {
  const auto k = c.size();
  for (std::size_t i = k; i-- > 0;) {
    if (c[i] < n - k + i) {
      ++c[i];
      for (std::size_t j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
      return true;
    }
  }
  return false;
}

std::string join(const std::vector<std::size_t>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + std::to_string(v[i]);
  return out;
}

}  // namespace

VerifyReport verify_tp2(const TP2Pattern& p, const std::optional<std::vector<std::vector<std::size_t>>>& paths) {
  require(p.k >= 2, ErrorCode::InvalidArgument, "TP2 needs k >= 2");
  check_budget(static_cast<std::uint64_t>(p.rows) * p.cols, "TP2 cells");
  std::optional<GroupCells> groups;
  if (p.group) {
    require(p.group_gens.size() == p.rows && p.group_shift.size() == p.rows, ErrorCode::InvalidArgument,
            "TP2 grid does not match its shape");
    for (std::size_t i = 0; i < p.rows; ++i) {
      require(p.group_gens[i].size() == p.cols && p.group_shift[i].size() == p.cols, ErrorCode::InvalidArgument,
              "TP2 grid does not match its shape");
    }
    groups.emplace(p);
  } else {
    require(p.a.size() == p.rows && p.z.size() == p.rows, ErrorCode::InvalidArgument, "TP2 grid does not match its shape");
    for (std::size_t i = 0; i < p.rows; ++i) {
      require(p.a[i].size() == p.cols && p.z[i].size() == p.cols, ErrorCode::InvalidArgument,
              "TP2 grid does not match its shape");
    }
  }
  auto witness = [&](const std::vector<std::pair<std::size_t, std::size_t>>& cells) -> std::optional<std::string> {
    if (groups) {
      auto w = groups->witness(cells);
      if (!w) return std::nullopt;
      return p.group->format(*w);
    }
    std::vector<CarrierElem> a, z;
    for (auto [i, j] : cells) {
      a.push_back(p.a[i][j]);
      z.push_back(p.z[i][j]);
    }
    auto w = joint_witness(p.carrier, a, z);
    if (!w) return std::nullopt;
    return format_elem(*w);
  };

  VerifyReport r;
  for (std::size_t i = 0; i < p.rows; ++i) {
    if (p.cols < p.k) continue;
    std::vector<std::size_t> subset(p.k);
    std::iota(subset.begin(), subset.end(), 0);
    do {
      std::vector<std::pair<std::size_t, std::size_t>> cells;
      for (auto j : subset) cells.emplace_back(i, j);
      RowCheck rc{i, subset, witness(cells).has_value()};
      if (rc.consistent) r.mismatches.push_back("row " + std::to_string(i) + " {" + join(subset) + "} consistent");
      r.row_checks.push_back(std::move(rc));
    } while (next_combination(subset, p.cols));
  }

  std::vector<std::vector<std::size_t>> todo;
  if (paths) {
    todo = *paths;
  } else if (p.rows > 0 && p.cols > 0) {
    const auto total = checked_power(p.cols, p.rows, "TP2 paths");
    for (std::uint64_t code = 0; code < total; ++code) {
      std::vector<std::size_t> f(p.rows);
      auto rest = code;
      for (std::size_t i = p.rows; i-- > 0;) {
        f[i] = static_cast<std::size_t>(rest % p.cols);
        rest /= p.cols;
      }
      todo.push_back(std::move(f));
    }
  }
  for (const auto& f : todo) {
    require(f.size() == p.rows, ErrorCode::InvalidArgument, "a path picks one column per row");
    std::vector<std::pair<std::size_t, std::size_t>> cells;
    for (std::size_t i = 0; i < p.rows; ++i) {
      require(f[i] < p.cols, ErrorCode::InvalidArgument, "path column out of range");
      cells.emplace_back(i, f[i]);
    }
    auto w = witness(cells);
    PathCheck pc{f, w.has_value(), w.value_or("")};
    if (!pc.consistent) r.mismatches.push_back("path " + join(f) + " inconsistent");
    r.path_checks.push_back(std::move(pc));
  }
  r.verified = r.mismatches.empty();
  return r;
}

VerifyReport verify_pattern(const Pattern& p) {
  if (const auto* ip = std::get_if<IPnPattern>(&p)) return ip->n == 1 ? verify_ip(*ip) : verify_ipn(*ip);
  return verify_tp2(std::get<TP2Pattern>(p));
}

}  // namespace aslab::patterns
