#include <map>
#include <random>
#include <set>
#include <stdexcept>

#include "aslab/budget.hpp"
#include "aslab/error.hpp"
#include "aslab/linalg_fp.hpp"
#include "aslab/patterns/patterns.hpp"

namespace aslab::patterns {

namespace {

// Smallest code with nonzero absolute trace; constants of this kind are outside wp(F_q).
hahn::Code trace_one(const field_core::GaloisField& f) {
  for (hahn::Code c = 1; c < f.q(); ++c) {
    if (f.trace(c) != 0) return c;
  }
  fail(ErrorCode::InvalidArgument, "field without trace-one element");
}

std::vector<std::uint64_t> all_masks(std::size_t cells) {
  require(cells <= 20, ErrorCode::InvalidArgument, "IP patterns are limited to m <= 20");
  std::vector<std::uint64_t> out;
  for (std::uint64_t j = 0; j < (std::uint64_t{1} << cells); ++j) out.push_back(j);
  return out;
}

CarrierElem scalar_mul(const Carrier& c, const CarrierElem& x, std::uint32_t s) {
  switch (c.kind) {
    case CarrierKind::FiniteField: return elem_mul(x, FFElem(c.base(), s));
    case CarrierKind::RatFuncField: return elem_mul(x, RatFunc::constant(c.p(), s));
    case CarrierKind::Hahn: return elem_mul(x, HahnElem::constant(c.base(), c.group, s));
    case CarrierKind::Padic: return elem_mul(x, PadicInt::make(c.p(), c.padic_prec, s));
  }
  return x;
}

// Rows t^(spacing * i * base^k); with base >= m the cell products have distinct exponents.
std::vector<std::vector<CarrierElem>> monomial_rows(const Carrier& c, std::size_t n, std::size_t m, std::int64_t base,
                                                    std::int64_t spacing = 1) {
  std::vector<std::vector<CarrierElem>> rows(n);
  std::int64_t scale = spacing;
  for (std::size_t k = 0; k < n; ++k, scale *= base) {
    for (std::size_t i = 0; i < m; ++i) rows[k].push_back(elem_monomial(c, Rational(static_cast<std::int64_t>(i) * scale)));
  }
  return rows;
}

// Builds v_cell with v_cell in A_c' * wp(K) for every c' != cell but not in A_cell * wp(K),
// searching inside the F_p-span of `basis`.
std::optional<std::vector<CarrierElem>> dual_vectors(const Carrier& c, const std::vector<CarrierElem>& products,
                                                     const std::vector<CarrierElem>& basis) {
  const auto cells = products.size();
  check_budget(cells * basis.size() * cells, "dual vector search");
  // coords[cell][w]
  std::vector<std::vector<QuotientCoords>> coords(cells);
  for (std::size_t cell = 0; cell < cells; ++cell) {
    for (const auto& w : basis) coords[cell].push_back(quotient_coords(elem_div(w, products[cell])));
  }
  auto rows_for = [&](std::size_t cell) {
    std::map<CoordKey, std::size_t> idx;
    for (const auto& col : coords[cell])
      for (const auto& [key, v] : col) idx.try_emplace(key, idx.size());
    FpMatrix m(idx.size(), FpVector(basis.size(), 0));
    for (std::size_t w = 0; w < basis.size(); ++w)
      for (const auto& [key, v] : coords[cell][w]) m[idx[key]][w] = v;
    return m;
  };
  std::vector<FpMatrix> mats;
  for (std::size_t cell = 0; cell < cells; ++cell) mats.push_back(rows_for(cell));

  std::vector<CarrierElem> out;
  for (std::size_t cell = 0; cell < cells; ++cell) {
    FpMatrix others;
    for (std::size_t o = 0; o < cells; ++o) {
      if (o != cell) others.insert(others.end(), mats[o].begin(), mats[o].end());
    }
    auto kernel = fp_kernel(others, basis.size(), c.p());
    std::optional<FpVector> pick;
    for (const auto& v : kernel) {
      for (const auto& row : mats[cell]) {
        std::uint64_t acc = 0;
        for (std::size_t w = 0; w < basis.size(); ++w) acc += static_cast<std::uint64_t>(row[w]) * v[w];
        if (acc % c.p() != 0) {
          pick = v;
          break;
        }
      }
      if (pick) break;
    }
    if (!pick) return std::nullopt;
    CarrierElem v = elem_zero(c);
    for (std::size_t w = 0; w < basis.size(); ++w) {
      if ((*pick)[w] != 0) v = elem_add(v, scalar_mul(c, basis[w], (*pick)[w]));
    }
    out.push_back(std::move(v));
  }
  return out;
}

constexpr std::int64_t kMaxWindowRadius = 256;

std::vector<CarrierElem> window_basis(const Carrier& c, std::int64_t radius) {
  std::vector<CarrierElem> basis;
  if (c.kind == CarrierKind::FiniteField) {
    hahn::Code code = 1;
    for (std::uint32_t d = 0; d < c.field.k; ++d, code *= c.p()) basis.push_back(FFElem(c.base(), code));
    return basis;
  }
  for (std::int64_t e = -radius; e <= radius; ++e) {
    if (c.kind == CarrierKind::RatFuncField) {
      basis.push_back(elem_monomial(c, Rational(e)));
      continue;
    }
    hahn::Code code = 1;
    for (std::uint32_t d = 0; d < c.field.k; ++d, code *= c.p()) basis.push_back(elem_monomial(c, Rational(e), code));
  }
  return basis;
}

IPnPattern build_ipn(const Carrier& c, std::size_t n, std::size_t m, std::vector<std::uint64_t> masks) {
  IPnPattern p;
  p.carrier = c;
  p.n = n;
  p.m = m;
  p.params.assign(n, {});
  if (m == 0) return p;
  const auto cells = p.cells();
  require(cells <= 64, ErrorCode::InvalidArgument, "patterns are limited to 64 cells");
  require(c.kind != CarrierKind::Padic, ErrorCode::OracleDomainError, "pattern generation over Qp is not supported");

  std::vector<CarrierElem> atoms;  // atoms[cell] lies in every other cell's subgroup but not its own
  if (c.kind == CarrierKind::Hahn && c.group.p_divisible(c.p())) {
    p.params = monomial_rows(c, n, m, static_cast<std::int64_t>(m + 1));
    const auto tr = trace_one(*c.base());
    for (std::size_t cell = 0; cell < cells; ++cell) {
      // Product exponent of the cell: sum_k i_k (m+1)^k, with i_1 the most significant cell digit.
      std::vector<std::int64_t> scales(n, 1);
      for (std::size_t k = 1; k < n; ++k) scales[k] = scales[k - 1] * static_cast<std::int64_t>(m + 1);
      std::int64_t e = 0;
      auto rest = cell;
      for (std::size_t k = n; k-- > 0;) {
        e += static_cast<std::int64_t>(rest % m) * scales[k];
        rest /= m;
      }
      atoms.push_back(elem_monomial(c, Rational(e), tr));
    }
  } else {
    // Over a finite field the parameters are distinct nonzero constants. Elsewhere the rows are
    // monomials whose cell products t^(S * cell) are spaced by S = p^K; consecutive exponents
    // give dependent subgroups, so K grows until the dual search in a window succeeds.
    std::optional<std::vector<CarrierElem>> found;
    auto try_rows = [&](std::int64_t radius) {
      std::vector<CarrierElem> products;
      for (std::size_t cell = 0; cell < cells; ++cell) {
        CarrierElem a = elem_one(c);
        for (const auto& y : p.cell_params(cell)) a = elem_mul(a, y);
        products.push_back(std::move(a));
      }
      found = dual_vectors(c, products, window_basis(c, radius));
    };
    if (c.kind == CarrierKind::FiniteField) {
      require(m < c.field.q, ErrorCode::SearchExhausted, "not enough nonzero parameters in " + c.to_string());
      for (std::size_t k = 0; k < n; ++k) {
        p.params[k].clear();
        for (std::size_t i = 0; i < m; ++i) p.params[k].push_back(FFElem(c.base(), static_cast<hahn::Code>(i + 1)));
      }
      try_rows(0);
    } else {
      const auto span = static_cast<std::int64_t>(cells);
      for (std::int64_t spacing = c.p(); spacing * span <= kMaxWindowRadius / 2; spacing *= c.p()) {
        p.params = monomial_rows(c, n, m, static_cast<std::int64_t>(m), spacing);
        try_rows(2 * spacing * span);
        if (found) break;
      }
    }
    if (!found) {
      fail(ErrorCode::SearchExhausted, "no " + std::to_string(m) + "-row independence pattern found over " + c.to_string());
    }
    atoms = std::move(*found);
  }
  for (auto mask : masks) {
    CarrierElem b = elem_zero(c);
    for (std::size_t cell = 0; cell < cells; ++cell) {
      if (!(mask >> cell & 1u)) b = elem_add(b, atoms[cell]);
    }
    p.cols.push_back({mask, std::move(b)});
  }
  auto report = verify_ipn(p);
  if (!report.verified) throw std::logic_error("generated pattern failed verification over " + c.to_string());
  return p;
}

}  // namespace

IPnPattern gen_ip(const Carrier& c, std::size_t m) {
  require(m <= 20, ErrorCode::InvalidArgument, "IP patterns are limited to m <= 20");
  return build_ipn(c, 1, m, m == 0 ? std::vector<std::uint64_t>{} : all_masks(m));
}

IPnPattern gen_ipn(const Carrier& c, std::size_t n, std::size_t m) {
  require(n >= 1, ErrorCode::InvalidArgument, "IP_n needs n >= 1");
  if (n == 1) return gen_ip(c, m);
  std::size_t cells = 1;
  for (std::size_t k = 0; k < n; ++k) {
    cells *= m;
    require(cells <= 64, ErrorCode::InvalidArgument, "patterns are limited to 64 cells");
  }
  return build_ipn(c, n, m, m == 0 ? std::vector<std::uint64_t>{} : designated_columns(cells));
}

namespace {

struct Cell {
  CarrierElem a, z;
};

std::vector<Cell> tp2_pool(const Carrier& c) {
  std::vector<Cell> pool;
  if (c.kind == CarrierKind::FiniteField) {
    const auto q = std::min<std::uint32_t>(c.field.q, 16);
    for (hahn::Code a = 1; a < q; ++a)
      for (hahn::Code z = 0; z < q; ++z) pool.push_back({FFElem(c.base(), a), FFElem(c.base(), z)});
    return pool;
  }
  require(c.kind != CarrierKind::Padic, ErrorCode::OracleDomainError, "TP2 search over Qp is not supported");
  const hahn::Code tr = trace_one(*c.base());
  std::vector<CarrierElem> zbasis = {c.kind == CarrierKind::Hahn ? elem_monomial(c, 0, tr) : elem_one(c)};
  for (int e = 1; e <= 3; ++e) zbasis.push_back(elem_monomial(c, Rational(-e)));
  // Every multiple of the constant (the residue classes of K/wp(K) at 0), times 0/1 sums of the poles.
  std::vector<CarrierElem> zs;
  for (std::uint32_t lambda = 0; lambda < c.p(); ++lambda) {
    for (unsigned mask = 0; mask < (1u << (zbasis.size() - 1)); ++mask) {
      CarrierElem z = scalar_mul(c, zbasis[0], lambda);
      for (std::size_t i = 1; i < zbasis.size(); ++i)
        if (mask >> (i - 1) & 1u) z = elem_add(z, zbasis[i]);
      zs.push_back(std::move(z));
    }
  }
  for (int e : {0, 1, -1, 2}) {
    auto a = elem_monomial(c, Rational(e));
    for (const auto& z : zs) pool.push_back({a, z});
  }
  return pool;
}

class Tp2Search {
 public:
  Tp2Search(const Carrier& c, std::size_t r, std::size_t m, std::size_t k, std::uint64_t seed)
      : c_(c), r_(r), m_(m), k_(k), pool_(tp2_pool(c)) {
    std::mt19937_64 rng(seed);
    for (std::size_t i = pool_.size(); i > 1; --i) std::swap(pool_[i - 1], pool_[rng() % i]);
  }

  std::optional<TP2Pattern> run() {
    std::vector<std::size_t> row;
    find_rows(row, 0);
    std::vector<std::size_t> chosen;
    if (!choose_rows(chosen)) return std::nullopt;
    TP2Pattern p;
    p.carrier = c_;
    p.rows = r_;
    p.cols = m_;
    p.k = k_;
    for (auto ri : chosen) {
      std::vector<CarrierElem> a, z;
      for (auto cell : rows_[ri]) {
        a.push_back(pool_[cell].a);
        z.push_back(pool_[cell].z);
      }
      p.a.push_back(std::move(a));
      p.z.push_back(std::move(z));
    }
    return p;
  }

 private:
  static constexpr std::size_t kMaxRows = 96;

  void tick() { check_budget(++nodes_, "TP2 search"); }

  // Consistency of a set of pool cells; nullopt when the window cannot decide.
  std::optional<bool> consistent(const std::vector<std::size_t>& cells) {
    auto key = cells;
    std::sort(key.begin(), key.end());
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    tick();
    std::vector<CarrierElem> a, z;
    for (auto i : cells) {
      a.push_back(pool_[i].a);
      z.push_back(pool_[i].z);
    }
    std::optional<bool> ok;
    try {
      ok = joint_witness(c_, a, z).has_value();
    } catch (const Error& e) {
      if (e.code() != ErrorCode::WindowTooSmall) throw;
    }
    memo_.emplace(std::move(key), ok);
    return ok;
  }

  // Does adding `cell` keep every k-subset containing it inconsistent?
  bool extends(std::vector<std::size_t>& row, std::size_t cell) {
    if (row.size() + 1 < k_) return true;
    std::vector<std::size_t> pick(k_ - 1);
    for (std::size_t i = 0; i < pick.size(); ++i) pick[i] = i;
    while (true) {
      std::vector<std::size_t> cells = {cell};
      for (auto i : pick) cells.push_back(row[i]);
      if (consistent(cells).value_or(true)) return false;
      std::size_t i = pick.size();
      while (i-- > 0) {
        if (pick[i] < row.size() - pick.size() + i) {
          ++pick[i];
          for (std::size_t j = i + 1; j < pick.size(); ++j) pick[j] = pick[j - 1] + 1;
          break;
        }
      }
      if (i == static_cast<std::size_t>(-1)) return true;
    }
  }

  void find_rows(std::vector<std::size_t>& row, std::size_t from) {
    if (rows_.size() >= kMaxRows) return;
    if (row.size() == m_) {
      rows_.push_back(row);
      return;
    }
    for (std::size_t cell = from; cell < pool_.size() && rows_.size() < kMaxRows; ++cell) {
      tick();
      if (!extends(row, cell)) continue;
      row.push_back(cell);
      find_rows(row, cell + 1);
      row.pop_back();
    }
  }

  bool paths_ok(const std::vector<std::size_t>& chosen) {
    // Every path through the chosen rows that uses the last one.
    const auto t = chosen.size();
    std::vector<std::size_t> f(t, 0);
    while (true) {
      std::vector<std::size_t> cells;
      for (std::size_t i = 0; i < t; ++i) cells.push_back(rows_[chosen[i]][f[i]]);
      if (!consistent(cells).value_or(false)) return false;
      std::size_t i = t;
      while (i-- > 0) {
        if (++f[i] < m_) break;
        f[i] = 0;
      }
      if (i == static_cast<std::size_t>(-1)) return true;
    }
  }

  bool choose_rows(std::vector<std::size_t>& chosen) {
    if (chosen.size() == r_) return true;
    for (std::size_t ri = 0; ri < rows_.size(); ++ri) {
      if (std::find(chosen.begin(), chosen.end(), ri) != chosen.end()) continue;
      tick();
      chosen.push_back(ri);
      if (paths_ok(chosen) && choose_rows(chosen)) return true;
      chosen.pop_back();
    }
    return false;
  }

  Carrier c_;
  std::size_t r_, m_, k_;
  std::vector<Cell> pool_;
  std::vector<std::vector<std::size_t>> rows_;
  std::map<std::vector<std::size_t>, std::optional<bool>> memo_;
  std::uint64_t nodes_ = 0;
};

}  // namespace

TP2Pattern gen_tp2(const Carrier& c, std::size_t r, std::size_t m, std::size_t k, std::uint64_t seed) {
  require(r >= 1 && m >= 1, ErrorCode::InvalidArgument, "TP2 patterns need at least one row and one column");
  require(r * m <= 12, ErrorCode::InvalidArgument, "TP2 search is limited to 12 cells");
  require(k >= 2, ErrorCode::InvalidArgument, "TP2 needs k >= 2");
  Tp2Search search(c, r, m, k, seed);
  auto p = search.run();
  if (!p) {
    fail(ErrorCode::SearchExhausted, "no " + std::to_string(r) + "x" + std::to_string(m) + " TP2 pattern with " +
                                         std::to_string(k) + "-inconsistent rows in the search space over " + c.to_string());
  }
  auto report = verify_tp2(*p);
  if (!report.verified) throw std::logic_error("generated TP2 pattern failed verification over " + c.to_string());
  return *p;
}

}  // namespace aslab::patterns
