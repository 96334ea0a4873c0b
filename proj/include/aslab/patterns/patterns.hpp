#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "aslab/conditions/conditions.hpp"
#include "aslab/patterns/carrier.hpp"

namespace aslab::patterns {

// Column b_J; bit c of mask is cell c, where the cell of (i_1, ..., i_n) is
// i_1 m^(n-1) + ... + i_n.
struct IncidenceColumn {
  std::uint64_t mask = 0;
  CarrierElem b;
};

// IP (n = 1, every J) and IP_n patterns. params[k][i] is a^(k+1)_i.
struct IPnPattern {
  Carrier carrier;
  std::size_t n = 1;
  std::size_t m = 0;
  std::vector<std::vector<CarrierElem>> params;
  std::vector<IncidenceColumn> cols;

  std::size_t cells() const;
  // Parameters a^1_{i_1}, ..., a^n_{i_n} of a cell.
  std::vector<CarrierElem> cell_params(std::size_t cell) const;
};

// Cell (i, j) is the condition x + z_ij in a_ij * wp(K). For finite group ambients the
// condition is x + shift_ij in H_ij, with H_ij given by generators.
struct TP2Pattern {
  Carrier carrier;
  std::optional<conditions::FinAbGroup> group;
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::size_t k = 2;
  std::vector<std::vector<CarrierElem>> a, z;
  std::vector<std::vector<std::vector<conditions::Elem>>> group_gens;
  std::vector<std::vector<conditions::Elem>> group_shift;
};

using Pattern = std::variant<IPnPattern, TP2Pattern>;

struct RowCheck {
  std::size_t row = 0;
  std::vector<std::size_t> cells;
  bool consistent = false;
};

struct PathCheck {
  std::vector<std::size_t> path;  // column chosen in each row
  bool consistent = false;
  std::string witness;
};

struct VerifyReport {
  bool verified = true;
  // IP / IP_n: incidence[cell][column] against expected.
  std::vector<std::vector<bool>> incidence, expected;
  std::vector<RowCheck> row_checks;
  std::vector<PathCheck> path_checks;
  std::vector<std::string> mismatches;
};

VerifyReport verify_ip(const IPnPattern& p);
VerifyReport verify_ipn(const IPnPattern& p);
// nullopt paths means every path.
VerifyReport verify_tp2(const TP2Pattern& p, const std::optional<std::vector<std::vector<std::size_t>>>& paths = std::nullopt);
VerifyReport verify_pattern(const Pattern& p);

// Default column family for IP_n: every J when m^n <= 8, otherwise the empty set, the
// full set, all singletons and all complements of singletons.
std::vector<std::uint64_t> designated_columns(std::size_t cells);

IPnPattern gen_ip(const Carrier& c, std::size_t m);
IPnPattern gen_ipn(const Carrier& c, std::size_t n, std::size_t m);
TP2Pattern gen_tp2(const Carrier& c, std::size_t r, std::size_t m, std::size_t k = 2, std::uint64_t seed = 0);

// Does x satisfy every condition x + z_i in a_i * wp(K)? Returns a witness or nullopt.
// Series and F_p(t) carriers solve over a finite window; WindowTooSmall if the window has no solution
// and the answer is not forced by the conditions sharing one a.
std::optional<CarrierElem> joint_witness(const Carrier& c, const std::vector<CarrierElem>& a,
                                         const std::vector<CarrierElem>& z);

struct LiftOptions {
  // Adds seeded higher-order terms (positive valuation) to every lifted constant.
  bool perturb = false;
  std::uint64_t seed = 0;
};

// Coefficient-wise lift of a pattern over F_q to F_q((G)) or, for q = p, to Qp.
Pattern lift_pattern(const Pattern& p, const Carrier& target, const LiftOptions& opts = {});
// Residue images of a lifted pattern (inverse of lift_pattern); NonIntegralInput when a
// parameter is not a unit or a constant is not integral.
Pattern residue_pattern(const Pattern& p, const Carrier& residue);

std::string format_pattern(const Pattern& p);
Pattern parse_pattern(std::string_view text, std::uint32_t padic_prec = 20);
std::string format_report(const VerifyReport& r);

}  // namespace aslab::patterns
