#include "aslab/conditions/conditions.hpp"

#include <cctype>
#include <numeric>
#include <sstream>

#include "aslab/budget.hpp"
#include "aslab/error.hpp"

namespace aslab::conditions {

FinAbGroup FinAbGroup::product(std::vector<std::uint32_t> moduli) {
  require(!moduli.empty(), ErrorCode::InvalidArgument, "ambient group needs at least one modulus");
  FinAbGroup g;
  std::uint64_t order = 1;
  for (auto m : moduli) {
    require(m >= 1, ErrorCode::InvalidArgument, "moduli must be positive");
    order *= m;
    require(order <= budget(), ErrorCode::BudgetExceeded, "ambient group order exceeds the budget");
  }
  g.moduli_ = std::move(moduli);
  g.order_ = static_cast<std::uint32_t>(order);
  return g;
}

FinAbGroup FinAbGroup::additive(field_core::PrimePower pp) {
  auto g = product(std::vector<std::uint32_t>(pp.k, pp.p));
  g.field_ = pp;
  return g;
}

std::vector<std::uint32_t> FinAbGroup::coords(Elem a) const {
  std::vector<std::uint32_t> c(moduli_.size());
  for (std::size_t i = 0; i < moduli_.size(); ++i) {
    c[i] = a % moduli_[i];
    a /= moduli_[i];
  }
  return c;
}

Elem FinAbGroup::from_coords(const std::vector<std::uint32_t>& c) const {
  require(c.size() == moduli_.size(), ErrorCode::InvalidArgument,
          "element has " + std::to_string(c.size()) + " coordinates, ambient has " + std::to_string(moduli_.size()));
  Elem a = 0;
  for (std::size_t i = moduli_.size(); i-- > 0;) {
    require(c[i] < moduli_[i], ErrorCode::InvalidArgument,
            "coordinate " + std::to_string(c[i]) + " is outside Z/" + std::to_string(moduli_[i]));
    a = a * moduli_[i] + c[i];
  }
  return a;
}

Elem FinAbGroup::add(Elem a, Elem b) const {
  Elem out = 0;
  Elem place = 1;
  for (auto m : moduli_) {
    out += ((a % m + b % m) % m) * place;
    a /= m;
    b /= m;
    place *= m;
  }
  return out;
}

Elem FinAbGroup::neg(Elem a) const {
  Elem out = 0;
  Elem place = 1;
  for (auto m : moduli_) {
    out += ((m - a % m) % m) * place;
    a /= m;
    place *= m;
  }
  return out;
}

Elem FinAbGroup::scale(Elem a, std::uint64_t n) const {
  Elem out = 0;
  Elem place = 1;
  for (auto m : moduli_) {
    out += static_cast<Elem>((a % m) * (n % m) % m) * place;
    a /= m;
    place *= m;
  }
  return out;
}

std::string FinAbGroup::to_string() const {
  if (field_) return field_core::to_string(*field_);
  std::string out = "[";
  for (std::size_t i = 0; i < moduli_.size(); ++i) out += (i ? "," : "") + std::to_string(moduli_[i]);
  return out + "]";
}

std::string FinAbGroup::format(Elem a) const {
  auto c = coords(a);
  std::string out = "[";
  for (std::size_t i = 0; i < c.size(); ++i) out += (i ? "," : "") + std::to_string(c[i]);
  return out + "]";
}

Subgroup Subgroup::generated(const FinAbGroup& g, const std::vector<Elem>& gens) {
  boost::dynamic_bitset<> bits(g.order());
  std::vector<Elem> elems = {0};
  bits.set(0);
  for (auto x : gens) {
    require(x < g.order(), ErrorCode::InvalidArgument, "generator outside the ambient group");
    if (bits.test(x)) continue;
    // Add the cyclic group <x> to the current subgroup: new = old + k*x.
    std::vector<Elem> multiples;
    for (Elem m = x; m != 0; m = g.add(m, x)) multiples.push_back(m);
    const auto old = elems;
    for (auto m : multiples) {
      for (auto e : old) {
        auto s = g.add(e, m);
        if (!bits.test(s)) {
          bits.set(s);
          elems.push_back(s);
        }
      }
    }
  }
  return Subgroup(std::move(bits));
}

Subgroup Subgroup::whole(const FinAbGroup& g) {
  boost::dynamic_bitset<> bits(g.order());
  bits.set();
  return Subgroup(std::move(bits));
}

std::vector<Elem> Subgroup::generators(const FinAbGroup& g) const {
  std::vector<Elem> gens;
  auto span = generated(g, gens);
  for (auto i = bits_.find_first(); i != boost::dynamic_bitset<>::npos; i = bits_.find_next(i)) {
    if (span.contains(static_cast<Elem>(i))) continue;
    gens.push_back(static_cast<Elem>(i));
    span = generated(g, gens);
  }
  return gens;
}

namespace {

std::size_t shape_product(const std::vector<std::size_t>& shape) {
  std::size_t n = 1;
  for (auto s : shape) n *= s;
  return n;
}

void check_shape(const SubgroupFamily& f) {
  require(!f.shape.empty(), ErrorCode::InvalidArgument, "family shape is empty");
  require(shape_product(f.shape) == f.members.size(), ErrorCode::InvalidArgument,
          "array shape does not match the number of members");
}

// Advances a sorted k-subset of {0..n-1}; false after the last one.
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

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  std::uint64_t r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    r = r * (n - k + i) / i;
    if (r > (std::uint64_t{1} << 62)) return r;
  }
  return r;
}

// Intersections of all cells but one, for each cell, via prefix and suffix products.
std::vector<Subgroup> leave_one_out(const std::vector<const Subgroup*>& cells, const Subgroup& whole) {
  const auto n = cells.size();
  std::vector<Subgroup> prefix(n + 1, whole), suffix(n + 1, whole);
  for (std::size_t i = 0; i < n; ++i) prefix[i + 1] = prefix[i] & *cells[i];
  for (std::size_t i = n; i-- > 0;) suffix[i] = suffix[i + 1] & *cells[i];
  std::vector<Subgroup> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(prefix[i] & suffix[i + 1]);
  return out;
}

// Shared core: does the grid of cells contain one whose removal keeps the intersection?
// On failure fills the certificate with one b per cell.
bool grid_reducible(const std::vector<const Subgroup*>& cells, const Subgroup& whole, std::vector<Elem>& cert) {
  auto loo = leave_one_out(cells, whole);
  const auto all = cells.empty() ? whole : (loo[0] & *cells[0]);
  for (const auto& s : loo) {
    if (s == all) return true;
  }
  cert.clear();
  for (std::size_t i = 0; i < cells.size(); ++i) {
    auto diff = loo[i].bits() - cells[i]->bits();
    cert.push_back(static_cast<Elem>(diff.find_first()));
  }
  return false;
}

}  // namespace

SubgroupFamily SubgroupFamily::from_generators(FinAbGroup ambient, std::vector<std::vector<Elem>> gens,
                                               std::vector<std::size_t> shape) {
  SubgroupFamily f;
  f.ambient = std::move(ambient);
  f.shape = shape.empty() ? std::vector<std::size_t>{gens.size()} : std::move(shape);
  for (const auto& g : gens) f.members.push_back(Subgroup::generated(f.ambient, g));
  f.generators = std::move(gens);
  check_shape(f);
  return f;
}

SubgroupFamily SubgroupFamily::from_subgroups(FinAbGroup ambient, std::vector<Subgroup> subs,
                                              std::vector<std::size_t> shape) {
  SubgroupFamily f;
  f.ambient = std::move(ambient);
  f.shape = shape.empty() ? std::vector<std::size_t>{subs.size()} : std::move(shape);
  for (const auto& s : subs) {
    require(s.bits().size() == f.ambient.order(), ErrorCode::InvalidArgument, "subgroup of a different ambient");
    f.generators.push_back(s.generators(f.ambient));
  }
  f.members = std::move(subs);
  check_shape(f);
  return f;
}

SubgroupFamily SubgroupFamily::reshaped(std::vector<std::size_t> new_shape) const {
  auto f = *this;
  f.shape = std::move(new_shape);
  check_shape(f);
  return f;
}

SubgroupFamily wp_scaled_family(field_core::PrimePower pp, std::size_t n) {
  require(n >= 1, ErrorCode::InvalidArgument, "family arity must be at least 1");
  auto field = field_core::GaloisField::get(pp);
  const auto units = pp.q - 1;
  std::uint64_t count = 1;
  for (std::size_t i = 0; i < n; ++i) count *= units;
  check_budget(count * pp.q, "scaled wp family");
  auto ambient = FinAbGroup::additive(pp);

  boost::dynamic_bitset<> image(pp.q);
  for (Elem x = 0; x < pp.q; ++x) image.set(field->wp(x));

  std::vector<Subgroup> subs;
  std::vector<Elem> idx(n, 1);  // scalars a_1..a_n as codes 1..q-1
  while (true) {
    Elem scalar = 1;
    for (auto a : idx) scalar = field->mul(scalar, a);
    boost::dynamic_bitset<> bits(pp.q);
    for (auto y = image.find_first(); y != boost::dynamic_bitset<>::npos; y = image.find_next(y)) {
      bits.set(field->mul(scalar, static_cast<Elem>(y)));
    }
    subs.emplace_back(std::move(bits));
    std::size_t axis = n;
    while (axis-- > 0) {
      if (++idx[axis] < pp.q) break;
      idx[axis] = 1;
    }
    if (axis == static_cast<std::size_t>(-1)) break;
  }
  return SubgroupFamily::from_subgroups(ambient, std::move(subs), std::vector<std::size_t>(n, units));
}

ConditionVerdict bs_check(const SubgroupFamily& family, std::size_t n_bound) {
  const auto m = family.size();
  require(m >= n_bound + 1, ErrorCode::InvalidArgument,
          "family has " + std::to_string(m) + " members, needs at least N+1 = " + std::to_string(n_bound + 1));
  check_budget(binomial(m, n_bound + 1), "Baldwin-Saxl subfamilies");
  const auto whole = Subgroup::whole(family.ambient);
  ConditionVerdict v;
  v.bound = n_bound;
  std::vector<std::size_t> c(n_bound + 1);
  std::iota(c.begin(), c.end(), 0);
  std::vector<const Subgroup*> cells(c.size());
  do {
    for (std::size_t i = 0; i < c.size(); ++i) cells[i] = &family.members[c[i]];
    if (!grid_reducible(cells, whole, v.certificate)) {
      v.holds = false;
      v.chosen = c;
      return v;
    }
  } while (next_combination(c, m));
  v.certificate.clear();
  return v;
}

ConditionVerdict bsh_check(const SubgroupFamily& family, std::size_t n_bound) {
  check_shape(family);
  const auto n = family.rank();
  for (auto side : family.shape) {
    require(side >= n_bound + 1, ErrorCode::InvalidArgument,
            "array side " + std::to_string(side) + " is smaller than N+1 = " + std::to_string(n_bound + 1));
  }
  std::uint64_t total = 1;
  std::uint64_t cells_per_grid = 1;
  for (auto side : family.shape) {
    total *= binomial(side, n_bound + 1);
    cells_per_grid *= n_bound + 1;
    check_budget(total, "BSH sub-grids");
  }
  check_budget(total * cells_per_grid, "BSH sub-grid cells");

  const auto whole = Subgroup::whole(family.ambient);
  ConditionVerdict v;
  v.bound = n_bound;
  std::vector<std::vector<std::size_t>> axes(n, std::vector<std::size_t>(n_bound + 1));
  for (auto& a : axes) std::iota(a.begin(), a.end(), 0);
  std::vector<const Subgroup*> cells(cells_per_grid);
  std::vector<std::size_t> strides(n, 1);
  for (std::size_t i = n - 1; i-- > 0;) strides[i] = strides[i + 1] * family.shape[i + 1];

  while (true) {
    // Cells of the chosen sub-grid in row-major order.
    for (std::size_t cell = 0; cell < cells_per_grid; ++cell) {
      std::size_t rest = cell;
      std::size_t flat = 0;
      for (std::size_t axis = n; axis-- > 0;) {
        flat += axes[axis][rest % (n_bound + 1)] * strides[axis];
        rest /= n_bound + 1;
      }
      cells[cell] = &family.members[flat];
    }
    if (!grid_reducible(cells, whole, v.certificate)) {
      v.holds = false;
      for (const auto& a : axes) v.chosen.insert(v.chosen.end(), a.begin(), a.end());
      return v;
    }
    std::size_t axis = n;
    while (axis-- > 0) {
      if (next_combination(axes[axis], family.shape[axis])) break;
      std::iota(axes[axis].begin(), axes[axis].end(), 0);
    }
    if (axis == static_cast<std::size_t>(-1)) break;
  }
  v.certificate.clear();
  return v;
}

ConditionVerdict cks_check(const SubgroupFamily& family, std::uint64_t n_bound) {
  const auto m = family.size();
  require(m >= 1, ErrorCode::InvalidArgument, "CKS check needs a nonempty family");
  check_budget(static_cast<std::uint64_t>(m) * family.ambient.order() / 64 + m, "CKS intersections");
  const auto whole = Subgroup::whole(family.ambient);
  std::vector<const Subgroup*> cells;
  for (const auto& s : family.members) cells.push_back(&s);
  auto loo = leave_one_out(cells, whole);
  const auto all = loo[0] & family.members[0];
  ConditionVerdict v;
  v.bound = n_bound;
  v.holds = false;
  for (const auto& s : loo) {
    auto index = s.order() / all.order();
    v.indices.push_back(index);
    if (index <= n_bound) v.holds = true;
  }
  return v;
}

bool certificate_verifies(const SubgroupFamily& family, const ConditionVerdict& v) {
  if (v.holds) return v.certificate.empty();
  const auto side = v.bound + 1;
  const auto n = v.chosen.size() / side;
  if (n == 0 || v.chosen.size() != n * side) return false;
  std::vector<std::size_t> strides(n, 1);
  std::vector<std::size_t> shape = n == 1 ? std::vector<std::size_t>{family.size()} : family.shape;
  if (shape.size() != n) return false;
  for (std::size_t i = n - 1; i-- > 0;) strides[i] = strides[i + 1] * shape[i + 1];
  std::size_t cells = 1;
  for (std::size_t i = 0; i < n; ++i) cells *= side;
  if (v.certificate.size() != cells) return false;
  auto member_of_cell = [&](std::size_t cell) -> const Subgroup& {
    std::size_t flat = 0;
    for (std::size_t axis = n; axis-- > 0;) {
      flat += v.chosen[axis * side + cell % side] * strides[axis];
      cell /= side;
    }
    return family.members[flat];
  };
  for (std::size_t b = 0; b < cells; ++b) {
    for (std::size_t cell = 0; cell < cells; ++cell) {
      const bool inside = member_of_cell(cell).contains(v.certificate[b]);
      if (inside == (cell == b)) return false;
    }
  }
  return true;
}

namespace {

std::string format_gens(const FinAbGroup& g, const std::vector<Elem>& gens) {
  std::string out = "[";
  for (std::size_t i = 0; i < gens.size(); ++i) out += (i ? "," : "") + g.format(gens[i]);
  return out + "]";
}

class ListScanner {
 public:
  explicit ListScanner(std::string_view s) : s_(s) {}

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool peek(char c) {
    skip();
    return pos_ < s_.size() && s_[pos_] == c;
  }
  void expect(char c) {
    require(peek(c), ErrorCode::ParseError, std::string("expected '") + c + "' in '" + std::string(s_) + "'");
    ++pos_;
  }
  std::uint32_t number() {
    skip();
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    require(pos_ > start && pos_ - start <= 9, ErrorCode::ParseError, "expected a number in '" + std::string(s_) + "'");
    return static_cast<std::uint32_t>(std::stoul(std::string(s_.substr(start, pos_ - start))));
  }
  std::vector<std::uint32_t> numbers() {
    std::vector<std::uint32_t> out;
    expect('[');
    if (peek(']')) {
      ++pos_;
      return out;
    }
    while (true) {
      out.push_back(number());
      if (peek(',')) {
        ++pos_;
        continue;
      }
      expect(']');
      return out;
    }
  }
  void finish() {
    skip();
    require(pos_ == s_.size(), ErrorCode::ParseError, "trailing text in '" + std::string(s_) + "'");
  }

 private:
  std::string_view s_;
  std::size_t pos_ = 0;
};

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

FinAbGroup parse_ambient(std::string_view text) {
  auto value = trim(text);
  if (!value.empty() && value.front() == 'F') {
    std::uint64_t q = 0;
    try {
      q = std::stoull(std::string(value.substr(1)));
    } catch (const std::exception&) {
      fail(ErrorCode::ParseError, "bad field ambient '" + std::string(value) + "'");
    }
    return FinAbGroup::additive(field_core::PrimePower::from_order(q));
  }
  ListScanner sc(value);
  auto moduli = sc.numbers();
  sc.finish();
  return FinAbGroup::product(std::move(moduli));
}

Elem parse_group_elem(const FinAbGroup& g, std::string_view text) {
  ListScanner sc(text);
  auto e = g.from_coords(sc.numbers());
  sc.finish();
  return e;
}

std::vector<Elem> parse_elem_list(const FinAbGroup& ambient, std::string_view text) {
  ListScanner sc(text);
  std::vector<Elem> g;
  sc.expect('[');
  if (sc.peek(']')) {
    sc.expect(']');
  } else {
    while (true) {
      g.push_back(ambient.from_coords(sc.numbers()));
      if (sc.peek(',')) {
        sc.expect(',');
        continue;
      }
      sc.expect(']');
      break;
    }
  }
  sc.finish();
  return g;
}

std::string format_elem_list(const FinAbGroup& g, const std::vector<Elem>& elems) { return format_gens(g, elems); }

std::string format_family(const SubgroupFamily& family) {
  std::string out = "ambient: " + family.ambient.to_string() + "\n";
  if (family.rank() > 1) {
    out += "array: ";
    for (std::size_t i = 0; i < family.shape.size(); ++i) out += (i ? "x" : "") + std::to_string(family.shape[i]);
    out += "\n";
  }
  for (const auto& g : family.generators) out += "subgroup: " + format_gens(family.ambient, g) + "\n";
  return out;
}

SubgroupFamily parse_family(std::string_view text) {
  std::optional<FinAbGroup> ambient;
  std::vector<std::size_t> shape;
  std::vector<std::vector<Elem>> gens;
  std::istringstream in{std::string(text)};
  std::string raw;
  while (std::getline(in, raw)) {
    auto line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    auto colon = line.find(':');
    require(colon != std::string_view::npos, ErrorCode::ParseError, "expected 'key: value' in '" + std::string(line) + "'");
    auto key = trim(line.substr(0, colon));
    auto value = trim(line.substr(colon + 1));
    if (key == "ambient") {
      require(!ambient, ErrorCode::ParseError, "duplicate ambient line");
      ambient = parse_ambient(value);
    } else if (key == "array") {
      require(shape.empty(), ErrorCode::ParseError, "duplicate array line");
      std::string v(value);
      std::size_t start = 0;
      while (true) {
        auto x = v.find('x', start);
        auto part = trim(std::string_view(v).substr(start, x == std::string::npos ? std::string::npos : x - start));
        try {
          std::size_t used = 0;
          auto side = std::stoul(std::string(part), &used);
          require(used == part.size() && side > 0, ErrorCode::ParseError, "bad array side");
          shape.push_back(side);
        } catch (const std::logic_error&) {
          fail(ErrorCode::ParseError, "bad array shape '" + v + "'");
        }
        if (x == std::string::npos) break;
        start = x + 1;
      }
    } else if (key == "subgroup") {
      require(ambient.has_value(), ErrorCode::ParseError, "subgroup line before the ambient line");
      auto g = parse_elem_list(*ambient, value);
      gens.push_back(std::move(g));
    } else {
      fail(ErrorCode::ParseError, "unknown key '" + std::string(key) + "'");
    }
  }
  require(ambient.has_value(), ErrorCode::ParseError, "missing ambient line");
  require(!gens.empty(), ErrorCode::ParseError, "family has no subgroups");
  if (!shape.empty()) {
    require(shape_product(shape) == gens.size(), ErrorCode::ParseError, "array shape does not match the subgroup count");
  }
  return SubgroupFamily::from_generators(*ambient, std::move(gens), std::move(shape));
}

std::string format_verdict(const SubgroupFamily& family, const ConditionVerdict& v, std::string_view kind) {
  std::string out = std::string(kind) + ": " + (v.holds ? "holds" : "fails") + " N=" + std::to_string(v.bound) + "\n";
  if (!v.indices.empty()) {
    out += "indices:";
    for (auto i : v.indices) out += " " + std::to_string(i);
    out += "\n";
  }
  if (!v.holds && !v.chosen.empty()) {
    out += "chosen:";
    for (auto c : v.chosen) out += " " + std::to_string(c);
    out += "\ncertificate:";
    for (auto b : v.certificate) out += " " + family.ambient.format(b);
    out += "\n";
  }
  return out;
}

}  // namespace aslab::conditions
