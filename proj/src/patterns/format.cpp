#include <cctype>
#include <charconv>
#include <sstream>

#include "aslab/error.hpp"
#include "aslab/patterns/patterns.hpp"

namespace aslab::patterns {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::uint64_t to_uint(std::string_view s, std::string_view what) {
  s = trim(s);
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  require(ec == std::errc{} && ptr == s.data() + s.size() && !s.empty(), ErrorCode::ParseError,
          "expected a number for " + std::string(what) + ", got '" + std::string(s) + "'");
  return v;
}

std::vector<std::uint64_t> to_uints(std::string_view s, std::string_view what) {
  std::vector<std::uint64_t> out;
  std::istringstream in{std::string(s)};
  std::string tok;
  while (in >> tok) out.push_back(to_uint(tok, what));
  return out;
}

std::string join(const std::vector<std::size_t>& v, const char* sep = ",") {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? sep : "") + std::to_string(v[i]);
  return out;
}

}  // namespace

std::string format_pattern(const Pattern& pattern) {
  std::ostringstream out;
  if (const auto* p = std::get_if<IPnPattern>(&pattern)) {
    out << "pattern: " << (p->n == 1 ? "ip" : "ipn") << "\n";
    out << "carrier: " << p->carrier.to_string() << "\n";
    out << "n: " << p->n << "\n";
    out << "m: " << p->m << "\n";
    out << "rows:\n";
    for (std::size_t k = 0; k < p->params.size(); ++k) {
      for (std::size_t i = 0; i < p->params[k].size(); ++i) out << "  " << k + 1 << " " << i << ": " << format_elem(p->params[k][i]) << "\n";
    }
    out << "cols:\n";
    for (const auto& c : p->cols) out << "  " << c.mask << ": " << format_elem(c.b) << "\n";
    return out.str();
  }
  const auto& p = std::get<TP2Pattern>(pattern);
  out << "pattern: tp2\n";
  out << "carrier: " << (p.group ? "group " + p.group->to_string() : p.carrier.to_string()) << "\n";
  out << "shape: " << p.rows << "x" << p.cols << "\n";
  out << "k: " << p.k << "\n";
  out << "grid:\n";
  for (std::size_t i = 0; i < p.rows; ++i) {
    for (std::size_t j = 0; j < p.cols; ++j) {
      out << "  " << i << " " << j << ": ";
      if (p.group) {
        out << conditions::format_elem_list(*p.group, p.group_gens[i][j]) << " ; " << p.group->format(p.group_shift[i][j]);
      } else {
        out << format_elem(p.a[i][j]) << " ; " << format_elem(p.z[i][j]);
      }
      out << "\n";
    }
  }
  return out.str();
}

Pattern parse_pattern(std::string_view text, std::uint32_t padic_prec) {
  std::string kind;
  std::optional<Carrier> carrier;
  std::optional<conditions::FinAbGroup> group;
  std::size_t n = 1, m = 0, rows = 0, cols = 0, k = 2;
  bool have_shape = false;
  std::string section;
  struct Entry {
    std::vector<std::uint64_t> index;
    std::string value;
  };
  std::vector<Entry> row_entries, col_entries, grid_entries;

  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    auto line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    auto colon = line.find(':');
    require(colon != std::string_view::npos, ErrorCode::ParseError,
            "line " + std::to_string(line_no) + ": expected 'key: value'");
    auto key = trim(line.substr(0, colon));
    auto value = trim(line.substr(colon + 1));
    const bool indented = !raw.empty() && std::isspace(static_cast<unsigned char>(raw.front()));
    if (indented) {
      require(!section.empty(), ErrorCode::ParseError, "line " + std::to_string(line_no) + ": entry outside a section");
      Entry e{to_uints(key, "an index"), std::string(value)};
      if (section == "rows") row_entries.push_back(std::move(e));
      else if (section == "cols") col_entries.push_back(std::move(e));
      else grid_entries.push_back(std::move(e));
      continue;
    }
    section.clear();
    if (key == "pattern") {
      kind = value;
      require(kind == "ip" || kind == "ipn" || kind == "tp2", ErrorCode::ParseError, "unknown pattern kind '" + kind + "'");
    } else if (key == "carrier") {
      if (value.substr(0, 6) == "group ") {
        group = conditions::parse_ambient(value.substr(6));
        carrier = Carrier::finite_field(PrimePower::make(2, 1));
      } else {
        carrier = parse_carrier(value, padic_prec);
      }
    } else if (key == "n") {
      n = to_uint(value, "n");
    } else if (key == "m") {
      m = to_uint(value, "m");
    } else if (key == "k") {
      k = to_uint(value, "k");
    } else if (key == "shape") {
      auto x = value.find('x');
      require(x != std::string_view::npos, ErrorCode::ParseError, "shape must be RxM");
      rows = to_uint(value.substr(0, x), "rows");
      cols = to_uint(value.substr(x + 1), "columns");
      have_shape = true;
    } else if (key == "rows" || key == "cols" || key == "grid") {
      require(value.empty(), ErrorCode::ParseError, "section header '" + std::string(key) + ":' takes no value");
      section = key;
    } else {
      fail(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": unknown key '" + std::string(key) + "'");
    }
  }
  require(!kind.empty(), ErrorCode::ParseError, "missing 'pattern:' line");
  require(carrier.has_value(), ErrorCode::ParseError, "missing 'carrier:' line");

  if (kind != "tp2") {
    require(!group, ErrorCode::ParseError, "IP patterns need a field carrier");
    require(n >= 1 && (kind == "ipn" || n == 1), ErrorCode::ParseError, "ip patterns have n = 1");
    IPnPattern p;
    p.carrier = *carrier;
    p.n = n;
    p.m = m;
    std::uint64_t cells = 1;
    for (std::size_t i = 0; i < n && m > 0; ++i) {
      cells *= m;
      require(cells <= 64, ErrorCode::ParseError, "patterns are limited to 64 cells");
    }
    std::vector<std::vector<std::optional<CarrierElem>>> grid(n, std::vector<std::optional<CarrierElem>>(m));
    for (const auto& e : row_entries) {
      require(e.index.size() == 2 && e.index[0] >= 1 && e.index[0] <= n && e.index[1] < m, ErrorCode::ParseError,
              "row entry index out of range");
      auto& slot = grid[e.index[0] - 1][e.index[1]];
      require(!slot, ErrorCode::ParseError, "duplicate row entry");
      slot = parse_elem(p.carrier, e.value);
    }
    p.params.assign(n, {});
    for (std::size_t kk = 0; kk < n; ++kk) {
      for (std::size_t i = 0; i < m; ++i) {
        require(grid[kk][i].has_value(), ErrorCode::ParseError,
                "missing row entry " + std::to_string(kk + 1) + " " + std::to_string(i));
        p.params[kk].push_back(*grid[kk][i]);
      }
    }
    const std::uint64_t full = m == 0 ? 0 : cells == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << cells) - 1;
    for (const auto& e : col_entries) {
      require(e.index.size() == 1 && (e.index[0] & ~full) == 0, ErrorCode::ParseError, "column mask out of range");
      p.cols.push_back({e.index[0], parse_elem(p.carrier, e.value)});
    }
    return p;
  }

  require(have_shape, ErrorCode::ParseError, "TP2 patterns need a 'shape:' line");
  require(k >= 2, ErrorCode::ParseError, "TP2 needs k >= 2");
  TP2Pattern p;
  p.carrier = *carrier;
  p.group = group;
  p.rows = rows;
  p.cols = cols;
  p.k = k;
  std::vector<std::vector<bool>> seen(rows, std::vector<bool>(cols, false));
  if (group) {
    p.group_gens.assign(rows, std::vector<std::vector<conditions::Elem>>(cols));
    p.group_shift.assign(rows, std::vector<conditions::Elem>(cols, 0));
  } else {
    p.a.assign(rows, std::vector<CarrierElem>(cols, elem_zero(p.carrier)));
    p.z = p.a;
  }
  for (const auto& e : grid_entries) {
    require(e.index.size() == 2 && e.index[0] < rows && e.index[1] < cols, ErrorCode::ParseError, "grid index out of range");
    require(!seen[e.index[0]][e.index[1]], ErrorCode::ParseError, "duplicate grid entry");
    seen[e.index[0]][e.index[1]] = true;
    auto semi = e.value.find(';');
    require(semi != std::string::npos, ErrorCode::ParseError, "grid entries are 'a ; z'");
    auto left = trim(std::string_view(e.value).substr(0, semi));
    auto right = trim(std::string_view(e.value).substr(semi + 1));
    if (group) {
      p.group_gens[e.index[0]][e.index[1]] = conditions::parse_elem_list(*group, left);
      p.group_shift[e.index[0]][e.index[1]] = conditions::parse_group_elem(*group, right);
    } else {
      p.a[e.index[0]][e.index[1]] = parse_elem(p.carrier, left);
      p.z[e.index[0]][e.index[1]] = parse_elem(p.carrier, right);
    }
  }
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j)
      require(seen[i][j], ErrorCode::ParseError, "missing grid entry " + std::to_string(i) + " " + std::to_string(j));
  return p;
}

std::string format_report(const VerifyReport& r) {
  std::ostringstream out;
  out << "verified: " << (r.verified ? "yes" : "no") << "\n";
  if (!r.incidence.empty()) {
    out << "incidence:\n";
    for (std::size_t cell = 0; cell < r.incidence.size(); ++cell) {
      out << "  " << cell << ":";
      for (bool b : r.incidence[cell]) out << " " << (b ? 1 : 0);
      out << "\n";
    }
  }
  if (!r.row_checks.empty()) {
    out << "rows:\n";
    for (const auto& rc : r.row_checks)
      out << "  " << rc.row << " {" << join(rc.cells) << "}: " << (rc.consistent ? "consistent" : "inconsistent") << "\n";
  }
  if (!r.path_checks.empty()) {
    out << "paths:\n";
    for (const auto& pc : r.path_checks) {
      out << "  " << join(pc.path) << ": ";
      if (pc.consistent) out << "x = " << pc.witness << "\n";
      else out << "inconsistent\n";
    }
  }
  if (r.mismatches.empty()) {
    out << "mismatches: none\n";
  } else {
    out << "mismatches:\n";
    for (const auto& m : r.mismatches) out << "  " << m << "\n";
  }
  return out.str();
}

}  // namespace aslab::patterns
