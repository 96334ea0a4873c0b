#include "aslab/field_core/rat_func.hpp"

#include <cctype>
#include <map>

#include "aslab/error.hpp"
#include "aslab/field_core/modular.hpp"

namespace aslab::field_core {

RatFunc::RatFunc(std::uint32_t p) : num_(p), den_(ZpPoly::constant(p, 1)) {}

RatFunc::RatFunc(ZpPoly num, ZpPoly den) : num_(std::move(num)), den_(std::move(den)) {
  require(!den_.is_zero(), ErrorCode::DivisionByZero, "rational function with zero denominator");
  normalize();
}

RatFunc::RatFunc(ZpPoly num) : num_(std::move(num)), den_(ZpPoly::constant(num_.p(), 1)) {}

RatFunc RatFunc::constant(std::uint32_t p, std::int64_t c) { return RatFunc(ZpPoly::constant(p, c)); }

RatFunc RatFunc::t(std::uint32_t p) { return RatFunc(ZpPoly(p, {0, 1})); }

RatFunc RatFunc::pole_power(std::uint32_t p, std::uint32_t a, std::uint32_t n, std::uint32_t c) {
  ZpPoly den = ZpPoly::constant(p, 1);
  auto lin = ZpPoly::linear_root(p, a);
  for (std::uint32_t i = 0; i < n; ++i) den = den * lin;
  return RatFunc(ZpPoly::constant(p, c), den);
}

void RatFunc::normalize() {
  if (num_.is_zero()) {
    den_ = ZpPoly::constant(num_.p(), 1);
    return;
  }
  auto g = ZpPoly::gcd(num_, den_);
  if (g.degree() > 0) {
    num_ = ZpPoly::divmod(num_, g).first;
    den_ = ZpPoly::divmod(den_, g).first;
  }
  auto lead = den_.leading();
  if (lead != 1) {
    auto inv = inv_mod_prime(lead, den_.p());
    num_ = num_.scaled(inv);
    den_ = den_.scaled(inv);
  }
}

RatFunc operator+(const RatFunc& a, const RatFunc& b) {
  if (a.den_ == b.den_) return RatFunc(a.num_ + b.num_, a.den_);
  return RatFunc(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

RatFunc operator-(const RatFunc& a, const RatFunc& b) { return a + (-b); }

RatFunc operator*(const RatFunc& a, const RatFunc& b) { return RatFunc(a.num_ * b.num_, a.den_ * b.den_); }

RatFunc operator/(const RatFunc& a, const RatFunc& b) {
  require(!b.is_zero(), ErrorCode::DivisionByZero, "division by the zero rational function");
  return RatFunc(a.num_ * b.den_, a.den_ * b.num_);
}

RatFunc RatFunc::operator-() const {
  RatFunc r = *this;
  r.num_ = -r.num_;
  return r;
}

RatFunc RatFunc::pow(std::int64_t e) const {
  if (e < 0) return RatFunc::constant(p(), 1) / pow(-e);
  RatFunc result = RatFunc::constant(p(), 1);
  RatFunc base = *this;
  auto n = static_cast<std::uint64_t>(e);
  while (n > 0) {
    if (n & 1) result = result * base;
    base = base * base;
    n >>= 1;
  }
  return result;
}

std::string RatFunc::to_string() const {
  if (den_.degree() == 0) return num_.to_string();
  return "(" + num_.to_string() + ")/(" + den_.to_string() + ")";
}

RatFunc rf_wp(const RatFunc& x) {
  // Frobenius is a ring map, so (n/d)^p = n^p/d^p and both stay coprime.
  RatFunc xp(x.num().frobenius(), x.den().frobenius());
  return xp - x;
}

namespace {

class Parser {
 public:
  Parser(std::uint32_t p, std::string_view text) : p_(p), text_(text) {}

  RatFunc parse() {
    auto r = expr();
    skip_ws();
    if (pos_ != text_.size()) error("unexpected '" + std::string(1, text_[pos_]) + "'");
    return r;
  }

 private:
  [[noreturn]] void error(const std::string& msg) const {
    fail(ErrorCode::ParseError, msg + " at offset " + std::to_string(pos_) + " in '" + std::string(text_) + "'");
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  bool starts_primary() {
    auto c = peek();
    return c == '(' || c == 't' || std::isdigit(static_cast<unsigned char>(c));
  }

  RatFunc expr() {
    auto acc = term();
    while (true) {
      auto c = peek();
      if (c == '+') {
        ++pos_;
        acc = acc + term();
      } else if (c == '-') {
        ++pos_;
        acc = acc - term();
      } else {
        return acc;
      }
    }
  }

  RatFunc term() {
    auto acc = unary();
    while (true) {
      auto c = peek();
      if (c == '*') {
        ++pos_;
        acc = acc * unary();
      } else if (c == '/') {
        ++pos_;
        acc = acc / unary();
      } else if (starts_primary()) {
        acc = acc * power();
      } else {
        return acc;
      }
    }
  }

  RatFunc unary() {
    auto c = peek();
    if (c == '-') {
      ++pos_;
      return -unary();
    }
    if (c == '+') {
      ++pos_;
      return unary();
    }
    return power();
  }

  RatFunc power() {
    auto base = primary();
    if (peek() == '^') {
      ++pos_;
      return base.pow(exponent());
    }
    return base;
  }

  std::int64_t exponent() {
    bool paren = false;
    if (peek() == '(') {
      paren = true;
      ++pos_;
    }
    bool neg = false;
    if (peek() == '-') {
      neg = true;
      ++pos_;
    }
    auto v = integer();
    if (paren) {
      if (peek() != ')') error("expected ')'");
      ++pos_;
    }
    return neg ? -v : v;
  }

  std::int64_t integer() {
    skip_ws();
    auto start = pos_;
    std::int64_t v = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      if (v > (INT64_MAX - 9) / 10) error("integer too large");
      v = v * 10 + (text_[pos_] - '0');
      ++pos_;
    }
    if (pos_ == start) error("expected integer");
    return v;
  }

  RatFunc primary() {
    auto c = peek();
    if (c == '(') {
      ++pos_;
      auto r = expr();
      if (peek() != ')') error("expected ')'");
      ++pos_;
      return r;
    }
    if (c == 't') {
      ++pos_;
      return RatFunc::t(p_);
    }
    if (std::isdigit(static_cast<unsigned char>(c))) return RatFunc::constant(p_, integer() % p_);
    error("expected operand");
  }

  std::uint32_t p_;
  std::string_view text_;
  std::size_t pos_ = 0;
};

// Truncated power series inverse of f modulo u^n, f(0) != 0.
std::vector<std::uint32_t> series_inverse(const ZpPoly& f, std::size_t n) {
  const auto p = f.p();
  std::vector<std::uint32_t> inv(n, 0);
  const auto c0 = inv_mod_prime(f.coeff(0), p);
  inv[0] = c0;
  for (std::size_t i = 1; i < n; ++i) {
    std::uint64_t acc = 0;
    for (std::size_t j = 1; j <= i; ++j) acc += std::uint64_t{f.coeff(j)} * inv[i - j] % p;
    inv[i] = static_cast<std::uint32_t>((p - acc % p) % p * c0 % p);
  }
  return inv;
}

constexpr std::uint32_t kInfinity = UINT32_MAX;

}  // namespace

RatFunc parse_ratfunc(std::uint32_t p, std::string_view text) {
  require(is_prime(p), ErrorCode::InvalidArgument, "characteristic must be prime");
  return Parser(p, text).parse();
}

RatFunc ASReducedForm::realize() const {
  RatFunc acc = RatFunc::constant(p, constant);
  for (const auto& term : polar) {
    if (term.pole) {
      acc = acc + RatFunc::pole_power(p, *term.pole, term.order, term.coeff);
    } else {
      acc = acc + RatFunc(ZpPoly::monomial(p, term.coeff, term.order));
    }
  }
  return acc;
}

std::string ASReducedForm::to_string() const {
  std::string out = "polar: [";
  for (std::size_t i = 0; i < polar.size(); ++i) {
    if (i) out += ",";
    const auto& t = polar[i];
    out += "(" + (t.pole ? std::to_string(*t.pole) : std::string("inf")) + "," + std::to_string(t.order) + "," +
           std::to_string(t.coeff) + ")";
  }
  return out + "] constant: " + std::to_string(constant);
}

ASReduction rf_as_reduce(const RatFunc& x) {
  const auto p = x.p();
  // Split the denominator into rational linear factors.
  std::map<std::uint32_t, std::uint32_t> multiplicity;
  ZpPoly rest = x.den();
  for (std::uint32_t a = 0; a < p && rest.degree() > 0; ++a) {
    auto lin = ZpPoly::linear_root(p, a);
    while (rest.degree() > 0) {
      auto [quo, rem] = ZpPoly::divmod(rest, lin);
      if (!rem.is_zero()) break;
      rest = quo;
      ++multiplicity[a];
    }
  }
  if (rest.degree() > 0) {
    fail(ErrorCode::UnsupportedPole, "denominator factor " + rest.to_string() + " has no root in F_" + std::to_string(p));
  }

  // coeffs[pole][order]; the pole at infinity also carries order 0 (the constant).
  std::map<std::uint32_t, std::map<std::uint32_t, std::uint32_t>> coeffs;
  auto [poly, rem] = ZpPoly::divmod(x.num(), x.den());
  for (std::size_t n = 0; n < poly.coeffs().size(); ++n) {
    if (poly.coeff(n) != 0) coeffs[kInfinity][static_cast<std::uint32_t>(n)] = poly.coeff(n);
  }
  for (auto [a, m] : multiplicity) {
    // den = (t-a)^m * other; expand rem/other at u = t - a to order m.
    ZpPoly other = x.den();
    auto lin = ZpPoly::linear_root(p, a);
    for (std::uint32_t i = 0; i < m; ++i) other = ZpPoly::divmod(other, lin).first;
    auto num_s = rem.taylor_shift(a);
    auto inv_s = series_inverse(other.taylor_shift(a), m);
    for (std::uint32_t i = 0; i < m; ++i) {
      std::uint64_t acc = 0;
      for (std::uint32_t j = 0; j <= i; ++j) acc += std::uint64_t{num_s.coeff(j)} * inv_s[i - j] % p;
      auto c = static_cast<std::uint32_t>(acc % p);
      if (c != 0) coeffs[a][m - i] = c;
    }
  }

  RatFunc witness(p);
  ASReducedForm form;
  form.p = p;
  for (auto& [pole, orders] : coeffs) {
    // Highest orders first so that carried contributions are reduced again.
    for (auto it = orders.rbegin(); it != orders.rend(); ++it) {
      auto n = it->first;
      auto c = it->second;
      if (n == 0 || c == 0 || n % p != 0) continue;
      // c*u^(-n) = wp(c*u^(-n/p)) + c*u^(-n/p), since c^p = c.
      auto e = n / p;
      if (pole == kInfinity) {
        witness = witness + RatFunc(ZpPoly::monomial(p, c, e));
      } else {
        witness = witness + RatFunc::pole_power(p, pole, e, c);
      }
      auto& slot = orders[e];
      slot = (slot + c) % p;
      it->second = 0;
    }
  }
  for (auto& [pole, orders] : coeffs) {
    for (auto [n, c] : orders) {
      if (c == 0) continue;
      if (n == 0) {
        form.constant = c;
        continue;
      }
      PolarTerm term;
      if (pole != kInfinity) term.pole = pole;
      term.order = n;
      term.coeff = c;
      form.polar.push_back(term);
    }
  }
  return {form, witness};
}

bool rf_wp_member(const RatFunc& x, const RatFunc& a) {
  require(!a.is_zero(), ErrorCode::DivisionByZero, "coset parameter must be nonzero");
  return rf_as_reduce(x / a).form.is_zero();
}

}  // namespace aslab::field_core
