#include "aslab/hahn/series.hpp"

#include <algorithm>
#include <cctype>

#include "aslab/budget.hpp"
#include "aslab/error.hpp"

namespace aslab::hahn {

bool ValueGroupTag::contains(const Rational& e) const {
  switch (kind) {
    case GroupKind::IntZ: return is_integer(e);
    case GroupKind::RatQ: return true;
    case GroupKind::ZinvP: return denominator_is_power_of(e, p);
  }
  return false;
}

bool ValueGroupTag::p_divisible(std::uint32_t char_p) const {
  switch (kind) {
    case GroupKind::IntZ: return false;
    case GroupKind::RatQ: return true;
    case GroupKind::ZinvP: return p == char_p;
  }
  return false;
}

std::string ValueGroupTag::to_string() const {
  switch (kind) {
    case GroupKind::IntZ: return "Z";
    case GroupKind::RatQ: return "Q";
    case GroupKind::ZinvP: return "Z[1/" + std::to_string(p) + "^inf]";
  }
  return "?";
}

HahnElem::HahnElem(FieldPtr base, ValueGroupTag group, std::optional<Rational> cap)
    : base_(std::move(base)), group_(group), cap_(cap) {
  if (group_.kind == GroupKind::ZinvP) {
    require(group_.p == base_->p(), ErrorCode::InvalidArgument,
            "value group Z[1/p^inf] must use the characteristic of the coefficient field");
  }
  if (cap_) require(group_.contains(*cap_), ErrorCode::InvalidArgument, "cap " + aslab::to_string(*cap_) + " not in " + group_.to_string());
}

HahnElem HahnElem::monomial(FieldPtr base, ValueGroupTag group, Code c, const Rational& e) {
  HahnElem x(std::move(base), group);
  x.add_term(e, c);
  return x;
}

Code HahnElem::coeff(const Rational& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? 0 : it->second;
}

Rational HahnElem::val() const {
  require(!terms_.empty(), ErrorCode::ZeroArgument, "valuation of zero");
  return terms_.begin()->first;
}

std::optional<Rational> HahnElem::val_lower() const {
  if (!terms_.empty()) return terms_.begin()->first;
  return cap_;
}

void HahnElem::add_term(const Rational& e, Code c) {
  if (c == 0) return;
  require(group_.contains(e), ErrorCode::InvalidArgument,
          "exponent " + aslab::to_string(e) + " not in value group " + group_.to_string());
  if (cap_ && e >= *cap_) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second = base_->add(it->second, c);
    if (it->second == 0) terms_.erase(it);
  }
}

HahnElem HahnElem::truncated(const Rational& n) const {
  HahnElem r(base_, group_, cap_ ? std::min(*cap_, n) : n);
  for (const auto& [e, c] : terms_) {
    if (e >= *r.cap_) break;
    r.terms_.emplace(e, c);
  }
  return r;
}

HahnElem HahnElem::exact_part() const {
  HahnElem r(base_, group_);
  r.terms_ = terms_;
  return r;
}

void HahnElem::check_compatible(const HahnElem& o) const {
  require(base_ == o.base_ && group_ == o.group_, ErrorCode::InvalidArgument,
          "series over different carriers: " + field_core::to_string(base_->order()) + "((" + group_.to_string() +
              ")) vs " + field_core::to_string(o.base_->order()) + "((" + o.group_.to_string() + "))");
}

namespace {

std::optional<Rational> min_cap(const std::optional<Rational>& a, const std::optional<Rational>& b) {
  if (!a) return b;
  if (!b) return a;
  return std::min(*a, *b);
}

}  // namespace

HahnElem HahnElem::operator-() const {
  HahnElem r = *this;
  for (auto& [e, c] : r.terms_) c = base_->neg(c);
  return r;
}

HahnElem operator+(const HahnElem& a, const HahnElem& b) {
  a.check_compatible(b);
  HahnElem r(a.base_, a.group_, min_cap(a.cap_, b.cap_));
  for (const auto& [e, c] : a.terms_) r.add_term(e, c);
  for (const auto& [e, c] : b.terms_) r.add_term(e, c);
  return r;
}

HahnElem operator-(const HahnElem& a, const HahnElem& b) { return a + (-b); }

HahnElem operator*(const HahnElem& a, const HahnElem& b) {
  a.check_compatible(b);
  std::optional<Rational> cap;
  auto va = a.val_lower();
  auto vb = b.val_lower();
  if (a.cap_ && vb) cap = *a.cap_ + *vb;
  if (b.cap_ && va) cap = min_cap(cap, *b.cap_ + *va);
  if (cap && !a.terms_.empty() && !b.terms_.empty() && *cap <= *va + *vb) {
    fail(ErrorCode::CapExhausted, "product has no known term below O(t^" + aslab::to_string(*cap) + ")");
  }
  check_budget(static_cast<std::uint64_t>(a.terms_.size()) * b.terms_.size(), "series product");
  HahnElem r(a.base_, a.group_, cap);
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) r.add_term(ea + eb, a.base_->mul(ca, cb));
  }
  return r;
}

HahnElem HahnElem::scaled(Code c) const {
  HahnElem r(base_, group_, cap_);
  for (const auto& [e, x] : terms_) r.add_term(e, base_->mul(x, c));
  return r;
}

HahnElem HahnElem::shifted(const Rational& s) const {
  require(group_.contains(s), ErrorCode::InvalidArgument, "shift not in value group");
  HahnElem r(base_, group_, cap_ ? std::optional<Rational>(*cap_ + s) : std::nullopt);
  for (const auto& [e, x] : terms_) r.terms_.emplace(e + s, x);
  return r;
}

HahnElem HahnElem::frobenius() const {
  const Rational p(static_cast<std::int64_t>(base_->p()));
  HahnElem r(base_, group_, cap_ ? std::optional<Rational>(*cap_ * p) : std::nullopt);
  for (const auto& [e, x] : terms_) r.terms_.emplace(e * p, base_->frob(x));
  return r;
}

HahnElem HahnElem::wp() const { return frobenius() - *this; }

bool HahnElem::equal_mod_cap(const HahnElem& o) const {
  check_compatible(o);
  auto cap = min_cap(cap_, o.cap_);
  auto a = cap ? truncated(*cap) : *this;
  auto b = cap ? o.truncated(*cap) : o;
  return a.terms_ == b.terms_;
}

namespace {

std::string exponent_text(const Rational& e) {
  if (is_integer(e) && e >= 0) return std::to_string(e.numerator());
  return "(" + aslab::to_string(e) + ")";
}

}  // namespace

std::string HahnElem::to_string() const {
  std::string out;
  for (const auto& [e, c] : terms_) {
    if (!out.empty()) out += " + ";
    if (e == 0) {
      out += base_->format(c);
      continue;
    }
    if (c != 1) out += base_->format(c) + "*";
    out += "t";
    if (e != 1) out += "^" + exponent_text(e);
  }
  if (cap_) {
    if (!out.empty()) out += " + ";
    out += "O(t^" + exponent_text(*cap_) + ")";
  }
  return out.empty() ? "0" : out;
}

HahnElem hs_div(const HahnElem& x, const HahnElem& y, std::optional<Rational> prec) {
  require(!y.is_zero(), ErrorCode::DivisionByZero, "series division by zero");
  require(x.base() == y.base() && x.group() == y.group(), ErrorCode::InvalidArgument, "series over different carriers");
  const auto v = y.val();
  const auto lead_inv = y.base()->inv(y.coeff(v));
  // y = c t^v (1 + u) with v(u) > 0.
  auto unit = y.exact_part().shifted(-v).scaled(lead_inv);
  unit.add_term(0, y.base()->neg(1));
  const auto& u = unit;

  std::optional<Rational> cap;
  if (x.cap()) cap = *x.cap() - v;
  auto vx = x.val_lower();
  if (y.cap() && vx) {
    auto c = *y.cap() - 2 * v + *vx;
    cap = cap ? std::min(*cap, c) : c;
  }
  if (prec) cap = cap ? std::min(*cap, *prec) : *prec;
  if (x.is_zero() && !x.cap()) return HahnElem(x.base(), x.group());

  if (u.is_zero()) {
    auto r = x.shifted(-v).scaled(lead_inv);
    if (y.cap() || prec) return cap ? r.truncated(*cap) : r;
    return r;
  }
  require(cap.has_value(), ErrorCode::InvalidArgument, "division by a non-monomial series needs a precision");
  const auto rel = *cap - (*vx - v);
  if (rel <= 0) {
    fail(ErrorCode::CapExhausted, "quotient has no known term below O(t^" + aslab::to_string(*cap) + ")");
  }
  // Geometric series for (1+u)^(-1) to relative precision rel.
  auto neg_u = (-u).truncated(rel).exact_part();
  HahnElem inv = HahnElem::constant(x.base(), x.group(), 1);
  HahnElem power = inv;
  while (true) {
    power = (power * neg_u).truncated(rel).exact_part();
    if (power.is_zero()) break;
    inv = inv + power;
  }
  auto r = (x.exact_part() * inv).shifted(-v).scaled(lead_inv);
  return r.truncated(*cap);
}

HahnElem hs_arith(ArithOp op, const HahnElem& x, const HahnElem& y, std::optional<Rational> prec) {
  switch (op) {
    case ArithOp::Add: return x + y;
    case ArithOp::Mul: return x * y;
    case ArithOp::Div: return hs_div(x, y, prec);
  }
  fail(ErrorCode::InvalidArgument, "unknown series operation");
}

Rational hs_val(const HahnElem& x) { return x.val(); }

FFElem hs_residue(const HahnElem& x) {
  if (!x.is_zero()) {
    require(x.val() >= 0, ErrorCode::InvalidArgument, "residue needs non-negative valuation, got " + aslab::to_string(x.val()));
  }
  if (x.cap()) {
    require(*x.cap() > 0, ErrorCode::InsufficientPrecision, "residue needs a cap above 0");
  }
  return FFElem(x.base(), x.coeff(0));
}

HahnElem hs_lift(const FFElem& r, ValueGroupTag group) { return HahnElem::constant(r.field(), group, r.code()); }

namespace {

class SeriesParser {
 public:
  SeriesParser(FieldPtr base, ValueGroupTag group, std::string_view text)
      : base_(std::move(base)), group_(group), text_(text) {}

  HahnElem parse() {
    HahnElem acc(base_, group_);
    std::optional<Rational> cap;
    bool first = true;
    while (true) {
      skip_ws();
      if (at_end()) {
        if (first) error("empty series");
        break;
      }
      bool negate = false;
      if (peek() == '+' || peek() == '-') {
        negate = peek() == '-';
        ++pos_;
        skip_ws();
      } else if (!first) {
        error("expected '+' or '-'");
      }
      first = false;
      if (peek() == 'O') {
        ++pos_;
        expect('(');
        expect('t');
        Rational e = 1;
        skip_ws();
        if (peek() == '^') {
          ++pos_;
          e = exponent();
        }
        expect(')');
        require(!cap.has_value(), ErrorCode::ParseError, "series has two O-terms");
        cap = e;
        continue;
      }
      Code c = 1;
      bool have_coeff = false;
      if (peek() == '[' || std::isdigit(static_cast<unsigned char>(peek()))) {
        c = coefficient();
        have_coeff = true;
        skip_ws();
        if (peek() == '*') {
          ++pos_;
          skip_ws();
          if (peek() != 't') error("expected 't' after '*'");
        }
      }
      Rational e = 0;
      if (peek() == 't') {
        ++pos_;
        e = 1;
        skip_ws();
        if (peek() == '^') {
          ++pos_;
          e = exponent();
        }
      } else if (!have_coeff) {
        error("expected a term");
      }
      if (!group_.contains(e)) {
        fail(ErrorCode::ParseError, "exponent " + aslab::to_string(e) + " not in value group " + group_.to_string());
      }
      acc.add_term(e, negate ? base_->neg(c) : c);
    }
    if (cap) {
      if (!group_.contains(*cap)) fail(ErrorCode::ParseError, "cap not in value group");
      for (const auto& [e, c] : acc.terms()) {
        if (e >= *cap) fail(ErrorCode::ParseError, "term t^" + aslab::to_string(e) + " at or beyond the O-term");
      }
      return acc.truncated(*cap);
    }
    return acc;
  }

 private:
  [[noreturn]] void error(const std::string& msg) const {
    fail(ErrorCode::ParseError, msg + " at offset " + std::to_string(pos_) + " in '" + std::string(text_) + "'");
  }
  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return at_end() ? '\0' : text_[pos_]; }
  void skip_ws() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  void expect(char c) {
    skip_ws();
    if (peek() != c) error(std::string("expected '") + c + "'");
    ++pos_;
  }

  Code coefficient() {
    auto start = pos_;
    if (peek() == '[') {
      while (!at_end() && text_[pos_] != ']') ++pos_;
      if (at_end()) error("unterminated coefficient");
      ++pos_;
    } else {
      while (!at_end() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }
    return base_->parse(text_.substr(start, pos_ - start));
  }

  Rational exponent() {
    skip_ws();
    auto start = pos_;
    if (peek() == '(') {
      while (!at_end() && text_[pos_] != ')') ++pos_;
      if (at_end()) error("unterminated exponent");
      ++pos_;
      return parse_rational(text_.substr(start, pos_ - start));
    }
    if (peek() == '-') ++pos_;
    while (!at_end() && (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '/')) ++pos_;
    if (pos_ == start) error("expected exponent");
    return parse_rational(text_.substr(start, pos_ - start));
  }

  FieldPtr base_;
  ValueGroupTag group_;
  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

HahnElem parse_series(FieldPtr base, ValueGroupTag group, std::string_view text) {
  return SeriesParser(std::move(base), group, text).parse();
}

}  // namespace aslab::hahn
