#include "aslab/patterns/carrier.hpp"

#include <cctype>
#include <limits>

#include "aslab/error.hpp"
#include "aslab/field_core/modular.hpp"
#include "aslab/hahn/obstruction.hpp"

namespace aslab::patterns {

namespace {

constexpr std::uint32_t kInfinityPlace = std::numeric_limits<std::uint32_t>::max();
constexpr std::uint32_t kConstantPlace = kInfinityPlace - 1;

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::uint64_t parse_uint(std::string_view s, std::string_view context) {
  s = trim(s);
  require(!s.empty() && s.size() <= 18, ErrorCode::ParseError, "expected a number in '" + std::string(context) + "'");
  std::uint64_t v = 0;
  for (char ch : s) {
    require(std::isdigit(static_cast<unsigned char>(ch)) != 0, ErrorCode::ParseError,
            "expected a number in '" + std::string(context) + "'");
    v = v * 10 + static_cast<std::uint64_t>(ch - '0');
  }
  return v;
}

std::uint64_t padic_inverse(std::uint64_t a, std::uint64_t m) {
  __int128 r0 = static_cast<__int128>(m), r1 = static_cast<__int128>(a % m);
  __int128 s0 = 0, s1 = 1;
  while (r1 != 0) {
    auto q = r0 / r1;
    auto r2 = r0 - q * r1;
    r0 = r1;
    r1 = r2;
    auto s2 = s0 - q * s1;
    s0 = s1;
    s1 = s2;
  }
  require(r0 == 1, ErrorCode::OracleDomainError, "p-adic divisor is not a unit");
  auto inv = s0 % static_cast<__int128>(m);
  if (inv < 0) inv += m;
  return static_cast<std::uint64_t>(inv);
}

PadicInt padic_binop(const PadicInt& a, const PadicInt& b, char op) {
  require(a.p == b.p, ErrorCode::InvalidArgument, "p-adic operands with different primes");
  const auto prec = std::min(a.prec, b.prec);
  auto x = PadicInt::make(a.p, prec, 0);
  const auto m = x.modulus();
  const unsigned __int128 av = a.value % m, bv = b.value % m;
  switch (op) {
    case '+': x.value = static_cast<std::uint64_t>((av + bv) % m); break;
    case '-': x.value = static_cast<std::uint64_t>((av + m - bv) % m); break;
    case '*': x.value = static_cast<std::uint64_t>(av * bv % m); break;
    case '/': x.value = static_cast<std::uint64_t>(av * padic_inverse(static_cast<std::uint64_t>(bv), m) % m); break;
    default: break;
  }
  return x;
}

template <class T>
const T& as(const CarrierElem& x, const char* what) {
  const T* v = std::get_if<T>(&x);
  require(v != nullptr, ErrorCode::InvalidArgument, std::string("mixed carrier elements in ") + what);
  return *v;
}

}  // namespace

Carrier Carrier::padic(std::uint32_t p, std::uint32_t prec) {
  require(field_core::is_prime(p), ErrorCode::InvalidArgument, "Qp needs a prime");
  require(prec >= 1 && prec <= hahn::padic_max_prec(p), ErrorCode::InvalidArgument,
          "p-adic precision out of range for p = " + std::to_string(p));
  return {CarrierKind::Padic, PrimePower::make(p, 1), {}, prec};
}

std::string Carrier::to_string() const {
  const auto f = "F" + std::to_string(field.q);
  switch (kind) {
    case CarrierKind::FiniteField: return f;
    case CarrierKind::RatFuncField: return f + "(t)";
    case CarrierKind::Hahn: {
      std::string g = group.kind == hahn::GroupKind::IntZ   ? "Z"
                      : group.kind == hahn::GroupKind::RatQ ? "Q"
                                                            : "Z[1/" + std::to_string(group.p) + "^inf]";
      return f + "((" + g + "))";
    }
    case CarrierKind::Padic: return "Qp(" + std::to_string(field.p) + ")";
  }
  return "?";
}

Carrier parse_carrier(std::string_view text, std::uint32_t padic_prec) {
  auto s = trim(text);
  if (s.substr(0, 3) == "Qp(" && s.back() == ')') {
    auto p = parse_uint(s.substr(3, s.size() - 4), text);
    require(p < 1000 && field_core::is_prime(static_cast<std::uint32_t>(p)), ErrorCode::ParseError,
            "Qp needs a prime in '" + std::string(text) + "'");
    return Carrier::padic(static_cast<std::uint32_t>(p), padic_prec);
  }
  require(!s.empty() && s.front() == 'F', ErrorCode::ParseError, "unknown carrier '" + std::string(text) + "'");
  std::size_t i = 1;
  while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
  auto q = parse_uint(s.substr(1, i - 1), text);
  auto pp = PrimePower::from_order(q);
  auto rest = s.substr(i);
  if (rest.empty()) return Carrier::finite_field(pp);
  if (rest == "(t)") {
    require(pp.k == 1, ErrorCode::ParseError, "rational function carriers need a prime field");
    return Carrier::rat_func(pp.p);
  }
  require(rest.size() > 4 && rest.substr(0, 2) == "((" && rest.substr(rest.size() - 2) == "))", ErrorCode::ParseError,
          "unknown carrier '" + std::string(text) + "'");
  auto g = trim(rest.substr(2, rest.size() - 4));
  if (g == "Z" || g == "t" || g == "s") return Carrier::hahn(pp, ValueGroupTag::integers());
  if (g == "Q") return Carrier::hahn(pp, ValueGroupTag::rationals());
  if (g.size() > 9 && g.substr(0, 4) == "Z[1/" && g.substr(g.size() - 5) == "^inf]") {
    auto mid = g.substr(4, g.size() - 9);
    std::uint64_t p = mid == "p" ? pp.p : parse_uint(mid, text);
    require(p == pp.p, ErrorCode::ParseError, "Z[1/p^inf] must use the characteristic in '" + std::string(text) + "'");
    return Carrier::hahn(pp, ValueGroupTag::zinv(pp.p));
  }
  fail(ErrorCode::ParseError, "unknown value group in '" + std::string(text) + "'");
}

CarrierElem parse_elem(const Carrier& c, std::string_view text) {
  switch (c.kind) {
    case CarrierKind::FiniteField: {
      auto f = c.base();
      return FFElem(f, f->parse(trim(text)));
    }
    case CarrierKind::RatFuncField: return field_core::parse_ratfunc(c.p(), text);
    case CarrierKind::Hahn: return hahn::parse_series(c.base(), c.group, text);
    case CarrierKind::Padic: {
      auto s = trim(text);
      auto mod = s.find("mod");
      auto value_text = trim(s.substr(0, mod));
      bool negative = !value_text.empty() && value_text.front() == '-';
      if (negative) value_text.remove_prefix(1);
      auto v = parse_uint(value_text, text);
      auto prec = c.padic_prec;
      if (mod != std::string_view::npos) {
        auto tail = trim(s.substr(mod + 3));
        auto caret = tail.find('^');
        require(caret != std::string_view::npos, ErrorCode::ParseError, "expected 'v mod p^k' in '" + std::string(text) + "'");
        require(parse_uint(tail.substr(0, caret), text) == c.p(), ErrorCode::ParseError,
                "p-adic modulus does not match the carrier prime");
        prec = static_cast<std::uint32_t>(parse_uint(tail.substr(caret + 1), text));
      }
      auto x = PadicInt::make(c.p(), prec, 0);
      x.value = static_cast<std::uint64_t>(v % x.modulus());
      if (negative && x.value != 0) x.value = x.modulus() - x.value;
      return x;
    }
  }
  fail(ErrorCode::InvalidArgument, "unknown carrier");
}

std::string format_elem(const CarrierElem& x) {
  return std::visit([](const auto& v) { return v.to_string(); }, x);
}

bool elem_in_carrier(const Carrier& c, const CarrierElem& x) {
  switch (c.kind) {
    case CarrierKind::FiniteField: {
      auto* v = std::get_if<FFElem>(&x);
      return v && v->field()->order() == c.field;
    }
    case CarrierKind::RatFuncField: {
      auto* v = std::get_if<RatFunc>(&x);
      return v && v->p() == c.p();
    }
    case CarrierKind::Hahn: {
      auto* v = std::get_if<HahnElem>(&x);
      return v && v->base()->order() == c.field && v->group() == c.group;
    }
    case CarrierKind::Padic: {
      auto* v = std::get_if<PadicInt>(&x);
      return v && v->p == c.p();
    }
  }
  return false;
}

CarrierElem elem_zero(const Carrier& c) {
  switch (c.kind) {
    case CarrierKind::FiniteField: return FFElem::zero(c.base());
    case CarrierKind::RatFuncField: return RatFunc(c.p());
    case CarrierKind::Hahn: return HahnElem(c.base(), c.group);
    case CarrierKind::Padic: return PadicInt::make(c.p(), c.padic_prec, 0);
  }
  fail(ErrorCode::InvalidArgument, "unknown carrier");
}

CarrierElem elem_one(const Carrier& c) {
  switch (c.kind) {
    case CarrierKind::FiniteField: return FFElem::one(c.base());
    case CarrierKind::RatFuncField: return RatFunc::constant(c.p(), 1);
    case CarrierKind::Hahn: return HahnElem::constant(c.base(), c.group, 1);
    case CarrierKind::Padic: return PadicInt::make(c.p(), c.padic_prec, 1);
  }
  fail(ErrorCode::InvalidArgument, "unknown carrier");
}

CarrierElem elem_monomial(const Carrier& c, const Rational& e, std::uint32_t coeff_code) {
  switch (c.kind) {
    case CarrierKind::RatFuncField: {
      require(is_integer(e), ErrorCode::OracleDomainError, "F_p(t) monomials need integral exponents");
      return RatFunc::t(c.p()).pow(e.numerator()) * RatFunc::constant(c.p(), coeff_code);
    }
    case CarrierKind::Hahn: return HahnElem::monomial(c.base(), c.group, coeff_code, e);
    default: break;
  }
  fail(ErrorCode::OracleDomainError, "carrier " + c.to_string() + " has no monomials");
}

CarrierElem elem_add(const CarrierElem& a, const CarrierElem& b) {
  return std::visit(
      [&](const auto& x) -> CarrierElem {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, PadicInt>) {
          return padic_binop(x, as<T>(b, "addition"), '+');
        } else {
          return x + as<T>(b, "addition");
        }
      },
      a);
}

CarrierElem elem_sub(const CarrierElem& a, const CarrierElem& b) {
  return std::visit(
      [&](const auto& x) -> CarrierElem {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, PadicInt>) {
          return padic_binop(x, as<T>(b, "subtraction"), '-');
        } else {
          return x - as<T>(b, "subtraction");
        }
      },
      a);
}

CarrierElem elem_mul(const CarrierElem& a, const CarrierElem& b) {
  return std::visit(
      [&](const auto& x) -> CarrierElem {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, PadicInt>) {
          return padic_binop(x, as<T>(b, "multiplication"), '*');
        } else {
          return x * as<T>(b, "multiplication");
        }
      },
      a);
}

CarrierElem elem_div(const CarrierElem& a, const CarrierElem& b, const Rational& prec) {
  require(!elem_is_zero(b), ErrorCode::DivisionByZero, "division by zero");
  return std::visit(
      [&](const auto& x) -> CarrierElem {
        using T = std::decay_t<decltype(x)>;
        const auto& y = as<T>(b, "division");
        if constexpr (std::is_same_v<T, PadicInt>) {
          return padic_binop(x, y, '/');
        } else if constexpr (std::is_same_v<T, HahnElem>) {
          if (y.terms().size() == 1 && y.is_exact()) return hahn::hs_div(x, y);
          return hahn::hs_div(x, y, prec);
        } else {
          return x / y;
        }
      },
      a);
}

bool elem_is_zero(const CarrierElem& a) {
  return std::visit(
      [](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, PadicInt>) {
          return x.value == 0;
        } else {
          return x.is_zero();
        }
      },
      a);
}

bool elem_equal(const CarrierElem& a, const CarrierElem& b) {
  if (a.index() != b.index()) return false;
  return std::visit(
      [&](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        return x == std::get<T>(b);
      },
      a);
}

QuotientCoords quotient_coords(const CarrierElem& y) {
  QuotientCoords out;
  if (const auto* f = std::get_if<FFElem>(&y)) {
    auto tr = f->field()->trace(f->code());
    if (tr != 0) out[{0, 0, 0}] = tr;
    return out;
  }
  if (const auto* r = std::get_if<RatFunc>(&y)) {
    field_core::ASReduction red = [&] {
      try {
        return field_core::rf_as_reduce(*r);
      } catch (const Error& e) {
        if (e.code() == ErrorCode::UnsupportedPole) fail(ErrorCode::OracleDomainError, e.what());
        throw;
      }
    }();
    for (const auto& term : red.form.polar) {
      if (term.coeff == 0) continue;
      out[{term.pole ? *term.pole : kInfinityPlace, Rational(term.order), 0}] = term.coeff;
    }
    if (red.form.constant != 0) out[{kConstantPlace, 0, 0}] = red.form.constant;
    return out;
  }
  if (const auto* h = std::get_if<HahnElem>(&y)) {
    if (h->cap()) {
      require(*h->cap() > 0, ErrorCode::InsufficientPrecision,
              "need the terms up to exponent 0, element is known only below " + aslab::to_string(*h->cap()));
    }
    const auto& f = *h->base();
    const auto p = f.p();
    const bool divisible = h->group().p_divisible(p);
    std::map<Rational, hahn::Code> reduced;
    for (const auto& [e, c] : h->terms()) {
      if (e > 0) break;
      if (e == 0) {
        reduced[e] = f.add(reduced[e], c);
        continue;
      }
      if (divisible) continue;  // every negative term telescopes into wp(K)
      auto exp = e.numerator();
      auto coeff = c;
      while (exp % static_cast<std::int64_t>(p) == 0) {
        exp /= static_cast<std::int64_t>(p);
        coeff = f.frob_inv(coeff);
      }
      reduced[Rational(exp)] = f.add(reduced[Rational(exp)], coeff);
    }
    for (const auto& [e, c] : reduced) {
      if (c == 0) continue;
      if (e == 0) {
        auto tr = f.trace(c);
        if (tr != 0) out[{0, 0, 0}] = tr;
        continue;
      }
      auto digits = f.digits_of(c);
      for (std::uint32_t d = 0; d < digits.size(); ++d) {
        if (digits[d] != 0) out[{0, e, d}] = digits[d];
      }
    }
    return out;
  }
  const auto& x = std::get<PadicInt>(y);
  if (x.value % x.p != 0) out[{0, 0, 0}] = static_cast<std::uint32_t>(x.value % x.p);
  return out;
}

bool FieldOracle::sat_phi(const CarrierElem& x, const std::vector<CarrierElem>& ys) const {
  require(elem_in_carrier(c_, x), ErrorCode::OracleDomainError, "element " + format_elem(x) + " is not in " + c_.to_string());
  CarrierElem y = elem_one(c_);
  for (const auto& v : ys) {
    require(elem_in_carrier(c_, v), ErrorCode::OracleDomainError,
            "parameter " + format_elem(v) + " is not in " + c_.to_string());
    y = elem_mul(y, v);
  }
  if (elem_is_zero(y)) return elem_is_zero(x);
  switch (c_.kind) {
    case CarrierKind::FiniteField: return field_core::ff_wp_member(std::get<FFElem>(x) / std::get<FFElem>(y));
    case CarrierKind::RatFuncField: {
      if (elem_is_zero(x)) return true;
      try {
        return field_core::rf_wp_member(std::get<RatFunc>(x), std::get<RatFunc>(y));
      } catch (const Error& e) {
        if (e.code() == ErrorCode::UnsupportedPole) fail(ErrorCode::OracleDomainError, e.what());
        throw;
      }
    }
    case CarrierKind::Hahn: return hahn::hs_coset_functional(std::get<HahnElem>(x), std::get<HahnElem>(y)).in_image();
    case CarrierKind::Padic: {
      const auto& a = std::get<PadicInt>(y);
      require(a.value % a.p != 0, ErrorCode::OracleDomainError, "Qp parameters must be units, got " + a.to_string());
      const auto& b = std::get<PadicInt>(x);
      const auto prec = std::min(a.prec, b.prec);
      // a(T^p - T) = b has a root iff 0 is a residue root; Hensel lifts it.
      try {
        hahn::padic_hensel_lift_as(a, b, 0, prec);
        return true;
      } catch (const Error& e) {
        if (e.code() == ErrorCode::NotAResidueRoot) return false;
        throw;
      }
    }
  }
  return false;
}

bool FieldOracle::sat_psi(const CarrierElem& x, const CarrierElem& y, const CarrierElem& z) const {
  return sat_phi(elem_add(x, z), {y});
}

}  // namespace aslab::patterns
