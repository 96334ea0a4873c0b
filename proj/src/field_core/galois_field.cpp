#include "aslab/field_core/galois_field.hpp"

#include <cctype>
#include <charconv>
#include <map>

#include "aslab/error.hpp"
#include "aslab/field_core/modular.hpp"
#include "aslab/linalg_fp.hpp"

namespace aslab::field_core {

PrimePower PrimePower::make(std::uint32_t p, std::uint32_t k) {
  require(p >= 2 && p < 4096 && is_prime(p), ErrorCode::InvalidArgument,
          "characteristic must be a prime below 4096, got " + std::to_string(p));
  require(k >= 1, ErrorCode::InvalidArgument, "extension degree must be >= 1");
  auto q = checked_pow(p, k, std::uint64_t{1} << 20);
  require(q != 0, ErrorCode::InvalidArgument,
          "field order " + std::to_string(p) + "^" + std::to_string(k) + " exceeds 2^20");
  return {p, k, static_cast<std::uint32_t>(q)};
}

PrimePower PrimePower::from_order(std::uint64_t q) {
  require(q >= 2, ErrorCode::InvalidArgument, "field order must be >= 2");
  auto primes = prime_divisors(q);
  require(primes.size() == 1, ErrorCode::InvalidArgument, std::to_string(q) + " is not a prime power");
  std::uint32_t k = 0;
  for (auto r = q; r > 1; r /= primes[0]) ++k;
  return make(static_cast<std::uint32_t>(primes[0]), k);
}

std::string to_string(const PrimePower& pp) { return "F" + std::to_string(pp.q); }

std::shared_ptr<const GaloisField> GaloisField::get(PrimePower pp) {
  static std::mutex mu;
  static std::map<std::pair<std::uint32_t, std::uint32_t>, std::shared_ptr<const GaloisField>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[{pp.p, pp.k}];
  if (!slot) slot = std::shared_ptr<const GaloisField>(new GaloisField(pp));
  return slot;
}

GaloisField::GaloisField(PrimePower pp) : pp_(pp), modulus_(first_irreducible(pp.p, pp.k)) {
  pow_p_.resize(pp.k + 1);
  pow_p_[0] = 1;
  for (std::uint32_t i = 1; i <= pp.k; ++i) pow_p_[i] = pow_p_[i - 1] * pp.p;
  build_tables();
}

std::vector<std::uint32_t> GaloisField::digits_of(Code a) const {
  std::vector<std::uint32_t> d(pp_.k);
  for (std::uint32_t i = 0; i < pp_.k; ++i) {
    d[i] = a % pp_.p;
    a /= pp_.p;
  }
  return d;
}

GaloisField::Code GaloisField::from_digits(const std::vector<std::uint32_t>& d) const {
  Code c = 0;
  for (std::size_t i = d.size(); i-- > 0;) c = c * pp_.p + d[i] % pp_.p;
  return c;
}

GaloisField::Code GaloisField::slow_mul(Code a, Code b) const {
  ZpPoly pa(pp_.p, digits_of(a));
  ZpPoly pb(pp_.p, digits_of(b));
  auto r = ZpPoly::divmod(pa * pb, modulus_).second;
  auto d = r.coeffs();
  d.resize(pp_.k, 0);
  return from_digits(d);
}

void GaloisField::build_tables() {
  const auto q = pp_.q;
  const auto order = q - 1;
  auto slow_pow = [&](Code a, std::uint64_t e) {
    Code r = 1;
    while (e > 0) {
      if (e & 1) r = slow_mul(r, a);
      a = slow_mul(a, a);
      e >>= 1;
    }
    return r;
  };
  const auto divisors = prime_divisors(order);
  gen_ = 0;
  for (Code g = 1; g < q && gen_ == 0; ++g) {
    bool primitive = true;
    for (auto r : divisors) {
      if (slow_pow(g, order / r) == 1) {
        primitive = false;
        break;
      }
    }
    if (primitive) gen_ = g;
  }
  require(gen_ != 0, ErrorCode::InvalidArgument, "no primitive element found");

  // Multiplication by the generator is F_p-linear: images of the basis monomials.
  std::vector<Code> times_gen(pp_.k);
  for (std::uint32_t i = 0; i < pp_.k; ++i) times_gen[i] = slow_mul(gen_, pow_p_[i]);

  exp_.assign(order, 0);
  log_.assign(q, 0);
  Code cur = 1;
  for (std::uint32_t n = 0; n < order; ++n) {
    exp_[n] = cur;
    log_[cur] = n;
    Code next = 0;
    auto rest = cur;
    for (std::uint32_t i = 0; i < pp_.k && rest != 0; ++i) {
      auto d = rest % pp_.p;
      rest /= pp_.p;
      if (d != 0) next = add(next, scale(times_gen[i], d));
    }
    cur = next;
  }
}

GaloisField::Code GaloisField::add(Code a, Code b) const {
  if (pp_.p == 2) return a ^ b;
  if (pp_.k == 1) return (a + b) % pp_.p;
  Code out = 0;
  for (std::uint32_t i = 0; i < pp_.k && (a | b) != 0; ++i) {
    out += ((a % pp_.p + b % pp_.p) % pp_.p) * pow_p_[i];
    a /= pp_.p;
    b /= pp_.p;
  }
  return out;
}

GaloisField::Code GaloisField::neg(Code a) const {
  if (pp_.p == 2) return a;
  Code out = 0;
  for (std::uint32_t i = 0; i < pp_.k && a != 0; ++i) {
    out += ((pp_.p - a % pp_.p) % pp_.p) * pow_p_[i];
    a /= pp_.p;
  }
  return out;
}

GaloisField::Code GaloisField::sub(Code a, Code b) const { return add(a, neg(b)); }

GaloisField::Code GaloisField::scale(Code a, std::int64_t n) const {
  auto r = static_cast<std::int64_t>(pp_.p);
  auto m = static_cast<std::uint32_t>(((n % r) + r) % r);
  if (m == 0 || a == 0) return 0;
  if (m == 1) return a;
  Code out = 0;
  for (std::uint32_t i = 0; i < pp_.k && a != 0; ++i) {
    out += (a % pp_.p * m % pp_.p) * pow_p_[i];
    a /= pp_.p;
  }
  return out;
}

GaloisField::Code GaloisField::mul(Code a, Code b) const {
  if (a == 0 || b == 0) return 0;
  auto s = std::uint64_t{log_[a]} + log_[b];
  return exp_[s % (pp_.q - 1)];
}

GaloisField::Code GaloisField::inv(Code a) const {
  require(a != 0, ErrorCode::DivisionByZero, "inverse of zero in " + to_string(pp_));
  return exp_[(pp_.q - 1 - log_[a]) % (pp_.q - 1)];
}

GaloisField::Code GaloisField::pow(Code a, std::uint64_t e) const {
  if (e == 0) return 1;
  if (a == 0) return 0;
  auto r = static_cast<std::uint64_t>(log_[a]) * (e % (pp_.q - 1)) % (pp_.q - 1);
  return exp_[r];
}

GaloisField::Code GaloisField::trace(Code a) const {
  Code acc = 0;
  Code cur = a;
  for (std::uint32_t i = 0; i < pp_.k; ++i) {
    acc = add(acc, cur);
    cur = frob(cur);
  }
  return acc;
}

std::int64_t GaloisField::wp_preimage(Code a) const {
  std::call_once(preimage_once_, [this] {
    preimage_.assign(pp_.q, -1);
    for (Code y = 0; y < pp_.q; ++y) {
      auto img = wp(y);
      if (preimage_[img] < 0) preimage_[img] = static_cast<std::int32_t>(y);
    }
  });
  return preimage_[a];
}

std::string GaloisField::format(Code a) const {
  if (pp_.k == 1) return std::to_string(a);
  std::string out = "[";
  auto d = digits_of(a);
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(d[i]);
  }
  return out + "]";
}

namespace {

std::int64_t parse_signed(std::string_view s, std::string_view whole) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  bool neg = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    neg = s.front() == '-';
    s.remove_prefix(1);
  }
  std::int64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size()) {
    fail(ErrorCode::ParseError, "bad field element '" + std::string(whole) + "'");
  }
  return neg ? -v : v;
}

}  // namespace

GaloisField::Code GaloisField::parse(std::string_view text) const {
  auto s = text;
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  const auto p = static_cast<std::int64_t>(pp_.p);
  if (!s.empty() && s.front() == '[') {
    require(s.back() == ']', ErrorCode::ParseError, "unterminated field element '" + std::string(text) + "'");
    s = s.substr(1, s.size() - 2);
    std::vector<std::uint32_t> d;
    while (true) {
      auto comma = s.find(',');
      auto part = s.substr(0, comma);
      auto v = parse_signed(part, text);
      d.push_back(static_cast<std::uint32_t>(((v % p) + p) % p));
      if (comma == std::string_view::npos) break;
      s.remove_prefix(comma + 1);
    }
    require(d.size() <= pp_.k, ErrorCode::ParseError,
            "field element '" + std::string(text) + "' has more than " + std::to_string(pp_.k) + " coefficients");
    d.resize(pp_.k, 0);
    return from_digits(d);
  }
  auto v = parse_signed(s, text);
  return static_cast<Code>(((v % p) + p) % p);
}

FFElem FFElem::integer(FieldPtr f, std::int64_t n) {
  auto c = f->scale(1, n);
  return FFElem(std::move(f), c);
}

FFElem ff_wp(const FFElem& x) { return {x.field(), x.field()->wp(x.code())}; }

FFElem ff_trace(const FFElem& x) { return {x.field(), x.field()->trace(x.code())}; }

bool ff_wp_member(const FFElem& x) { return x.field()->trace(x.code()) == 0; }

std::uint32_t ff_wp_cokernel_dim(const PrimePower& pp) {
  auto f = GaloisField::get(pp);
  // Column i holds the coordinates of wp(x^i).
  FpMatrix m(pp.k, FpVector(pp.k, 0));
  GaloisField::Code basis = 1;
  for (std::uint32_t i = 0; i < pp.k; ++i) {
    auto d = f->digits_of(f->wp(basis));
    for (std::uint32_t r = 0; r < pp.k; ++r) m[r][i] = d[r];
    basis *= pp.p;
  }
  return pp.k - static_cast<std::uint32_t>(fp_rank(m, pp.p));
}

std::uint64_t ff_as_ext_count(const PrimePower& pp) {
  auto d = ff_wp_cokernel_dim(pp);
  std::uint64_t pd = 1;
  for (std::uint32_t i = 0; i < d; ++i) pd *= pp.p;
  return (pd - 1) / (pp.p - 1);
}

}  // namespace aslab::field_core
