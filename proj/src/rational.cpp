#include "aslab/rational.hpp"

#include <cctype>
#include <charconv>

#include "aslab/error.hpp"

namespace aslab {

std::string to_string(const Rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::int64_t parse_int(std::string_view s, std::string_view whole) {
  s = trim(s);
  bool neg = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    neg = s.front() == '-';
    s.remove_prefix(1);
    s = trim(s);
  }
  std::int64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) {
    fail(ErrorCode::ParseError, "bad rational '" + std::string(whole) + "'");
  }
  return neg ? -v : v;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  auto s = trim(text);
  if (s.size() >= 2 && s.front() == '(' && s.back() == ')') s = trim(s.substr(1, s.size() - 2));
  auto slash = s.find('/');
  if (slash == std::string_view::npos) return Rational(parse_int(s, text));
  auto num = parse_int(s.substr(0, slash), text);
  auto den = parse_int(s.substr(slash + 1), text);
  require(den != 0, ErrorCode::ParseError, "zero denominator in '" + std::string(text) + "'");
  return Rational(num, den);
}

bool denominator_is_power_of(const Rational& r, std::uint32_t p) {
  auto d = r.denominator();
  while (d % p == 0) d /= p;
  return d == 1;
}

}  // namespace aslab
