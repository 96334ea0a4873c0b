#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <boost/rational.hpp>

// Boost 1.74's mixed rational/integer comparisons recurse forever under C++20's
// rewritten-operator rules; exact non-template overloads take precedence.
namespace boost {
#define ASLAB_RATIONAL_CMP(op)                                                                          \
  inline bool operator op(const rational<std::int64_t>& a, int b) { return a op rational<std::int64_t>(b); }  \
  inline bool operator op(int b, const rational<std::int64_t>& a) { return rational<std::int64_t>(b) op a; }  \
  inline bool operator op(const rational<std::int64_t>& a, long b) { return a op rational<std::int64_t>(b); } \
  inline bool operator op(long b, const rational<std::int64_t>& a) { return rational<std::int64_t>(b) op a; }
ASLAB_RATIONAL_CMP(==)
ASLAB_RATIONAL_CMP(!=)
ASLAB_RATIONAL_CMP(<)
ASLAB_RATIONAL_CMP(>)
ASLAB_RATIONAL_CMP(<=)
ASLAB_RATIONAL_CMP(>=)
#undef ASLAB_RATIONAL_CMP
}  // namespace boost

namespace aslab {

// Exponents of series and coordinates of ordered-group elements.
using Rational = boost::rational<std::int64_t>;

std::string to_string(const Rational& r);

// Accepts "a", "-a", "a/b", "(a/b)" with optional surrounding whitespace.
Rational parse_rational(std::string_view text);

inline bool is_integer(const Rational& r) { return r.denominator() == 1; }

// True iff the (reduced) denominator is a power of p (including p^0).
bool denominator_is_power_of(const Rational& r, std::uint32_t p);

}  // namespace aslab
