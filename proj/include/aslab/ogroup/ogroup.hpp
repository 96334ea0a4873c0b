#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "aslab/rational.hpp"

namespace aslab::ogroup {

enum class ArchKind { Int, Rat, ZinvP, RealLike };

// One archimedean component of a lexicographic product.
struct ArchClass {
  ArchKind kind = ArchKind::Int;
  std::uint32_t p = 0;  // ZinvP only

  static ArchClass integers() { return {ArchKind::Int, 0}; }
  static ArchClass rationals() { return {ArchKind::Rat, 0}; }
  static ArchClass zinv(std::uint32_t p) { return {ArchKind::ZinvP, p}; }
  static ArchClass real_like() { return {ArchKind::RealLike, 0}; }

  bool p_divisible(std::uint32_t p) const;
  bool contains(const Rational& x) const;
  bool dense() const { return kind != ArchKind::Int; }
  // "Z", "Q", "Z[1/3^inf]", "R"
  std::string to_string() const;

  friend bool operator==(const ArchClass&, const ArchClass&) = default;
};

// Finite lexicographic product, most significant component first.
struct GroupDescriptor {
  std::vector<ArchClass> components;

  std::size_t rank() const { return components.size(); }
  std::string to_string() const;  // "Z * Q"
  friend bool operator==(const GroupDescriptor&, const GroupDescriptor&) = default;
};

// "Z * Q * Z[1/p^inf] * R"; a literal 'p' inside Z[1/p^inf] takes the ambient prime.
GroupDescriptor parse_group(std::string_view text, std::optional<std::uint32_t> ambient_p = std::nullopt);

struct GroupElem {
  std::vector<Rational> coords;

  std::string to_string() const;  // "0,1"
  friend bool operator==(const GroupElem&, const GroupElem&) = default;
};

GroupElem parse_group_elem(std::string_view text);
// Throws InvalidArgument when the coordinates do not fit the components.
void validate(const GroupDescriptor& g, const GroupElem& x);
// Lexicographic sign: -1, 0 or 1.
int sign(const GroupElem& x);
int compare(const GroupElem& a, const GroupElem& b);

// Delta_0 is the tail of components starting at delta0_start, Delta_p the tail
// starting at deltap_start = delta0_start + 1 (empty when that is past the end).
struct ConvexDecomposition {
  std::size_t delta0_start = 0;
  std::size_t deltap_start = 1;
  ArchClass quotient;

  friend bool operator==(const ConvexDecomposition&, const ConvexDecomposition&) = default;
};

ConvexDecomposition og_standard_decomp(const GroupDescriptor& g, const GroupElem& vp);

// Tail of components from `start` as a group ("{0}" when empty).
std::string tail_to_string(const GroupDescriptor& g, std::size_t start);

bool og_p_divisible(const GroupDescriptor& g, std::uint32_t p);
bool og_p_divisible(const ArchClass& c, std::uint32_t p);
bool og_roughly_p_divisible(const GroupDescriptor& g, const GroupElem& vp, std::uint32_t p);
std::optional<Rational> og_finitely_ramified(const GroupDescriptor& g, const GroupElem& vp,
                                             const ConvexDecomposition& dec);

// Lexicographic product with `outer` most significant.
GroupDescriptor lex_product(const GroupDescriptor& outer, const GroupDescriptor& inner);

}  // namespace aslab::ogroup
