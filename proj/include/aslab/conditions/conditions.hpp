#pragma once

#include <boost/dynamic_bitset.hpp>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "aslab/field_core/galois_field.hpp"

namespace aslab::conditions {

using Elem = std::uint32_t;

// Product of Z/m_i, or the additive group of F_q. Elements are mixed-radix codes with
// moduli[0] least significant; for F_q this agrees with GaloisField codes.
class FinAbGroup {
 public:
  static FinAbGroup product(std::vector<std::uint32_t> moduli);
  static FinAbGroup additive(field_core::PrimePower pp);

  const std::vector<std::uint32_t>& moduli() const { return moduli_; }
  const std::optional<field_core::PrimePower>& field() const { return field_; }
  std::uint32_t order() const { return order_; }

  Elem add(Elem a, Elem b) const;
  Elem neg(Elem a) const;
  Elem scale(Elem a, std::uint64_t n) const;
  std::vector<std::uint32_t> coords(Elem a) const;
  Elem from_coords(const std::vector<std::uint32_t>& c) const;

  std::string to_string() const;  // "[2,2,2]" or "F8"
  std::string format(Elem a) const;  // "[1,0,1]"

  friend bool operator==(const FinAbGroup& a, const FinAbGroup& b) {
    return a.moduli_ == b.moduli_ && a.field_ == b.field_;
  }

 private:
  std::vector<std::uint32_t> moduli_;
  std::optional<field_core::PrimePower> field_;
  std::uint32_t order_ = 1;
};

// Subgroup stored as its membership set.
class Subgroup {
 public:
  Subgroup() = default;
  explicit Subgroup(boost::dynamic_bitset<> members) : bits_(std::move(members)) {}

  static Subgroup generated(const FinAbGroup& g, const std::vector<Elem>& gens);
  static Subgroup whole(const FinAbGroup& g);

  bool contains(Elem a) const { return bits_.test(a); }
  std::uint64_t order() const { return bits_.count(); }
  const boost::dynamic_bitset<>& bits() const { return bits_; }
  // A small generating set, chosen greedily in code order.
  std::vector<Elem> generators(const FinAbGroup& g) const;

  friend Subgroup operator&(const Subgroup& a, const Subgroup& b) { return Subgroup(a.bits_ & b.bits_); }
  friend bool operator==(const Subgroup&, const Subgroup&) = default;

 private:
  boost::dynamic_bitset<> bits_;
};

// Members are stored row-major; shape has one entry per axis (a plain family has rank 1).
struct SubgroupFamily {
  FinAbGroup ambient = FinAbGroup::product({1});
  std::vector<std::size_t> shape;
  std::vector<std::vector<Elem>> generators;
  std::vector<Subgroup> members;

  std::size_t size() const { return members.size(); }
  std::size_t rank() const { return shape.size(); }

  static SubgroupFamily from_generators(FinAbGroup ambient, std::vector<std::vector<Elem>> gens,
                                        std::vector<std::size_t> shape = {});
  static SubgroupFamily from_subgroups(FinAbGroup ambient, std::vector<Subgroup> subs,
                                       std::vector<std::size_t> shape = {});
  // Same subgroups viewed as an array of the given shape.
  SubgroupFamily reshaped(std::vector<std::size_t> new_shape) const;
};

// a_1 ... a_n * wp(F_q) for every tuple of nonzero scalars, as an n-array indexed by
// (a_1, ..., a_n) in code order.
SubgroupFamily wp_scaled_family(field_core::PrimePower pp, std::size_t n);

struct ConditionVerdict {
  bool holds = true;
  std::size_t bound = 0;
  // BS: the N+1 member indices; BSH: the N+1 chosen indices on each axis, axis by axis.
  std::vector<std::size_t> chosen;
  // b_j (BS) or the b grid in row-major order over the chosen sub-grid (BSH).
  std::vector<Elem> certificate;
  // CKS: [H_{!=i} : H] for every i.
  std::vector<std::uint64_t> indices;
};

ConditionVerdict bs_check(const SubgroupFamily& family, std::size_t n_bound);
ConditionVerdict bsh_check(const SubgroupFamily& family, std::size_t n_bound);
ConditionVerdict cks_check(const SubgroupFamily& family, std::uint64_t n_bound);

// Re-checks the memberships a failing BS/BSH certificate claims. Returns false on any mismatch.
bool certificate_verifies(const SubgroupFamily& family, const ConditionVerdict& v);

// Family file: "ambient: [m1,...]" or "ambient: F8", optional "array: 2x2", then one
// "subgroup: [[gen],...]" line per member in row-major order.
// "[2,2]" or "F8"
FinAbGroup parse_ambient(std::string_view text);
// "[1,0]"
Elem parse_group_elem(const FinAbGroup& g, std::string_view text);
// "[[1,0],[0,1]]"
std::vector<Elem> parse_elem_list(const FinAbGroup& g, std::string_view text);
std::string format_elem_list(const FinAbGroup& g, const std::vector<Elem>& elems);

std::string format_family(const SubgroupFamily& family);
SubgroupFamily parse_family(std::string_view text);

std::string format_verdict(const SubgroupFamily& family, const ConditionVerdict& v, std::string_view kind);

}  // namespace aslab::conditions
