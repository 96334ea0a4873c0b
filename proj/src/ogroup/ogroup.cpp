#include "aslab/ogroup/ogroup.hpp"

#include <cctype>

#include "aslab/error.hpp"
#include "aslab/field_core/modular.hpp"

namespace aslab::ogroup {

bool ArchClass::p_divisible(std::uint32_t prime) const {
  switch (kind) {
    case ArchKind::Int: return false;
    case ArchKind::Rat: return true;
    case ArchKind::RealLike: return true;
    case ArchKind::ZinvP: return p == prime;
  }
  return false;
}

bool ArchClass::contains(const Rational& x) const {
  switch (kind) {
    case ArchKind::Int: return is_integer(x);
    case ArchKind::ZinvP: return denominator_is_power_of(x, p);
    case ArchKind::Rat:
    case ArchKind::RealLike: return true;
  }
  return false;
}

std::string ArchClass::to_string() const {
  switch (kind) {
    case ArchKind::Int: return "Z";
    case ArchKind::Rat: return "Q";
    case ArchKind::ZinvP: return "Z[1/" + std::to_string(p) + "^inf]";
    case ArchKind::RealLike: return "R";
  }
  return "?";
}

std::string GroupDescriptor::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < components.size(); ++i) {
    if (i) out += " * ";
    out += components[i].to_string();
  }
  return out;
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

ArchClass parse_class(std::string_view tok, std::optional<std::uint32_t> ambient_p) {
  if (tok == "Z") return ArchClass::integers();
  if (tok == "Q") return ArchClass::rationals();
  if (tok == "R") return ArchClass::real_like();
  constexpr std::string_view prefix = "Z[1/";
  constexpr std::string_view suffix = "^inf]";
  if (tok.size() > prefix.size() + suffix.size() && tok.substr(0, prefix.size()) == prefix &&
      tok.substr(tok.size() - suffix.size()) == suffix) {
    auto mid = trim(tok.substr(prefix.size(), tok.size() - prefix.size() - suffix.size()));
    std::uint32_t p = 0;
    if (mid == "p") {
      if (!ambient_p) fail(ErrorCode::ParseError, "Z[1/p^inf] needs the characteristic p");
      p = *ambient_p;
    } else {
      try {
        p = static_cast<std::uint32_t>(std::stoul(std::string(mid)));
      } catch (const std::exception&) {
        fail(ErrorCode::ParseError, "bad prime in '" + std::string(tok) + "'");
      }
    }
    require(field_core::is_prime(p), ErrorCode::ParseError, "Z[1/p^inf] needs a prime, got " + std::to_string(p));
    if (ambient_p) {
      require(p == *ambient_p, ErrorCode::InvalidArgument,
              "component " + std::string(tok) + " does not match the ambient prime " + std::to_string(*ambient_p));
    }
    return ArchClass::zinv(p);
  }
  fail(ErrorCode::ParseError, "unknown group component '" + std::string(tok) + "'");
}

}  // namespace

GroupDescriptor parse_group(std::string_view text, std::optional<std::uint32_t> ambient_p) {
  GroupDescriptor g;
  auto s = text;
  while (true) {
    auto star = s.find('*');
    auto tok = trim(s.substr(0, star));
    require(!tok.empty(), ErrorCode::ParseError, "empty component in group '" + std::string(text) + "'");
    g.components.push_back(parse_class(tok, ambient_p));
    if (star == std::string_view::npos) break;
    s.remove_prefix(star + 1);
  }
  return g;
}

std::string GroupElem::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < coords.size(); ++i) {
    if (i) out += ",";
    out += aslab::to_string(coords[i]);
  }
  return out;
}

GroupElem parse_group_elem(std::string_view text) {
  GroupElem x;
  auto s = trim(text);
  if (s.size() >= 2 && s.front() == '(' && s.back() == ')') s = s.substr(1, s.size() - 2);
  while (true) {
    auto comma = s.find(',');
    x.coords.push_back(parse_rational(s.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    s.remove_prefix(comma + 1);
  }
  return x;
}

void validate(const GroupDescriptor& g, const GroupElem& x) {
  require(!g.components.empty(), ErrorCode::InvalidArgument, "group has no components");
  require(x.coords.size() == g.components.size(), ErrorCode::InvalidArgument,
          "element (" + x.to_string() + ") has " + std::to_string(x.coords.size()) + " coordinates, group has " +
              std::to_string(g.components.size()) + " components");
  for (std::size_t i = 0; i < x.coords.size(); ++i) {
    require(g.components[i].contains(x.coords[i]), ErrorCode::InvalidArgument,
            "coordinate " + aslab::to_string(x.coords[i]) + " is not in " + g.components[i].to_string());
  }
}

int sign(const GroupElem& x) {
  for (const auto& c : x.coords) {
    if (c > 0) return 1;
    if (c < 0) return -1;
  }
  return 0;
}

int compare(const GroupElem& a, const GroupElem& b) {
  for (std::size_t i = 0; i < std::min(a.coords.size(), b.coords.size()); ++i) {
    if (a.coords[i] < b.coords[i]) return -1;
    if (a.coords[i] > b.coords[i]) return 1;
  }
  return 0;
}

ConvexDecomposition og_standard_decomp(const GroupDescriptor& g, const GroupElem& vp) {
  validate(g, vp);
  require(sign(vp) > 0, ErrorCode::NonPositiveVp, "v(p) = (" + vp.to_string() + ") is not positive");
  std::size_t j = 0;
  while (vp.coords[j] == 0) ++j;
  return {j, j + 1, g.components[j]};
}

std::string tail_to_string(const GroupDescriptor& g, std::size_t start) {
  if (start >= g.components.size()) return "{0}";
  GroupDescriptor tail;
  tail.components.assign(g.components.begin() + static_cast<std::ptrdiff_t>(start), g.components.end());
  return tail.to_string();
}

bool og_p_divisible(const ArchClass& c, std::uint32_t p) { return c.p_divisible(p); }

bool og_p_divisible(const GroupDescriptor& g, std::uint32_t p) {
  for (const auto& c : g.components) {
    if (!c.p_divisible(p)) return false;
  }
  return true;
}

bool og_roughly_p_divisible(const GroupDescriptor& g, const GroupElem& vp, std::uint32_t p) {
  // [0, vp] contains every positive element of Delta_p and an interval of the
  // quotient component reaching 1 in the Int case, so the whole tail from the
  // leading coordinate must be p-divisible.
  auto dec = og_standard_decomp(g, vp);
  for (std::size_t i = dec.delta0_start; i < g.components.size(); ++i) {
    if (!g.components[i].p_divisible(p)) return false;
  }
  return true;
}

std::optional<Rational> og_finitely_ramified(const GroupDescriptor& g, const GroupElem& vp,
                                             const ConvexDecomposition& dec) {
  validate(g, vp);
  if (dec.quotient.kind != ArchKind::Int) return std::nullopt;
  return vp.coords[dec.delta0_start];
}

GroupDescriptor lex_product(const GroupDescriptor& outer, const GroupDescriptor& inner) {
  GroupDescriptor g = outer;
  g.components.insert(g.components.end(), inner.components.begin(), inner.components.end());
  return g;
}

}  // namespace aslab::ogroup
