#include "aslab/hahn/obstruction.hpp"

#include "aslab/error.hpp"
#include "aslab/hahn/hensel.hpp"

namespace aslab::hahn {

HahnElem Obstruction::tail_remainder() const {
  require(witness.has_value(), ErrorCode::InvalidArgument, "no witness");
  HahnElem r(witness->base(), witness->group());
  const auto& f = *witness->base();
  const Rational p(static_cast<std::int64_t>(f.p()));
  for (const auto& tail : tails) {
    Rational e = tail.exponent;
    Code c = tail.coeff;
    for (std::uint32_t k = 0; k < tail.depth; ++k) {
      e /= p;
      c = f.frob_inv(c);
    }
    r.add_term(e, c);
  }
  return r;
}

std::string Obstruction::summary() const {
  switch (status) {
    case ObstructionStatus::InImage: return "in-image";
    case ObstructionStatus::BlockedExponent: return "blocked-exponent " + aslab::to_string(blocked_exponent);
    case ObstructionStatus::ResidueObstruction: return "residue-obstruction " + residue->to_string();
  }
  return "?";
}

Obstruction hs_wp_obstruction(const HahnElem& x, const ObstructionOptions& opts) {
  if (x.cap()) {
    require(*x.cap() > 0, ErrorCode::InsufficientPrecision,
            "cap O(t^" + aslab::to_string(*x.cap()) + ") hides the constant term");
  }
  const Rational cap = x.cap() ? *x.cap() : opts.witness_cap;
  require(cap > 0, ErrorCode::InsufficientPrecision, "witness cap must be positive");
  const auto& f = *x.base();
  const Rational p(static_cast<std::int64_t>(f.p()));
  Obstruction ob;
  HahnElem witness(x.base(), x.group());

  if (x.group().p_divisible(f.p())) {
    // Every negative term telescopes: wp(sum_k c^(p^-k) t^(e/p^k)) = c t^e.
    for (const auto& [e, c] : x.terms()) {
      if (e >= 0) break;
      Rational ek = e;
      Code ck = c;
      for (std::uint32_t k = 0; k < opts.telescope_depth; ++k) {
        ek /= p;
        ck = f.frob_inv(ck);
        witness.add_term(ek, ck);
      }
      ob.tails.push_back({e, c, opts.telescope_depth});
    }
  } else {
    // Reduce from the most negative exponent up: c t^(pm) = wp(c^(1/p) t^m) + c^(1/p) t^m.
    std::map<Rational, Code> neg;
    for (const auto& [e, c] : x.terms()) {
      if (e >= 0) break;
      neg.emplace(e, c);
    }
    while (!neg.empty()) {
      auto [e, c] = *neg.begin();
      neg.erase(neg.begin());
      auto e_div = e / p;
      if (!x.group().contains(e_div)) {
        ob.status = ObstructionStatus::BlockedExponent;
        ob.blocked_exponent = e;
        return ob;
      }
      auto root = f.frob_inv(c);
      witness.add_term(e_div, root);
      auto& slot = neg[e_div];
      slot = f.add(slot, root);
      if (slot == 0) neg.erase(e_div);
    }
  }

  const auto c0 = x.coeff(0);
  if (f.trace(c0) != 0) {
    ob.status = ObstructionStatus::ResidueObstruction;
    ob.residue = FFElem(x.base(), c0);
    ob.tails.clear();
    return ob;
  }
  witness.add_term(0, static_cast<Code>(f.wp_preimage(c0)));

  HahnElem positive(x.base(), x.group());
  for (const auto& [e, c] : x.terms()) {
    if (e > 0) positive.add_term(e, c);
  }
  if (!positive.is_zero()) {
    auto one = HahnElem::constant(x.base(), x.group(), 1);
    auto lift = hs_hensel_lift_as(one, positive.truncated(cap), FFElem::zero(x.base()), cap);
    witness = witness + lift.root.exact_part();
  }
  ob.witness = witness.truncated(cap);
  return ob;
}

Obstruction hs_coset_functional(const HahnElem& x, const HahnElem& a, const ObstructionOptions& opts) {
  require(!a.is_zero(), ErrorCode::DivisionByZero, "coset parameter must be nonzero");
  std::optional<Rational> prec;
  if (a.terms().size() > 1 || a.cap()) prec = opts.witness_cap;
  return hs_wp_obstruction(hs_div(x, a, prec), opts);
}

bool witness_verifies(const HahnElem& x, const Obstruction& ob) {
  if (!ob.witness) return false;
  auto lhs = ob.witness->wp() + ob.tail_remainder();
  return lhs.equal_mod_cap(x);
}

}  // namespace aslab::hahn
