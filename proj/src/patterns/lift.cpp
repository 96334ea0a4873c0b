#include <random>

#include "aslab/error.hpp"
#include "aslab/hahn/encode.hpp"
#include "aslab/patterns/patterns.hpp"

namespace aslab::patterns {

namespace {

class Lifter {
 public:
  Lifter(const Carrier& source, const Carrier& target, const LiftOptions& opts)
      : source_(source), target_(target), opts_(opts), rng_(opts.seed) {
    require(source.kind == CarrierKind::FiniteField, ErrorCode::ResidueMismatch,
            "patterns are lifted from a finite residue field, not " + source.to_string());
    if (target.kind == CarrierKind::Hahn) {
      require(target.field == source.field, ErrorCode::ResidueMismatch,
              "residue field of " + target.to_string() + " is not " + source.to_string());
    } else if (target.kind == CarrierKind::Padic) {
      require(source.field.k == 1 && source.field.p == target.p(), ErrorCode::ResidueMismatch,
              "residue field of " + target.to_string() + " is not " + source.to_string());
    } else {
      fail(ErrorCode::ResidueMismatch, "lifting target must be a series field or Qp, got " + target.to_string());
    }
  }

  CarrierElem lift(const CarrierElem& x) {
    const auto& r = std::get<FFElem>(x);
    if (target_.kind == CarrierKind::Padic) {
      auto v = PadicInt::make(target_.p(), target_.padic_prec, r.code());
      if (opts_.perturb) {
        auto noise = PadicInt::make(target_.p(), target_.padic_prec, static_cast<std::int64_t>(target_.p() * (rng_() % 1000)));
        return elem_add(v, noise);
      }
      return v;
    }
    CarrierElem v = hahn::hs_lift(r, target_.group);
    if (opts_.perturb) {
      for (int e = 1; e <= 2; ++e) {
        auto code = static_cast<std::uint32_t>(rng_() % target_.field.q);
        if (code != 0) v = elem_add(v, elem_monomial(target_, Rational(e), code));
      }
    }
    return v;
  }

 private:
  Carrier source_, target_;
  LiftOptions opts_;
  std::mt19937_64 rng_;
};

FFElem residue_of(const Carrier& residue, const CarrierElem& x, bool unit) {
  const auto f = residue.base();
  if (const auto* h = std::get_if<HahnElem>(&x)) {
    if (unit) {
      require(!h->is_zero() && h->val() == 0, ErrorCode::NonIntegralInput, "parameter " + h->to_string() + " is not a unit");
    } else {
      require(h->is_zero() || h->val() >= 0, ErrorCode::NonIntegralInput, "constant " + h->to_string() + " is not integral");
    }
    return hahn::hs_residue(*h);
  }
  if (const auto* a = std::get_if<PadicInt>(&x)) {
    auto r = static_cast<hahn::Code>(a->value % a->p);
    require(!unit || r != 0, ErrorCode::NonIntegralInput, "parameter " + a->to_string() + " is not a unit");
    return FFElem(f, r);
  }
  fail(ErrorCode::ResidueMismatch, "residue maps are defined on series fields and Qp only");
}

void check_residue_carrier(const Carrier& from, const Carrier& residue) {
  require(residue.kind == CarrierKind::FiniteField, ErrorCode::ResidueMismatch, "residue carrier must be a finite field");
  const bool ok = (from.kind == CarrierKind::Hahn && from.field == residue.field) ||
                  (from.kind == CarrierKind::Padic && residue.field.k == 1 && residue.field.p == from.p());
  require(ok, ErrorCode::ResidueMismatch, residue.to_string() + " is not the residue field of " + from.to_string());
}

}  // namespace

Pattern lift_pattern(const Pattern& p, const Carrier& target, const LiftOptions& opts) {
  if (const auto* ip = std::get_if<IPnPattern>(&p)) {
    Lifter lifter(ip->carrier, target, opts);
    IPnPattern out;
    out.carrier = target;
    out.n = ip->n;
    out.m = ip->m;
    // Parameters stay exact lifts: a unit parameter must keep its residue class for the incidence to transfer.
    LiftOptions exact;
    Lifter param_lifter(ip->carrier, target, exact);
    for (const auto& row : ip->params) {
      std::vector<CarrierElem> lifted;
      for (const auto& a : row) lifted.push_back(param_lifter.lift(a));
      out.params.push_back(std::move(lifted));
    }
    for (const auto& col : ip->cols) out.cols.push_back({col.mask, lifter.lift(col.b)});
    return out;
  }
  const auto& tp = std::get<TP2Pattern>(p);
  require(!tp.group, ErrorCode::InvalidArgument, "group-ambient TP2 patterns have no residue field to lift from");
  Lifter lifter(tp.carrier, target, opts);
  // Rows of the lifted array stay inconsistent because the encoding polynomial built from a rootless d exists.
  hahn::homogenize(hahn::default_rootless_poly(tp.carrier.base()));
  TP2Pattern out = tp;
  out.carrier = target;
  for (auto& row : out.a)
    for (auto& a : row) a = lifter.lift(a);
  for (auto& row : out.z)
    for (auto& z : row) z = lifter.lift(z);
  return out;
}

Pattern residue_pattern(const Pattern& p, const Carrier& residue) {
  if (const auto* ip = std::get_if<IPnPattern>(&p)) {
    check_residue_carrier(ip->carrier, residue);
    IPnPattern out;
    out.carrier = residue;
    out.n = ip->n;
    out.m = ip->m;
    for (const auto& row : ip->params) {
      std::vector<CarrierElem> r;
      for (const auto& a : row) r.push_back(residue_of(residue, a, true));
      out.params.push_back(std::move(r));
    }
    for (const auto& col : ip->cols) out.cols.push_back({col.mask, residue_of(residue, col.b, false)});
    return out;
  }
  const auto& tp = std::get<TP2Pattern>(p);
  require(!tp.group, ErrorCode::InvalidArgument, "group-ambient TP2 patterns have no residue map");
  check_residue_carrier(tp.carrier, residue);
  TP2Pattern out = tp;
  out.carrier = residue;
  for (auto& row : out.a)
    for (auto& a : row) a = residue_of(residue, a, true);
  for (auto& row : out.z)
    for (auto& z : row) z = residue_of(residue, z, false);
  return out;
}

}  // namespace aslab::patterns
