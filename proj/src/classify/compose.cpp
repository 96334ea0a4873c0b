#include "aslab/classify/classify.hpp"
#include "aslab/error.hpp"

namespace aslab::classify {

namespace {

Tri both_true(Tri a, Tri b) { return a == Tri::True && b == Tri::True ? Tri::True : Tri::Unknown; }

Tri structural_semitame(const VFDescriptor& d) {
  if (d.p() == 0 || d.trivial) return Tri::True;
  return tri_and(tri(ogroup::og_p_divisible(*d.group, d.p())), tri_and(d.residue.perfect, d.defectless));
}

void merge_pure_hypotheses(VFDescriptor& into, const VFDescriptor& from) {
  for (const auto& h : from.hypotheses) {
    if (!h.pure_field) continue;
    bool seen = false;
    for (const auto& g : into.hypotheses) seen = seen || g == h;
    if (!seen) into.hypotheses.push_back(h);
  }
}

}  // namespace

Tri semitame_eval(const VFDescriptor& d) {
  validate(d);
  const Tri computed = structural_semitame(d);
  if (computed == Tri::Unknown) return d.semitame;
  require(d.semitame == Tri::Unknown || d.semitame == computed, ErrorCode::InconsistentDescriptor,
          "semitame flag " + to_string(d.semitame) + " contradicts the value group, residue field and defect data");
  return computed;
}

VFDescriptor compose(const VFDescriptor& outer, const VFDescriptor& inner) {
  validate(outer);
  validate(inner);
  require(inner.char_k_field == outer.char_residue, ErrorCode::IncompatibleComposition,
          "inner field has characteristic " + std::to_string(inner.char_k_field) + " but the outer residue field has " +
              std::to_string(outer.char_residue));
  require(inner.trivial || outer.residue.finite != Tri::True, ErrorCode::IncompatibleComposition,
          "a finite residue field carries only the trivial valuation");
  if (inner.trivial) return outer;
  if (outer.trivial) {
    VFDescriptor out = inner;
    merge_pure_hypotheses(out, outer);
    return out;
  }

  VFDescriptor out;
  out.char_k_field = outer.char_k_field;
  out.char_residue = inner.char_residue;
  out.group = ogroup::lex_product(*outer.group, *inner.group);
  if (out.mixed()) {
    ogroup::GroupElem vp;
    if (outer.mixed()) {
      vp = *outer.vp;
      vp.coords.resize(out.group->rank(), Rational(0));
    } else {
      vp.coords.assign(outer.group->rank(), Rational(0));
      vp.coords.insert(vp.coords.end(), inner.vp->coords.begin(), inner.vp->coords.end());
    }
    out.vp = vp;
  }
  out.residue = inner.residue;
  out.henselian = tri_and(outer.henselian, inner.henselian);
  out.p_henselian = both_true(outer.p_henselian, inner.p_henselian);
  if (out.henselian == Tri::True) out.p_henselian = Tri::True;
  out.defectless = both_true(outer.defectless, inner.defectless);
  merge_pure_hypotheses(out, outer);

  // Semitameness passes to the composite only for henselian pieces that both have residue characteristic p.
  const std::uint32_t p = inner.char_residue;
  const bool guard = p != 0 && outer.char_residue == p && outer.henselian == Tri::True && inner.henselian == Tri::True &&
                     semitame_eval(outer) == Tri::True && semitame_eval(inner) == Tri::True;
  out.semitame = guard ? Tri::True : structural_semitame(out);
  validate(out);
  return out;
}

}  // namespace aslab::classify
