#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "aslab/ogroup/ogroup.hpp"

namespace aslab::classify {

enum class Tri { False, True, Unknown };

std::string to_string(Tri t);
Tri parse_tri(std::string_view s);
Tri tri_and(Tri a, Tri b);
inline Tri tri(bool b) { return b ? Tri::True : Tri::False; }

// Flags of the residue field k_v.
struct ResidueFlags {
  Tri finite = Tri::Unknown;
  Tri infinite = Tri::Unknown;
  Tri perfect = Tri::Unknown;
  Tri as_closed = Tri::Unknown;
  Tri as_finite = Tri::Unknown;
  Tri sep_closed = Tri::Unknown;
  Tri pac = Tri::Unknown;
  Tri nip = Tri::Unknown;
  Tri nipn = Tri::Unknown;  // NIP_n for the n of the descriptor's hypotheses
  Tri ntp2 = Tri::Unknown;

  friend bool operator==(const ResidueFlags&, const ResidueFlags&) = default;
};

enum class HypothesisKind { Nip, NipN, Ntp2 };

struct Hypothesis {
  HypothesisKind kind = HypothesisKind::NipN;
  unsigned n = 1;  // NipN only; Nip is n = 1
  bool pure_field = true;  // asserted of K as a pure field, otherwise of (K, v)

  friend bool operator==(const Hypothesis&, const Hypothesis&) = default;
};

struct VFDescriptor {
  std::uint32_t char_k_field = 0;  // char K
  std::uint32_t char_residue = 0;  // char k
  bool trivial = false;
  std::optional<ogroup::GroupDescriptor> group;  // absent iff trivial
  std::optional<ogroup::GroupElem> vp;           // mixed characteristic only
  Tri henselian = Tri::Unknown;
  Tri p_henselian = Tri::Unknown;
  Tri defectless = Tri::Unknown;
  Tri alg_maximal = Tri::Unknown;
  Tri sep_alg_maximal = Tri::Unknown;
  Tri semitame = Tri::Unknown;  // asserted or derived by composition
  ResidueFlags residue;
  std::vector<Hypothesis> hypotheses;

  std::uint32_t p() const { return char_residue; }
  bool mixed() const { return char_k_field == 0 && char_residue != 0; }
  bool equichar_p() const { return char_k_field != 0; }
  bool equichar_0() const { return char_k_field == 0 && char_residue == 0; }

  friend bool operator==(const VFDescriptor&, const VFDescriptor&) = default;
};

// InconsistentDescriptor on invariant violations.
void validate(const VFDescriptor& d);

// Line-based text: "char: (0,3)", "group: Z * Q" or "group: trivial", "vp: 1",
// "henselian: true", "residue: finite=true perfect=true", "hypothesis: nipn 2 pure".
VFDescriptor parse_descriptor(std::string_view text);
std::string format_descriptor(const VFDescriptor& d);

struct DerivedFact {
  std::string atom;
  bool value = false;
  std::string rule;
  std::string cites;
};

struct Contradiction {
  std::string atom;
  std::string true_by, false_by;  // rule ids
};

enum class AJCase { Equichar0, EquicharPTrivialOrSAMK, MixedFinitelyRamified, MixedK0AMK, Violation };
std::string to_string(AJCase c);

struct Verdict {
  std::vector<DerivedFact> derived;  // in derivation order, inputs first
  std::vector<std::string> fired;    // rule ids in firing order
  std::optional<AJCase> aj_case;     // set when a NIP / NIP_n hypothesis is present
  std::vector<Contradiction> contradictions;
  std::vector<std::string> formulas;

  // Value of an atom; Unknown when underived or derived both ways (the latter is a contradiction).
  Tri value(std::string_view atom) const;
};

struct Rule {
  struct Literal {
    std::string atom;
    bool value = true;
  };
  std::string id;
  std::string cites;
  std::vector<Literal> premises;
  Literal conclusion;
};

const std::vector<Rule>& rule_table();

Verdict classify(const VFDescriptor& d);
std::string format_verdict(const Verdict& v);

// The formula text "phi(x;y1,...,yn): exists t x = y1*...*yn*(t^p-t)".
std::string phi_formula(unsigned n);
std::string psi_formula();

Tri semitame_eval(const VFDescriptor& d);
// (K, w o v) from (K, v) and (k_v, w). IncompatibleComposition when the inner field does not
// match the outer residue field.
VFDescriptor compose(const VFDescriptor& outer, const VFDescriptor& inner);

}  // namespace aslab::classify
