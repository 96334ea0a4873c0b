#include <algorithm>
#include <array>
#include <map>
#include <sstream>

#include "aslab/classify/classify.hpp"
#include "aslab/error.hpp"

namespace aslab::classify {

namespace {

using Lit = Rule::Literal;

Lit T(const char* atom) { return {atom, true}; }
Lit F(const char* atom) { return {atom, false}; }

class TableBuilder {
 public:
  void add(std::string id, std::string cites, std::vector<Lit> premises, Lit conclusion) {
    rules_.push_back({std::move(id), std::move(cites), std::move(premises), std::move(conclusion)});
  }

  // result <-> AND(parts) under the context literals, as Horn rules in both directions.
  void conjunction(const std::string& id, const std::string& cites, const std::vector<Lit>& context, const char* result,
                   const std::vector<const char*>& parts) {
    auto all = context;
    for (const auto* part : parts) all.push_back(T(part));
    add(id, cites, all, T(result));
    for (const auto* part : parts) {
      auto neg = context;
      neg.push_back(F(part));
      add(id + "-fails", cites, neg, F(result));
      auto elim = context;
      elim.push_back(T(result));
      add(id + "-needs", cites, elim, T(part));
    }
  }

  std::vector<Rule> take() { return std::move(rules_); }

 private:
  std::vector<Rule> rules_;
};

std::vector<Rule> build_table() {
  TableBuilder b;

  // Field-theoretic background.
  const std::string finite = "finite fields are perfect, not AS-closed, NIP and have one AS-extension";
  b.add("finite-residue", finite, {T("res.finite")}, F("res.infinite"));
  b.add("finite-residue", finite, {F("res.infinite")}, T("res.finite"));
  b.add("finite-residue", finite, {F("res.finite")}, T("res.infinite"));
  b.add("finite-residue", finite, {T("res.finite")}, T("res.perfect"));
  b.add("finite-residue", finite, {T("res.finite")}, F("res.as_closed"));
  b.add("finite-residue", finite, {T("res.finite")}, T("res.as_finite"));
  b.add("finite-residue", finite, {T("res.finite")}, F("res.sep_closed"));
  b.add("finite-residue", finite, {T("res.finite")}, F("res.pac"));
  b.add("finite-residue", finite, {T("res.finite")}, T("res.nip"));
  b.add("sep-closed-as", "separably closed fields of characteristic p are AS-closed",
        {T("res.char_p"), T("res.sep_closed")}, T("res.as_closed"));
  b.add("as-closed-as-finite", "AS-closed fields have no AS-extensions", {T("res.as_closed")}, T("res.as_finite"));
  b.add("alg-closed-nip", "algebraically closed fields are NIP", {T("res.sep_closed"), T("res.perfect")}, T("res.nip"));
  b.add("pac-ipn", "PAC fields that are not separably closed have IP_n for every n",
        {T("res.pac"), F("res.sep_closed")}, F("res.nipn"));
  b.add("pac-ipn", "PAC fields that are not separably closed have IP_n for every n",
        {T("res.pac"), F("res.sep_closed")}, F("res.nip"));
  b.add("nip-nipn", "NIP implies NIP_n", {T("res.nip")}, T("res.nipn"));
  b.add("nip-nipn", "NIP implies NIP_n", {T("K.nip")}, T("K.nipn"));
  b.add("nip-nipn", "NIP implies NIP_n", {T("Kv.nip")}, T("Kv.nipn"));
  b.add("nip-ntp2", "NIP implies NTP2", {T("K.nip")}, T("K.ntp2"));
  b.add("nip-ntp2", "NIP implies NTP2", {T("Kv.nip")}, T("Kv.ntp2"));
  const std::string reduct = "the pure field is a reduct of the valued field";
  b.add("reduct", reduct, {T("Kv.nipn")}, T("K.nipn"));
  b.add("reduct", reduct, {T("Kv.nip")}, T("K.nip"));
  b.add("reduct", reduct, {T("Kv.ntp2")}, T("K.ntp2"));
  const std::string interp = "the residue field is interpretable in the valued field";
  b.add("residue-interpretable", interp, {T("Kv.nipn")}, T("res.nipn"));
  b.add("residue-interpretable", interp, {T("Kv.nip")}, T("res.nip"));
  b.add("residue-interpretable", interp, {T("Kv.ntp2")}, T("res.ntp2"));

  // Valuation-theoretic background.
  b.add("henselian-p", "henselian valued fields are p-henselian", {T("v.henselian")}, T("v.p_henselian"));
  b.add("alg-sep-maximal", "algebraically maximal implies separably algebraically maximal", {T("v.alg_maximal")},
        T("v.sep_alg_maximal"));
  b.add("infinite-field", "nontrivially valued fields are infinite", {F("v.trivial")}, T("K.infinite"));
  b.add("infinite-field", "a field with an infinite residue field is infinite", {T("res.infinite")}, T("K.infinite"));

  // Kaplansky, SAMK and AMK for v and for the places k_p and k_0 of the standard decomposition.
  const std::string kap = "Kaplansky: p-divisible value group, perfect residue field with no AS-extensions";
  b.conjunction("kaplansky", kap, {T("char.eqp"), F("v.trivial")}, "v.kaplansky",
                {"v.group_p_div", "res.perfect", "res.as_closed"});
  b.conjunction("samk", "SAMK: separably algebraically maximal Kaplansky", {T("char.eqp"), F("v.trivial")}, "v.samk",
                {"v.sep_alg_maximal", "v.kaplansky"});
  b.conjunction("amk", "AMK: algebraically maximal Kaplansky", {T("char.eqp"), F("v.trivial")}, "v.amk",
                {"v.alg_maximal", "v.kaplansky"});
  b.conjunction("kaplansky-kp", kap, {T("char.mixed"), F("kp.trivial")}, "kp.kaplansky",
                {"kp.group_p_div", "res.perfect", "res.as_closed"});
  b.conjunction("samk-kp", "SAMK: separably algebraically maximal Kaplansky", {T("char.mixed"), F("kp.trivial")},
                "kp.samk", {"kp.sep_alg_maximal", "kp.kaplansky"});
  b.conjunction("kaplansky-k0", "Kaplansky in mixed characteristic: roughly p-divisible value group",
                {T("char.mixed")}, "k0.kaplansky", {"k0.group_p_div", "res.perfect", "res.as_closed"});
  b.conjunction("amk-k0", "AMK: algebraically maximal Kaplansky", {T("char.mixed")}, "k0.amk",
                {"k0.alg_maximal", "k0.kaplansky"});

  // Semitameness.
  const std::string semitame = "semitame: residue characteristic 0, or p-divisible group, perfect residue, defectless";
  b.add("semitame-res0", semitame, {F("res.char_p")}, T("v.semitame"));
  b.add("semitame-trivial", semitame, {T("v.trivial")}, T("v.semitame"));
  b.conjunction("semitame", semitame, {T("res.char_p"), F("v.trivial")}, "v.semitame",
                {"v.group_p_div", "res.perfect", "v.defectless"});
  b.add("semitame-trivial", semitame, {T("kp.trivial")}, T("kp.semitame"));
  b.conjunction("semitame-kp", semitame, {T("char.mixed"), F("kp.trivial")}, "kp.semitame",
                {"kp.group_p_div", "res.perfect", "kp.defectless"});
  b.conjunction("semitame-k0", semitame, {T("char.mixed")}, "k0.semitame",
                {"k0.group_p_div", "res.perfect", "k0.defectless"});

  // NIP_n.
  b.add("nipn-as-closed", "infinite NIP_n fields of characteristic p are AS-closed",
        {T("char.eqp"), T("K.infinite"), T("K.nipn")}, T("K.as_closed"));
  b.add("as-hensel", "p-henselian fields lift AS-roots from the residue field",
        {T("char.eqp"), F("v.trivial"), T("v.p_henselian"), F("res.as_closed")}, F("K.as_closed"));
  b.add("as-ip-phi", "an infinite field of characteristic p that is not AS-closed has IP_n witnessed by phi",
        {T("char.eqp"), T("K.infinite"), F("K.as_closed")}, T("K.ip_phi"));
  b.add("ip-phi", "a formula with IP_n refutes NIP_n", {T("K.ip_phi")}, F("K.nipn"));
  b.add("nipn-eqp-samk", "NIP_n valued fields of equicharacteristic p are SAMK or trivially valued",
        {T("char.eqp"), F("v.trivial"), T("K.nipn")}, T("v.samk"));
  b.add("nipn-imperfect-residue", "an imperfect residue field of a NIP_n p-henselian field sits at the coarsest "
                                  "valuation of residue characteristic p",
        {T("K.nipn"), T("v.p_henselian"), T("res.char_p"), F("v.trivial"), F("res.perfect")}, T("v.coarsest_p"));
  b.add("nipn-mixed-kp", "NIP_n p-henselian fields of mixed characteristic have k_p SAMK or trivially valued",
        {T("char.mixed"), T("K.nipn"), T("v.p_henselian"), F("kp.trivial")}, T("kp.samk"));
  b.add("nipn-mixed-k0", "NIP_n p-henselian fields of mixed characteristic that are not finitely ramified have k_0 AMK",
        {T("char.mixed"), T("K.nipn"), T("v.p_henselian"), F("v.fin_ram")}, T("k0.amk"));
  b.add("as-lift-kp", "IP_n of phi lifts from the nontrivially valued field k_p with non-AS-closed residue field",
        {T("char.mixed"), T("v.p_henselian"), F("kp.trivial"), F("res.as_closed")}, T("K.ip_phi"));
  b.add("as-lift-dense", "IP_n of phi lifts through a saturated coarsening when v(p) has no least archimedean bound",
        {T("char.mixed"), T("v.p_henselian"), F("v.fin_ram"), F("res.as_closed")}, T("K.ip_phi"));
  b.add("nipn-residue-nip", "a henselian NIP_n valued field with NIP residue field is NIP",
        {T("v.henselian"), T("Kv.nipn"), T("res.nip")}, T("Kv.nip"));

  // NTP2.
  b.add("ntp2-as-finite", "psi is NTP2 exactly when there are finitely many AS-extensions",
        {T("char.eqp"), T("K.ntp2")}, T("K.as_finite"));
  b.add("as-infinite-tp2", "psi is NTP2 exactly when there are finitely many AS-extensions",
        {T("char.eqp"), T("K.infinite"), F("K.as_finite")}, T("K.tp2_psi"));
  b.add("tp2-psi", "a formula with TP2 refutes NTP2", {T("K.tp2_psi")}, F("K.ntp2"));
  b.add("as-finite-semitame", "nontrivially valued fields of characteristic p with finitely many AS-extensions are "
                              "semitame",
        {T("char.eqp"), F("v.trivial"), T("K.as_finite")}, T("v.semitame"));
  b.add("as-finite-semitame", "nontrivially valued fields of characteristic p with finitely many AS-extensions are "
                              "semitame",
        {T("char.eqp"), F("v.trivial"), F("v.semitame")}, F("K.as_finite"));
  b.add("tp2-lift", "TP2 of psi lifts from a residue field of characteristic p with infinitely many AS-extensions",
        {T("res.char_p"), T("v.p_henselian"), F("v.trivial"), F("res.as_finite")}, T("K.tp2_psi"));
  b.add("tp2-lift-kp", "TP2 of psi lifts from k_p when k_p is not semitame",
        {T("char.mixed"), T("v.p_henselian"), F("kp.trivial"), F("kp.semitame")}, T("K.tp2_psi"));
  b.add("ntp2-eqp-semitame", "NTP2 p-henselian fields of equicharacteristic p are semitame",
        {T("char.eqp"), T("K.ntp2"), T("v.p_henselian")}, T("v.semitame"));
  b.add("ntp2-mixed-kp", "NTP2 p-henselian finitely ramified fields have k_p semitame",
        {T("char.mixed"), T("K.ntp2"), T("v.p_henselian"), T("v.fin_ram")}, T("kp.semitame"));
  b.add("ntp2-mixed-k0", "NTP2 p-henselian fields that are not finitely ramified have k_0 semitame",
        {T("char.mixed"), T("K.ntp2"), T("v.p_henselian"), F("v.fin_ram")}, T("k0.semitame"));
  b.add("ntp2-gdr", "NTP2 p-henselian fields are gdr", {T("char.eqp"), T("K.ntp2"), T("v.p_henselian")}, T("v.gdr"));
  b.add("ntp2-gdr", "NTP2 p-henselian fields are gdr", {T("char.mixed"), T("K.ntp2"), T("v.p_henselian")}, T("v.gdr"));
  b.add("ntp2-imperfect-residue", "an imperfect residue field of an NTP2 p-henselian field sits at the coarsest "
                                  "valuation of residue characteristic p",
        {T("K.ntp2"), T("v.p_henselian"), T("res.char_p"), F("v.trivial"), F("res.perfect")}, T("v.coarsest_p"));
  return b.take();
}

class Engine {
 public:
  void assert_fact(const std::string& atom, bool value, const std::string& rule, const std::string& cites) {
    auto& slot = facts_[atom][value ? 1 : 0];
    if (slot) return;
    slot = verdict_.derived.size();
    verdict_.derived.push_back({atom, value, rule, cites});
    const auto& other = facts_[atom][value ? 0 : 1];
    if (other) {
      const auto& o = verdict_.derived[*other];
      verdict_.contradictions.push_back({atom, value ? rule : o.rule, value ? o.rule : rule});
    }
  }

  void assert_tri(const std::string& atom, Tri t, const std::string& rule, const std::string& cites) {
    if (t != Tri::Unknown) assert_fact(atom, t == Tri::True, rule, cites);
  }

  bool has(const Lit& l) const {
    auto it = facts_.find(l.atom);
    return it != facts_.end() && it->second[l.value ? 1 : 0].has_value();
  }

  void saturate(const std::vector<Rule>& rules) {
    bool changed = true;
    while (changed) {
      changed = false;
      for (const auto& r : rules) {
        if (has(r.conclusion)) continue;
        if (!std::all_of(r.premises.begin(), r.premises.end(), [&](const Lit& l) { return has(l); })) continue;
        assert_fact(r.conclusion.atom, r.conclusion.value, r.id, r.cites);
        verdict_.fired.push_back(r.id);
        changed = true;
      }
    }
  }

  Verdict& verdict() { return verdict_; }

 private:
  std::map<std::string, std::array<std::optional<std::size_t>, 2>> facts_;
  Verdict verdict_;
};

void seed_facts(Engine& e, const VFDescriptor& d) {
  const std::string in = "input", desc = "descriptor";
  e.assert_fact("char.eq0", d.equichar_0(), in, desc);
  e.assert_fact("char.eqp", d.equichar_p(), in, desc);
  e.assert_fact("char.mixed", d.mixed(), in, desc);
  e.assert_fact("res.char_p", d.p() != 0, in, desc);
  e.assert_fact("v.trivial", d.trivial, in, desc);
  e.assert_tri("v.henselian", d.henselian, in, desc);
  e.assert_tri("v.p_henselian", d.p_henselian, in, desc);
  e.assert_tri("v.defectless", d.defectless, in, desc);
  e.assert_tri("v.alg_maximal", d.alg_maximal, in, desc);
  e.assert_tri("v.sep_alg_maximal", d.sep_alg_maximal, in, desc);
  e.assert_tri("v.semitame", d.semitame, in, desc);
  const auto& r = d.residue;
  e.assert_tri("res.finite", r.finite, in, desc);
  e.assert_tri("res.infinite", r.infinite, in, desc);
  e.assert_tri("res.perfect", r.perfect, in, desc);
  e.assert_tri("res.as_closed", r.as_closed, in, desc);
  e.assert_tri("res.as_finite", r.as_finite, in, desc);
  e.assert_tri("res.sep_closed", r.sep_closed, in, desc);
  e.assert_tri("res.pac", r.pac, in, desc);
  e.assert_tri("res.nip", r.nip, in, desc);
  e.assert_tri("res.nipn", r.nipn, in, desc);
  e.assert_tri("res.ntp2", r.ntp2, in, desc);

  if (d.group && d.p() != 0) {
    const auto& g = *d.group;
    e.assert_fact("v.group_p_div", ogroup::og_p_divisible(g, d.p()), "group-invariants", "p-divisibility of the value group");
    if (d.equichar_p()) {
      e.assert_fact("v.coarsest_p", g.rank() == 1, "coarsenings",
                    "in equicharacteristic p every coarsening has residue characteristic p");
    }
    if (d.mixed()) {
      const std::string cites = "decomposition of the value group around v(p)";
      const auto dec = ogroup::og_standard_decomp(g, *d.vp);
      const bool kp_trivial = dec.deltap_start >= g.rank();
      e.assert_fact("v.fin_ram", ogroup::og_finitely_ramified(g, *d.vp, dec).has_value(), "standard-decomposition", cites);
      e.assert_fact("kp.trivial", kp_trivial, "standard-decomposition", cites);
      e.assert_fact("v.coarsest_p", kp_trivial, "standard-decomposition", cites);
      if (!kp_trivial) {
        bool div = true;
        for (std::size_t i = dec.deltap_start; i < g.rank(); ++i) div = div && g.components[i].p_divisible(d.p());
        e.assert_fact("kp.group_p_div", div, "standard-decomposition", cites);
      }
      e.assert_fact("k0.group_p_div", ogroup::og_roughly_p_divisible(g, *d.vp, d.p()), "standard-decomposition", cites);
    }
  }

  for (const auto& h : d.hypotheses) {
    const std::string scope = h.pure_field ? "K." : "Kv.";
    switch (h.kind) {
      case HypothesisKind::Nip: e.assert_fact(scope + "nip", true, "hypothesis", desc); break;
      case HypothesisKind::NipN: e.assert_fact(scope + "nipn", true, "hypothesis", desc); break;
      case HypothesisKind::Ntp2: e.assert_fact(scope + "ntp2", true, "hypothesis", desc); break;
    }
  }
}

}  // namespace

std::string to_string(AJCase c) {
  switch (c) {
    case AJCase::Equichar0: return "equichar0";
    case AJCase::EquicharPTrivialOrSAMK: return "equicharP_trivial_or_SAMK";
    case AJCase::MixedFinitelyRamified: return "mixed_finitely_ramified";
    case AJCase::MixedK0AMK: return "mixed_k0_AMK";
    case AJCase::Violation: return "violation";
  }
  return "violation";
}

Tri Verdict::value(std::string_view atom) const {
  bool t = false, f = false;
  for (const auto& fact : derived) {
    if (fact.atom != atom) continue;
    (fact.value ? t : f) = true;
  }
  if (t == f) return Tri::Unknown;
  return tri(t);
}

const std::vector<Rule>& rule_table() {
  static const std::vector<Rule> table = build_table();
  return table;
}

std::string phi_formula(unsigned n) {
  require(n >= 1, ErrorCode::InvalidArgument, "phi needs at least one parameter");
  std::string params, product;
  for (unsigned i = 1; i <= n; ++i) {
    params += ",y" + std::to_string(i);
    product += "y" + std::to_string(i) + "*";
  }
  return "phi(x;" + params.substr(1) + "): exists t x = " + product + "(t^p-t)";
}

std::string psi_formula() { return "psi(x;y,z): exists t x+z = y*(t^p-t)"; }

Verdict classify(const VFDescriptor& d) {
  validate(d);
  Engine e;
  seed_facts(e, d);
  e.saturate(rule_table());
  auto& v = e.verdict();

  unsigned n = 0;
  bool nip_hypothesis = false;
  for (const auto& h : d.hypotheses) {
    if (h.kind == HypothesisKind::Ntp2) continue;
    nip_hypothesis = true;
    n = std::max(n, h.kind == HypothesisKind::NipN ? h.n : 1u);
  }
  if (nip_hypothesis) {
    if (!v.contradictions.empty()) v.aj_case = AJCase::Violation;
    else if (d.equichar_0()) v.aj_case = AJCase::Equichar0;
    else if (d.equichar_p()) v.aj_case = AJCase::EquicharPTrivialOrSAMK;
    else if (v.value("v.fin_ram") == Tri::True) v.aj_case = AJCase::MixedFinitelyRamified;
    else v.aj_case = AJCase::MixedK0AMK;
  }
  for (const auto& f : v.derived) {
    if (f.atom == "K.ip_phi" && f.value) v.formulas.push_back(phi_formula(std::max(n, 1u)));
    if (f.atom == "K.tp2_psi" && f.value) v.formulas.push_back(psi_formula());
  }
  return std::move(v);
}

std::string format_verdict(const Verdict& v) {
  std::ostringstream out;
  out << "aj_case: " << (v.aj_case ? to_string(*v.aj_case) : "none") << "\n";
  out << "facts:\n";
  for (const auto& f : v.derived) out << "  " << f.atom << " = " << (f.value ? "true" : "false") << " [" << f.rule << "]\n";
  for (const auto& f : v.derived) {
    if (f.rule == "input" || f.rule == "hypothesis") continue;
    out << "rule: " << f.rule << " cites: " << f.cites << "\n";
    out << "  derives: " << f.atom << " = " << (f.value ? "true" : "false") << "\n";
  }
  if (v.contradictions.empty()) {
    out << "contradictions: none\n";
  } else {
    out << "contradictions:\n";
    for (const auto& c : v.contradictions) out << "  " << c.atom << ": true by " << c.true_by << ", false by " << c.false_by << "\n";
  }
  if (v.formulas.empty()) {
    out << "formulas: none\n";
  } else {
    out << "formulas:\n";
    for (const auto& f : v.formulas) out << "  " << f << "\n";
  }
  return out.str();
}

}  // namespace aslab::classify
