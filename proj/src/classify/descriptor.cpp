#include <cctype>
#include <charconv>
#include <sstream>

#include "aslab/classify/classify.hpp"
#include "aslab/error.hpp"

namespace aslab::classify {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::uint32_t to_u32(std::string_view s, std::string_view what) {
  s = trim(s);
  std::uint32_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  require(ec == std::errc{} && ptr == s.data() + s.size() && !s.empty(), ErrorCode::ParseError,
          "expected a number for " + std::string(what) + ", got '" + std::string(s) + "'");
  return v;
}

bool is_prime(std::uint32_t p) {
  if (p < 2) return false;
  for (std::uint32_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

void inconsistent(bool bad, const std::string& what) { require(!bad, ErrorCode::InconsistentDescriptor, what); }

struct ResidueField {
  const char* name;
  Tri ResidueFlags::*member;
};

constexpr ResidueField kResidueFields[] = {
    {"finite", &ResidueFlags::finite},         {"infinite", &ResidueFlags::infinite},
    {"perfect", &ResidueFlags::perfect},       {"as_closed", &ResidueFlags::as_closed},
    {"as_finite", &ResidueFlags::as_finite},   {"sep_closed", &ResidueFlags::sep_closed},
    {"pac", &ResidueFlags::pac},               {"nip", &ResidueFlags::nip},
    {"nipn", &ResidueFlags::nipn},             {"ntp2", &ResidueFlags::ntp2},
};

struct FlagField {
  const char* name;
  Tri VFDescriptor::*member;
};

constexpr FlagField kFlagFields[] = {
    {"henselian", &VFDescriptor::henselian},
    {"p_henselian", &VFDescriptor::p_henselian},
    {"defectless", &VFDescriptor::defectless},
    {"alg_maximal", &VFDescriptor::alg_maximal},
    {"sep_alg_maximal", &VFDescriptor::sep_alg_maximal},
    {"semitame", &VFDescriptor::semitame},
};

Hypothesis parse_hypothesis(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::vector<std::string> toks;
  std::string tok;
  while (in >> tok) toks.push_back(tok);
  require(!toks.empty(), ErrorCode::ParseError, "empty hypothesis");
  Hypothesis h;
  std::size_t next = 1;
  if (toks[0] == "nip") {
    h.kind = HypothesisKind::Nip;
  } else if (toks[0] == "nipn") {
    h.kind = HypothesisKind::NipN;
    require(toks.size() >= 2, ErrorCode::ParseError, "nipn needs n");
    h.n = to_u32(toks[1], "n");
    next = 2;
  } else if (toks[0] == "ntp2") {
    h.kind = HypothesisKind::Ntp2;
  } else {
    fail(ErrorCode::ParseError, "unknown hypothesis '" + toks[0] + "'");
  }
  if (next < toks.size()) {
    const auto& scope = toks[next];
    if (scope == "pure" || scope == "pure_field") h.pure_field = true;
    else if (scope == "valued") h.pure_field = false;
    else fail(ErrorCode::ParseError, "hypothesis scope must be pure or valued, got '" + scope + "'");
    ++next;
  }
  require(next == toks.size(), ErrorCode::ParseError, "trailing text in hypothesis '" + std::string(text) + "'");
  return h;
}

std::string format_hypothesis(const Hypothesis& h) {
  std::string out;
  switch (h.kind) {
    case HypothesisKind::Nip: out = "nip"; break;
    case HypothesisKind::NipN: out = "nipn " + std::to_string(h.n); break;
    case HypothesisKind::Ntp2: out = "ntp2"; break;
  }
  return out + (h.pure_field ? " pure" : " valued");
}

}  // namespace

std::string to_string(Tri t) {
  switch (t) {
    case Tri::True: return "true";
    case Tri::False: return "false";
    case Tri::Unknown: return "unknown";
  }
  return "unknown";
}

Tri parse_tri(std::string_view s) {
  s = trim(s);
  if (s == "true" || s == "yes") return Tri::True;
  if (s == "false" || s == "no") return Tri::False;
  if (s == "unknown" || s == "?") return Tri::Unknown;
  fail(ErrorCode::ParseError, "expected true, false or unknown, got '" + std::string(s) + "'");
}

Tri tri_and(Tri a, Tri b) {
  if (a == Tri::False || b == Tri::False) return Tri::False;
  if (a == Tri::True && b == Tri::True) return Tri::True;
  return Tri::Unknown;
}

void validate(const VFDescriptor& d) {
  const auto p = d.char_residue;
  const bool pair_ok = (d.char_k_field == 0 && (p == 0 || is_prime(p))) || (d.char_k_field == p && is_prime(p));
  inconsistent(!pair_ok, "characteristic pair (" + std::to_string(d.char_k_field) + "," + std::to_string(p) +
                             ") is not (0,0), (p,p) or (0,p)");
  inconsistent(d.trivial == d.group.has_value(), "a valuation is trivial exactly when it has no value group");
  inconsistent(d.group && d.group->rank() == 0, "nontrivial valuations need a nonzero value group");
  inconsistent(d.trivial && d.mixed(), "a trivial valuation has the characteristic of K on its residue field");
  inconsistent(d.mixed() != d.vp.has_value(), "v(p) is given exactly in mixed characteristic");
  if (d.vp) {
    try {
      ogroup::og_standard_decomp(*d.group, *d.vp);
    } catch (const Error& e) {
      fail(ErrorCode::InconsistentDescriptor, std::string("v(p): ") + e.what());
    }
  }
  if (d.group) {
    for (const auto& c : d.group->components) {
      inconsistent(c.kind == ogroup::ArchKind::ZinvP && c.p != p,
                   "component " + c.to_string() + " does not match the residue characteristic");
    }
  }
  const auto& r = d.residue;
  inconsistent(r.finite != Tri::Unknown && r.finite == r.infinite, "residue field must be finite or infinite, not both");
  inconsistent(r.as_closed == Tri::True && r.as_finite == Tri::False, "AS-closed residue fields have finitely many AS-extensions");
  inconsistent(p != 0 && r.sep_closed == Tri::True && r.as_closed == Tri::False, "separably closed residue fields are AS-closed");
  inconsistent(r.finite == Tri::True && p == 0, "finite residue fields have positive characteristic");
  inconsistent(r.finite == Tri::True && (r.as_closed == Tri::True || r.sep_closed == Tri::True || r.pac == Tri::True ||
                                         r.perfect == Tri::False),
               "finite residue fields are perfect, not AS-closed and not PAC");
  inconsistent(d.alg_maximal == Tri::True && d.sep_alg_maximal == Tri::False,
               "algebraically maximal fields are separably algebraically maximal");
  inconsistent(d.henselian == Tri::True && d.p_henselian == Tri::False, "henselian fields are p-henselian");
  for (const auto& h : d.hypotheses) inconsistent(h.kind == HypothesisKind::NipN && h.n == 0, "NIP_n needs n >= 1");
}

VFDescriptor parse_descriptor(std::string_view text) {
  VFDescriptor d;
  std::optional<std::string> group_text, vp_text;
  bool have_char = false;
  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    auto line = trim(raw);
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = trim(line.substr(0, hash));
    if (line.empty()) continue;
    auto colon = line.find(':');
    require(colon != std::string_view::npos, ErrorCode::ParseError,
            "line " + std::to_string(line_no) + ": expected 'key: value'");
    auto key = trim(line.substr(0, colon));
    auto value = trim(line.substr(colon + 1));
    if (key == "char") {
      auto inner = value;
      if (!inner.empty() && inner.front() == '(') inner.remove_prefix(1);
      if (!inner.empty() && inner.back() == ')') inner.remove_suffix(1);
      auto comma = inner.find(',');
      require(comma != std::string_view::npos, ErrorCode::ParseError, "char must be '(charK,chark)'");
      d.char_k_field = to_u32(inner.substr(0, comma), "char K");
      d.char_residue = to_u32(inner.substr(comma + 1), "char k");
      have_char = true;
    } else if (key == "group") {
      group_text = std::string(value);
    } else if (key == "vp") {
      vp_text = std::string(value);
    } else if (key == "residue") {
      std::istringstream toks{std::string(value)};
      std::string tok;
      while (toks >> tok) {
        auto eq = tok.find('=');
        require(eq != std::string::npos, ErrorCode::ParseError, "residue flags are 'name=value', got '" + tok + "'");
        const auto name = tok.substr(0, eq);
        bool found = false;
        for (const auto& f : kResidueFields) {
          if (name == f.name) {
            d.residue.*f.member = parse_tri(tok.substr(eq + 1));
            found = true;
          }
        }
        require(found, ErrorCode::ParseError, "unknown residue flag '" + name + "'");
      }
    } else if (key == "hypothesis") {
      d.hypotheses.push_back(parse_hypothesis(value));
    } else {
      bool found = false;
      for (const auto& f : kFlagFields) {
        if (key == f.name) {
          d.*f.member = parse_tri(value);
          found = true;
        }
      }
      require(found, ErrorCode::ParseError, "line " + std::to_string(line_no) + ": unknown key '" + std::string(key) + "'");
    }
  }
  require(have_char, ErrorCode::ParseError, "missing 'char:' line");
  require(group_text.has_value(), ErrorCode::ParseError, "missing 'group:' line (use 'group: trivial')");
  if (*group_text == "trivial") {
    d.trivial = true;
  } else {
    const auto ambient = d.char_residue ? std::optional<std::uint32_t>(d.char_residue) : std::nullopt;
    d.group = ogroup::parse_group(*group_text, ambient);
  }
  if (vp_text) d.vp = ogroup::parse_group_elem(*vp_text);
  validate(d);
  return d;
}

std::string format_descriptor(const VFDescriptor& d) {
  std::ostringstream out;
  out << "char: (" << d.char_k_field << "," << d.char_residue << ")\n";
  out << "group: " << (d.group ? d.group->to_string() : "trivial") << "\n";
  if (d.vp) out << "vp: " << d.vp->to_string() << "\n";
  for (const auto& f : kFlagFields) out << f.name << ": " << to_string(d.*f.member) << "\n";
  out << "residue:";
  for (const auto& f : kResidueFields) {
    if (d.residue.*f.member != Tri::Unknown) out << " " << f.name << "=" << to_string(d.residue.*f.member);
  }
  out << "\n";
  for (const auto& h : d.hypotheses) out << "hypothesis: " << format_hypothesis(h) << "\n";
  return out.str();
}

}  // namespace aslab::classify
