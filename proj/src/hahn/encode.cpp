#include "aslab/hahn/encode.hpp"

#include "aslab/error.hpp"

namespace aslab::hahn {

using Code = field_core::GaloisField::Code;

FFPoly::FFPoly(FieldPtr f, std::vector<Code> coeffs) : f_(std::move(f)), c_(std::move(coeffs)) {
  for (auto c : c_) require(c < f_->q(), ErrorCode::InvalidArgument, "coefficient outside the field");
  trim();
}

void FFPoly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Code FFPoly::eval(Code x) const {
  Code acc = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = f_->add(f_->mul(acc, x), *it);
  return acc;
}

bool FFPoly::has_root() const {
  for (Code x = 0; x < f_->q(); ++x) {
    if (eval(x) == 0) return true;
  }
  return false;
}

FFPoly FFPoly::derivative() const {
  std::vector<Code> d;
  for (std::size_t i = 1; i < c_.size(); ++i) d.push_back(f_->scale(c_[i], static_cast<std::int64_t>(i)));
  return FFPoly(f_, std::move(d));
}

FFPoly operator+(const FFPoly& a, const FFPoly& b) {
  std::vector<Code> c(std::max(a.c_.size(), b.c_.size()), 0);
  for (std::size_t i = 0; i < c.size(); ++i) {
    c[i] = a.f_->add(i < a.c_.size() ? a.c_[i] : 0, i < b.c_.size() ? b.c_[i] : 0);
  }
  return FFPoly(a.f_, std::move(c));
}

FFPoly operator*(const FFPoly& a, const FFPoly& b) {
  if (a.is_zero() || b.is_zero()) return FFPoly(a.f_);
  std::vector<Code> c(a.c_.size() + b.c_.size() - 1, 0);
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i] == 0) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] = a.f_->add(c[i + j], a.f_->mul(a.c_[i], b.c_[j]));
  }
  return FFPoly(a.f_, std::move(c));
}

FFPoly FFPoly::pow(unsigned e) const {
  FFPoly r(f_, {1});
  for (unsigned i = 0; i < e; ++i) r = r * *this;
  return r;
}

FFPoly FFPoly::gcd(FFPoly a, FFPoly b) {
  const auto& f = *a.f_;
  while (!b.is_zero()) {
    // a mod b
    auto r = a;
    const auto inv_lead = f.inv(b.c_.back());
    while (!r.is_zero() && r.degree() >= b.degree()) {
      auto shift = static_cast<std::size_t>(r.degree() - b.degree());
      auto factor = f.mul(r.c_.back(), inv_lead);
      for (std::size_t j = 0; j < b.c_.size(); ++j) r.c_[shift + j] = f.sub(r.c_[shift + j], f.mul(factor, b.c_[j]));
      r.trim();
    }
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

std::string FFPoly::to_string(char var) const {
  if (is_zero()) return "0";
  std::string out;
  for (std::size_t i = c_.size(); i-- > 0;) {
    if (c_[i] == 0) continue;
    if (!out.empty()) out += " + ";
    if (i == 0) {
      out += f_->format(c_[i]);
      continue;
    }
    if (c_[i] != 1) out += f_->format(c_[i]) + "*";
    out += var;
    if (i > 1) out += "^" + std::to_string(i);
  }
  return out;
}

Code HomogeneousPoly::eval(Code u, Code v) const {
  const auto n = degree();
  Code acc = 0;
  for (unsigned i = 0; i <= n; ++i) {
    acc = field->add(acc, field->mul(coeffs[i], field->mul(field->pow(u, i), field->pow(v, n - i))));
  }
  return acc;
}

FFPoly HomogeneousPoly::compose(const FFPoly& a, const FFPoly& b) const {
  const auto n = degree();
  std::vector<FFPoly> a_pows{FFPoly(field, {1})}, b_pows{FFPoly(field, {1})};
  for (unsigned i = 1; i <= n; ++i) {
    a_pows.push_back(a_pows.back() * a);
    b_pows.push_back(b_pows.back() * b);
  }
  FFPoly acc(field);
  for (unsigned i = 0; i <= n; ++i) {
    if (coeffs[i] == 0) continue;
    acc = acc + FFPoly(field, {coeffs[i]}) * a_pows[i] * b_pows[n - i];
  }
  return acc;
}

std::string HomogeneousPoly::to_string() const {
  const auto n = degree();
  std::string out;
  for (unsigned i = n + 1; i-- > 0;) {
    if (coeffs[i] == 0) continue;
    if (!out.empty()) out += " + ";
    std::string mono;
    auto power = [](const char* var, unsigned e) -> std::string {
      if (e == 0) return "";
      return e == 1 ? std::string(var) : std::string(var) + "^" + std::to_string(e);
    };
    auto a = power("z1", i);
    auto b = power("z2", n - i);
    mono = a.empty() ? b : (b.empty() ? a : a + "*" + b);
    if (coeffs[i] != 1 || mono.empty()) out += field->format(coeffs[i]) + (mono.empty() ? "" : "*");
    out += mono;
  }
  return out.empty() ? "0" : out;
}

HomogeneousPoly homogenize(const FFPoly& d) {
  require(d.degree() >= 1, ErrorCode::RootedD, "d must have positive degree");
  if (d.has_root()) fail(ErrorCode::RootedD, "d = " + d.to_string() + " has a root in " + to_string(d.field()->order()));
  require(FFPoly::gcd(d, d.derivative()).degree() == 0, ErrorCode::InvalidArgument,
          "d = " + d.to_string() + " is not separable");
  return HomogeneousPoly{d.field(), d.coeffs()};
}

FFPoly no_common_root_encode(const std::vector<FFPoly>& fs, const FFPoly& d) {
  return no_common_root_encode(fs, homogenize(d));
}

FFPoly no_common_root_encode(const std::vector<FFPoly>& fs, const HomogeneousPoly& D) {
  require(!fs.empty(), ErrorCode::InvalidArgument, "encode needs at least one polynomial");
  for (const auto& g : fs) require(g.field() == D.field, ErrorCode::InvalidArgument, "polynomials over different fields");
  FFPoly acc = fs.back();
  for (std::size_t i = fs.size() - 1; i-- > 0;) acc = D.compose(fs[i], acc);
  return acc;
}

FFPoly default_rootless_poly(const FieldPtr& f) {
  const auto q = f->q();
  for (Code c1 = 0; c1 < q; ++c1) {
    for (Code c0 = 0; c0 < q; ++c0) {
      FFPoly d(f, {c0, c1, 1});
      if (!d.has_root()) return d;
    }
  }
  fail(ErrorCode::RootedD, "no rootless quadratic found");
}

}  // namespace aslab::hahn
