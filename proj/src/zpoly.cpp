#include "qmomap/zpoly.hpp"

#include <algorithm>

#include "qmomap/error.hpp"

namespace qmomap {

int ZPoly::degree() const { return terms_.empty() ? -1 : total_degree(terms_.rbegin()->first); }

const MultiPoly* ZPoly::find(const Monomial& z) const {
  auto it = terms_.find(z);
  return it == terms_.end() ? nullptr : &it->second;
}

void ZPoly::add_term(const Monomial& z, const MultiPoly& c) {
  if (c.is_zero()) return;
  if (static_cast<int>(z.size()) != dim_) throw Error("z-monomial has wrong length");
  auto [it, inserted] = terms_.try_emplace(z, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

ZPoly& ZPoly::operator+=(const ZPoly& o) {
  if (o.dim_ != dim_ || !(o.u_ == u_)) throw Error("z-polynomial mismatch");
  for (const auto& [z, c] : o.terms_) add_term(z, c);
  return *this;
}

ZPoly& ZPoly::operator-=(const ZPoly& o) { return *this += o.scaled(-1); }

ZPoly ZPoly::scaled(const GaussianRational& s) const {
  ZPoly out(dim_, u_);
  if (s.is_zero()) return out;
  for (const auto& [z, c] : terms_) out.terms_.emplace_hint(out.terms_.end(), z, c * s);
  return out;
}

ZPoly ZPoly::times(const MultiPoly& m) const {
  ZPoly out(dim_, u_);
  for (const auto& [z, c] : terms_) out.add_term(z, c * m);
  return out;
}

ZPoly ZPoly::degree_range(int lo, int hi) const {
  ZPoly out(dim_, u_);
  for (const auto& [z, c] : terms_) {
    int k = total_degree(z);
    if (k >= lo && k <= hi) out.terms_.emplace_hint(out.terms_.end(), z, c);
  }
  return out;
}

std::vector<bool> ZPoly::support() const {
  std::vector<bool> s(dim_, false);
  for (const auto& [z, c] : terms_)
    for (int k = 0; k < dim_; ++k)
      if (z[k] > 0) s[k] = true;
  return s;
}

ZPoly multiply(const ZPoly& a, const ZPoly& b, int max_degree) {
  if (a.dim() != b.dim() || !(a.coeff_universe() == b.coeff_universe())) throw Error("z-polynomial mismatch");
  ZPoly out(a.dim(), a.coeff_universe());
  Monomial z(a.dim());
  for (const auto& [za, ca] : a.terms()) {
    int da = total_degree(za);
    for (const auto& [zb, cb] : b.terms()) {
      if (da + total_degree(zb) > max_degree) break;  // graded order: later terms are larger
      for (int k = 0; k < a.dim(); ++k) z[k] = za[k] + zb[k];
      out.add_term(z, ca * cb);
    }
  }
  return out;
}

ZPoly shifted_th(const MultiPoly& p, int n, int dim, int offset) {
  // Taylor expansion: p(θ + δ) = Σ_α δ^α ∂^α p(θ) / α!.
  const Universe& u = p.universe();
  ZPoly out(dim, u);
  int deg = std::max(p.degree(Family::th), 0);
  Monomial z(dim, 0);
  auto rec = [&](auto&& self, int k, int left, const MultiPoly& deriv, const mpz_class& fact) -> void {
    if (deriv.is_zero()) return;
    if (k == n) {
      out.add_term(z, deriv * GaussianRational(mpq_class(mpz_class(1), fact)));
      return;
    }
    MultiPoly cur = deriv;
    mpz_class f = fact;
    for (int e = 0; e <= left && !cur.is_zero(); ++e) {
      z[offset + k] = static_cast<std::uint8_t>(e);
      self(self, k + 1, left - e, cur, f);
      cur = cur.diff(th_(k));
      f *= e + 1;
    }
    z[offset + k] = 0;
  };
  rec(rec, 0, deg, p, mpz_class(1));
  return out;
}

}  // namespace qmomap
