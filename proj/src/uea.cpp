#include "qmomap/uea.hpp"

#include <algorithm>

#include "qmomap/error.hpp"

namespace qmomap {
namespace {

const Universe kScalar{};

HbarSeries scalar_series(int order, const GaussianRational& c, int hbar_power = 0) {
  HbarSeries s(kScalar, order);
  if (hbar_power <= order) s.coeff(hbar_power) = MultiPoly::constant(kScalar, c);
  return s;
}

}  // namespace

void UEAElement::add(const PbwWord& w, const HbarSeries& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms.try_emplace(w, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms.erase(it);
  }
}

bool operator==(const UEAElement& a, const UEAElement& b) { return a.order == b.order && a.terms == b.terms; }

PbwCalculus::PbwCalculus(const LieAlgebra& g, int order) : g_(g), order_(order) {
  if (order < 0) throw Error("negative truncation order");
}

UEAElement PbwCalculus::unit() const {
  UEAElement e{order_, {}};
  e.add({}, scalar_series(order_, 1));
  return e;
}

UEAElement PbwCalculus::word(const PbwWord& w) const {
  {
    std::lock_guard guard(lock_);
    auto it = words_.find(w);
    if (it != words_.end()) return it->second;
  }
  UEAElement out{order_, {}};
  auto p = std::adjacent_find(w.begin(), w.end(), [](int a, int b) { return a > b; });
  if (p == w.end()) {
    out.add(w, scalar_series(order_, 1));
  } else {
    std::size_t at = p - w.begin();
    int j = w[at], i = w[at + 1];
    PbwWord swapped = w;
    std::swap(swapped[at], swapped[at + 1]);
    out = word(swapped);
    if (order_ >= 1) {
      // (ħ/i) Σ_k c_{ji}^k e_k in place of the pair.
      for (int k = 0; k < g_.dim(); ++k) {
        const auto& c = g_.c(j, i, k);
        if (c.is_zero()) continue;
        PbwWord shorter(w.begin(), w.begin() + at);
        shorter.push_back(k);
        shorter.insert(shorter.end(), w.begin() + at + 2, w.end());
        auto sub = word(shorter);
        for (const auto& [ww, s] : sub.terms) out.add(ww, s.shift_up(1) * (c * -GaussianRational::i()));
      }
    }
  }
  std::lock_guard guard(lock_);
  return words_.emplace(w, std::move(out)).first->second;
}

UEAElement PbwCalculus::multiply(const UEAElement& a, const UEAElement& b) const {
  UEAElement out{order_, {}};
  for (const auto& [wa, ca] : a.terms)
    for (const auto& [wb, cb] : b.terms) {
      HbarSeries c = ca * cb;
      if (c.is_zero()) continue;
      PbwWord w = wa;
      w.insert(w.end(), wb.begin(), wb.end());
      for (const auto& [ww, s] : word(w).terms) out.add(ww, s * c);
    }
  return out;
}

const UEAElement& PbwCalculus::sym_monomial(const PbwWord& sorted) const {
  {
    std::lock_guard guard(lock_);
    auto it = syms_.find(sorted);
    if (it != syms_.end()) return it->second;
  }
  // θ^α ↦ (1/k!) Σ over all k! orderings = (α!/k!) Σ over distinct arrangements.
  mpz_class alpha_fact = 1;
  for (std::size_t s = 0; s < sorted.size();) {
    std::size_t e = s;
    while (e < sorted.size() && sorted[e] == sorted[s]) ++e;
    alpha_fact *= factorial(static_cast<int>(e - s));
    s = e;
  }
  GaussianRational weight(mpq_class(alpha_fact, factorial(static_cast<int>(sorted.size()))));
  UEAElement out{order_, {}};
  PbwWord perm = sorted;
  do {
    for (const auto& [ww, s] : word(perm).terms) out.add(ww, s * weight);
  } while (std::next_permutation(perm.begin(), perm.end()));
  std::lock_guard guard(lock_);
  return syms_.emplace(sorted, std::move(out)).first->second;
}

UEAElement PbwCalculus::symmetrize(const MultiPoly& f) const {
  return symmetrize(HbarSeries::from_poly(f, order_));
}

UEAElement PbwCalculus::symmetrize(const HbarSeries& f) const {
  if (f.order() != order_) throw Error("order mismatch in symmetrize");
  const Universe& u = f.universe();
  if (u.n_th != g_.dim()) throw Error("th family size does not match algebra dimension");
  UEAElement out{order_, {}};
  for (int k = 0; k <= order_; ++k)
    for (const auto& [m, c] : f[k].terms()) {
      PbwWord sorted;
      for (int s = 0; s < u.size(); ++s) {
        if (m[s] == 0) continue;
        Var v = u.var(s);
        if (v.family != Family::th) throw Error("symmetrize expects a polynomial in th only");
        sorted.insert(sorted.end(), m[s], v.index);
      }
      for (const auto& [ww, s] : sym_monomial(sorted).terms) out.add(ww, s.shift_up(k) * c);
    }
  return out;
}

HbarSeries PbwCalculus::unsymmetrize(const UEAElement& a, const Universe& u) const {
  if (u.n_th != g_.dim()) throw Error("th family size does not match algebra dimension");
  HbarSeries out(u, order_);
  UEAElement rest = a;
  while (!rest.terms.empty()) {
    // sym(θ^w) = word(w) + shorter words, so the longest word is peeled first.
    auto top = std::max_element(rest.terms.begin(), rest.terms.end(), [](const auto& x, const auto& y) {
      if (x.first.size() != y.first.size()) return x.first.size() < y.first.size();
      return x.first < y.first;
    });
    PbwWord w = top->first;
    HbarSeries c = top->second;
    Monomial m(u.size(), 0);
    for (int idx : w) ++m[u.slot(th_(idx))];
    for (int k = 0; k <= order_; ++k)
      if (!c[k].is_zero()) out.coeff(k).add_term(m, c[k].constant_term());
    for (const auto& [ww, s] : sym_monomial(w).terms) rest.add(ww, -(s * c));
  }
  return out;
}

HbarSeries gutt_pbw(const LieAlgebra& g, const HbarSeries& f, const HbarSeries& h) {
  if (f.order() != h.order()) throw Error("order mismatch in gutt_pbw");
  if (!(f.universe() == h.universe())) throw Error("universe mismatch in gutt_pbw");
  PbwCalculus pbw(g, f.order());
  return pbw.unsymmetrize(pbw.multiply(pbw.symmetrize(f), pbw.symmetrize(h)), f.universe());
}

HbarSeries gutt_pbw(const LieAlgebra& g, const MultiPoly& f, const MultiPoly& h, int N) {
  return gutt_pbw(g, HbarSeries::from_poly(f, N), HbarSeries::from_poly(h, N));
}

}  // namespace qmomap
