#include "qmomap/gutt_phase.hpp"

#include "qmomap/error.hpp"

namespace qmomap {

namespace {

MultiPoly to_dual(const MultiPoly& p, const Universe& target) {
  if (p.degree(Family::x) > 0 || p.degree(Family::xi) > 0 || p.degree(Family::v) > 0 || p.degree(Family::t) > 0)
    throw Error("Gutt product: arguments must be polynomials in th");
  return p.embed(target);
}

}  // namespace

PhaseModel gutt_phase(const LieAlgebra& g, const MultiPoly& f, const MultiPoly& h, int N) {
  if (N < 0) throw Error("negative order");
  const int n = g.dim();
  const Universe uc{0, n, 0, false};
  const Universe ub{0, n, 2 * n, false};
  LieVector b = bch(g, LieVector::symbolic(ub, n, 0), LieVector::symbolic(ub, n, n), N + 1);
  MultiPoly psi(ub);
  for (int k = 0; k < n; ++k)
    psi += MultiPoly::variable(ub, th_(k)) *
           (b.comps[k] - MultiPoly::variable(ub, v_(k)) - MultiPoly::variable(ub, v_(n + k)));
  ZPoly zpsi(4 * n, uc);
  const int th_off = ub.offset(Family::th), v_off = ub.offset(Family::v);
  for (const auto& [m, c] : psi.terms()) {
    Monomial z(4 * n, 0);
    for (int k = 0; k < 2 * n; ++k) z[k] = m[v_off + k];
    Monomial t(uc.size(), 0);
    for (int k = 0; k < n; ++k) t[uc.offset(Family::th) + k] = m[th_off + k];
    zpsi.add_term(z, MultiPoly::monomial(uc, t, c));
  }
  std::vector<ExternalInsertion> ext{{"f", {shifted_th(to_dual(f, uc), n, 4 * n, 2 * n)}},
                                     {"g", {shifted_th(to_dual(h, uc), n, 4 * n, 3 * n)}}};
  return PhaseModel::cotangent({{"v1", n}, {"v2", n}, {"dth1", n}, {"dth2", n}}, zpsi, MultiPoly(uc), std::move(ext));
}

HbarSeries gutt_via_phase(const LieAlgebra& g, const MultiPoly& f, const MultiPoly& h, int N, ExpandOptions options) {
  if (!(f.universe() == h.universe())) throw Error("Gutt product: arguments live in different universes");
  HbarSeries s = expand(gutt_phase(g, f, h, N), N, options);
  const Universe target = f.universe();
  return s.map([&](const MultiPoly& p) { return p.embed(target); });
}

}  // namespace qmomap
