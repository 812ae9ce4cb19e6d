#include "qmomap/qmomap.hpp"

#include "qmomap/error.hpp"
#include "qmomap/uea.hpp"

namespace qmomap {

namespace {

Universe phase_universe(const InfinitesimalAction& a) { return {a.d(), 0, 0, false}; }
Universe dual_universe(const InfinitesimalAction& a) { return {0, a.n(), 0, false}; }

void require_dual(const MultiPoly& u, const char* what) {
  if (u.degree(Family::x) > 0 || u.degree(Family::xi) > 0 || u.degree(Family::v) > 0 || u.degree(Family::t) > 0)
    throw Error(std::string(what) + ": expected a polynomial in th");
}

// Polynomial in v_1..v_n with (x, ξ) coefficients, as a ZPoly over z_0..z_{n-1}.
ZPoly v_to_z(const MultiPoly& p, int n, int dim, const Universe& target) {
  const Universe& u = p.universe();
  ZPoly out(dim, target);
  const int v_off = u.offset(Family::v);
  for (const auto& [m, c] : p.terms()) {
    Monomial z(dim, 0);
    Monomial rest(target.size(), 0);
    for (int k = 0; k < n; ++k) z[k] = m[v_off + k];
    for (int k = 0; k < u.d; ++k) {
      rest[target.slot(x_(k))] = m[u.slot(x_(k))];
      rest[target.slot(xi_(k))] = m[u.slot(xi_(k))];
    }
    out.add_term(z, MultiPoly::monomial(target, rest, c));
  }
  return out;
}

HbarSeries lift(const HbarSeries& s, const Universe& u) {
  return s.map([&](const MultiPoly& p) { return p.embed(u); });
}

}  // namespace

QmmModel::QmmModel(GSystem a, bool check_mc) : a_(std::move(a)) {
  if (check_mc) {
    McReport r = mc_residual(a_);
    if (!r.ok()) throw Error("G-system fails the Maurer-Cartan equation at " + r.location());
  }
}

const HbarSeries& QmmModel::on_monomial(const Monomial& e, ExpandOptions options) const {
  auto key = std::make_pair(e, options.prune);
  {
    std::lock_guard lock(cache_->mu);
    auto it = cache_->values.find(key);
    if (it != cache_->values.end()) return it->second;
  }
  Universe du = dual_universe(action());
  Monomial m(du.size(), 0);
  for (int k = 0; k < action().n(); ++k) m[du.slot(th_(k))] = e.at(k);
  HbarSeries s = lift(expand(build_phase(*this, MultiPoly::monomial(du, m)), N(), options), universe());
  std::lock_guard lock(cache_->mu);
  return cache_->values.emplace(key, std::move(s)).first->second;
}

PhaseModel build_phase(const QmmModel& model, const MultiPoly& u) {
  require_dual(u, "qmm");
  const InfinitesimalAction& act = model.action();
  const Universe& U = model.universe();
  const Universe uc = phase_universe(act);
  const int n = act.n(), d = act.d(), N = model.N();
  auto J = classical_momentum(act);
  FlowSeries flow = flow_series(act, N + 1);

  MultiPoly S(U), crit(U);
  for (int k = 0; k < d; ++k) {
    MultiPoly xik = MultiPoly::variable(U, xi_(k));
    S += xik * (flow.comps[k] - MultiPoly::variable(U, x_(k)));
    crit += xik * flow.comps[k].at_zero(Family::v);
  }
  for (int i = 0; i < n; ++i) S -= J[i] * MultiPoly::variable(U, v_(i));
  MultiPoly expected_crit(U);
  for (int k = 0; k < d; ++k) expected_crit += MultiPoly::variable(U, xi_(k)) * MultiPoly::variable(U, x_(k));
  if (!(crit == expected_crit)) throw Error("critical value differs from <xi, x>");

  ExternalInsertion uext{"u", {}};
  ZPoly shifted = shifted_th(u.embed(U), n, 2 * n, n);
  std::vector<std::pair<Var, MultiPoly>> bind;
  for (int i = 0; i < n; ++i) bind.emplace_back(th_(i), J[i]);
  ZPoly uz(2 * n, uc);
  for (const auto& [z, c] : shifted.terms()) uz.add_term(z, substitute(c, bind, U).embed(uc));
  uext.by_order.push_back(std::move(uz));

  ExternalInsertion aext{"a", {}};
  for (int l = 0; l <= N; ++l) aext.by_order.push_back(v_to_z(model.gsystem().P()[l], n, 2 * n, uc));
  while (aext.by_order.size() > 1 && aext.by_order.back().is_zero()) aext.by_order.pop_back();

  return PhaseModel::cotangent({{"v", n}, {"dth", n}}, v_to_z(S, n, 2 * n, uc), expected_crit.embed(uc),
                               {std::move(uext), std::move(aext)});
}

HbarSeries qmm_apply(const QmmModel& model, const MultiPoly& u, ExpandOptions options) {
  require_dual(u, "qmm_apply");
  const Universe& pu = u.universe();
  const int n = model.action().n();
  if (pu.n_th < n) throw Error("qmm_apply: polynomial has fewer th variables than the algebra");
  HbarSeries out(model.universe(), model.N());
  for (const auto& [m, c] : u.terms()) {
    Monomial e(n, 0);
    for (int k = 0; k < pu.n_th; ++k) {
      int ex = m[pu.slot(th_(k))];
      if (k >= n && ex > 0) throw Error("qmm_apply: th index beyond the algebra dimension");
      if (k < n) e[k] = static_cast<std::uint8_t>(ex);
    }
    out += model.on_monomial(e, options) * c;
  }
  return out;
}

HbarSeries qmm_apply(const QmmModel& model, const HbarSeries& u, ExpandOptions options) {
  HbarSeries out(model.universe(), model.N());
  for (int k = 0; k <= std::min(u.order(), model.N()); ++k)
    if (!u[k].is_zero()) out += qmm_apply(model, u[k], options).shift_up(k);
  return out;
}

HbarSeries qmm_linear(const QmmModel& model, int i, int order) {
  const InfinitesimalAction& act = model.action();
  if (i < 0 || i >= act.n()) throw Error("basis index out of range");
  if (order < 0 || order > model.N() + 1) throw Error("qmm_linear: order must lie in 0..N+1");
  HbarSeries out(model.universe(), order);
  out.coeff(0) = classical_momentum(act)[i];
  const GaussianRational minus_i = -GaussianRational::i();
  for (int n = 0; n + 1 <= order; ++n) out.coeff(n + 1) = model.gsystem().P()[n].diff(v_(i)).at_zero(Family::v) * minus_i;
  return out;
}

HbarSeries verify_morphism(const QmmModel& model, const MultiPoly& f, const MultiPoly& g) {
  require_dual(f, "verify_morphism");
  require_dual(g, "verify_morphism");
  const Universe du = dual_universe(model.action());
  MultiPoly fd = f.embed(du), gd = g.embed(du);
  HbarSeries lhs = qmm_apply(model, gutt_pbw(model.action().algebra(), fd, gd, model.N()));
  return lhs - star_standard(qmm_apply(model, fd), qmm_apply(model, gd));
}

HbarSeries t_tilde(const QmmModel& model, int i, const HbarSeries& f) {
  const int N = model.N();
  HbarSeries F = f.with_order(N + 1);
  HbarSeries J = qmm_linear(model, i, N + 1);
  HbarSeries c = (star_standard(J, F) - star_standard(F, J)) * GaussianRational::i();
  return c.shift_down(1);
}

SecondReport verify_second(const QmmModel& model, int i, const MultiPoly& f) {
  const InfinitesimalAction& act = model.action();
  const int N = model.N();
  MultiPoly fu = f.embed(model.universe());
  SecondReport r;
  SymbolOperator t = t_infinitesimal(model.gsystem(), i);
  r.generator = t - SymbolOperator::quantize_scaled(qmm_linear(model, i, N + 1));
  r.tilde = t_tilde(model, i, HbarSeries::from_poly(fu, N + 1));
  r.leading = r.tilde[0] - cotangent_lift_field(act, i).apply(fu);
  r.commutator = commutator(t, SymbolOperator::quantize(HbarSeries::from_poly(fu, N))) - SymbolOperator::quantize(r.tilde);
  return r;
}

HbarSeries verify_equivariance(const QmmModel& model, int i, const MultiPoly& f, const MultiPoly& g) {
  const int N = model.N();
  HbarSeries F = HbarSeries::from_poly(f.embed(model.universe()), N + 1);
  HbarSeries G = HbarSeries::from_poly(g.embed(model.universe()), N + 1);
  return t_tilde(model, i, star_standard(F, G)) - star_standard(t_tilde(model, i, F), G.with_order(N)) -
         star_standard(F.with_order(N), t_tilde(model, i, G));
}

bool InvariantReport::ok() const {
  for (const auto& q : quantum)
    if (!q.is_zero()) return false;
  return true;
}

bool InvariantReport::anomalous() const {
  for (const auto& q : naive)
    if (!q.is_zero()) return true;
  return false;
}

InvariantReport verify_invariant_hamiltonian(const QmmModel& model, const MultiPoly& f) {
  require_dual(f, "verify_invariant_hamiltonian");
  const InfinitesimalAction& act = model.action();
  MultiPoly fd = f.embed(dual_universe(act));
  CasimirCheck cc = is_casimir(act.algebra(), fd);
  if (!cc.casimir)
    for (int i = 0; i < act.n(); ++i)
      if (!cc.residuals[i].is_zero())
        throw Error("not a Casimir: {th" + std::to_string(i + 1) + ", f} = " + cc.residuals[i].to_string());
  const int N = model.N();
  SymbolOperator quantum = SymbolOperator::quantize(qmm_apply(model, fd));
  SymbolOperator naive = SymbolOperator::quantize(HbarSeries::from_poly(comomentum_pullback(act, fd), N));
  InvariantReport r;
  for (int i = 0; i < act.n(); ++i) {
    SymbolOperator t = t_infinitesimal(model.gsystem(), i);
    r.quantum.push_back(commutator(t, quantum));
    r.naive.push_back(commutator(t, naive));
  }
  return r;
}

}  // namespace qmomap
