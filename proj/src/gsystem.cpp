#include "qmomap/gsystem.hpp"

#include "qmomap/error.hpp"
#include "qmomap/parse.hpp"

namespace qmomap {

namespace {

std::vector<DegreeCap> v_caps(const GSystem& a) { return {{Family::v, a.M()}, {Family::t, a.M()}}; }

std::string lowest_term(const MultiPoly& p) {
  const auto& [m, c] = *p.terms().begin();
  return MultiPoly::monomial(p.universe(), m, c).to_string();
}

}  // namespace

GSystem::GSystem(InfinitesimalAction action, int N, int M, std::vector<MultiPoly> P)
    : action_(std::move(action)), N_(N), M_(M), P_(std::move(P)) {
  if (N_ < 0) throw Error("G-system: negative order");
  if (M_ < 1) throw Error("G-system: v-degree bound must be at least 1");
  const Universe& u = action_.universe();
  if (static_cast<int>(P_.size()) > N_ + 1) throw Error("G-system: more coefficients than N + 1");
  P_.resize(N_ + 1, MultiPoly(u));
  for (int n = 0; n <= N_; ++n) {
    MultiPoly& p = P_[n];
    if (p.universe() == Universe{}) p = MultiPoly(u);
    if (!(p.universe() == u)) p = p.embed(u);
    const std::string at = "G-system P^" + std::to_string(n) + ": ";
    if (p.degree(Family::th) > 0 || p.degree(Family::t) > 0) throw Error(at + "depends on th or t");
    for (int k = action_.n(); k < u.n_v; ++k)
      if (p.degree(v_(k)) > 0) throw Error(at + "uses a v variable beyond the algebra dimension");
    if (p.degree(Family::xi) > n) throw Error(at + "xi-degree " + std::to_string(p.degree(Family::xi)) + " exceeds " + std::to_string(n));
    if (p.degree(Family::v) > M_) throw Error(at + "v-degree exceeds M = " + std::to_string(M_));
    MultiPoly unit = p.at_zero(Family::v);
    MultiPoly expected = MultiPoly::constant(u, n == 0 ? 1 : 0);
    if (!(unit == expected))
      throw Error(at + "value at v = 0 is " + (unit.is_zero() ? std::string("0") : unit.to_string()) +
                  ", expected " + (n == 0 ? "1" : "0"));
  }
  flow_ = flow_series(action_, M_);
}

GSystem GSystem::trivial(const InfinitesimalAction& action, int N, int M) {
  return GSystem(action, N, M, {MultiPoly::constant(action.universe(), 1)});
}

GSystem GSystem::gauge(const InfinitesimalAction& action, const MultiPoly& c, int N, int M, int k) {
  if (k < 0) throw Error("gauge: negative hbar power");
  const Universe& u = action.universe();
  MultiPoly cc = c.embed(u);
  if (cc.degree(Family::xi) > 0 || cc.degree(Family::v) > 0 || cc.degree(Family::th) > 0 || cc.degree(Family::t) > 0)
    throw Error("gauge function must depend on x only");
  std::vector<DegreeCap> caps{{Family::v, M}};
  FlowSeries flow = flow_series(action, M);
  std::vector<std::pair<Var, MultiPoly>> bind;
  for (int k = 0; k < action.d(); ++k) bind.emplace_back(x_(k), flow.comps[k]);
  MultiPoly delta = substitute(cc, bind, u, caps) - cc;
  std::vector<MultiPoly> P(N + 1, MultiPoly(u));
  MultiPoly power = MultiPoly::constant(u, 1);
  for (int j = 0;; ++j) {
    if (j > 0) power = multiply(power, delta, caps) * GaussianRational(mpq_class(1, j));
    if (power.is_zero() || j * k > N) break;
    P[j * k] += power;
    if (k == 0 && j >= M) break;
  }
  return GSystem(action, N, M, std::move(P));
}

GSystem GSystem::from_strings(const InfinitesimalAction& action, int N, int M,
                              const std::vector<std::pair<int, std::string>>& P) {
  std::vector<MultiPoly> polys(N + 1, MultiPoly(action.universe()));
  for (const auto& [n, text] : P) {
    if (n < 0 || n > N) throw Error("G-system: order " + std::to_string(n) + " outside 0.." + std::to_string(N));
    polys[n] += parse_poly(text, action.universe());
  }
  return GSystem(action, N, M, std::move(polys));
}

HbarSeries GSystem::amplitude() const {
  HbarSeries s(action_.universe(), N_);
  for (int n = 0; n <= N_; ++n) s.coeff(n) = P_[n];
  return s;
}

bool GSystem::is_trivial() const {
  for (int n = 0; n <= N_; ++n)
    if (!(P_[n] == MultiPoly::constant(action_.universe(), n == 0 ? 1 : 0))) return false;
  return true;
}

GroupOperator::GroupOperator(const GSystem& a, const LieVector& arg, std::vector<DegreeCap> caps)
    : caps_(std::move(caps)) {
  const InfinitesimalAction& act = a.action();
  const Universe& u = act.universe();
  z_ = flow_at(act, a.flow(), arg, caps_);
  std::vector<std::pair<Var, MultiPoly>> bind;
  for (int i = 0; i < act.n(); ++i) bind.emplace_back(v_(i), arg.comps[i]);
  const int off = u.offset(Family::xi);
  const GaussianRational minus_i = -GaussianRational::i();
  std::map<Monomial, HbarSeries, GrlexLess> parts;
  for (int n = 0; n <= a.N(); ++n) {
    MultiPoly p = substitute(a.P()[n], bind, u, caps_);
    for (const auto& [m, c] : p.terms()) {
      Monomial alpha(m.begin() + off, m.begin() + off + u.d);
      const int k = total_degree(alpha);
      if (n + k > a.N()) continue;
      Monomial rest = m;
      std::fill(rest.begin() + off, rest.begin() + off + u.d, 0);
      auto it = parts.find(alpha);
      if (it == parts.end()) it = parts.emplace(alpha, HbarSeries(u, a.N())).first;
      it->second.coeff(n + k).add_term(rest, c * minus_i.pow(k));
    }
  }
  parts_.assign(parts.begin(), parts.end());
}

HbarSeries GroupOperator::operator()(const HbarSeries& psi) const {
  const Universe& u = psi.universe();
  std::vector<std::pair<Var, MultiPoly>> bind;
  for (int k = 0; k < u.d; ++k) bind.emplace_back(x_(k), z_[k]);
  HbarSeries out(u, psi.order());
  for (const auto& [alpha, coeff] : parts_) {
    HbarSeries d = psi.map([&](const MultiPoly& p) {
      MultiPoly q = p;
      for (int k = 0; k < u.d; ++k)
        if (alpha[k]) q = q.diff(x_(k), alpha[k]);
      return substitute(q, bind, u, caps_);
    });
    if (d.is_zero()) continue;
    out += multiply(coeff.with_order(psi.order()), d, caps_);
  }
  return out;
}

HbarSeries t_apply(const GSystem& a, const LieVector& arg, const HbarSeries& psi) {
  return GroupOperator(a, arg, v_caps(a))(psi);
}

HbarSeries coboundary(const GSystem& a) {
  const InfinitesimalAction& act = a.action();
  const Universe& u = act.universe();
  auto caps = v_caps(a);
  LieVector b = bch(act.algebra(), LieVector::symbolic(u, act.n(), 0), LieVector::symbolic(u, act.n(), act.n()), a.M(), caps);
  std::vector<std::pair<Var, MultiPoly>> bind;
  for (int i = 0; i < act.n(); ++i) bind.emplace_back(v_(i), b.comps[i]);
  HbarSeries out(u, a.N());
  for (int n = 0; n <= a.N(); ++n) out.coeff(n) = -substitute(a.P()[n], bind, u, caps);
  return out;
}

HbarSeries amplitude_compose(const GSystem& a, const GSystem& b) {
  const InfinitesimalAction& act = a.action();
  if (!(act.universe() == b.action().universe()) || a.N() != b.N() || a.M() != b.M())
    throw Error("amplitude_compose: G-systems differ in action or truncation");
  const Universe& u = act.universe();
  auto caps = v_caps(a);
  LieVector v = LieVector::symbolic(u, act.n(), 0), w = LieVector::symbolic(u, act.n(), act.n());
  GroupOperator Ta(a, v, caps), Tb(b, w, caps);
  ExtractOptions opt;
  opt.base_point = flow_at(act, a.flow(), bch(act.algebra(), v, w, a.M(), caps), caps);
  opt.caps = caps;
  return symbol_extract([&](const HbarSeries& psi) { return Ta(Tb(psi)); }, u, a.N(), a.N(), opt);
}

std::string McReport::location() const {
  const int k = residual.valuation();
  if (k < 0) return "0";
  return "hbar^" + std::to_string(k) + ": " + lowest_term(residual[k]);
}

// Same as coboundary(a) + amplitude_compose(a, a), extracted from T_v T_w − T_{BCH(v,w)}
// so that the triangular solve stays sparse when the equation holds.
McReport mc_residual(const GSystem& a) {
  const InfinitesimalAction& act = a.action();
  const Universe& u = act.universe();
  auto caps = v_caps(a);
  LieVector v = LieVector::symbolic(u, act.n(), 0), w = LieVector::symbolic(u, act.n(), act.n());
  LieVector b = bch(act.algebra(), v, w, a.M(), caps);
  GroupOperator Tv(a, v, caps), Tw(a, w, caps), Tb(a, b, caps);
  ExtractOptions opt;
  opt.base_point = Tb.base_point();
  opt.caps = caps;
  auto op = [&](const HbarSeries& psi) { return Tv(Tw(psi)) - Tb(psi); };
  return {symbol_extract(op, u, a.N(), a.N(), opt)};
}

SymbolOperator t_infinitesimal(const GSystem& a, int i) {
  const InfinitesimalAction& act = a.action();
  const Universe& u = act.universe();
  if (i < 0 || i >= act.n()) throw Error("basis index out of range");
  LieVector arg = LieVector::zero(u, act.n());
  arg.comps[i] = MultiPoly::variable(u, t_());
  GroupOperator T(a, arg, {{Family::v, a.M()}, {Family::t, 1}});
  auto op = [&](const HbarSeries& psi) {
    return T(psi).map([](const MultiPoly& p) { return p.diff(t_()).at_zero(Family::t); });
  };
  return SymbolOperator::extract(op, u, std::max(1, a.N()), a.N());
}

}  // namespace qmomap
