#include "qmomap/action.hpp"

#include "qmomap/error.hpp"
#include "qmomap/parse.hpp"

namespace qmomap {
namespace {

std::vector<MultiPoly> field_bracket(const std::vector<MultiPoly>& X, const std::vector<MultiPoly>& Y) {
  std::size_t d = X.size();
  std::vector<MultiPoly> out(d, MultiPoly(X[0].universe()));
  for (std::size_t k = 0; k < d; ++k)
    for (std::size_t m = 0; m < d; ++m) {
      out[k] += X[m] * Y[k].diff(x_(static_cast<int>(m)));
      out[k] -= Y[m] * X[k].diff(x_(static_cast<int>(m)));
    }
  return out;
}

std::vector<MultiPoly> th_monomials(const Universe& u, int n, int deg) {
  std::vector<MultiPoly> out;
  Monomial m(u.size(), 0);
  auto rec = [&](auto&& self, int idx, int left) -> void {
    if (idx == n) {
      out.push_back(MultiPoly::monomial(u, m));
      return;
    }
    for (int e = 0; e <= left; ++e) {
      m[u.slot(th_(idx))] = static_cast<std::uint8_t>(e);
      self(self, idx + 1, left - e);
    }
    m[u.slot(th_(idx))] = 0;
  };
  rec(rec, 0, deg);
  return out;
}

}  // namespace

InfinitesimalAction::InfinitesimalAction(LieAlgebra g, int d, std::vector<std::vector<MultiPoly>> fields)
    : g_(std::move(g)), d_(d), u_(Universe::model(d, g_.dim())), fields_(std::move(fields)) {
  if (d <= 0) throw Error("action dimension must be positive");
  if (static_cast<int>(fields_.size()) != g_.dim())
    throw Error("expected " + std::to_string(g_.dim()) + " vector fields, got " + std::to_string(fields_.size()));
  for (auto& X : fields_) {
    if (static_cast<int>(X.size()) != d) throw Error("vector field needs " + std::to_string(d) + " components");
    for (auto& comp : X) {
      comp = comp.embed(u_);
      for (Family f : {Family::xi, Family::th, Family::v, Family::t})
        if (comp.degree(f) > 0) throw Error("vector field component depends on non-x variables: " + comp.to_string());
    }
  }
  // σ from [X_i, X_j] = σ Σ c_ij^k X_k.
  bool plus = true, minus = true;
  std::string first_failure;
  for (int i = 0; i < n(); ++i)
    for (int j = i + 1; j < n(); ++j) {
      auto br = field_bracket(fields_[i], fields_[j]);
      for (int s : {1, -1}) {
        for (int k = 0; k < d; ++k) {
          MultiPoly r = br[k];
          for (int l = 0; l < n(); ++l) r -= fields_[l][k] * (g_.c(i, j, l) * GaussianRational(s));
          if (!r.is_zero()) {
            (s == 1 ? plus : minus) = false;
            if (first_failure.empty() || s == -1)
              first_failure = "[X" + std::to_string(i + 1) + ", X" + std::to_string(j + 1) + "] component x" +
                              std::to_string(k + 1) + " residual (sign " + std::to_string(s) + "): " + r.to_string();
            break;
          }
        }
      }
    }
  if (!plus && !minus) throw Error("vector fields are not bracket compatible with the algebra: " + first_failure);
  sigma_ = minus ? -1 : 1;

  auto J = classical_momentum(*this);
  bool pplus = true, pminus = true;
  for (int i = 0; i < n(); ++i)
    for (int j = i + 1; j < n(); ++j) {
      auto br = canonical_bracket(J[i], J[j]);
      MultiPoly lin(u_);
      for (int l = 0; l < n(); ++l) lin += J[l] * g_.c(i, j, l);
      if (!(br == lin)) pplus = false;
      if (!(br == -lin)) pminus = false;
    }
  if (!pplus && !pminus) throw Error("momentum map does not close on the algebra");
  sigma_prime_ = pplus ? 1 : -1;
}

InfinitesimalAction InfinitesimalAction::from_strings(LieAlgebra g, int d,
                                                      const std::vector<std::vector<std::string>>& fields) {
  Universe u = Universe::model(d, g.dim());
  std::vector<std::vector<MultiPoly>> polys;
  for (const auto& X : fields) {
    std::vector<MultiPoly> comps;
    for (const auto& s : X) comps.push_back(parse_poly(s, u));
    polys.push_back(std::move(comps));
  }
  return InfinitesimalAction(std::move(g), d, std::move(polys));
}

InfinitesimalAction InfinitesimalAction::translations(int d) {
  std::vector<std::vector<std::string>> f(d, std::vector<std::string>(d, "0"));
  for (int i = 0; i < d; ++i) f[i][i] = "1";
  return from_strings(LieAlgebra::abelian(d), d, f);
}

InfinitesimalAction InfinitesimalAction::so3_rotations() {
  return from_strings(LieAlgebra::so3(), 3, {{"0", "-x3", "x2"}, {"x3", "0", "-x1"}, {"-x2", "x1", "0"}});
}

InfinitesimalAction InfinitesimalAction::heisenberg() {
  return from_strings(LieAlgebra::heisenberg(), 2, {{"1", "0"}, {"0", "x1"}, {"0", "-1"}});
}

InfinitesimalAction InfinitesimalAction::quadratic1d() { return from_strings(LieAlgebra::abelian(1), 1, {{"x1^2"}}); }

MultiPoly InfinitesimalAction::apply_field(int i, const MultiPoly& p) const {
  MultiPoly out(p.universe());
  for (int k = 0; k < d_; ++k) {
    auto dp = p.diff(x_(k));
    if (!dp.is_zero()) out += fields_.at(i)[k].embed(p.universe()) * dp;
  }
  return out;
}

FlowSeries flow_series(const InfinitesimalAction& a, int M, int offset) {
  if (M < 1) throw Error("flow truncation degree must be at least 1");
  const Universe& u = a.universe();
  if (offset + a.n() > u.n_v) throw Error("flow argument outside the v family");
  FlowSeries flow{M, {}};
  for (int j = 0; j < a.d(); ++j) {
    // Σ_k (1/k!) D^k x_j with D = -Σ_i v_i X_i.
    MultiPoly term = MultiPoly::variable(u, x_(j)), sum = term;
    for (int k = 1; k <= M; ++k) {
      MultiPoly next(u);
      for (int i = 0; i < a.n(); ++i) next -= MultiPoly::variable(u, v_(offset + i)) * a.apply_field(i, term);
      term = next * GaussianRational(mpq_class(1, k));
      if (term.is_zero()) break;
      sum += term;
    }
    flow.comps.push_back(std::move(sum));
  }
  return flow;
}

std::vector<MultiPoly> flow_at(const InfinitesimalAction& a, const FlowSeries& flow, const LieVector& arg,
                               std::span<const DegreeCap> caps) {
  if (arg.dim() != a.n()) throw Error("flow argument has wrong dimension");
  std::vector<std::pair<Var, MultiPoly>> bind;
  for (int i = 0; i < a.n(); ++i) bind.emplace_back(v_(i), arg.comps[i]);
  std::vector<MultiPoly> out;
  for (const auto& c : flow.comps) out.push_back(substitute(c, bind, a.universe(), caps));
  return out;
}

std::vector<MultiPoly> classical_momentum(const InfinitesimalAction& a) {
  const Universe& u = a.universe();
  std::vector<MultiPoly> J;
  for (int i = 0; i < a.n(); ++i) {
    MultiPoly Ji(u);
    for (int k = 0; k < a.d(); ++k) Ji -= MultiPoly::variable(u, xi_(k)) * a.field(i)[k];
    J.push_back(std::move(Ji));
  }
  return J;
}

MultiPoly comomentum_pullback(const InfinitesimalAction& a, const MultiPoly& f) {
  auto J = classical_momentum(a);
  std::vector<std::pair<Var, MultiPoly>> bind;
  for (int i = 0; i < a.n(); ++i) bind.emplace_back(th_(i), J[i]);
  return substitute(f.embed(a.universe()), bind, a.universe());
}

MultiPoly canonical_bracket(const MultiPoly& f, const MultiPoly& g) {
  const Universe& u = f.universe();
  MultiPoly out(u);
  for (int k = 0; k < u.d; ++k) {
    out += f.diff(xi_(k)) * g.diff(x_(k));
    out -= f.diff(x_(k)) * g.diff(xi_(k));
  }
  return out;
}

MultiPoly PhaseVectorField::apply(const MultiPoly& h) const {
  int d = static_cast<int>(comps.size()) / 2;
  MultiPoly out(h.universe());
  for (int k = 0; k < d; ++k) {
    out += comps[k] * h.diff(x_(k));
    out += comps[d + k] * h.diff(xi_(k));
  }
  return out;
}

int cotangent_calibration_sign(const InfinitesimalAction& a) {
  // {J_i, x_k} = -X_i^k while the natural lift has x-block +X_i^k.
  auto J = classical_momentum(a);
  const Universe& u = a.universe();
  for (int i = 0; i < a.n(); ++i)
    for (int k = 0; k < a.d(); ++k) {
      const auto& X = a.field(i)[k];
      if (X.is_zero()) continue;
      auto b = canonical_bracket(J[i], MultiPoly::variable(u, x_(k)));
      if (b == X) return 1;
      if (b == -X) return -1;
      throw Error("cotangent lift calibration failed");
    }
  return 1;
}

PhaseVectorField cotangent_lift_field(const InfinitesimalAction& a, int i) {
  const Universe& u = a.universe();
  int s = cotangent_calibration_sign(a);
  PhaseVectorField out;
  for (int k = 0; k < a.d(); ++k) out.comps.push_back(a.field(i)[k] * GaussianRational(s));
  for (int k = 0; k < a.d(); ++k) {
    MultiPoly c(u);
    for (int m = 0; m < a.d(); ++m) c -= a.field(i)[m].diff(x_(k)) * MultiPoly::variable(u, xi_(m));
    out.comps.push_back(c * GaussianRational(s));
  }
  return out;
}

bool ClassicalReport::ok() const {
  for (const auto& r : morphism)
    if (!r.value.is_zero()) return false;
  for (const auto& r : casimir)
    if (!r.value.is_zero()) return false;
  return true;
}

ClassicalReport classical_checks(const InfinitesimalAction& a, int deg, const std::vector<MultiPoly>& casimirs) {
  ClassicalReport report;
  const Universe& u = a.universe();
  auto monos = th_monomials(u, a.n(), deg);
  for (std::size_t p = 0; p < monos.size(); ++p)
    for (std::size_t q = p + 1; q < monos.size(); ++q) {
      auto lhs = canonical_bracket(comomentum_pullback(a, monos[p]), comomentum_pullback(a, monos[q]));
      auto rhs = comomentum_pullback(a, kk_poisson(a.algebra(), monos[p], monos[q])) * GaussianRational(a.poisson_sign());
      report.morphism.push_back({monos[p].to_string() + " , " + monos[q].to_string(), lhs - rhs});
    }
  for (const auto& f : casimirs) {
    auto check = is_casimir(a.algebra(), f.embed(u));
    if (!check.casimir) throw Error("not a Casimir: " + f.to_string());
    auto Jf = comomentum_pullback(a, f);
    for (int i = 0; i < a.n(); ++i)
      report.casimir.push_back({"X" + std::to_string(i + 1) + "(J*(" + f.to_string() + "))",
                                cotangent_lift_field(a, i).apply(Jf)});
  }
  return report;
}

}  // namespace qmomap
