#include "qmomap/expand.hpp"

#include <algorithm>
#include <map>

#include "qmomap/error.hpp"

namespace qmomap {
namespace {

// Depth-first sum over edge-extremity labels with early zero pruning.
class Contraction {
 public:
  Contraction(const FeynmanGraph& g, const PhaseModel& model, std::span<const int> orders)
      : g_(g), model_(model), D_(model.dim()) {
    int nv = g.vertex_count();
    vertices_.resize(nv);
    auto val = g.valences();
    for (int v = 0; v < nv; ++v) {
      auto& vx = vertices_[v];
      if (v < g.n_ext) {
        const auto& ext = model.externals().at(v).by_order;
        int l = orders[v];
        vx.poly = l < static_cast<int>(ext.size()) ? &ext[l] : nullptr;
      } else {
        vx.poly = &model.interaction();
      }
      vx.remaining = val[v];
      vx.labels.assign(D_, 0);
      if (vx.poly) vx.support = vx.poly->support();
      else vx.support.assign(D_, false);
    }
    const auto& Binv = model.inverse_hessian();
    props_.resize(D_);
    for (int a = 0; a < D_; ++a)
      for (int b = 0; b < D_; ++b)
        if (!Binv[a][b].is_zero()) props_[a].emplace_back(b, &Binv[a][b]);
  }

  MultiPoly run() {
    MultiPoly zero(model_.coeff_universe());
    GaussianRational scalar = 1;
    std::vector<int> ids;
    for (auto& vx : vertices_) {
      if (!vx.poly) return zero;
      if (vx.remaining == 0 && !close(vx, scalar, ids)) return zero;
    }
    dfs(0, scalar, ids);
    MultiPoly out(model_.coeff_universe());
    for (const auto& [key, c] : acc_) {
      if (c.is_zero()) continue;
      MultiPoly term = MultiPoly::constant(model_.coeff_universe(), c);
      for (int id : key) term = term * *factors_[id];
      out += term;
    }
    return out;
  }

 private:
  struct Vertex {
    const ZPoly* poly = nullptr;
    std::vector<bool> support;
    Monomial labels;
    int remaining = 0;
  };

  int factor_id(const MultiPoly* p) {
    auto [it, inserted] = ids_.try_emplace(p, static_cast<int>(factors_.size()));
    if (inserted) factors_.push_back(p);
    return it->second;
  }

  // Multiply in a fully labelled vertex tensor α!·coeff_α; false if it vanishes.
  bool close(const Vertex& vx, GaussianRational& scalar, std::vector<int>& ids) {
    const MultiPoly* c = vx.poly->find(vx.labels);
    if (!c) return false;
    mpz_class f = 1;
    for (auto e : vx.labels) f *= factorial(e);
    scalar *= GaussianRational(mpq_class(f));
    if (c->is_constant()) scalar *= c->constant_term();
    else ids.push_back(factor_id(c));
    return true;
  }

  void dfs(std::size_t e, const GaussianRational& scalar, std::vector<int>& ids) {
    if (e == g_.edges.size()) {
      std::vector<int> key = ids;
      std::sort(key.begin(), key.end());
      acc_[key] += scalar;
      return;
    }
    auto [p, q] = g_.edges[e];
    Vertex &vp = vertices_[p], &vq = vertices_[q];
    for (int a = 0; a < D_; ++a) {
      if (!vp.support[a]) continue;
      for (const auto& [b, prop] : props_[a]) {
        if (!vq.support[b]) continue;
        GaussianRational s = scalar;
        std::size_t mark = ids.size();
        if (prop->is_constant()) s *= prop->constant_term();
        else ids.push_back(factor_id(prop));
        ++vp.labels[a];
        --vp.remaining;
        ++vq.labels[b];
        --vq.remaining;
        bool ok = true;
        if (vp.remaining == 0) ok = close(vp, s, ids);
        if (ok && q != p && vq.remaining == 0) ok = close(vq, s, ids);
        if (ok) dfs(e + 1, s, ids);
        ids.resize(mark);
        ++vp.remaining;
        --vp.labels[a];
        ++vq.remaining;
        --vq.labels[b];
      }
    }
  }

  const FeynmanGraph& g_;
  const PhaseModel& model_;
  int D_;
  std::vector<Vertex> vertices_;
  std::vector<std::vector<std::pair<int, const MultiPoly*>>> props_;
  std::map<const MultiPoly*, int> ids_;
  std::vector<const MultiPoly*> factors_;
  std::map<std::vector<int>, GaussianRational> acc_;
};

void check_prefactor(const PhaseModel& model) {
  if (!model.abs_det().is_one() || model.signature() != 0)
    throw Error("Gaussian prefactor assertion failed for this phase");
}

}  // namespace

MultiPoly amplitude(const FeynmanGraph& g, const PhaseModel& model, std::span<const int> orders) {
  if (g.n_ext != static_cast<int>(model.externals().size())) throw Error("graph and model disagree on externals");
  if (static_cast<int>(orders.size()) != g.n_ext) throw Error("need one ħ order per external vertex");
  return Contraction(g, model, orders).run();
}

GraphFilter graph_filter(const PhaseModel& model) {
  int n = static_cast<int>(model.externals().size());
  std::vector<std::vector<bool>> support(n + 1, std::vector<bool>(model.dim(), false));
  GraphFilter f;
  f.max_valence.assign(n + 1, 0);
  for (int j = 0; j < n; ++j)
    for (const auto& z : model.externals()[j].by_order) {
      auto s = z.support();
      for (int k = 0; k < model.dim(); ++k)
        if (s[k]) support[j][k] = true;
      f.max_valence[j] = std::max(f.max_valence[j], std::max(z.degree(), 0));
    }
  support[n] = model.interaction().support();
  f.max_valence[n] = std::max(model.interaction().degree(), 0);
  const auto& Binv = model.inverse_hessian();
  f.edge_allowed.assign(n + 1, std::vector<bool>(n + 1, false));
  for (int p = 0; p <= n; ++p)
    for (int q = 0; q <= n; ++q)
      for (int a = 0; a < model.dim(); ++a)
        for (int b = 0; b < model.dim(); ++b)
          if (support[p][a] && support[q][b] && !Binv[a][b].is_zero()) f.edge_allowed[p][q] = true;
  return f;
}

HbarSeries expand(const PhaseModel& model, int N, ExpandOptions options) {
  check_prefactor(model);
  if (N < 0) throw Error("negative truncation order");
  int n = static_cast<int>(model.externals().size());
  GraphFilter filter;
  if (options.prune) filter = graph_filter(model);
  auto graphs = enumerate_graphs(n, N, options.prune ? &filter : nullptr);

  HbarSeries out(model.coeff_universe(), N);
  std::vector<int> orders(n, 0);
  for (const auto& g : graphs) {
    int p = g.power(), V = static_cast<int>(g.internal_valences.size());
    // i^p (-1)^V / |Aut|
    GaussianRational weight = GaussianRational::i().pow(p) * GaussianRational(V % 2 == 0 ? 1 : -1) /
                              GaussianRational(static_cast<long>(g.aut));
    auto rec = [&](auto&& self, int j, int hbar) -> void {
      if (j == n) {
        MultiPoly F = amplitude(g, model, orders);
        if (!F.is_zero()) out.coeff(hbar) += F * weight;
        return;
      }
      int L = static_cast<int>(model.externals()[j].by_order.size()) - 1;
      for (int l = 0; l <= L && hbar + l <= N; ++l) {
        orders[j] = l;
        self(self, j + 1, hbar + l);
      }
      orders[j] = 0;
    };
    rec(rec, 0, p);
  }
  return out;
}

HbarSeries wick_expand(const PhaseModel& model, int N) {
  check_prefactor(model);
  if (N < 0) throw Error("negative truncation order");
  int D = model.dim();
  const Universe& u = model.coeff_universe();
  const auto& Binv = model.inverse_hessian();

  // Pairing sums: M(α) = Σ_b B⁻¹[a][b] (α_b − δ_ab) M(α − e_a − e_b).
  std::map<Monomial, MultiPoly> memo;
  auto moment = [&](auto&& self, const Monomial& alpha) -> MultiPoly {
    int deg = total_degree(alpha);
    if (deg == 0) return MultiPoly::constant(u, 1);
    if (deg % 2 == 1) return MultiPoly(u);
    auto it = memo.find(alpha);
    if (it != memo.end()) return it->second;
    int a = 0;
    while (alpha[a] == 0) ++a;
    MultiPoly sum(u);
    for (int b = 0; b < D; ++b) {
      int mult = alpha[b] - (a == b ? 1 : 0);
      if (mult <= 0 || Binv[a][b].is_zero()) continue;
      Monomial rest = alpha;
      --rest[a];
      --rest[b];
      sum += Binv[a][b] * self(self, rest) * GaussianRational(mult);
    }
    memo.emplace(alpha, sum);
    return sum;
  };

  int n = static_cast<int>(model.externals().size());
  HbarSeries out(u, N);
  const ZPoly& S3 = model.interaction();
  // Each interaction factor has degree >= 3, so ħ^{m/2 - k} >= ħ^{k/2}: k <= 2N.
  int kmax = S3.is_zero() ? 0 : 2 * N;
  ZPoly unit(D, u);
  unit.add_term(Monomial(D, 0), MultiPoly::constant(u, 1));
  ZPoly power = unit;
  GaussianRational kfact = 1;
  for (int k = 0; k <= kmax; ++k) {
    if (k > 0) {
      power = multiply(power, S3, 2 * (N + k));
      kfact *= GaussianRational(k);
    }
    if (power.is_zero()) break;
    // Insertions with their ħ orders.
    std::vector<int> orders(n, 0);
    auto rec = [&](auto&& self, int j, int hbar, const ZPoly& prod) -> void {
      if (prod.is_zero()) return;
      if (j == n) {
        for (const auto& [alpha, c] : prod.terms()) {
          int m = total_degree(alpha);
          if (m % 2 == 1) continue;
          int h = m / 2 - k + hbar;
          if (h < 0 || h > N) continue;
          MultiPoly mo = moment(moment, alpha);
          if (mo.is_zero()) continue;
          // (i/ħ)^k / k! from the interaction, (iħ)^{m/2} per pairing.
          GaussianRational w = GaussianRational::i().pow(k + m / 2) / kfact;
          out.coeff(h) += c * mo * w;
        }
        return;
      }
      const auto& ext = model.externals()[j].by_order;
      for (int l = 0; l < static_cast<int>(ext.size()) && hbar + l <= N + k; ++l)
        self(self, j + 1, hbar + l, multiply(prod, ext[l], 2 * (N + k - hbar - l)));
    };
    rec(rec, 0, 0, power);
  }
  return out;
}

}  // namespace qmomap
