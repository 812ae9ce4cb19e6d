#include "qmomap/symbol.hpp"

#include <algorithm>

#include "qmomap/error.hpp"

namespace qmomap {

namespace {

using XiGroups = std::map<Monomial, HbarSeries, GrlexLess>;

int sum(const Monomial& m) { return total_degree(m); }

GaussianRational multi_factorial(const Monomial& a) {
  mpz_class f = 1;
  for (auto e : a) f *= factorial(e);
  return GaussianRational(mpq_class(f));
}

// f = Σ_α f_α ξ^α with ξ-free f_α.
XiGroups split_xi(const HbarSeries& f) {
  const Universe& u = f.universe();
  const int off = u.offset(Family::xi);
  XiGroups out;
  for (int n = 0; n <= f.order(); ++n) {
    for (const auto& [m, c] : f[n].terms()) {
      Monomial alpha(m.begin() + off, m.begin() + off + u.d);
      Monomial rest = m;
      std::fill(rest.begin() + off, rest.begin() + off + u.d, 0);
      auto it = out.find(alpha);
      if (it == out.end()) it = out.emplace(alpha, HbarSeries(u, f.order())).first;
      it->second.coeff(n).add_term(rest, c);
    }
  }
  return out;
}

MultiPoly xi_power(const Universe& u, const Monomial& alpha) {
  Monomial m(u.size(), 0);
  for (int k = 0; k < u.d; ++k) m[u.slot(xi_(k))] = alpha[k];
  return MultiPoly::monomial(u, m);
}

MultiPoly x_power(const Universe& u, const Monomial& beta) {
  Monomial m(u.size(), 0);
  for (int k = 0; k < u.d; ++k) m[u.slot(x_(k))] = beta[k];
  return MultiPoly::monomial(u, m);
}

HbarSeries x_derivative(const HbarSeries& s, const Monomial& alpha) {
  return s.map([&](const MultiPoly& p) {
    MultiPoly q = p;
    for (int k = 0; k < static_cast<int>(alpha.size()); ++k)
      if (alpha[k]) q = q.diff(x_(k), alpha[k]);
    return q;
  });
}

MultiPoly xi_derivative(const MultiPoly& p, const Monomial& alpha) {
  MultiPoly q = p;
  for (int k = 0; k < static_cast<int>(alpha.size()); ++k)
    if (alpha[k]) q = q.diff(xi_(k), alpha[k]);
  return q;
}

void check_xi_free(const HbarSeries& psi, const char* what) {
  for (const auto& c : psi.coeffs())
    if (c.degree(Family::xi) > 0) throw Error(std::string(what) + ": wave function depends on xi");
}

// All multi-indices of length d and total degree <= D, graded.
std::vector<Monomial> indices_upto(int d, int D) {
  std::vector<Monomial> out;
  Monomial cur(d, 0);
  auto rec = [&](auto&& self, int k, int left) -> void {
    if (k == d) {
      out.push_back(cur);
      return;
    }
    for (int e = 0; e <= left; ++e) {
      cur[k] = static_cast<std::uint8_t>(e);
      self(self, k + 1, left - e);
    }
    cur[k] = 0;
  };
  rec(rec, 0, D);
  std::sort(out.begin(), out.end(), GrlexLess{});
  return out;
}

bool dominated(const Monomial& g, const Monomial& b) {
  for (std::size_t k = 0; k < g.size(); ++k)
    if (g[k] > b[k]) return false;
  return true;
}

// op(ψ) = Σ_γ K_γ (∂^γ ψ)(z) as plain-derivative coefficients.
XiGroups extract_plain(const WaveOperator& op, const Universe& u, int D, int order, const ExtractOptions& opt) {
  if (D < 0 || order < 0) throw Error("extraction: negative degree or order");
  std::vector<MultiPoly> z;
  if (opt.base_point) {
    z = *opt.base_point;
    if (static_cast<int>(z.size()) != u.d) throw Error("extraction: base point has wrong dimension");
    for (const auto& c : z)
      if (!(c.universe() == u)) throw Error("extraction: base point in a different universe");
  } else {
    for (int k = 0; k < u.d; ++k) z.push_back(MultiPoly::variable(u, x_(k)));
  }
  std::vector<std::vector<MultiPoly>> zpow(u.d);
  for (int k = 0; k < u.d; ++k) {
    zpow[k].push_back(MultiPoly::constant(u, 1));
    for (int e = 1; e <= D + 1; ++e) zpow[k].push_back(multiply(zpow[k].back(), z[k], opt.caps));
  }
  auto zmono = [&](const Monomial& e) {
    MultiPoly p = MultiPoly::constant(u, 1);
    for (int k = 0; k < u.d; ++k)
      if (e[k]) p = multiply(p, zpow[k][e[k]], opt.caps);
    return p;
  };

  XiGroups K;
  for (const auto& beta : indices_upto(u.d, D + 1)) {
    HbarSeries psi = HbarSeries::from_poly(x_power(u, beta), order);
    HbarSeries r = op(psi);
    if (!(r.universe() == u)) throw Error("extraction: operator changed the universe");
    if (r.order() < order) throw Error("extraction: operator lost ħ-order");
    r = r.with_order(order);
    HbarSeries expected(u, order);
    for (const auto& [gamma, k] : K) {
      if (!dominated(gamma, beta)) continue;
      Monomial rest(u.d);
      GaussianRational f = 1;
      for (int j = 0; j < u.d; ++j) {
        rest[j] = beta[j] - gamma[j];
        f *= GaussianRational(mpq_class(mpz_class(factorial(beta[j]) / factorial(rest[j]))));
      }
      expected += k.times_poly(zmono(rest), opt.caps) * f;
    }
    if (sum(beta) <= D) {
      HbarSeries kb = (r - expected) * multi_factorial(beta).pow(-1);
      if (!kb.is_zero()) K.emplace(beta, std::move(kb));
    } else if (!(r == expected)) {
      HbarSeries diff = r - expected;
      int n = diff.valuation();
      throw Error("extraction: operator is not of order <= " + std::to_string(D) + " (mismatch on x^" +
                  x_power(u, beta).to_string() + " at hbar^" + std::to_string(n) + ": " + diff[n].to_string() + ")");
    }
  }
  return K;
}

}  // namespace

HbarSeries ordered_product(const HbarSeries& f, const HbarSeries& g, const GaussianRational& scale, int hbar) {
  if (!(f.universe() == g.universe())) throw Error("product: universes differ");
  if (f.order() != g.order()) throw Error("product: orders differ");
  const Universe& u = f.universe();
  const int N = f.order();
  std::vector<int> cap(u.d, 0);
  for (const auto& c : f.coeffs())
    for (int k = 0; k < u.d; ++k) cap[k] = std::max(cap[k], c.degree(xi_(k)));
  int total = 0;
  for (int c : cap) total += c;
  if (hbar > 0) total = std::min(total, N / hbar);
  HbarSeries out(u, N);
  for (const auto& gamma : indices_upto(u.d, total)) {
    bool ok = true;
    for (int k = 0; k < u.d; ++k) ok = ok && gamma[k] <= cap[k];
    if (!ok) continue;
    const int k = sum(gamma);
    HbarSeries a = f.map([&](const MultiPoly& p) { return xi_derivative(p, gamma); });
    HbarSeries b = x_derivative(g, gamma);
    if (a.is_zero() || b.is_zero()) continue;
    HbarSeries term = a * b;
    term *= scale.pow(k) * multi_factorial(gamma).pow(-1);
    out += term.shift_up(hbar * k);
  }
  return out;
}

HbarSeries op_apply(const HbarSeries& f, const HbarSeries& psi) {
  if (!(f.universe() == psi.universe())) throw Error("op_apply: universes differ");
  if (f.order() != psi.order()) throw Error("op_apply: orders differ");
  check_xi_free(psi, "op_apply");
  HbarSeries out(f.universe(), f.order());
  const GaussianRational minus_i = -GaussianRational::i();
  for (const auto& [alpha, c] : split_xi(f)) {
    const int k = sum(alpha);
    if (k > f.order()) continue;
    HbarSeries d = x_derivative(psi, alpha);
    if (d.is_zero()) continue;
    out += ((c * d) * minus_i.pow(k)).shift_up(k);
  }
  return out;
}

HbarSeries symbol_extract(const WaveOperator& op, const Universe& u, int D, int N, const ExtractOptions& options) {
  XiGroups K = extract_plain(op, u, D, N + D, options);
  HbarSeries out(u, N);
  for (const auto& [gamma, k] : K) {
    const int g = sum(gamma);
    HbarSeries c;
    try {
      c = k.shift_down(g);
    } catch (const Error&) {
      throw Error("extraction: coefficient of a derivative of order " + std::to_string(g) +
                  " is not divisible by hbar^" + std::to_string(g));
    }
    c *= GaussianRational::i().pow(g);
    out += c.with_order(N).times_poly(xi_power(u, gamma));
  }
  return out;
}

HbarSeries star_standard(const HbarSeries& f, const HbarSeries& g) {
  return ordered_product(f, g, -GaussianRational::i(), 1);
}

HbarSeries star_standard_oracle(const HbarSeries& f, const HbarSeries& g) {
  if (!(f.universe() == g.universe())) throw Error("star: universes differ");
  int D = 0;
  for (const auto& c : f.coeffs()) D = std::max(D, c.degree(Family::xi));
  int Dg = 0;
  for (const auto& c : g.coeffs()) Dg = std::max(Dg, c.degree(Family::xi));
  auto op = [&](const HbarSeries& psi) {
    return op_apply(f.with_order(psi.order()), op_apply(g.with_order(psi.order()), psi));
  };
  return symbol_extract(op, f.universe(), std::max(0, D) + std::max(0, Dg), std::min(f.order(), g.order()));
}

SymbolOperator SymbolOperator::quantize(const HbarSeries& f) {
  const Universe& u = f.universe();
  const int off = u.offset(Family::xi);
  HbarSeries out(u, f.order());
  const GaussianRational minus_i = -GaussianRational::i();
  for (int n = 0; n <= f.order(); ++n)
    for (const auto& [m, c] : f[n].terms()) {
      int k = 0;
      for (int j = 0; j < u.d; ++j) k += m[off + j];
      if (n + k <= f.order()) out.coeff(n + k).add_term(m, c * minus_i.pow(k));
    }
  return SymbolOperator(std::move(out));
}

SymbolOperator SymbolOperator::quantize_scaled(const HbarSeries& f) {
  if (f.order() < 1) throw Error("quantize_scaled: needs order >= 1");
  const Universe& u = f.universe();
  const int off = u.offset(Family::xi);
  HbarSeries out(u, f.order() - 1);
  const GaussianRational minus_i = -GaussianRational::i();
  for (int n = 0; n <= f.order(); ++n)
    for (const auto& [m, c] : f[n].terms()) {
      int k = 0;
      for (int j = 0; j < u.d; ++j) k += m[off + j];
      if (n + k == 0) throw Error("quantize_scaled: symbol has a nonzero hbar^0 xi^0 part");
      if (n + k - 1 <= out.order()) out.coeff(n + k - 1).add_term(m, c * minus_i.pow(k) * GaussianRational::i());
    }
  return SymbolOperator(std::move(out));
}

SymbolOperator SymbolOperator::extract(const WaveOperator& op, const Universe& u, int D, int order) {
  HbarSeries out(u, order);
  for (const auto& [gamma, k] : extract_plain(op, u, D, order, {})) out += k.times_poly(xi_power(u, gamma));
  return SymbolOperator(std::move(out));
}

int SymbolOperator::max_xi_degree() const {
  int d = -1;
  for (const auto& c : c_.coeffs()) d = std::max(d, c.degree(Family::xi));
  return d;
}

HbarSeries SymbolOperator::apply(const HbarSeries& psi) const {
  if (!(psi.universe() == c_.universe())) throw Error("operator apply: universes differ");
  if (psi.order() != order()) throw Error("operator apply: orders differ");
  check_xi_free(psi, "operator apply");
  HbarSeries out(psi.universe(), order());
  for (const auto& [alpha, c] : split_xi(c_)) out += c * x_derivative(psi, alpha);
  return out;
}

HbarSeries SymbolOperator::symbol(int out_order) const {
  if (order() < out_order + derivative_order())
    throw Error("operator symbol: order " + std::to_string(order()) + " too low for symbol order " +
                std::to_string(out_order));
  const Universe& u = c_.universe();
  const int off = u.offset(Family::xi);
  HbarSeries out(u, out_order);
  const GaussianRational im = GaussianRational::i();
  for (int m = 0; m <= order(); ++m)
    for (const auto& [mono, c] : c_[m].terms()) {
      int k = 0;
      for (int j = 0; j < u.d; ++j) k += mono[off + j];
      if (m < k) throw Error("operator symbol: derivative of order " + std::to_string(k) + " at hbar^" +
                             std::to_string(m) + " has no symbol");
      if (m - k <= out_order) out.coeff(m - k).add_term(mono, c * im.pow(k));
    }
  return out;
}

SymbolOperator compose(const SymbolOperator& a, const SymbolOperator& b) {
  return SymbolOperator(ordered_product(a.c_, b.c_, GaussianRational(1), 0));
}

SymbolOperator commutator(const SymbolOperator& a, const SymbolOperator& b) {
  return compose(a, b) - compose(b, a);
}

}  // namespace qmomap
