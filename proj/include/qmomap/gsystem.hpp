#pragma once

#include <string>
#include <utility>
#include <vector>

#include "qmomap/action.hpp"
#include "qmomap/symbol.hpp"

namespace qmomap {

// Formal amplitude a_{exp(v)} = Σ_n ħ^n P^n(v; x, ξ) in exponential coordinates.
class GSystem {
 public:
  GSystem() = default;
  // P[n] in the model universe, using v1..vn only.  Throws unless
  // deg_ξ P^n <= n, deg_v P^n <= M, P^0(0) = 1 and P^n(0) = 0 for n >= 1.
  GSystem(InfinitesimalAction action, int N, int M, std::vector<MultiPoly> P);
  static GSystem trivial(const InfinitesimalAction& action, int N, int M);
  // a_v = exp(ħ^k (c∘φ_{exp(-v)} − c)), a gauge transform of the trivial system.
  static GSystem gauge(const InfinitesimalAction& action, const MultiPoly& c, int N, int M, int k = 1);
  // (n, polynomial text) pairs; missing orders are zero.
  static GSystem from_strings(const InfinitesimalAction& action, int N, int M,
                              const std::vector<std::pair<int, std::string>>& P);

  const InfinitesimalAction& action() const { return action_; }
  int N() const { return N_; }
  int M() const { return M_; }
  const std::vector<MultiPoly>& P() const { return P_; }
  const FlowSeries& flow() const { return flow_; }
  HbarSeries amplitude() const;
  bool is_trivial() const;

 private:
  InfinitesimalAction action_;
  int N_ = 0, M_ = 0;
  std::vector<MultiPoly> P_;
  FlowSeries flow_;
};

// T^a at a fixed group argument: ψ ↦ Σ_n ħ^n P^n(arg; x, (ħ/i)∂)ψ |_{φ_{exp(-arg)}(x)}.
class GroupOperator {
 public:
  GroupOperator(const GSystem& a, const LieVector& arg, std::vector<DegreeCap> caps);
  HbarSeries operator()(const HbarSeries& psi) const;
  const std::vector<MultiPoly>& base_point() const { return z_; }

 private:
  std::vector<DegreeCap> caps_;
  std::vector<MultiPoly> z_;
  std::vector<std::pair<Monomial, HbarSeries>> parts_;  // ξ-exponent, ξ-free coefficient series
};

// Truncations: v (and t) degree <= M of the G-system.
HbarSeries t_apply(const GSystem& a, const LieVector& arg, const HbarSeries& psi);

// (da)_{v,w} = −a_{BCH(v,w)}; w is v_{n+1}..v_{2n}.
HbarSeries coboundary(const GSystem& a);
// Amplitude c(v, w) with T^c = T^a_v ∘ T^b_w, relative to φ at BCH(v, w).
HbarSeries amplitude_compose(const GSystem& a, const GSystem& b);

struct McReport {
  HbarSeries residual;
  bool ok() const { return residual.is_zero(); }
  // First nonzero ħ order and its lowest term, or "0".
  std::string location() const;
};
McReport mc_residual(const GSystem& a);

// d/dt T^a_{exp(t e_i)} at t = 0 as a plain operator, order N.
SymbolOperator t_infinitesimal(const GSystem& a, int i);

}  // namespace qmomap
