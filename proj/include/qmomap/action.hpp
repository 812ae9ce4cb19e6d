#pragma once

#include <string>
#include <vector>

#include "qmomap/lie.hpp"
#include "qmomap/multipoly.hpp"

namespace qmomap {

// Polynomial vector fields X^{e_i} on R^d.  All polynomials of the action
// live in Universe::model(d, n).
class InfinitesimalAction {
 public:
  InfinitesimalAction() = default;
  // fields[i][k] is the x_k component of X^{e_i}; throws unless
  // [X_i, X_j] = σ Σ_k c_ij^k X_k for one σ in {+1, -1}.
  InfinitesimalAction(LieAlgebra g, int d, std::vector<std::vector<MultiPoly>> fields);
  static InfinitesimalAction from_strings(LieAlgebra g, int d, const std::vector<std::vector<std::string>>& fields);

  static InfinitesimalAction translations(int d);
  static InfinitesimalAction so3_rotations();
  static InfinitesimalAction heisenberg();
  static InfinitesimalAction quadratic1d();

  const LieAlgebra& algebra() const { return g_; }
  int d() const { return d_; }
  int n() const { return g_.dim(); }
  const Universe& universe() const { return u_; }
  // Sign with [X_i, X_j] = σ Σ c_ij^k X_k (-1 for a left action; -1 if abelian).
  int sigma() const { return sigma_; }
  // Sign with {J_i, J_j} = σ' Σ c_ij^k J_k.
  int poisson_sign() const { return sigma_prime_; }
  const std::vector<MultiPoly>& field(int i) const { return fields_.at(i); }

  // X^{e_i} acting as a derivation on polynomials.
  MultiPoly apply_field(int i, const MultiPoly& p) const;

 private:
  LieAlgebra g_;
  int d_ = 0;
  Universe u_;
  std::vector<std::vector<MultiPoly>> fields_;
  int sigma_ = -1;
  int sigma_prime_ = 1;
};

// Components of φ_{exp(-v)}(x), Lie series truncated at v-degree M.  The
// group argument is v_{offset+1}..v_{offset+n}.
struct FlowSeries {
  int M;
  std::vector<MultiPoly> comps;
};
FlowSeries flow_series(const InfinitesimalAction& a, int M, int offset = 0);

// φ_{exp(-arg)}(x) for an arbitrary polynomial argument.
std::vector<MultiPoly> flow_at(const InfinitesimalAction& a, const FlowSeries& flow, const LieVector& arg,
                               std::span<const DegreeCap> caps);

std::vector<MultiPoly> classical_momentum(const InfinitesimalAction& a);
MultiPoly comomentum_pullback(const InfinitesimalAction& a, const MultiPoly& f);

// {f, g} = Σ_k ∂_ξk f ∂_xk g − ∂_xk f ∂_ξk g on T*R^d.
MultiPoly canonical_bracket(const MultiPoly& f, const MultiPoly& g);

struct PhaseVectorField {
  std::vector<MultiPoly> comps;  // x block then ξ block
  MultiPoly apply(const MultiPoly& h) const;
};

// Cotangent lift (X, -(DX)^T ξ), scaled by the calibration sign that makes it
// equal to {J_i, ·}.
PhaseVectorField cotangent_lift_field(const InfinitesimalAction& a, int i);
int cotangent_calibration_sign(const InfinitesimalAction& a);

struct Residual {
  std::string label;
  MultiPoly value;
};

struct ClassicalReport {
  std::vector<Residual> morphism;  // {J*f, J*g} - σ' J*{f, g}
  std::vector<Residual> casimir;   // X̃^{e_i}(J*f)
  bool ok() const;
};

// Morphism identity over th-monomials of degree <= deg; invariance for each Casimir.
ClassicalReport classical_checks(const InfinitesimalAction& a, int deg, const std::vector<MultiPoly>& casimirs);

}  // namespace qmomap
