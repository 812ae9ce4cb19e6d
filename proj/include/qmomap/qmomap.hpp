#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "qmomap/expand.hpp"
#include "qmomap/gsystem.hpp"

namespace qmomap {

// A G-system together with its action and truncations; the quantum momentum
// map J^a is evaluated on th-monomials and cached.
class QmmModel {
 public:
  // Throws unless the Maurer-Cartan residual vanishes (when `check_mc`).
  explicit QmmModel(GSystem a, bool check_mc = true);

  const GSystem& gsystem() const { return a_; }
  const InfinitesimalAction& action() const { return a_.action(); }
  int N() const { return a_.N(); }
  int M() const { return a_.M(); }
  const Universe& universe() const { return a_.action().universe(); }

  // J^a(θ^m) in the model universe, order N.
  const HbarSeries& on_monomial(const Monomial& th_exponents, ExpandOptions options = {}) const;

 private:
  GSystem a_;
  struct Cache {
    std::mutex mu;
    std::map<std::pair<Monomial, bool>, HbarSeries> values;
  };
  std::shared_ptr<Cache> cache_ = std::make_shared<Cache>();
};

// S(v, J + δθ) − ⟨ξ, x⟩ with z = (v, δθ), insertions u(J + δθ) and a_{exp(v)}.
// u must be a polynomial in th.
PhaseModel build_phase(const QmmModel& model, const MultiPoly& u);

HbarSeries qmm_apply(const QmmModel& model, const MultiPoly& u, ExpandOptions options = {});
// Σ_k ħ^k J^a(u_k).
HbarSeries qmm_apply(const QmmModel& model, const HbarSeries& u, ExpandOptions options = {});
// J*θ_i + (ħ/i)(D_e a)e_i, with (D_e a)e_i the v_i-linear part of the whole series.
HbarSeries qmm_linear(const QmmModel& model, int i, int order);
inline HbarSeries qmm_linear(const QmmModel& model, int i) { return qmm_linear(model, i, model.N()); }

// J^a(f ⋆_G g) − J^a(f) ⋆_st J^a(g).
HbarSeries verify_morphism(const QmmModel& model, const MultiPoly& f, const MultiPoly& g);

// t̃_i f = symbol of (i/ħ)[Op(J^a θ_i), Op(f)], order N.
HbarSeries t_tilde(const QmmModel& model, int i, const HbarSeries& f);

struct SecondReport {
  SymbolOperator generator;  // t_i − Op((i/ħ) J^a θ_i)
  MultiPoly leading;         // (t̃_i f)_0 − X̃^{e_i} f
  SymbolOperator commutator; // [t_i, Op(f)] − Op(t̃_i f)
  HbarSeries tilde;          // t̃_i f
  bool ok() const { return generator.is_zero() && leading.is_zero() && commutator.is_zero(); }
};
SecondReport verify_second(const QmmModel& model, int i, const MultiPoly& f);

// t̃(f ⋆_st g) − t̃f ⋆_st g − f ⋆_st t̃g.
HbarSeries verify_equivariance(const QmmModel& model, int i, const MultiPoly& f, const MultiPoly& g);

struct InvariantReport {
  std::vector<SymbolOperator> quantum;  // [t_i, Op(J^a f)]
  std::vector<SymbolOperator> naive;    // [t_i, Op(J* f)]
  bool ok() const;
  bool anomalous() const;  // some naive commutator is nonzero
};
// Throws if f is not a Casimir, naming the first nonvanishing bracket.
InvariantReport verify_invariant_hamiltonian(const QmmModel& model, const MultiPoly& f);

}  // namespace qmomap
