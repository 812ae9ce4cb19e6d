#pragma once

#include <string>
#include <vector>

#include "qmomap/matrix.hpp"
#include "qmomap/zpoly.hpp"

namespace qmomap {

// One insertion g_j of the integrand, as a ħ-series of Taylor polynomials at the critical point.
struct ExternalInsertion {
  std::string name;
  std::vector<ZPoly> by_order;
};

struct Block {
  std::string name;
  int size;
};

// Stationary-phase data: S(c + z) = S(c) + ½ zᵀBz + interaction(z).
class PhaseModel {
 public:
  // S = Ψ(v) − ⟨δθ, v⟩ with z = (v, δθ), both blocks of size m.  Ψ must have
  // no constant or linear part and must not involve δθ.
  static PhaseModel cotangent(std::vector<Block> blocks, const ZPoly& psi, MultiPoly critical_value,
                              std::vector<ExternalInsertion> externals);
  // Phase whose Hessian is a constant matrix with |det| = 1 and signature 0.
  // `taylor` is S(c + z) − S(c), without constant or linear part.
  static PhaseModel constant_hessian(std::vector<Block> blocks, const ZPoly& taylor, MultiPoly critical_value,
                                     std::vector<ExternalInsertion> externals);

  int dim() const { return dim_; }
  const std::vector<Block>& blocks() const { return blocks_; }
  const Universe& coeff_universe() const { return u_; }
  const MultiPoly& critical_value() const { return critical_value_; }
  const ZPoly& interaction() const { return interaction_; }
  const PolyMatrix& hessian() const { return hessian_; }
  const PolyMatrix& inverse_hessian() const { return inverse_; }
  const std::vector<ExternalInsertion>& externals() const { return externals_; }
  // Certified |det B| and sign B of the Hessian.
  const GaussianRational& abs_det() const { return abs_det_; }
  int signature() const { return signature_; }
  std::string label(int z) const;

 private:
  void validate_externals() const;

  int dim_ = 0;
  std::vector<Block> blocks_;
  Universe u_;
  MultiPoly critical_value_;
  ZPoly interaction_;
  PolyMatrix hessian_, inverse_;
  std::vector<ExternalInsertion> externals_;
  GaussianRational abs_det_;
  int signature_ = 0;
};

}  // namespace qmomap
