#include "qmomap/phase.hpp"

#include "qmomap/error.hpp"

namespace qmomap {
namespace {

PolyMatrix hessian_at_zero(const ZPoly& s) {
  int D = s.dim();
  const Universe& u = s.coeff_universe();
  PolyMatrix h(D, std::vector<MultiPoly>(D, MultiPoly(u)));
  for (const auto& [z, c] : s.terms()) {
    if (total_degree(z) != 2) continue;
    std::vector<int> idx;
    for (int k = 0; k < D; ++k)
      for (int e = 0; e < z[k]; ++e) idx.push_back(k);
    if (idx[0] == idx[1]) {
      h[idx[0]][idx[0]] += c * GaussianRational(2);
    } else {
      h[idx[0]][idx[1]] += c;
      h[idx[1]][idx[0]] += c;
    }
  }
  return h;
}

bool is_identity(const PolyMatrix& m) {
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m.size(); ++j) {
      const auto& e = m[i][j];
      if (i == j ? !(e.is_constant() && e.constant_term().is_one()) : !e.is_zero()) return false;
    }
  return true;
}

GaussianRational magnitude(const GaussianRational& x) {
  if (!x.is_real()) throw Error("complex determinant");
  return sgn(x.re()) < 0 ? -x : x;
}

}  // namespace

std::string PhaseModel::label(int z) const {
  for (const auto& b : blocks_) {
    if (z < b.size) return b.name + std::to_string(z + 1);
    z -= b.size;
  }
  return "z?";
}

void PhaseModel::validate_externals() const {
  for (const auto& e : externals_) {
    if (e.by_order.empty()) throw Error("external insertion '" + e.name + "' has no terms");
    for (const auto& z : e.by_order)
      if (z.dim() != dim_ || !(z.coeff_universe() == u_)) throw Error("external insertion '" + e.name + "' does not match the phase");
  }
}

PhaseModel PhaseModel::cotangent(std::vector<Block> blocks, const ZPoly& psi, MultiPoly critical_value,
                                 std::vector<ExternalInsertion> externals) {
  PhaseModel pm;
  pm.dim_ = psi.dim();
  if (pm.dim_ % 2 != 0) throw Error("cotangent phase needs an even number of variables");
  int m = pm.dim_ / 2;
  pm.blocks_ = std::move(blocks);
  pm.u_ = psi.coeff_universe();
  pm.critical_value_ = std::move(critical_value);
  pm.externals_ = std::move(externals);
  for (const auto& [z, c] : psi.terms()) {
    if (total_degree(z) < 2) throw Error("phase has a constant or linear part: not a critical point");
    for (int k = m; k < 2 * m; ++k)
      if (z[k] > 0) throw Error("cotangent phase potential depends on the dual block");
  }
  pm.validate_externals();
  pm.interaction_ = psi.degree_range(3, 1 << 20);

  const Universe& u = pm.u_;
  PolyMatrix H = hessian_at_zero(psi);
  auto& B = pm.hessian_;
  auto& Binv = pm.inverse_;
  B.assign(2 * m, std::vector<MultiPoly>(2 * m, MultiPoly(u)));
  Binv = B;
  auto minus_one = MultiPoly::constant(u, -1);
  for (int a = 0; a < m; ++a) {
    B[a][m + a] = B[m + a][a] = minus_one;
    Binv[a][m + a] = Binv[m + a][a] = minus_one;
    for (int b = 0; b < m; ++b) {
      B[a][b] = H[a][b];
      Binv[m + a][m + b] = -H[a][b];
    }
  }
  if (!is_identity(multiply(B, Binv))) throw Error("inverse Hessian check failed");

  // P = [[I, 0], [H/2, I]] has det 1 and PᵀBP = [[0, -I], [-I, 0]].
  PolyMatrix P(2 * m, std::vector<MultiPoly>(2 * m, MultiPoly(u)));
  for (int a = 0; a < 2 * m; ++a) P[a][a] = MultiPoly::constant(u, 1);
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) P[m + a][b] = H[a][b] * GaussianRational(mpq_class(1, 2));
  PolyMatrix K = multiply(transpose(P), multiply(B, P));
  if (!is_constant(K)) throw Error("congruence certificate failed: reduced Hessian is not constant");
  ScalarMatrix k = constant_part(K);
  pm.abs_det_ = magnitude(determinant(k));
  pm.signature_ = inertia(k).signature();
  if (!pm.abs_det_.is_one() || pm.signature_ != 0)
    throw Error("Gaussian prefactor is not 1 (|det B| = " + pm.abs_det_.to_string() + ", sign B = " + std::to_string(pm.signature_) + ")");
  return pm;
}

PhaseModel PhaseModel::constant_hessian(std::vector<Block> blocks, const ZPoly& taylor, MultiPoly critical_value,
                                        std::vector<ExternalInsertion> externals) {
  PhaseModel pm;
  pm.dim_ = taylor.dim();
  pm.blocks_ = std::move(blocks);
  pm.u_ = taylor.coeff_universe();
  pm.critical_value_ = std::move(critical_value);
  pm.externals_ = std::move(externals);
  for (const auto& [z, c] : taylor.terms())
    if (total_degree(z) < 2) throw Error("phase has a constant or linear part: not a critical point");
  pm.validate_externals();
  pm.interaction_ = taylor.degree_range(3, 1 << 20);
  pm.hessian_ = hessian_at_zero(taylor);
  if (!is_constant(pm.hessian_)) throw Error("unsupported phase: Hessian is not constant and has no congruence certificate");
  ScalarMatrix b = constant_part(pm.hessian_);
  pm.abs_det_ = magnitude(determinant(b));
  pm.signature_ = inertia(b).signature();
  if (!pm.abs_det_.is_one() || pm.signature_ != 0)
    throw Error("Gaussian prefactor is not 1 (|det B| = " + pm.abs_det_.to_string() + ", sign B = " + std::to_string(pm.signature_) + ")");
  pm.inverse_ = lift(inverse(b), pm.u_);
  if (!is_identity(multiply(pm.hessian_, pm.inverse_))) throw Error("inverse Hessian check failed");
  return pm;
}

}  // namespace qmomap
