#pragma once

#include <span>
#include <string>
#include <vector>

#include "qmomap/multipoly.hpp"
#include "qmomap/series.hpp"

namespace qmomap {

struct StructureEntry {
  int i, j, k;  // 0-based, [e_i, e_j] has coefficient c on e_k
  GaussianRational c;
};

class LieAlgebra {
 public:
  LieAlgebra() = default;
  // Entries with i < j; (j, i) is filled by antisymmetry.  An entry with
  // i > j must agree with its mirror.  Throws if the Jacobi identity fails.
  LieAlgebra(int dim, const std::vector<StructureEntry>& entries);

  static LieAlgebra abelian(int dim);
  static LieAlgebra so3();
  static LieAlgebra heisenberg();

  int dim() const { return n_; }
  const GaussianRational& c(int i, int j, int k) const { return c_[(i * n_ + j) * n_ + k]; }
  bool is_abelian() const;
  std::vector<StructureEntry> entries() const;  // i < j, nonzero

 private:
  int n_ = 0;
  std::vector<GaussianRational> c_;
};

// Vector of 𝒢 with polynomial coefficients.
struct LieVector {
  std::vector<MultiPoly> comps;

  static LieVector zero(const Universe& u, int dim);
  static LieVector basis(const Universe& u, int dim, int i);
  // (v_{offset+1}, ..., v_{offset+dim}) in the v family.
  static LieVector symbolic(const Universe& u, int dim, int offset = 0);

  int dim() const { return static_cast<int>(comps.size()); }
  LieVector& operator+=(const LieVector& o);
  LieVector scaled(const GaussianRational& s) const;
  LieVector truncated(std::span<const DegreeCap> caps) const;
  friend bool operator==(const LieVector& a, const LieVector& b) { return a.comps == b.comps; }
};

LieVector bracket(const LieAlgebra& g, const LieVector& v, const LieVector& w, std::span<const DegreeCap> caps = {});

// log(e^v e^w) through brackets of total order <= `order`.
LieVector bch(const LieAlgebra& g, const LieVector& v, const LieVector& w, int order,
              std::span<const DegreeCap> caps = {});

// Kirillov–Kostant bracket on polynomials in the th family.
MultiPoly kk_poisson(const LieAlgebra& g, const MultiPoly& f, const MultiPoly& h);

struct CasimirCheck {
  bool casimir;
  std::vector<MultiPoly> residuals;  // {θ_i, f}
};
CasimirCheck is_casimir(const LieAlgebra& g, const MultiPoly& f);

}  // namespace qmomap
