#pragma once

#include <functional>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "qmomap/series.hpp"

namespace qmomap {

using WaveOperator = std::function<HbarSeries(const HbarSeries&)>;

// Op(f)ψ = Σ_n ħ^n Σ_α f_{n,α}(x) (ħ/i)^{|α|} ∂^α ψ (standard ordering).
HbarSeries op_apply(const HbarSeries& f, const HbarSeries& psi);

struct ExtractOptions {
  // Evaluation point z(x) of the derivatives; defaults to x.
  std::optional<std::vector<MultiPoly>> base_point;
  std::vector<DegreeCap> caps;
};

// The symbol f (ξ-degree <= D) with op(ψ) = Σ_α f_α (ħ/i)^{|α|} (∂^α ψ)(z(x)),
// determined from monomials x^β, |β| <= D, at internal order N + D and
// checked on |β| = D + 1.  Throws if the data are not of that form.
HbarSeries symbol_extract(const WaveOperator& op, const Universe& u, int D, int N, const ExtractOptions& options = {});

// Closed composition formula Σ_α (ħ/i)^{|α|}/α! ∂_ξ^α f ∂_x^α g.
HbarSeries star_standard(const HbarSeries& f, const HbarSeries& g);
// symbol_extract(Op(f)∘Op(g)); the slow cross-check of star_standard.
HbarSeries star_standard_oracle(const HbarSeries& f, const HbarSeries& g);

// Σ_n ħ^n Σ_α c_{n,α}(x) ∂^α, stored with ξ^α standing for a plain ∂^α.
class SymbolOperator {
 public:
  SymbolOperator() = default;
  explicit SymbolOperator(HbarSeries coefficients) : c_(std::move(coefficients)) {}

  // Op(f), same order as f.
  static SymbolOperator quantize(const HbarSeries& f);
  // Op((i/ħ) f); every term needs n + |α| >= 1.  Result has order N - 1.
  static SymbolOperator quantize_scaled(const HbarSeries& f);
  // Plain-∂ operator with op(ψ) = Σ c_α ∂^α ψ, read off monomials up to degree D.
  static SymbolOperator extract(const WaveOperator& op, const Universe& u, int D, int order);

  const HbarSeries& coefficients() const { return c_; }
  int order() const { return c_.order(); }
  int derivative_order() const { return c_.is_zero() ? 0 : std::max(0, max_xi_degree()); }

  HbarSeries apply(const HbarSeries& psi) const;
  // Inverse of quantize at the given order; needs order() >= out_order + derivative_order().
  HbarSeries symbol(int out_order) const;
  SymbolOperator with_order(int n) const { return SymbolOperator(c_.with_order(n)); }

  friend SymbolOperator compose(const SymbolOperator& a, const SymbolOperator& b);
  friend SymbolOperator commutator(const SymbolOperator& a, const SymbolOperator& b);
  friend SymbolOperator operator+(const SymbolOperator& a, const SymbolOperator& b) { return SymbolOperator(a.c_ + b.c_); }
  friend SymbolOperator operator-(const SymbolOperator& a, const SymbolOperator& b) { return SymbolOperator(a.c_ - b.c_); }
  friend bool operator==(const SymbolOperator& a, const SymbolOperator& b) { return a.c_ == b.c_; }
  bool is_zero() const { return c_.is_zero(); }

 private:
  int max_xi_degree() const;
  HbarSeries c_;
};

// Normal-ordered product Σ_γ s^{|γ|}/γ! ∂_ξ^γ f ∂_x^γ g with s = scale·ħ^{hbar}.
HbarSeries ordered_product(const HbarSeries& f, const HbarSeries& g, const GaussianRational& scale, int hbar);

}  // namespace qmomap
