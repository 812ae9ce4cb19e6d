#pragma once

#include <map>
#include <vector>

#include "qmomap/multipoly.hpp"

namespace qmomap {

// Polynomial in integration variables z_1..z_D with coefficients in a MultiPoly ring.
class ZPoly {
 public:
  using Terms = std::map<Monomial, MultiPoly, GrlexLess>;

  ZPoly() = default;
  ZPoly(int dim, Universe coeffs) : dim_(dim), u_(coeffs) {}

  int dim() const { return dim_; }
  const Universe& coeff_universe() const { return u_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  int degree() const;
  const MultiPoly* find(const Monomial& z) const;

  void add_term(const Monomial& z, const MultiPoly& c);
  ZPoly& operator+=(const ZPoly& o);
  ZPoly& operator-=(const ZPoly& o);
  ZPoly scaled(const GaussianRational& s) const;
  ZPoly times(const MultiPoly& c) const;
  // Terms of total z-degree in [lo, hi].
  ZPoly degree_range(int lo, int hi) const;
  // Variables with a positive exponent somewhere.
  std::vector<bool> support() const;

  friend bool operator==(const ZPoly& a, const ZPoly& b) { return a.terms_ == b.terms_; }

 private:
  int dim_ = 0;
  Universe u_;
  Terms terms_;
};

// Product dropping terms of z-degree above max_degree.
ZPoly multiply(const ZPoly& a, const ZPoly& b, int max_degree);

// p(θ + δ) expanded in δ: variables th_k of p are shifted by z_{offset+k}.
ZPoly shifted_th(const MultiPoly& p, int n, int dim, int offset);

}  // namespace qmomap
