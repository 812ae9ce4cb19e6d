#pragma once

#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qmomap/scalar.hpp"
#include "qmomap/universe.hpp"

namespace qmomap {

// Drop every term whose degree in `family` exceeds `max`.
struct DegreeCap {
  Family family;
  int max;
};

class MultiPoly {
 public:
  using Terms = std::map<Monomial, GaussianRational, GrlexLess>;

  MultiPoly() = default;
  explicit MultiPoly(Universe u) : u_(u) {}

  static MultiPoly constant(const Universe& u, const GaussianRational& c);
  static MultiPoly variable(const Universe& u, Var v);
  static MultiPoly monomial(const Universe& u, Monomial m, const GaussianRational& c = 1);

  const Universe& universe() const { return u_; }
  const Terms& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  GaussianRational constant_term() const;
  GaussianRational coeff(const Monomial& m) const;
  void add_term(const Monomial& m, const GaussianRational& c);

  // Degrees are -1 for the zero polynomial.
  int degree() const;
  int degree(Family f) const;
  int degree(Var v) const;

  MultiPoly& operator+=(const MultiPoly& o);
  MultiPoly& operator-=(const MultiPoly& o);
  MultiPoly& operator*=(const MultiPoly& o);
  MultiPoly& operator*=(const GaussianRational& c);

  friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
  friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);
  friend MultiPoly operator*(MultiPoly a, const GaussianRational& c) { return a *= c; }
  friend MultiPoly operator*(const GaussianRational& c, MultiPoly a) { return a *= c; }
  friend MultiPoly operator-(MultiPoly a);
  friend bool operator==(const MultiPoly& a, const MultiPoly& b);
  friend MultiPoly multiply(const MultiPoly& a, const MultiPoly& b, std::span<const DegreeCap> caps);

  MultiPoly pow(int k, std::span<const DegreeCap> caps = {}) const;
  MultiPoly diff(Var v, int order = 1) const;
  MultiPoly truncated(Family f, int max_degree) const;
  // Keep only the terms of exact degree `k` in family f.
  MultiPoly homogeneous_part(Family f, int k) const;
  // Set every variable of the family to zero.
  MultiPoly at_zero(Family f) const { return truncated(f, 0); }
  // Same polynomial in a larger (or relabelled) universe; variables are matched by name.
  MultiPoly embed(const Universe& target) const;

  std::string to_string() const;

 private:
  void check_same(const MultiPoly& o) const;

  Universe u_;
  Terms terms_;
};

int family_degree(const Universe& u, const Monomial& m, Family f);

MultiPoly multiply(const MultiPoly& a, const MultiPoly& b, std::span<const DegreeCap> caps);

// Replace bound variables by polynomials of the target universe.  Unbound
// variables pass through by name and must exist in the target.
MultiPoly substitute(const MultiPoly& p, const std::vector<std::pair<Var, MultiPoly>>& bindings,
                     const Universe& target, std::span<const DegreeCap> caps = {});

}  // namespace qmomap
