#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "qmomap/multipoly.hpp"

namespace qmomap {

// c_0 + c_1 ħ + ... + c_N ħ^N; everything beyond ħ^N is discarded.
class HbarSeries {
 public:
  HbarSeries() = default;
  HbarSeries(Universe u, int order);
  static HbarSeries from_poly(const MultiPoly& p, int order);
  static HbarSeries constant(const Universe& u, int order, const GaussianRational& c);

  int order() const { return static_cast<int>(c_.size()) - 1; }
  const Universe& universe() const { return u_; }
  const MultiPoly& operator[](int k) const { return c_.at(k); }
  MultiPoly& coeff(int k) { return c_.at(k); }
  const std::vector<MultiPoly>& coeffs() const { return c_; }

  bool is_zero() const;
  // Smallest k with c_k != 0, or -1.
  int valuation() const;

  HbarSeries& operator+=(const HbarSeries& o);
  HbarSeries& operator-=(const HbarSeries& o);
  HbarSeries& operator*=(const GaussianRational& s);

  friend HbarSeries operator+(HbarSeries a, const HbarSeries& b) { return a += b; }
  friend HbarSeries operator-(HbarSeries a, const HbarSeries& b) { return a -= b; }
  friend HbarSeries operator-(HbarSeries a) { return a *= GaussianRational(-1); }
  friend HbarSeries operator*(HbarSeries a, const GaussianRational& s) { return a *= s; }
  friend HbarSeries operator*(const GaussianRational& s, HbarSeries a) { return a *= s; }
  friend HbarSeries operator*(const HbarSeries& a, const HbarSeries& b) { return multiply(a, b, {}); }
  friend bool operator==(const HbarSeries& a, const HbarSeries& b);

  friend HbarSeries multiply(const HbarSeries& a, const HbarSeries& b, std::span<const DegreeCap> caps);

  HbarSeries times_poly(const MultiPoly& p, std::span<const DegreeCap> caps = {}) const;
  // Multiply by ħ^k, dropping what falls past the order.
  HbarSeries shift_up(int k) const;
  // Divide by ħ^k; the low coefficients must vanish.  The result has order N - k.
  HbarSeries shift_down(int k) const;
  HbarSeries with_order(int n) const;
  HbarSeries map(const std::function<MultiPoly(const MultiPoly&)>& f) const;

  std::string to_string() const;

 private:
  void check_same(const HbarSeries& o) const;

  Universe u_;
  std::vector<MultiPoly> c_;
};

}  // namespace qmomap
