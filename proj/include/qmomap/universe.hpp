#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace qmomap {

enum class Family : std::uint8_t { x, xi, th, v, t };

struct Var {
  Family family;
  int index;  // 0-based
  auto operator<=>(const Var&) const = default;
};

inline Var x_(int k) { return {Family::x, k}; }
inline Var xi_(int k) { return {Family::xi, k}; }
inline Var th_(int k) { return {Family::th, k}; }
inline Var v_(int k) { return {Family::v, k}; }
inline Var t_() { return {Family::t, 0}; }

// Variable layout of a polynomial ring: x[d], xi[d], th[n_th], v[n_v], optional t.
struct Universe {
  int d = 0;
  int n_th = 0;
  int n_v = 0;
  bool has_t = false;

  // Ring used by an action of an n-dimensional algebra on R^d.  The v family
  // holds two group arguments (v1..vn, then w as v_{n+1}..v_{2n}).
  static Universe model(int d, int n) { return {d, n, 2 * n, true}; }

  int size() const { return 2 * d + n_th + n_v + (has_t ? 1 : 0); }
  int family_size(Family f) const;
  int offset(Family f) const;
  bool contains(Var v) const { return v.index >= 0 && v.index < family_size(v.family); }
  int slot(Var v) const;
  Var var(int slot) const;
  std::string name(int slot) const;
  std::optional<Var> lookup(std::string_view name) const;
  std::string describe() const;

  friend bool operator==(const Universe&, const Universe&) = default;
};

using Monomial = std::vector<std::uint8_t>;

int total_degree(const Monomial& m);

// Graded order: total degree first, then lexicographic with x1 > x2 > ...
struct GrlexLess {
  bool operator()(const Monomial& a, const Monomial& b) const;
};

}  // namespace qmomap
