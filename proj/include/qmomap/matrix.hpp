#pragma once

#include <vector>

#include "qmomap/multipoly.hpp"

namespace qmomap {

using ScalarMatrix = std::vector<std::vector<GaussianRational>>;
using PolyMatrix = std::vector<std::vector<MultiPoly>>;

ScalarMatrix identity_matrix(int n);
ScalarMatrix multiply(const ScalarMatrix& a, const ScalarMatrix& b);
// Exact Gauss–Jordan; throws on a singular matrix.
ScalarMatrix inverse(const ScalarMatrix& a);
GaussianRational determinant(const ScalarMatrix& a);
// det(λI - A) = λ^n + c_1 λ^{n-1} + ... + c_n, returned as {1, c_1, ..., c_n}.
std::vector<GaussianRational> characteristic_polynomial(const ScalarMatrix& a);

struct Inertia {
  int positive = 0, negative = 0, zero = 0;
  int signature() const { return positive - negative; }
};
// Requires a real symmetric matrix (so the characteristic polynomial is real-rooted).
Inertia inertia(const ScalarMatrix& a);

PolyMatrix multiply(const PolyMatrix& a, const PolyMatrix& b);
PolyMatrix transpose(const PolyMatrix& a);
bool is_constant(const PolyMatrix& a);
ScalarMatrix constant_part(const PolyMatrix& a);
PolyMatrix lift(const ScalarMatrix& a, const Universe& u);

}  // namespace qmomap
