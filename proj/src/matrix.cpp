#include "qmomap/matrix.hpp"

#include "qmomap/error.hpp"

namespace qmomap {

ScalarMatrix identity_matrix(int n) {
  ScalarMatrix m(n, std::vector<GaussianRational>(n));
  for (int i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

ScalarMatrix multiply(const ScalarMatrix& a, const ScalarMatrix& b) {
  std::size_t n = a.size(), k = b.size(), m = b.empty() ? 0 : b[0].size();
  ScalarMatrix c(n, std::vector<GaussianRational>(m));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t l = 0; l < k; ++l) {
      if (a[i][l].is_zero()) continue;
      for (std::size_t j = 0; j < m; ++j) c[i][j] += a[i][l] * b[l][j];
    }
  return c;
}

ScalarMatrix inverse(const ScalarMatrix& a) {
  int n = static_cast<int>(a.size());
  ScalarMatrix m = a, inv = identity_matrix(n);
  for (int col = 0; col < n; ++col) {
    int pivot = col;
    while (pivot < n && m[pivot][col].is_zero()) ++pivot;
    if (pivot == n) throw Error("singular matrix");
    std::swap(m[pivot], m[col]);
    std::swap(inv[pivot], inv[col]);
    GaussianRational p = m[col][col];
    for (int j = 0; j < n; ++j) {
      m[col][j] /= p;
      inv[col][j] /= p;
    }
    for (int r = 0; r < n; ++r) {
      if (r == col || m[r][col].is_zero()) continue;
      GaussianRational f = m[r][col];
      for (int j = 0; j < n; ++j) {
        m[r][j] -= f * m[col][j];
        inv[r][j] -= f * inv[col][j];
      }
    }
  }
  return inv;
}

GaussianRational determinant(const ScalarMatrix& a) {
  int n = static_cast<int>(a.size());
  ScalarMatrix m = a;
  GaussianRational det = 1;
  for (int col = 0; col < n; ++col) {
    int pivot = col;
    while (pivot < n && m[pivot][col].is_zero()) ++pivot;
    if (pivot == n) return 0;
    if (pivot != col) {
      std::swap(m[pivot], m[col]);
      det = -det;
    }
    det *= m[col][col];
    for (int r = col + 1; r < n; ++r) {
      if (m[r][col].is_zero()) continue;
      GaussianRational f = m[r][col] / m[col][col];
      for (int j = col; j < n; ++j) m[r][j] -= f * m[col][j];
    }
  }
  return det;
}

std::vector<GaussianRational> characteristic_polynomial(const ScalarMatrix& a) {
  // Faddeev–LeVerrier: M_k = A M_{k-1} + c_{k-1} I, c_k = -tr(A M_k)/k.
  int n = static_cast<int>(a.size());
  std::vector<GaussianRational> c(n + 1);
  c[0] = 1;
  ScalarMatrix M(n, std::vector<GaussianRational>(n));
  for (int k = 1; k <= n; ++k) {
    ScalarMatrix next = multiply(a, M);
    for (int i = 0; i < n; ++i) next[i][i] += c[k - 1];
    M = std::move(next);
    ScalarMatrix AM = multiply(a, M);
    GaussianRational tr;
    for (int i = 0; i < n; ++i) tr += AM[i][i];
    c[k] = -tr / GaussianRational(k);
  }
  return c;
}

Inertia inertia(const ScalarMatrix& a) {
  int n = static_cast<int>(a.size());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (!a[i][j].is_real() || !(a[i][j] == a[j][i])) throw Error("inertia needs a real symmetric matrix");
  auto c = characteristic_polynomial(a);
  // p(λ) = Σ c_k λ^{n-k}; count roots by Descartes' rule, exact for real-rooted p.
  Inertia out;
  int trailing = n;
  while (trailing > 0 && c[trailing].is_zero()) --trailing;
  out.zero = n - trailing;
  auto sign_changes = [&](bool negate) {
    int changes = 0, last = 0;
    for (int k = 0; k <= trailing; ++k) {
      int s = sgn(c[k].re());
      if (negate && (n - k) % 2 == 1) s = -s;
      if (s == 0) continue;
      if (last != 0 && s != last) ++changes;
      last = s;
    }
    return changes;
  };
  out.positive = sign_changes(false);
  out.negative = sign_changes(true);
  if (out.positive + out.negative + out.zero != n) throw Error("characteristic polynomial is not real-rooted");
  return out;
}

PolyMatrix multiply(const PolyMatrix& a, const PolyMatrix& b) {
  std::size_t n = a.size(), k = b.size(), m = b.empty() ? 0 : b[0].size();
  const Universe& u = a[0][0].universe();
  PolyMatrix c(n, std::vector<MultiPoly>(m, MultiPoly(u)));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t l = 0; l < k; ++l) {
      if (a[i][l].is_zero()) continue;
      for (std::size_t j = 0; j < m; ++j)
        if (!b[l][j].is_zero()) c[i][j] += a[i][l] * b[l][j];
    }
  return c;
}

PolyMatrix transpose(const PolyMatrix& a) {
  PolyMatrix t(a[0].size(), std::vector<MultiPoly>(a.size()));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a[i].size(); ++j) t[j][i] = a[i][j];
  return t;
}

bool is_constant(const PolyMatrix& a) {
  for (const auto& row : a)
    for (const auto& e : row)
      if (!e.is_constant()) return false;
  return true;
}

ScalarMatrix constant_part(const PolyMatrix& a) {
  ScalarMatrix m(a.size(), std::vector<GaussianRational>(a.empty() ? 0 : a[0].size()));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a[i].size(); ++j) m[i][j] = a[i][j].constant_term();
  return m;
}

PolyMatrix lift(const ScalarMatrix& a, const Universe& u) {
  PolyMatrix m(a.size(), std::vector<MultiPoly>(a.empty() ? 0 : a[0].size(), MultiPoly(u)));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a[i].size(); ++j) m[i][j] = MultiPoly::constant(u, a[i][j]);
  return m;
}

}  // namespace qmomap
