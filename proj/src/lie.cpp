#include "qmomap/lie.hpp"

#include <map>
#include <mutex>

#include "qmomap/error.hpp"

namespace qmomap {

LieAlgebra::LieAlgebra(int dim, const std::vector<StructureEntry>& entries) : n_(dim) {
  if (dim <= 0) throw Error("Lie algebra dimension must be positive");
  c_.assign(n_ * n_ * n_, GaussianRational());
  std::vector<bool> seen(n_ * n_ * n_, false);
  auto at = [&](int i, int j, int k) { return (i * n_ + j) * n_ + k; };
  for (const auto& e : entries) {
    if (e.i < 0 || e.j < 0 || e.k < 0 || e.i >= n_ || e.j >= n_ || e.k >= n_)
      throw Error("structure constant index out of range");
    if (e.i == e.j) {
      if (!e.c.is_zero()) throw Error("antisymmetry violated: [e" + std::to_string(e.i + 1) + ", e" + std::to_string(e.i + 1) + "] != 0");
      continue;
    }
    int lo = std::min(e.i, e.j), hi = std::max(e.i, e.j);
    GaussianRational value = e.i < e.j ? e.c : -e.c;
    auto idx = at(lo, hi, e.k);
    if (seen[idx] && !(c_[idx] == value))
      throw Error("antisymmetry violated for [e" + std::to_string(lo + 1) + ", e" + std::to_string(hi + 1) + "]");
    seen[idx] = true;
    c_[idx] = value;
    c_[at(hi, lo, e.k)] = -value;
  }
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j)
      for (int k = 0; k < n_; ++k)
        for (int l = 0; l < n_; ++l) {
          GaussianRational r;
          for (int m = 0; m < n_; ++m)
            r += c(i, j, m) * c(m, k, l) + c(j, k, m) * c(m, i, l) + c(k, i, m) * c(m, j, l);
          if (!r.is_zero())
            throw Error("Jacobi identity fails for (e" + std::to_string(i + 1) + ", e" + std::to_string(j + 1) + ", e" +
                        std::to_string(k + 1) + "): residual " + r.to_string() + " on e" + std::to_string(l + 1));
        }
}

LieAlgebra LieAlgebra::abelian(int dim) { return LieAlgebra(dim, {}); }

LieAlgebra LieAlgebra::so3() { return LieAlgebra(3, {{0, 1, 2, 1}, {1, 2, 0, 1}, {2, 0, 1, 1}}); }

LieAlgebra LieAlgebra::heisenberg() { return LieAlgebra(3, {{0, 1, 2, 1}}); }

bool LieAlgebra::is_abelian() const {
  for (const auto& x : c_)
    if (!x.is_zero()) return false;
  return true;
}

std::vector<StructureEntry> LieAlgebra::entries() const {
  std::vector<StructureEntry> out;
  for (int i = 0; i < n_; ++i)
    for (int j = i + 1; j < n_; ++j)
      for (int k = 0; k < n_; ++k)
        if (!c(i, j, k).is_zero()) out.push_back({i, j, k, c(i, j, k)});
  return out;
}

LieVector LieVector::zero(const Universe& u, int dim) { return {std::vector<MultiPoly>(dim, MultiPoly(u))}; }

LieVector LieVector::basis(const Universe& u, int dim, int i) {
  auto v = zero(u, dim);
  v.comps.at(i) = MultiPoly::constant(u, 1);
  return v;
}

LieVector LieVector::symbolic(const Universe& u, int dim, int offset) {
  auto v = zero(u, dim);
  for (int k = 0; k < dim; ++k) v.comps[k] = MultiPoly::variable(u, v_(offset + k));
  return v;
}

LieVector& LieVector::operator+=(const LieVector& o) {
  if (dim() != o.dim()) throw Error("dimension mismatch");
  for (int k = 0; k < dim(); ++k) comps[k] += o.comps[k];
  return *this;
}

LieVector LieVector::scaled(const GaussianRational& s) const {
  LieVector out = *this;
  for (auto& c : out.comps) c *= s;
  return out;
}

LieVector LieVector::truncated(std::span<const DegreeCap> caps) const {
  LieVector out = *this;
  for (auto& c : out.comps)
    for (const auto& cap : caps) c = c.truncated(cap.family, cap.max);
  return out;
}

LieVector bracket(const LieAlgebra& g, const LieVector& v, const LieVector& w, std::span<const DegreeCap> caps) {
  int n = g.dim();
  if (v.dim() != n || w.dim() != n) throw Error("dimension mismatch in bracket");
  const Universe& u = v.comps[0].universe();
  LieVector out = LieVector::zero(u, n);
  for (int i = 0; i < n; ++i) {
    if (v.comps[i].is_zero()) continue;
    for (int j = 0; j < n; ++j) {
      if (i == j || w.comps[j].is_zero()) continue;
      MultiPoly prod;
      bool formed = false;
      for (int k = 0; k < n; ++k) {
        const auto& c = g.c(i, j, k);
        if (c.is_zero()) continue;
        if (!formed) {
          prod = multiply(v.comps[i], w.comps[j], caps);
          formed = true;
        }
        out.comps[k] += prod * c;
      }
    }
  }
  return out;
}

namespace {

// Truncated free associative algebra on two letters.
using Word = std::vector<std::uint8_t>;
using FreeElem = std::map<Word, mpq_class>;

FreeElem free_mul(const FreeElem& a, const FreeElem& b, int order) {
  FreeElem out;
  for (const auto& [wa, ca] : a)
    for (const auto& [wb, cb] : b) {
      if (static_cast<int>(wa.size() + wb.size()) > order) continue;
      Word w = wa;
      w.insert(w.end(), wb.begin(), wb.end());
      out[w] += ca * cb;
    }
  std::erase_if(out, [](const auto& kv) { return sgn(kv.second) == 0; });
  return out;
}

FreeElem free_exp_letter(std::uint8_t letter, int order) {
  FreeElem out;
  Word w;
  mpq_class c = 1;
  for (int k = 0; k <= order; ++k) {
    out[w] = c;
    w.push_back(letter);
    c /= k + 1;
  }
  return out;
}

// Coefficients of log(e^X e^Y) up to word length `order`.
FreeElem bch_free(int order) {
  FreeElem z = free_mul(free_exp_letter(0, order), free_exp_letter(1, order), order);
  z.erase(Word{});
  FreeElem log, power = z;
  for (int k = 1; k <= order; ++k) {
    mpq_class s(k % 2 == 1 ? 1 : -1, k);
    for (const auto& [w, c] : power) log[w] += s * c;
    power = free_mul(power, z, order);
  }
  std::erase_if(log, [](const auto& kv) { return sgn(kv.second) == 0; });
  return log;
}

const FreeElem& bch_free_cached(int order) {
  static std::map<int, FreeElem> cache;
  static std::mutex lock;
  std::lock_guard guard(lock);
  auto it = cache.find(order);
  if (it == cache.end()) it = cache.emplace(order, bch_free(order)).first;
  return it->second;
}

}  // namespace

LieVector bch(const LieAlgebra& g, const LieVector& v, const LieVector& w, int order, std::span<const DegreeCap> caps) {
  if (order < 1) throw Error("BCH order must be at least 1");
  const FreeElem& log = bch_free_cached(order);
  const Universe& u = v.comps.at(0).universe();
  LieVector result = LieVector::zero(u, g.dim());
  // Dynkin: a homogeneous Lie element of degree m equals (1/m) Σ c_w [..[w1,w2],..,wm].
  std::map<Word, LieVector> nested;
  auto letter = [&](std::uint8_t l) -> const LieVector& { return l == 0 ? v : w; };
  auto eval = [&](auto&& self, const Word& word) -> const LieVector& {
    auto it = nested.find(word);
    if (it != nested.end()) return it->second;
    LieVector value;
    if (word.size() == 1) {
      value = letter(word[0]).truncated(caps);
    } else {
      Word prefix(word.begin(), word.end() - 1);
      value = bracket(g, self(self, prefix), letter(word.back()), caps);
    }
    return nested.emplace(word, std::move(value)).first->second;
  };
  for (const auto& [word, c] : log) {
    const LieVector& r = eval(eval, word);
    result += r.scaled(GaussianRational(mpq_class(c / static_cast<long>(word.size()))));
  }
  return result;
}

MultiPoly kk_poisson(const LieAlgebra& g, const MultiPoly& f, const MultiPoly& h) {
  const Universe& u = f.universe();
  int n = g.dim();
  if (u.n_th != n) throw Error("kk_poisson: th family size does not match algebra dimension");
  MultiPoly out(u);
  std::vector<MultiPoly> df, dh;
  for (int i = 0; i < n; ++i) {
    df.push_back(f.diff(th_(i)));
    dh.push_back(h.diff(th_(i)));
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j || df[i].is_zero() || dh[j].is_zero()) continue;
      MultiPoly lin(u);
      for (int k = 0; k < n; ++k)
        if (!g.c(i, j, k).is_zero()) lin += MultiPoly::variable(u, th_(k)) * g.c(i, j, k);
      if (!lin.is_zero()) out += lin * df[i] * dh[j];
    }
  return out;
}

CasimirCheck is_casimir(const LieAlgebra& g, const MultiPoly& f) {
  CasimirCheck out{true, {}};
  for (int i = 0; i < g.dim(); ++i) {
    auto r = kk_poisson(g, MultiPoly::variable(f.universe(), th_(i)), f);
    if (!r.is_zero()) out.casimir = false;
    out.residuals.push_back(std::move(r));
  }
  return out;
}

}  // namespace qmomap
