#pragma once

#include <map>
#include <mutex>
#include <vector>

#include "qmomap/lie.hpp"
#include "qmomap/series.hpp"

namespace qmomap {

using PbwWord = std::vector<int>;  // nondecreasing basis indices

// Element of U(𝒢)[[ħ]] in the PBW basis; coefficients are scalar series.
struct UEAElement {
  int order = 0;
  std::map<PbwWord, HbarSeries> terms;

  void add(const PbwWord& w, const HbarSeries& c);
  friend bool operator==(const UEAElement& a, const UEAElement& b);
};

// Normal ordering with e_j e_i = e_i e_j + (ħ/i) [e_j, e_i] for j > i.
class PbwCalculus {
 public:
  PbwCalculus(const LieAlgebra& g, int order);

  const LieAlgebra& algebra() const { return g_; }
  int order() const { return order_; }

  UEAElement unit() const;
  // Any word, rewritten into PBW order.
  UEAElement word(const PbwWord& w) const;
  UEAElement multiply(const UEAElement& a, const UEAElement& b) const;
  UEAElement symmetrize(const MultiPoly& f) const;
  UEAElement symmetrize(const HbarSeries& f) const;
  // Inverse of symmetrize; the result lives in `u`, which must carry the th family.
  HbarSeries unsymmetrize(const UEAElement& a, const Universe& u) const;

 private:
  const UEAElement& sym_monomial(const PbwWord& sorted) const;

  LieAlgebra g_;
  int order_;
  mutable std::mutex lock_;
  mutable std::map<PbwWord, UEAElement> words_;
  mutable std::map<PbwWord, UEAElement> syms_;
};

HbarSeries gutt_pbw(const LieAlgebra& g, const HbarSeries& f, const HbarSeries& h);
HbarSeries gutt_pbw(const LieAlgebra& g, const MultiPoly& f, const MultiPoly& h, int N);

}  // namespace qmomap
