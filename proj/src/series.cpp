#include "qmomap/series.hpp"

#include "qmomap/error.hpp"

namespace qmomap {

HbarSeries::HbarSeries(Universe u, int order) : u_(u) {
  if (order < 0) throw Error("negative truncation order");
  c_.assign(order + 1, MultiPoly(u));
}

HbarSeries HbarSeries::from_poly(const MultiPoly& p, int order) {
  HbarSeries s(p.universe(), order);
  s.c_[0] = p;
  return s;
}

HbarSeries HbarSeries::constant(const Universe& u, int order, const GaussianRational& c) {
  return from_poly(MultiPoly::constant(u, c), order);
}

bool HbarSeries::is_zero() const { return valuation() < 0; }

int HbarSeries::valuation() const {
  for (int k = 0; k <= order(); ++k)
    if (!c_[k].is_zero()) return k;
  return -1;
}

void HbarSeries::check_same(const HbarSeries& o) const {
  if (order() != o.order())
    throw Error("order mismatch: " + std::to_string(order()) + " vs " + std::to_string(o.order()));
  if (!(u_ == o.u_)) throw Error("universe mismatch: " + u_.describe() + " vs " + o.u_.describe());
}

HbarSeries& HbarSeries::operator+=(const HbarSeries& o) {
  check_same(o);
  for (int k = 0; k <= order(); ++k) c_[k] += o.c_[k];
  return *this;
}

HbarSeries& HbarSeries::operator-=(const HbarSeries& o) {
  check_same(o);
  for (int k = 0; k <= order(); ++k) c_[k] -= o.c_[k];
  return *this;
}

HbarSeries& HbarSeries::operator*=(const GaussianRational& s) {
  for (auto& c : c_) c *= s;
  return *this;
}

bool operator==(const HbarSeries& a, const HbarSeries& b) {
  a.check_same(b);
  return a.c_ == b.c_;
}

HbarSeries multiply(const HbarSeries& a, const HbarSeries& b, std::span<const DegreeCap> caps) {
  a.check_same(b);
  HbarSeries out(a.u_, a.order());
  for (int i = 0; i <= a.order(); ++i) {
    if (a.c_[i].is_zero()) continue;
    for (int j = 0; i + j <= a.order(); ++j)
      if (!b.c_[j].is_zero()) out.c_[i + j] += multiply(a.c_[i], b.c_[j], caps);
  }
  return out;
}

HbarSeries HbarSeries::times_poly(const MultiPoly& p, std::span<const DegreeCap> caps) const {
  HbarSeries out(u_, order());
  for (int k = 0; k <= order(); ++k) out.c_[k] = multiply(c_[k], p, caps);
  return out;
}

HbarSeries HbarSeries::shift_up(int k) const {
  HbarSeries out(u_, order());
  for (int j = 0; j + k <= order(); ++j) out.c_[j + k] = c_[j];
  return out;
}

HbarSeries HbarSeries::shift_down(int k) const {
  if (k > order()) throw Error("cannot divide a series of order " + std::to_string(order()) + " by hbar^" + std::to_string(k));
  for (int j = 0; j < k; ++j)
    if (!c_[j].is_zero()) throw Error("series not divisible by hbar^" + std::to_string(k));
  HbarSeries out(u_, order() - k);
  for (int j = k; j <= order(); ++j) out.c_[j - k] = c_[j];
  return out;
}

HbarSeries HbarSeries::with_order(int n) const {
  HbarSeries out(u_, n);
  for (int k = 0; k <= std::min(n, order()); ++k) out.c_[k] = c_[k];
  return out;
}

HbarSeries HbarSeries::map(const std::function<MultiPoly(const MultiPoly&)>& f) const {
  HbarSeries out;
  out.c_.reserve(c_.size());
  for (const auto& c : c_) out.c_.push_back(f(c));
  out.u_ = out.c_.empty() ? u_ : out.c_.front().universe();
  return out;
}

std::string HbarSeries::to_string() const {
  std::string out;
  for (int k = 0; k <= order(); ++k) {
    if (c_[k].is_zero()) continue;
    if (!out.empty()) out += " + ";
    out += "hbar^" + std::to_string(k) + "*(" + c_[k].to_string() + ")";
  }
  return out.empty() ? "0" : out;
}

}  // namespace qmomap
