#include "qmomap/scalar.hpp"

#include "qmomap/error.hpp"

namespace qmomap {

GaussianRational::GaussianRational(mpq_class re, mpq_class im) : re_(std::move(re)), im_(std::move(im)) {
  re_.canonicalize();
  im_.canonicalize();
}

GaussianRational GaussianRational::parse_rational(std::string_view text) {
  std::string s(text);
  auto valid = [](const std::string& part, bool allow_sign) {
    std::size_t k = 0;
    if (allow_sign && k < part.size() && part[k] == '-') ++k;
    if (k == part.size()) return false;
    for (; k < part.size(); ++k)
      if (part[k] < '0' || part[k] > '9') return false;
    return true;
  };
  auto slash = s.find('/');
  if (slash == std::string::npos) {
    if (!valid(s, true)) throw Error("invalid rational '" + s + "'");
    return {mpq_class(mpz_class(s)), 0};
  }
  auto num = s.substr(0, slash), den = s.substr(slash + 1);
  if (!valid(num, true) || !valid(den, false)) throw Error("invalid rational '" + s + "'");
  mpz_class d(den);
  if (d == 0) throw Error("zero denominator in '" + s + "'");
  return {mpq_class(mpz_class(num), d), 0};
}

GaussianRational& GaussianRational::operator+=(const GaussianRational& o) {
  re_ += o.re_;
  im_ += o.im_;
  return *this;
}

GaussianRational& GaussianRational::operator-=(const GaussianRational& o) {
  re_ -= o.re_;
  im_ -= o.im_;
  return *this;
}

GaussianRational& GaussianRational::operator*=(const GaussianRational& o) {
  if (sgn(im_) == 0 && sgn(o.im_) == 0) {
    re_ *= o.re_;
    return *this;
  }
  mpq_class re = re_ * o.re_ - im_ * o.im_;
  mpq_class im = re_ * o.im_ + im_ * o.re_;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

GaussianRational& GaussianRational::operator/=(const GaussianRational& o) {
  if (o.is_zero()) throw std::domain_error("division by zero");
  mpq_class norm = o.re_ * o.re_ + o.im_ * o.im_;
  *this *= o.conj();
  re_ /= norm;
  im_ /= norm;
  return *this;
}

GaussianRational GaussianRational::pow(int k) const {
  if (k < 0) return GaussianRational(1) / pow(-k);
  GaussianRational result(1), base = *this;
  while (k > 0) {
    if (k & 1) result *= base;
    base *= base;
    k >>= 1;
  }
  return result;
}

std::string GaussianRational::to_string() const {
  if (is_real()) return re_.get_str();
  auto imag = [](const mpq_class& q) {
    if (q == 1) return std::string("i");
    if (q == -1) return std::string("-i");
    return q.get_str() + "*i";
  };
  if (sgn(re_) == 0) return imag(im_);
  std::string im_part = imag(im_);
  if (im_part[0] != '-') im_part = "+" + im_part;
  return "(" + re_.get_str() + im_part + ")";
}

mpz_class factorial(int n) {
  mpz_class r = 1;
  for (int k = 2; k <= n; ++k) r *= k;
  return r;
}

}  // namespace qmomap
