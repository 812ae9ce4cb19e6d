#include "qmomap/universe.hpp"

#include <charconv>

#include "qmomap/error.hpp"

namespace qmomap {

int Universe::family_size(Family f) const {
  switch (f) {
    case Family::x:
    case Family::xi: return d;
    case Family::th: return n_th;
    case Family::v: return n_v;
    case Family::t: return has_t ? 1 : 0;
  }
  return 0;
}

int Universe::offset(Family f) const {
  switch (f) {
    case Family::x: return 0;
    case Family::xi: return d;
    case Family::th: return 2 * d;
    case Family::v: return 2 * d + n_th;
    case Family::t: return 2 * d + n_th + n_v;
  }
  return 0;
}

int Universe::slot(Var v) const {
  if (!contains(v)) throw Error("variable outside universe " + describe());
  return offset(v.family) + v.index;
}

Var Universe::var(int s) const {
  if (s < 0 || s >= size()) throw Error("slot outside universe");
  for (Family f : {Family::t, Family::v, Family::th, Family::xi, Family::x})
    if (family_size(f) > 0 && s >= offset(f)) return {f, s - offset(f)};
  throw Error("slot outside universe");
}

static const char* family_prefix(Family f) {
  switch (f) {
    case Family::x: return "x";
    case Family::xi: return "xi";
    case Family::th: return "th";
    case Family::v: return "v";
    case Family::t: return "t";
  }
  return "?";
}

std::string Universe::name(int s) const {
  Var v = var(s);
  if (v.family == Family::t) return "t";
  return family_prefix(v.family) + std::to_string(v.index + 1);
}

std::optional<Var> Universe::lookup(std::string_view name) const {
  if (name == "t") {
    if (has_t) return t_();
    return std::nullopt;
  }
  std::size_t digits = 0;
  while (digits < name.size() && (name[digits] < '0' || name[digits] > '9')) ++digits;
  std::string_view prefix = name.substr(0, digits), number = name.substr(digits);
  if (number.empty() || number[0] == '0') return std::nullopt;
  int k = 0;
  auto [ptr, ec] = std::from_chars(number.data(), number.data() + number.size(), k);
  if (ec != std::errc() || ptr != number.data() + number.size()) return std::nullopt;
  for (Family f : {Family::x, Family::xi, Family::th, Family::v}) {
    if (prefix == family_prefix(f)) {
      Var v{f, k - 1};
      if (contains(v)) return v;
      return std::nullopt;
    }
  }
  return std::nullopt;
}

std::string Universe::describe() const {
  return "{d=" + std::to_string(d) + ", th=" + std::to_string(n_th) + ", v=" + std::to_string(n_v) +
         (has_t ? ", t}" : "}");
}

int total_degree(const Monomial& m) {
  int s = 0;
  for (auto e : m) s += e;
  return s;
}

bool GrlexLess::operator()(const Monomial& a, const Monomial& b) const {
  int da = total_degree(a), db = total_degree(b);
  if (da != db) return da < db;
  // Within a degree, x1^k sorts before x2^k.
  for (std::size_t k = 0; k < a.size(); ++k)
    if (a[k] != b[k]) return a[k] > b[k];
  return false;
}

}  // namespace qmomap
