#include "qmomap/multipoly.hpp"

#include <algorithm>
#include <string_view>
#include <unordered_map>

#include "qmomap/error.hpp"

namespace qmomap {

namespace {

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const {
    return std::hash<std::string_view>{}(std::string_view(reinterpret_cast<const char*>(m.data()), m.size()));
  }
};

}  // namespace

MultiPoly MultiPoly::constant(const Universe& u, const GaussianRational& c) {
  MultiPoly p(u);
  p.add_term(Monomial(u.size(), 0), c);
  return p;
}

MultiPoly MultiPoly::variable(const Universe& u, Var v) {
  Monomial m(u.size(), 0);
  m[u.slot(v)] = 1;
  return monomial(u, std::move(m));
}

MultiPoly MultiPoly::monomial(const Universe& u, Monomial m, const GaussianRational& c) {
  if (static_cast<int>(m.size()) != u.size()) throw Error("monomial length does not match universe");
  MultiPoly p(u);
  p.add_term(m, c);
  return p;
}

bool MultiPoly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && total_degree(terms_.begin()->first) == 0);
}

GaussianRational MultiPoly::constant_term() const { return coeff(Monomial(u_.size(), 0)); }

GaussianRational MultiPoly::coeff(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? GaussianRational() : it->second;
}

void MultiPoly::add_term(const Monomial& m, const GaussianRational& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

int family_degree(const Universe& u, const Monomial& m, Family f) {
  int off = u.offset(f), n = u.family_size(f), s = 0;
  for (int k = 0; k < n; ++k) s += m[off + k];
  return s;
}

int MultiPoly::degree() const { return terms_.empty() ? -1 : total_degree(terms_.rbegin()->first); }

int MultiPoly::degree(Family f) const {
  int best = -1;
  for (const auto& [m, c] : terms_) best = std::max(best, family_degree(u_, m, f));
  return best;
}

int MultiPoly::degree(Var v) const {
  int s = u_.slot(v), best = -1;
  for (const auto& [m, c] : terms_) best = std::max(best, static_cast<int>(m[s]));
  return best;
}

void MultiPoly::check_same(const MultiPoly& o) const {
  if (!(u_ == o.u_))
    throw Error("universe mismatch: " + u_.describe() + " vs " + o.u_.describe());
}

namespace {

// dst += sign * src; a linear merge unless src is much smaller than dst.
void accumulate(MultiPoly::Terms& dst, const MultiPoly::Terms& src, int sign) {
  auto add = [&](const Monomial& m, const GaussianRational& c) {
    auto [it, inserted] = dst.try_emplace(m, sign > 0 ? c : -c);
    if (!inserted) {
      if (sign > 0) it->second += c;
      else it->second -= c;
      if (it->second.is_zero()) dst.erase(it);
    }
  };
  if (src.size() * 8 < dst.size()) {
    for (const auto& [m, c] : src) add(m, c);
    return;
  }
  MultiPoly::Terms out;
  GrlexLess less;
  auto a = dst.begin();
  auto b = src.begin();
  while (a != dst.end() || b != src.end()) {
    if (b == src.end() || (a != dst.end() && less(a->first, b->first))) {
      out.insert(out.end(), dst.extract(a++));
    } else if (a == dst.end() || less(b->first, a->first)) {
      out.emplace_hint(out.end(), b->first, sign > 0 ? b->second : -b->second);
      ++b;
    } else {
      auto node = dst.extract(a++);
      if (sign > 0) node.mapped() += b->second;
      else node.mapped() -= b->second;
      if (!node.mapped().is_zero()) out.insert(out.end(), std::move(node));
      ++b;
    }
  }
  dst.swap(out);
}

}  // namespace

MultiPoly& MultiPoly::operator+=(const MultiPoly& o) {
  check_same(o);
  accumulate(terms_, o.terms_, 1);
  return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& o) {
  check_same(o);
  accumulate(terms_, o.terms_, -1);
  return *this;
}

MultiPoly& MultiPoly::operator*=(const MultiPoly& o) { return *this = *this * o; }

MultiPoly& MultiPoly::operator*=(const GaussianRational& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, coef] : terms_) coef *= c;
  return *this;
}

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) { return multiply(a, b, {}); }

MultiPoly operator-(MultiPoly a) {
  for (auto& [m, c] : a.terms_) c = -c;
  return a;
}

bool operator==(const MultiPoly& a, const MultiPoly& b) {
  a.check_same(b);
  return a.terms_ == b.terms_;
}

MultiPoly multiply(const MultiPoly& a, const MultiPoly& b, std::span<const DegreeCap> caps) {
  if (!(a.universe() == b.universe()))
    throw Error("universe mismatch: " + a.universe().describe() + " vs " + b.universe().describe());
  const Universe& u = a.universe();
  MultiPoly out(u);
  if (a.is_zero() || b.is_zero()) return out;

  const std::size_t nc = caps.size();
  auto cap_degrees = [&](const MultiPoly& p) {
    std::vector<int> deg;
    deg.reserve(p.size() * nc);
    for (const auto& [m, c] : p.terms())
      for (const auto& cap : caps) deg.push_back(family_degree(u, m, cap.family));
    return deg;
  };
  auto da = cap_degrees(a), db = cap_degrees(b);

  // b's terms bucketed by the degree in the first capped family, so pairs
  // beyond that cap are never visited.
  std::vector<std::pair<const Monomial*, const GaussianRational*>> bterms;
  bterms.reserve(b.size());
  for (const auto& [mb, cb] : b.terms()) bterms.emplace_back(&mb, &cb);
  std::vector<std::vector<std::size_t>> buckets(1);
  if (caps.empty()) {
    for (std::size_t j = 0; j < bterms.size(); ++j) buckets[0].push_back(j);
  } else {
    buckets.assign(std::max(caps[0].max, 0) + 1, {});
    for (std::size_t j = 0; j < bterms.size(); ++j)
      if (db[j * nc] <= caps[0].max) buckets[db[j * nc]].push_back(j);
  }

  std::unordered_map<Monomial, GaussianRational, MonomialHash> acc;
  acc.reserve(std::min<std::size_t>(a.size() * b.size(), 1 << 16));
  Monomial m(u.size());
  std::size_t ia = 0;
  GaussianRational prod;
  for (const auto& [ma, ca] : a.terms()) {
    int room = caps.empty() ? 0 : caps[0].max - da[ia * nc];
    for (int bucket = 0; bucket <= room && bucket < static_cast<int>(buckets.size()); ++bucket) {
      for (std::size_t j : buckets[bucket]) {
        bool keep = true;
        for (std::size_t k = 1; k < caps.size(); ++k)
          if (da[ia * nc + k] + db[j * nc + k] > caps[k].max) keep = false;
        if (!keep) continue;
        const Monomial& mb = *bterms[j].first;
        for (std::size_t k = 0; k < m.size(); ++k) m[k] = ma[k] + mb[k];
        prod = ca;
        prod *= *bterms[j].second;
        auto [it, inserted] = acc.try_emplace(m, prod);
        if (!inserted) it->second += prod;
      }
    }
    ++ia;
  }
  using Entry = std::unordered_map<Monomial, GaussianRational, MonomialHash>::value_type;
  std::vector<std::pair<int, const Entry*>> keyed;
  keyed.reserve(acc.size());
  for (const auto& e : acc)
    if (!e.second.is_zero()) keyed.emplace_back(total_degree(e.first), &e);
  std::sort(keyed.begin(), keyed.end(), [](const auto& x, const auto& y) {
    if (x.first != y.first) return x.first < y.first;
    const Monomial &p = x.second->first, &q = y.second->first;
    for (std::size_t k = 0; k < p.size(); ++k)
      if (p[k] != q[k]) return p[k] > q[k];
    return false;
  });
  for (const auto& [d, e] : keyed) out.terms_.emplace_hint(out.terms_.end(), e->first, e->second);
  return out;
}

MultiPoly MultiPoly::pow(int k, std::span<const DegreeCap> caps) const {
  if (k < 0) throw Error("negative polynomial power");
  MultiPoly result = constant(u_, 1);
  for (int j = 0; j < k; ++j) result = multiply(result, *this, caps);
  return result;
}

MultiPoly MultiPoly::diff(Var v, int order) const {
  int s = u_.slot(v);
  MultiPoly out(u_);
  for (const auto& [m, c] : terms_) {
    if (m[s] < order) continue;
    Monomial n = m;
    GaussianRational f = c;
    for (int j = 0; j < order; ++j) f *= GaussianRational(static_cast<long>(m[s] - j));
    n[s] = static_cast<std::uint8_t>(m[s] - order);
    out.add_term(n, f);
  }
  return out;
}

MultiPoly MultiPoly::truncated(Family f, int max_degree) const {
  MultiPoly out(u_);
  for (const auto& [m, c] : terms_)
    if (family_degree(u_, m, f) <= max_degree) out.terms_.emplace_hint(out.terms_.end(), m, c);
  return out;
}

MultiPoly MultiPoly::homogeneous_part(Family f, int k) const {
  MultiPoly out(u_);
  for (const auto& [m, c] : terms_)
    if (family_degree(u_, m, f) == k) out.terms_.emplace_hint(out.terms_.end(), m, c);
  return out;
}

MultiPoly MultiPoly::embed(const Universe& target) const {
  if (target == u_) return *this;
  std::vector<int> map(u_.size());
  for (int s = 0; s < u_.size(); ++s) {
    Var v = u_.var(s);
    map[s] = target.contains(v) ? target.slot(v) : -1;
  }
  MultiPoly out(target);
  Monomial n(target.size());
  for (const auto& [m, c] : terms_) {
    std::fill(n.begin(), n.end(), 0);
    for (int s = 0; s < u_.size(); ++s) {
      if (m[s] == 0) continue;
      if (map[s] < 0) throw Error("variable " + u_.name(s) + " missing from universe " + target.describe());
      n[map[s]] = m[s];
    }
    out.add_term(n, c);
  }
  return out;
}

MultiPoly substitute(const MultiPoly& p, const std::vector<std::pair<Var, MultiPoly>>& bindings,
                     const Universe& target, std::span<const DegreeCap> caps) {
  const Universe& u = p.universe();
  std::vector<int> bound_index(u.size(), -1);
  for (std::size_t b = 0; b < bindings.size(); ++b) {
    if (!(bindings[b].second.universe() == target))
      throw Error("binding for " + u.name(u.slot(bindings[b].first)) + " lives outside the target universe");
    bound_index[u.slot(bindings[b].first)] = static_cast<int>(b);
  }
  std::vector<int> pass(u.size(), -1);
  for (int s = 0; s < u.size(); ++s) {
    if (bound_index[s] >= 0) continue;
    Var v = u.var(s);
    if (target.contains(v)) pass[s] = target.slot(v);
  }

  // Group terms by their bound-variable exponents so every power product is formed once.
  std::map<Monomial, MultiPoly> groups;
  Monomial key(bindings.size()), rest(target.size());
  for (const auto& [m, c] : p.terms()) {
    std::fill(key.begin(), key.end(), 0);
    std::fill(rest.begin(), rest.end(), 0);
    for (int s = 0; s < u.size(); ++s) {
      if (m[s] == 0) continue;
      if (bound_index[s] >= 0) {
        key[bound_index[s]] = m[s];
      } else if (pass[s] >= 0) {
        rest[pass[s]] = m[s];
      } else {
        throw Error("unbound variable " + u.name(s) + " in substitution");
      }
    }
    auto it = groups.try_emplace(key, target).first;
    it->second.add_term(rest, c);
  }

  std::vector<std::vector<MultiPoly>> powers(bindings.size());
  auto power = [&](std::size_t b, int e) -> const MultiPoly& {
    auto& table = powers[b];
    if (table.empty()) table.push_back(MultiPoly::constant(target, 1));
    while (static_cast<int>(table.size()) <= e) table.push_back(multiply(table.back(), bindings[b].second, caps));
    return table[e];
  };

  MultiPoly out(target);
  for (const auto& [exps, coeff] : groups) {
    MultiPoly term = coeff;
    for (std::size_t b = 0; b < exps.size() && !term.is_zero(); ++b)
      if (exps[b] > 0) term = multiply(term, power(b, exps[b]), caps);
    out += term;
  }
  if (!caps.empty()) {
    for (const auto& cap : caps) out = out.truncated(cap.family, cap.max);
  }
  return out;
}

std::string MultiPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    std::string factors;
    for (int s = 0; s < u_.size(); ++s) {
      if (m[s] == 0) continue;
      if (!factors.empty()) factors += "*";
      factors += u_.name(s);
      if (m[s] > 1) factors += "^" + std::to_string(m[s]);
    }
    bool negative;
    GaussianRational mag = c;
    if (c.is_real()) {
      negative = sgn(c.re()) < 0;
    } else if (sgn(c.re()) == 0) {
      negative = sgn(c.im()) < 0;
    } else {
      negative = false;
    }
    if (negative) mag = -c;
    std::string coef;
    if (!mag.is_one() || factors.empty()) coef = mag.to_string();
    std::string term = coef.empty() ? factors : (factors.empty() ? coef : coef + "*" + factors);
    if (first) {
      out = negative ? "-" + term : term;
      first = false;
    } else {
      out += negative ? " - " : " + ";
      out += term;
    }
  }
  return out;
}

}  // namespace qmomap
