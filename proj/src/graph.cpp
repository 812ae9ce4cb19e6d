#include "qmomap/graph.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <tuple>

#include "qmomap/error.hpp"

namespace qmomap {

std::vector<int> FeynmanGraph::valences() const {
  std::vector<int> val(vertex_count(), 0);
  for (auto [a, b] : edges) {
    ++val[a];
    ++val[b];
  }
  return val;
}

namespace {

long long fact(int n) {
  long long r = 1;
  for (int k = 2; k <= n; ++k) r *= k;
  return r;
}

class Enumerator {
 public:
  Enumerator(int n_ext, int max_power, const GraphFilter* filter) : n_ext_(n_ext), P_(max_power), filter_(filter) {}

  std::vector<FeynmanGraph> run() {
    int max_int = filter_ ? filter_->max_valence[n_ext_] : -1;
    bool internal = !filter_ || max_int != 0;
    for (int V = 0; V <= (internal ? 2 * P_ : 0); ++V)
      for (int E = (3 * V + 1) / 2; E <= P_ + V; ++E) {
        std::vector<int> val;
        internal_valences(V, E, 2 * E, val);
      }
    std::sort(out_.begin(), out_.end(), [](const FeynmanGraph& a, const FeynmanGraph& b) {
      auto key = [](const FeynmanGraph& g) {
        return std::tuple(g.power(), g.internal_valences.size(), g.edges.size(), g.internal_valences, g.edges);
      };
      return key(a) < key(b);
    });
    return std::move(out_);
  }

 private:
  int kind(int v) const { return v < n_ext_ ? v : n_ext_; }
  bool allowed(int a, int b) const { return !filter_ || filter_->edge_allowed[kind(a)][kind(b)]; }
  int max_valence(int kind) const { return filter_ ? filter_->max_valence[kind] : -1; }

  // Nonincreasing internal valences >= 3.
  void internal_valences(int V, int E, int budget, std::vector<int>& val) {
    if (static_cast<int>(val.size()) == V) {
      std::vector<int> ext(n_ext_, 0);
      external_valences(E, 0, budget, val, ext);
      return;
    }
    int hi = val.empty() ? budget : std::min(budget, val.back());
    int cap = max_valence(n_ext_);
    if (cap >= 0) hi = std::min(hi, cap);
    int remaining = V - static_cast<int>(val.size()) - 1;
    for (int k = hi; k >= 3; --k) {
      if (budget - k < 3 * remaining) continue;
      val.push_back(k);
      internal_valences(V, E, budget - k, val);
      val.pop_back();
    }
  }

  void external_valences(int E, int j, int left, const std::vector<int>& val, std::vector<int>& ext) {
    if (j == n_ext_ - 1) {
      int cap = max_valence(j);
      if (cap >= 0 && left > cap) return;
      ext[j] = left;
      build(E, val, ext);
      return;
    }
    int cap = max_valence(j);
    for (int e = 0; e <= left && (cap < 0 || e <= cap); ++e) {
      ext[j] = e;
      external_valences(E, j + 1, left - e, val, ext);
    }
  }

  void build(int E, const std::vector<int>& val, const std::vector<int>& ext) {
    degrees_ = ext;
    degrees_.insert(degrees_.end(), val.begin(), val.end());
    nv_ = static_cast<int>(degrees_.size());
    mult_.assign(nv_ * nv_, 0);
    rem_ = degrees_;
    perms_ = permutations(val);
    E_ = E;
    fill(0, 0);
  }

  // All relabelings of internal vertices that preserve valences.
  std::vector<std::vector<int>> permutations(const std::vector<int>& val) {
    std::vector<std::vector<int>> out;
    std::vector<int> p(nv_);
    for (int k = 0; k < nv_; ++k) p[k] = k;
    auto rec = [&](auto&& self, std::size_t start) -> void {
      if (start >= val.size()) {
        out.push_back(p);
        return;
      }
      std::size_t end = start;
      while (end < val.size() && val[end] == val[start]) ++end;
      std::vector<int> group;
      for (std::size_t k = start; k < end; ++k) group.push_back(n_ext_ + static_cast<int>(k));
      std::vector<int> arrangement = group;
      do {
        for (std::size_t k = 0; k < group.size(); ++k) p[group[k]] = arrangement[k];
        self(self, end);
      } while (std::next_permutation(arrangement.begin(), arrangement.end()));
      for (int g : group) p[g] = g;
    };
    rec(rec, 0);
    return out;
  }

  // Choose multiplicities of pairs (i, j >= i) in row-major order.
  void fill(int i, int j) {
    if (i == nv_) {
      record();
      return;
    }
    if (j == nv_) {
      if (rem_[i] == 0) fill(i + 1, i + 2 <= nv_ ? i + 1 : nv_);
      return;
    }
    if (j == i) {
      int max_loops = allowed(i, i) ? rem_[i] / 2 : 0;
      for (int l = 0; l <= max_loops; ++l) {
        mult_[i * nv_ + i] = l;
        rem_[i] -= 2 * l;
        fill(i, i + 1);
        rem_[i] += 2 * l;
      }
      mult_[i * nv_ + i] = 0;
      return;
    }
    int capacity = 0;
    for (int k = j; k < nv_; ++k) capacity += rem_[k];
    if (capacity < rem_[i]) return;
    int hi = allowed(i, j) ? std::min(rem_[i], rem_[j]) : 0;
    for (int m = 0; m <= hi; ++m) {
      mult_[i * nv_ + j] = m;
      rem_[i] -= m;
      rem_[j] -= m;
      fill(i, j + 1);
      rem_[i] += m;
      rem_[j] += m;
    }
    mult_[i * nv_ + j] = 0;
  }

  std::vector<int> serialize(const std::vector<int>& p) const {
    std::vector<int> m(nv_ * nv_, 0);
    for (int a = 0; a < nv_; ++a)
      for (int b = a; b < nv_; ++b) {
        int x = mult_[a * nv_ + b];
        if (x == 0) continue;
        int pa = p[a], pb = p[b];
        if (pa > pb) std::swap(pa, pb);
        m[pa * nv_ + pb] = x;
      }
    return m;
  }

  void record() {
    std::vector<int> best;
    long long stabilizer = 0;
    auto original = serialize(perms_[0]);
    for (const auto& p : perms_) {
      auto s = serialize(p);
      if (best.empty() || s < best) best = s;
      if (s == original) ++stabilizer;
    }
    std::vector<int> key = degrees_;
    key.push_back(-1);
    key.insert(key.end(), best.begin(), best.end());
    if (!seen_.insert(key).second) return;

    FeynmanGraph g;
    g.n_ext = n_ext_;
    g.internal_valences.assign(degrees_.begin() + n_ext_, degrees_.end());
    long long aut = stabilizer;
    for (int a = 0; a < nv_; ++a)
      for (int b = a; b < nv_; ++b) {
        int x = best[a * nv_ + b];
        for (int k = 0; k < x; ++k) g.edges.emplace_back(a, b);
        aut *= fact(x);
        if (a == b) aut <<= x;
      }
    g.aut = aut;
    if (static_cast<int>(g.edges.size()) != E_) throw Error("graph enumeration produced a wrong edge count");
    out_.push_back(std::move(g));
  }

  int n_ext_, P_;
  const GraphFilter* filter_;
  std::vector<FeynmanGraph> out_;
  std::set<std::vector<int>> seen_;
  std::vector<int> degrees_, rem_, mult_;
  std::vector<std::vector<int>> perms_;
  int nv_ = 0, E_ = 0;
};

}  // namespace

std::vector<FeynmanGraph> enumerate_graphs(int n_ext, int max_power, const GraphFilter* filter) {
  if (n_ext < 1) throw Error("need at least one external vertex");
  if (max_power < 0) throw Error("max_power must be nonnegative");
  if (filter && (filter->edge_allowed.size() != static_cast<std::size_t>(n_ext + 1) ||
                 filter->max_valence.size() != static_cast<std::size_t>(n_ext + 1)))
    throw Error("graph filter does not match the number of externals");

  static std::mutex lock;
  static std::map<std::tuple<int, int, std::optional<GraphFilter>>, std::vector<FeynmanGraph>> cache;
  auto key = std::tuple(n_ext, max_power, filter ? std::optional<GraphFilter>(*filter) : std::nullopt);
  {
    std::lock_guard guard(lock);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  auto graphs = Enumerator(n_ext, max_power, filter).run();
  std::lock_guard guard(lock);
  cache.emplace(key, graphs);
  return graphs;
}

}  // namespace qmomap
