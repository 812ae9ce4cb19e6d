#include <doctest.h>

#include <map>
#include <set>
#include <numeric>
#include <random>

#include "qmomap/error.hpp"
#include "qmomap/expand.hpp"
#include "qmomap/parse.hpp"

using namespace qmomap;

namespace {

const Universe X1{1, 0, 0, false};

MultiPoly C(const char* s) { return parse_poly(s, X1); }

// Build a z-polynomial from (exponents, coefficient) pairs.
ZPoly zpoly(int D, std::vector<std::pair<Monomial, const char*>> terms) {
  ZPoly z(D, X1);
  for (auto& [m, c] : terms) z.add_term(m, C(c));
  return z;
}

ExternalInsertion ext(const char* name, std::vector<ZPoly> orders) { return {name, std::move(orders)}; }

// S = z1 z2 + interaction, B = [[0,1],[1,0]].
PhaseModel toy_model() {
  auto taylor = zpoly(2, {{{1, 1}, "1"}, {{3, 0}, "x1"}, {{1, 2}, "1/2"}, {{2, 1}, "-1/3*x1"}, {{0, 4}, "1/4"}, {{2, 2}, "x1^2"}});
  auto f0 = zpoly(2, {{{0, 0}, "1"}, {{1, 0}, "x1"}, {{0, 2}, "2"}, {{1, 1}, "-1"}});
  auto f1 = zpoly(2, {{{0, 1}, "3"}, {{2, 0}, "x1"}});
  auto g0 = zpoly(2, {{{0, 1}, "1"}, {{1, 1}, "1/2"}, {{0, 0}, "x1"}});
  return PhaseModel::constant_hessian({{"z", 2}}, taylor, C("0"), {ext("f", {f0, f1}), ext("g", {g0})});
}

long long double_factorial(int n) {
  long long r = 1;
  for (int k = n; k > 1; k -= 2) r *= k;
  return r;
}

long long fact(int n) {
  long long r = 1;
  for (int k = 2; k <= n; ++k) r *= k;
  return r;
}

}  // namespace

TEST_CASE("exact matrices") {
  ScalarMatrix a = {{2, 1}, {1, 1}};
  CHECK(multiply(a, inverse(a)) == identity_matrix(2));
  CHECK(determinant(a) == GaussianRational(1));
  CHECK_THROWS_AS(inverse(ScalarMatrix{{1, 2}, {2, 4}}), Error);
  auto cp = characteristic_polynomial(ScalarMatrix{{1, 2}, {3, 4}});
  CHECK(cp == std::vector<GaussianRational>{1, -5, -2});
  auto in = inertia(ScalarMatrix{{0, -1, 0, 0}, {-1, 0, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 0}});
  CHECK(in.positive == 2);
  CHECK(in.negative == 1);
  CHECK(in.zero == 1);
  CHECK_THROWS_AS(inertia(ScalarMatrix{{0, 1}, {2, 0}}), Error);
}

TEST_CASE("graph enumeration small cases") {
  auto g0 = enumerate_graphs(2, 0);
  REQUIRE(g0.size() == 1);
  CHECK(g0[0].edges.empty());
  CHECK(g0[0].aut == 1);

  auto g1 = enumerate_graphs(2, 1);
  // empty, edge, two external loops, two tadpoles, figure eight, theta, dumbbell
  CHECK(g1.size() == 9);
  std::multiset<long long> auts;
  for (const auto& g : g1) auts.insert(g.aut);
  CHECK(auts == std::multiset<long long>{1, 1, 2, 2, 2, 2, 8, 12, 8});

  CHECK_THROWS_AS(enumerate_graphs(0, 1), Error);
  CHECK_THROWS_AS(enumerate_graphs(2, -1), Error);
  for (const auto& g : enumerate_graphs(3, 2)) {
    auto val = g.valences();
    for (int v = g.n_ext; v < g.vertex_count(); ++v) CHECK(val[v] >= 3);
    CHECK(g.power() <= 2);
  }
}

TEST_CASE("property: enumeration matches pairing bookkeeping") {
  // For each degree configuration: Σ 1/|Aut| = (2E-1)!! / (Π val! · Π_k m_k!).
  for (int n_ext = 1; n_ext <= 3; ++n_ext)
    for (int P = 0; P <= 3; ++P) {
      if (n_ext == 3 && P == 3) continue;
      std::map<std::vector<int>, mpq_class> sums;
      std::map<std::vector<int>, int> edges;
      for (const auto& g : enumerate_graphs(n_ext, P)) {
        auto val = g.valences();
        std::vector<int> key(val.begin(), val.begin() + n_ext);
        key.push_back(-1);
        key.insert(key.end(), g.internal_valences.begin(), g.internal_valences.end());
        sums[key] += mpq_class(mpz_class(1), mpz_class(static_cast<long>(g.aut)));
        edges[key] = static_cast<int>(g.edges.size());
      }
      for (const auto& [key, s] : sums) {
        int E = edges[key];
        mpz_class denom = 1;
        std::map<int, int> mult;
        bool internal = false;
        for (int v : key) {
          if (v == -1) {
            internal = true;
            continue;
          }
          denom *= static_cast<long>(fact(v));
          if (internal) ++mult[v];
        }
        for (auto [k, m] : mult) denom *= static_cast<long>(fact(m));
        mpq_class expect(mpz_class(static_cast<long>(double_factorial(2 * E - 1))), denom);
        expect.canonicalize();
        CHECK(s == expect);
      }
    }
}

TEST_CASE("golden graph counts") {
  CHECK(enumerate_graphs(2, 2).size() == 87);
  CHECK(enumerate_graphs(2, 3).size() == 922);
  CHECK(enumerate_graphs(1, 2).size() == 47);
}

TEST_CASE("table amplitudes") {
  auto model = toy_model();
  const auto& Binv = model.inverse_hessian();
  CHECK(Binv[0][1] == C("1"));
  CHECK(Binv[0][0].is_zero());
  int orders[] = {0, 0};

  FeynmanGraph empty{2, {}, {}, 1};
  CHECK(amplitude(empty, model, orders) == C("x1"));  // f(c) g(c)

  FeynmanGraph loop{2, {}, {{0, 0}}, 2};
  // Σ B⁻¹_ab ∂_a∂_b f · g(c) = 2 ∂1∂2 f · g(c)
  CHECK(amplitude(loop, model, orders) == C("2*(-1)*x1"));

  FeynmanGraph edge{2, {}, {{0, 1}}, 1};
  // B⁻¹_12 ∂1 f ∂2 g + B⁻¹_21 ∂2 f ∂1 g
  CHECK(amplitude(edge, model, orders) == C("x1*1"));
}

TEST_CASE("expansion equals the Wick oracle") {
  auto model = toy_model();
  for (int N = 0; N <= 3; ++N) {
    auto graphs = expand(model, N);
    CHECK(graphs == wick_expand(model, N));
    CHECK(graphs == expand(model, N, {false}));
  }
}

TEST_CASE("quadratic phase") {
  // No interaction, linear externals: only the edge term survives.
  auto taylor = zpoly(2, {{{2, 0}, "1/2"}, {{0, 2}, "-1/2"}});
  auto f = zpoly(2, {{{1, 0}, "x1"}, {{0, 1}, "1"}});
  auto g = zpoly(2, {{{1, 0}, "2"}, {{0, 1}, "3"}});
  auto model = PhaseModel::constant_hessian({{"z", 2}}, taylor, C("0"), {ext("f", {f}), ext("g", {g})});
  HbarSeries expect(X1, 2);
  expect.coeff(1) = C("i*(2*x1 - 3)");  // iħ (B⁻¹_11 f1 g1 + B⁻¹_22 f2 g2)
  CHECK(wick_expand(model, 2) == expect);
  CHECK(expand(model, 2) == expect);
  // Constant externals, no interaction: no corrections.
  auto one = zpoly(2, {{{0, 0}, "5"}});
  auto trivial = PhaseModel::constant_hessian({{"z", 2}}, taylor, C("0"), {ext("f", {one}), ext("g", {one})});
  CHECK(expand(trivial, 3) == HbarSeries::constant(X1, 3, 25));
}

TEST_CASE("prefactor rejection") {
  auto positive = zpoly(2, {{{2, 0}, "1/2"}, {{0, 2}, "1/2"}});
  CHECK_THROWS_AS(PhaseModel::constant_hessian({{"z", 2}}, positive, C("0"), {}), Error);
  auto scaled = zpoly(2, {{{1, 1}, "2"}});
  CHECK_THROWS_AS(PhaseModel::constant_hessian({{"z", 2}}, scaled, C("0"), {}), Error);
  auto varying = zpoly(2, {{{1, 1}, "x1"}});
  CHECK_THROWS_AS(PhaseModel::constant_hessian({{"z", 2}}, varying, C("0"), {}), Error);
  auto linear = zpoly(2, {{{1, 0}, "1"}, {{1, 1}, "1"}});
  CHECK_THROWS_AS(PhaseModel::constant_hessian({{"z", 2}}, linear, C("0"), {}), Error);
}

TEST_CASE("cotangent phase certificate") {
  // Ψ(v) = x1 v^2 + v^3 with z = (v, δθ).
  auto psi = zpoly(2, {{{2, 0}, "x1"}, {{3, 0}, "1"}});
  auto model = PhaseModel::cotangent({{"v", 1}, {"dth", 1}}, psi, C("0"), {ext("u", {zpoly(2, {{{0, 2}, "1"}})})});
  CHECK(model.abs_det().is_one());
  CHECK(model.signature() == 0);
  CHECK(model.inverse_hessian()[1][1] == C("-2*x1"));
  CHECK(model.inverse_hessian()[0][1] == C("-1"));
  CHECK(model.inverse_hessian()[0][0].is_zero());
  CHECK(expand(model, 3) == wick_expand(model, 3));
  auto bad = zpoly(2, {{{1, 1}, "1"}});
  CHECK_THROWS_AS(PhaseModel::cotangent({{"v", 1}, {"dth", 1}}, bad, C("0"), {}), Error);
}

TEST_CASE("property: amplitudes are invariant under internal relabeling") {
  auto model = toy_model();
  std::mt19937 rng(4);
  int orders[] = {1, 0};
  for (const auto& g : enumerate_graphs(2, 2)) {
    int V = static_cast<int>(g.internal_valences.size());
    if (V < 2) continue;
    std::vector<int> perm(g.vertex_count());
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin() + g.n_ext, perm.end(), rng);
    FeynmanGraph h = g;
    h.internal_valences.assign(V, 0);
    for (int k = 0; k < V; ++k) h.internal_valences[perm[g.n_ext + k] - g.n_ext] = g.internal_valences[k];
    for (auto& [a, b] : h.edges) {
      a = perm[a];
      b = perm[b];
      if (a > b) std::swap(a, b);
    }
    CHECK(amplitude(g, model, orders) == amplitude(h, model, orders));
  }
}
