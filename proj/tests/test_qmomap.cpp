#include <doctest.h>

#include "generators.hpp"
#include "qmomap/error.hpp"
#include "qmomap/parse.hpp"
#include "qmomap/qmomap.hpp"
#include "qmomap/uea.hpp"

using namespace qmomap;

namespace {

QmmModel trivial(const InfinitesimalAction& act, int N) { return QmmModel(GSystem::trivial(act, N, N + 2)); }

MultiPoly P(const QmmModel& m, const char* s) { return parse_poly(s, m.universe()); }

std::vector<InfinitesimalAction> matrix_actions() {
  return {InfinitesimalAction::translations(2), InfinitesimalAction::so3_rotations(), InfinitesimalAction::quadratic1d()};
}

}  // namespace

TEST_CASE("translations: J^a u = u(-xi)") {
  QmmModel m = trivial(InfinitesimalAction::translations(2), 4);
  for (const char* u : {"1", "th1", "th2", "th1*th2", "th1^2", "th1^3", "th1^2*th2 - 3*th2"}) {
    CAPTURE(u);
    MultiPoly up = P(m, u);
    std::vector<std::pair<Var, MultiPoly>> b{{th_(0), P(m, "-xi1")}, {th_(1), P(m, "-xi2")}};
    CHECK(qmm_apply(m, up) == HbarSeries::from_poly(substitute(up, b, m.universe()), 4));
  }
}

TEST_CASE("unitality, first term and pruning invariance") {
  for (const auto& act : matrix_actions()) {
    QmmModel m = trivial(act, 3);
    CAPTURE(m.universe().describe());
    CHECK(qmm_apply(m, P(m, "1")) == HbarSeries::constant(m.universe(), 3, 1));
    for (const char* u : {"th1", "th1^2", "th1^3"}) {
      HbarSeries j = qmm_apply(m, P(m, u));
      CHECK(j[0] == comomentum_pullback(act, P(m, u)));
      CHECK(qmm_apply(m, P(m, u), {false}) == j);
    }
  }
}

TEST_CASE("quadratic action has quantum corrections") {
  QmmModel m = trivial(InfinitesimalAction::quadratic1d(), 3);
  HbarSeries j = qmm_apply(m, P(m, "th1^2"));
  CHECK(j[0] == P(m, "x1^4*xi1^2"));
  CHECK_FALSE((j - HbarSeries::from_poly(j[0], 3)).is_zero());
  MESSAGE(j.to_string());
}

TEST_CASE("linear elements: closed formula equals the expansion") {
  for (const auto& act : matrix_actions()) {
    QmmModel m = trivial(act, 3);
    for (int i = 0; i < act.n(); ++i) {
      Universe du{0, act.n(), 0, false};
      CHECK(qmm_linear(m, i) == qmm_apply(m, MultiPoly::variable(du, th_(i))));
      CHECK(qmm_linear(m, i) == HbarSeries::from_poly(classical_momentum(act)[i], 3));
    }
  }
  auto q = InfinitesimalAction::quadratic1d();
  QmmModel g(GSystem::gauge(q, parse_poly("x1^2", q.universe()), 3, 6));
  Universe du{0, 1, 0, false};
  HbarSeries lin = qmm_linear(g, 0);
  CHECK(lin == qmm_apply(g, MultiPoly::variable(du, th_(0))));
  // (ħ/i) D_e of ħ(c∘φ − c) along e1, with D_e(c∘φ) = −x^2 · 2x
  CHECK(lin[1].is_zero());
  CHECK(lin[2] == P(g, "2*i*x1^3"));
  auto so3 = InfinitesimalAction::so3_rotations();
  QmmModel r(GSystem::gauge(so3, parse_poly("x1*x2 + x3", so3.universe()), 2, 4));
  for (int i = 0; i < 3; ++i) CHECK(qmm_linear(r, i) == qmm_apply(r, MultiPoly::variable(Universe{0, 3, 0, false}, th_(i))));
}

TEST_CASE("non Maurer-Cartan G-systems are rejected") {
  auto tr = InfinitesimalAction::translations(1);
  CHECK_THROWS_AS(QmmModel(GSystem::from_strings(tr, 2, 6, {{0, "1"}, {1, "v1*x1"}})), Error);
  CHECK_NOTHROW(QmmModel(GSystem::from_strings(tr, 2, 6, {{0, "1"}, {1, "v1*x1"}}), false));
}

TEST_CASE("morphism property") {
  for (const auto& act : matrix_actions()) {
    QmmModel m = trivial(act, 2);
    CAPTURE(m.universe().describe());
    Universe du{0, act.n(), 0, false};
    auto monos = gen::monomials(du, {Family::th}, 2);
    for (const auto& f : monos)
      for (const auto& g : monos) {
        CAPTURE(f.to_string());
        CAPTURE(g.to_string());
        CHECK(verify_morphism(m, f, g).is_zero());
      }
  }
}

TEST_CASE("morphism with a gauge G-system") {
  auto q = InfinitesimalAction::quadratic1d();
  QmmModel g(GSystem::gauge(q, parse_poly("x1", q.universe()), 2, 6));
  Universe du{0, 1, 0, false};
  CHECK(verify_morphism(g, parse_poly("th1", du), parse_poly("th1^2", du)).is_zero());
}

TEST_CASE("infinitesimal generator and commutator identity") {
  for (const auto& act : matrix_actions()) {
    QmmModel m = trivial(act, 2);
    CAPTURE(m.universe().describe());
    auto fs = gen::monomials(m.universe(), {Family::x, Family::xi}, 2);
    for (int i = 0; i < act.n(); ++i)
      for (const auto& f : fs) {
        SecondReport r = verify_second(m, i, f);
        CHECK(r.ok());
        // linear actions: no ħ tail
        if (act.d() != 1) CHECK(r.tilde == HbarSeries::from_poly(r.tilde[0], 2));
      }
  }
  QmmModel q = trivial(InfinitesimalAction::quadratic1d(), 2);
  SecondReport r = verify_second(q, 0, P(q, "xi1^2"));
  CHECK(r.ok());
  CHECK_FALSE((r.tilde - HbarSeries::from_poly(r.tilde[0], 2)).is_zero());
}

TEST_CASE("equivariance of the standard product") {
  for (const auto& act : matrix_actions()) {
    QmmModel m = trivial(act, 2);
    auto fs = gen::monomials(m.universe(), {Family::x, Family::xi}, act.d() == 3 ? 1 : 2);
    for (int i = 0; i < act.n(); ++i)
      for (const auto& f : fs)
        for (const auto& g : fs) CHECK(verify_equivariance(m, i, f, g).is_zero());
    CHECK(t_tilde(m, 0, HbarSeries::constant(m.universe(), 3, 1)).is_zero());
  }
}

TEST_CASE("invariant Hamiltonians") {
  QmmModel tr = trivial(InfinitesimalAction::translations(2), 2);
  InvariantReport t = verify_invariant_hamiltonian(tr, P(tr, "th1^2*th2"));
  CHECK(t.ok());
  CHECK_FALSE(t.anomalous());

  QmmModel so3 = trivial(InfinitesimalAction::so3_rotations(), 2);
  CHECK(verify_invariant_hamiltonian(so3, P(so3, "th1^2 + th2^2 + th3^2")).ok());
  CHECK_THROWS_WITH_AS(verify_invariant_hamiltonian(so3, P(so3, "th1^2")), doctest::Contains("{th2, f}"), Error);

  QmmModel q = trivial(InfinitesimalAction::quadratic1d(), 2);
  InvariantReport r = verify_invariant_hamiltonian(q, P(q, "th1^2"));
  CHECK(r.ok());
  CHECK(r.anomalous());
}
