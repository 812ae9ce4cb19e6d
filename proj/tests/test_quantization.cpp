#include <doctest.h>

#include <random>

#include "generators.hpp"
#include "qmomap/error.hpp"
#include "qmomap/gsystem.hpp"
#include "qmomap/gutt_phase.hpp"
#include "qmomap/parse.hpp"
#include "qmomap/symbol.hpp"
#include "qmomap/uea.hpp"

using namespace qmomap;

namespace {

const Universe U1{1, 0, 0, false};
const Universe U2{2, 0, 0, false};

HbarSeries S(const Universe& u, int N, std::vector<const char*> coeffs) {
  HbarSeries s(u, N);
  for (std::size_t k = 0; k < coeffs.size(); ++k) s.coeff(static_cast<int>(k)) = parse_poly(coeffs[k], u);
  return s;
}

const GaussianRational I = GaussianRational::i();

}  // namespace

TEST_CASE("op_apply on monomial symbols") {
  HbarSeries psi = S(U1, 2, {"x1^3 + 2*x1"});
  CHECK(op_apply(S(U1, 2, {"1"}), psi) == psi);
  // (ħ/i)∂ψ = -iħ(3x^2 + 2)
  CHECK(op_apply(S(U1, 2, {"xi1"}), psi) == S(U1, 2, {"0", "-3*i*x1^2 - 2*i"}));
  CHECK(op_apply(S(U1, 2, {"x1*xi1"}), psi) == S(U1, 2, {"0", "-3*i*x1^3 - 2*i*x1"}));
  // (ħ/i)^2 ∂^2 ψ = -ħ^2 6x
  CHECK(op_apply(S(U1, 2, {"xi1^2"}), psi) == S(U1, 2, {"0", "0", "-6*x1"}));
  CHECK(op_apply(S(U1, 1, {"xi1^2"}), S(U1, 1, {"x1^3"})).is_zero());
  CHECK_THROWS_AS(op_apply(S(U1, 1, {"1"}), S(U1, 2, {"1"})), Error);
}

TEST_CASE("symbol extraction examples and errors") {
  auto id = [](const HbarSeries& p) { return p; };
  CHECK(symbol_extract(id, U1, 2, 3) == S(U1, 3, {"1"}));
  auto d = [](const HbarSeries& p) {
    return (p.map([](const MultiPoly& q) { return q.diff(x_(0)); }) * -GaussianRational::i()).shift_up(1);
  };
  CHECK(symbol_extract(d, U1, 1, 3) == S(U1, 3, {"xi1"}));
  // a plain derivative without ħ has no symbol
  auto plain = [](const HbarSeries& p) { return p.map([](const MultiPoly& q) { return q.diff(x_(0)); }); };
  CHECK_THROWS_AS(symbol_extract(plain, U1, 1, 2), Error);
  // second-order operator with a first-order bound is detected on degree 2
  auto d2 = [](const HbarSeries& p) { return p.map([](const MultiPoly& q) { return q.diff(x_(0), 2); }).shift_up(2); };
  CHECK_THROWS_AS(symbol_extract(d2, U1, 1, 2), Error);
  CHECK(symbol_extract(d2, U1, 2, 2) == S(U1, 2, {"-xi1^2"}));
  // nonlinear input is not a differential operator
  auto sq = [](const HbarSeries& p) { return p * p; };
  CHECK_THROWS_AS(symbol_extract(sq, U1, 2, 1), Error);
}

TEST_CASE("symbol extraction inverts op_apply (property)") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 15; ++trial) {
    const Universe& u = trial % 2 ? U2 : U1;
    HbarSeries f = gen::series(rng, u, {Family::x, Family::xi}, 3, 4, 2);
    int D = 0;
    for (const auto& c : f.coeffs()) D = std::max(D, c.degree(Family::xi));
    auto op = [&](const HbarSeries& p) { return op_apply(f.with_order(p.order()), p); };
    CHECK(symbol_extract(op, u, D, 2) == f);
  }
}

TEST_CASE("symbol extraction relative to a base point") {
  // ψ ↦ x·(ħ/i)ψ'(2x) has symbol x ξ at base point 2x
  auto op = [](const HbarSeries& p) {
    const Universe& u = p.universe();
    std::vector<std::pair<Var, MultiPoly>> b{{x_(0), parse_poly("2*x1", u)}};
    return p.map([&](const MultiPoly& q) { return parse_poly("-i*x1", u) * substitute(q.diff(x_(0)), b, u); }).shift_up(1);
  };
  ExtractOptions opt;
  opt.base_point = std::vector<MultiPoly>{parse_poly("2*x1", U1)};
  CHECK(symbol_extract(op, U1, 1, 2, opt) == S(U1, 2, {"x1*xi1"}));
}

TEST_CASE("standard product examples") {
  CHECK(star_standard(S(U1, 2, {"xi1"}), S(U1, 2, {"x1"})) == S(U1, 2, {"x1*xi1", "-i"}));
  CHECK(star_standard(S(U1, 2, {"x1"}), S(U1, 2, {"xi1"})) == S(U1, 2, {"x1*xi1"}));
  HbarSeries f = S(U2, 3, {"xi1^2 + xi1*xi2", "3*xi2"}), g = S(U2, 3, {"xi2^3 - 1"});
  CHECK(star_standard(f, g) == f * g);
  CHECK(star_standard_oracle(S(U1, 2, {"xi1"}), S(U1, 2, {"x1"})) == S(U1, 2, {"x1*xi1", "-i"}));
}

TEST_CASE("standard product: oracle, unit, associativity, leading commutator (property)") {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 10; ++trial) {
    const Universe& u = trial % 2 ? U2 : U1;
    const int N = 3;
    HbarSeries f = gen::series(rng, u, {Family::x, Family::xi}, 3, 3, N);
    HbarSeries g = gen::series(rng, u, {Family::x, Family::xi}, 3, 3, N);
    HbarSeries h = gen::series(rng, u, {Family::x, Family::xi}, 2, 3, N);
    CHECK(star_standard(f, g) == star_standard_oracle(f, g));
    HbarSeries one = HbarSeries::constant(u, N, 1);
    CHECK(star_standard(f, one) == f);
    CHECK(star_standard(one, f) == f);
    CHECK(star_standard(star_standard(f, g), h) == star_standard(f, star_standard(g, h)));
    HbarSeries c = (star_standard(f, g) - star_standard(g, f)) * I;
    CHECK(c[0].is_zero());
    CHECK(c.shift_down(1)[0] == canonical_bracket(f[0], g[0]));
  }
}

TEST_CASE("SymbolOperator algebra matches the symbol calculus") {
  std::mt19937 rng(8);
  for (int trial = 0; trial < 8; ++trial) {
    const Universe& u = trial % 2 ? U2 : U1;
    HbarSeries f = gen::series(rng, u, {Family::x, Family::xi}, 3, 3, 3);
    HbarSeries g = gen::series(rng, u, {Family::x, Family::xi}, 3, 3, 3);
    HbarSeries psi = gen::series(rng, u, {Family::x}, 4, 3, 3);
    SymbolOperator A = SymbolOperator::quantize(f), B = SymbolOperator::quantize(g);
    CHECK(A.apply(psi) == op_apply(f, psi));
    CHECK(compose(A, B) == SymbolOperator::quantize(star_standard(f, g)));
    CHECK(commutator(A, B) == SymbolOperator::quantize(star_standard(f, g) - star_standard(g, f)));
    // Op(f) at order N + deg ξ recovers f at order N
    HbarSeries fl = f.with_order(1);
    CHECK(SymbolOperator::quantize(fl.with_order(4)).symbol(1) == fl);
  }
}

TEST_CASE("quantize_scaled") {
  // Op((i/ħ)(-ξ1)) = -∂
  SymbolOperator op = SymbolOperator::quantize_scaled(S(U1, 2, {"-xi1"}));
  CHECK(op.order() == 1);
  CHECK(op.apply(S(U1, 1, {"x1^2"})) == S(U1, 1, {"-2*x1"}));
  CHECK_THROWS_AS(SymbolOperator::quantize_scaled(S(U1, 2, {"x1"})), Error);
  CHECK(SymbolOperator::quantize_scaled(S(U1, 2, {"0", "x1"})).apply(S(U1, 1, {"1"})) == S(U1, 1, {"i*x1"}));
}

TEST_CASE("Gutt product through the BCH phase") {
  const Universe th{0, 3, 0, false};
  auto P = [&](const char* s) { return parse_poly(s, th); };
  HbarSeries r = gutt_via_phase(LieAlgebra::so3(), P("th1"), P("th2"), 2);
  HbarSeries expected(th, 2);
  expected.coeff(0) = P("th1*th2");
  expected.coeff(1) = P("-1/2*i*th3");
  CHECK(r == expected);
  CHECK(gutt_via_phase(LieAlgebra::so3(), P("1"), P("th1^2*th3"), 3) == HbarSeries::from_poly(P("th1^2*th3"), 3));
  CHECK(gutt_via_phase(LieAlgebra::abelian(3), P("th1^2 + th2"), P("th1*th3"), 3) ==
        HbarSeries::from_poly(P("th1^3*th3 + th1*th2*th3"), 3));
  CHECK(gutt_via_phase(LieAlgebra::so3(), P("th1^2"), P("th2*th3"), 3) == gutt_pbw(LieAlgebra::so3(), P("th1^2"), P("th2*th3"), 3));
  CHECK(gutt_via_phase(LieAlgebra::so3(), P("th1^2"), P("th2^2"), 3, {false}) ==
        gutt_via_phase(LieAlgebra::so3(), P("th1^2"), P("th2^2"), 3, {true}));
  const Universe heis{0, 3, 0, false};
  CHECK(gutt_via_phase(LieAlgebra::heisenberg(), P("th1*th2"), P("th2^2"), 3) ==
        gutt_pbw(LieAlgebra::heisenberg(), P("th1*th2"), P("th2^2"), 3));
  CHECK_THROWS_AS(gutt_via_phase(LieAlgebra::so3(), parse_poly("x1", Universe{1, 3, 0, false}), parse_poly("th1", Universe{1, 3, 0, false}), 1), Error);
}

TEST_CASE("G-system validation") {
  auto act = InfinitesimalAction::translations(1);
  CHECK(GSystem::trivial(act, 2, 6).is_trivial());
  CHECK_NOTHROW(GSystem::from_strings(act, 2, 6, {{0, "1"}, {1, "v1*x1*xi1"}}));
  CHECK_THROWS_AS(GSystem::from_strings(act, 2, 6, {{0, "2"}}), Error);
  CHECK_THROWS_AS(GSystem::from_strings(act, 2, 6, {{0, "1"}, {1, "x1"}}), Error);
  CHECK_THROWS_AS(GSystem::from_strings(act, 2, 6, {{0, "1"}, {1, "v1*xi1^2"}}), Error);
  CHECK_THROWS_AS(GSystem::from_strings(act, 2, 2, {{0, "1 + v1^3"}}), Error);
  CHECK_THROWS_AS(GSystem::from_strings(act, 2, 6, {{0, "1 + v2"}}), Error);
  CHECK_THROWS_AS(GSystem::from_strings(act, 2, 6, {{0, "1"}, {3, "v1"}}), Error);
  CHECK_THROWS_AS(GSystem::from_strings(act, 2, 6, {{1, "th1*v1"}, {0, "1"}}), Error);
}

TEST_CASE("t_apply examples") {
  auto tr = InfinitesimalAction::translations(2);
  const Universe& u = tr.universe();
  GSystem a = GSystem::trivial(tr, 2, 4);
  HbarSeries psi = HbarSeries::from_poly(parse_poly("x1^2*x2 + x2", u), 2);
  HbarSeries shifted = HbarSeries::from_poly(parse_poly("(x1 - v1)^2*(x2 - v2) + x2 - v2", u), 2);
  CHECK(t_apply(a, LieVector::symbolic(u, 2), psi) == shifted);
  CHECK(t_apply(a, LieVector::zero(u, 2), psi) == psi);

  auto q = InfinitesimalAction::quadratic1d();
  const Universe& uq = q.universe();
  const int M = 5;
  GSystem b = GSystem::trivial(q, 1, M);
  // φ_{exp(-v)}(x) = x / (1 + v x) = Σ_k (-v)^k x^{k+1}
  MultiPoly flow(uq);
  for (int k = 0; k <= M; ++k)
    flow += parse_poly("-v1", uq).pow(k) * parse_poly("x1", uq).pow(k + 1);
  std::vector<DegreeCap> caps{{Family::v, M}};
  MultiPoly expected = multiply(flow, flow, caps);
  CHECK(t_apply(b, LieVector::symbolic(uq, 1), HbarSeries::from_poly(parse_poly("x1^2", uq), 1)) ==
        HbarSeries::from_poly(expected, 1));

  // ħ v1 ξ1 acts as ħ v1 (ħ/i)∂ at the shifted point
  GSystem c = GSystem::from_strings(InfinitesimalAction::translations(1), 2, 3, {{0, "1"}, {1, "v1*xi1"}});
  const Universe& u1 = c.action().universe();
  CHECK(t_apply(c, LieVector::symbolic(u1, 1), HbarSeries::from_poly(parse_poly("x1^2", u1), 2)) ==
        S(u1, 2, {"(x1 - v1)^2", "0", "-2*i*v1*(x1 - v1)"}));
}

TEST_CASE("coboundary and composition of amplitudes") {
  auto tr = InfinitesimalAction::translations(1);
  const Universe& u = tr.universe();
  GSystem one = GSystem::trivial(tr, 2, 4);
  CHECK(coboundary(one) == HbarSeries::constant(u, 2, -1));
  GSystem a = GSystem::from_strings(tr, 2, 4, {{0, "1 + v1^2"}, {1, "v1*x1"}});
  CHECK(coboundary(a) == S(u, 2, {"-1 - (v1 + v2)^2", "-(v1 + v2)*x1"}));

  auto so3 = InfinitesimalAction::so3_rotations();
  GSystem b = GSystem::from_strings(so3, 1, 3, {{0, "1"}, {1, "v1*x2"}});
  const Universe& us = so3.universe();
  // BCH_1(v, w) = v1 + w1 + ½(v2 w3 − v3 w2) + third-order terms
  MultiPoly cob = -coboundary(b)[1];
  CHECK(cob.homogeneous_part(Family::v, 1) == parse_poly("(v1 + v4)*x2", us));
  CHECK(cob.homogeneous_part(Family::v, 2) == parse_poly("1/2*(v2*v6 - v3*v5)*x2", us));

  for (const auto& act : {tr, InfinitesimalAction::quadratic1d()}) {
    GSystem t = GSystem::trivial(act, 2, 4);
    CHECK(amplitude_compose(t, t) == HbarSeries::constant(act.universe(), 2, 1));
  }
}

TEST_CASE("Maurer-Cartan residual") {
  for (const auto& act : {InfinitesimalAction::translations(2), InfinitesimalAction::so3_rotations(),
                          InfinitesimalAction::heisenberg(), InfinitesimalAction::quadratic1d()}) {
    CAPTURE(act.universe().describe());
    McReport r = mc_residual(GSystem::trivial(act, 2, 4));
    CHECK(r.ok());
    CHECK(r.location() == "0");
  }
  auto tr = InfinitesimalAction::translations(1);
  McReport bad = mc_residual(GSystem::from_strings(tr, 2, 4, {{0, "1"}, {1, "v1*x1"}}));
  CHECK_FALSE(bad.ok());
  CHECK(bad.residual.valuation() == 1);
  // ħ¹ part: v1 x1 + w1 (x1 − v1) − (v1 + w1) x1
  CHECK(bad.residual[1] == parse_poly("-v1*v2", tr.universe()));
  CHECK(bad.location() == "hbar^1: -v1*v2");
  GSystem broken = GSystem::from_strings(InfinitesimalAction::quadratic1d(), 2, 4, {{0, "1"}, {1, "v1*x1*xi1"}});
  CHECK(mc_residual(broken).residual == coboundary(broken) + amplitude_compose(broken, broken));

  // gauge transforms of the trivial system satisfy Maurer-Cartan
  auto q = InfinitesimalAction::quadratic1d();
  CHECK(mc_residual(GSystem::gauge(q, parse_poly("x1^2", q.universe()), 2, 4)).ok());
  auto so3 = InfinitesimalAction::so3_rotations();
  CHECK(mc_residual(GSystem::gauge(so3, parse_poly("x1*x2", so3.universe()), 1, 3)).ok());
}

TEST_CASE("leading amplitude inverse identity") {
  for (const auto& act : {InfinitesimalAction::quadratic1d(), InfinitesimalAction::so3_rotations()}) {
    const Universe& u = act.universe();
    const int M = 4;
    GSystem a = GSystem::gauge(act, parse_poly(act.d() == 1 ? "x1" : "x1 + x2*x3", u), 1, M, 0);
    CHECK(mc_residual(a).ok());
    std::vector<DegreeCap> caps{{Family::v, M}};
    auto phi = flow_at(act, a.flow(), LieVector::symbolic(u, act.n()), caps);
    std::vector<std::pair<Var, MultiPoly>> bind;
    for (int i = 0; i < act.n(); ++i) bind.emplace_back(v_(i), -MultiPoly::variable(u, v_(i)));
    for (int k = 0; k < act.d(); ++k) bind.emplace_back(x_(k), phi[k]);
    MultiPoly inv = substitute(a.P()[0], bind, u, caps);
    CHECK(multiply(a.P()[0], inv, caps) == MultiPoly::constant(u, 1));
  }
}

TEST_CASE("infinitesimal generator of T^a") {
  auto tr = InfinitesimalAction::translations(2);
  const Universe& u = tr.universe();
  SymbolOperator t1 = t_infinitesimal(GSystem::trivial(tr, 2, 4), 0);
  CHECK(t1 == SymbolOperator(S(u, 2, {"-xi1"})));
  // ħ v1 x2 adds multiplication by ħ x2
  SymbolOperator t2 = t_infinitesimal(GSystem::from_strings(tr, 2, 4, {{0, "1"}, {1, "v1*x2"}}), 0);
  CHECK(t2 == SymbolOperator(S(u, 2, {"-xi1", "x2"})));
  auto q = InfinitesimalAction::quadratic1d();
  CHECK(t_infinitesimal(GSystem::trivial(q, 2, 4), 0) == SymbolOperator(S(q.universe(), 2, {"-x1^2*xi1"})));
  CHECK_THROWS_AS(t_infinitesimal(GSystem::trivial(q, 2, 4), 1), Error);
}
