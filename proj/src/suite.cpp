#include "qmomap/suite.hpp"

#include <algorithm>

#include "qmomap/error.hpp"
#include "qmomap/io.hpp"
#include "qmomap/parse.hpp"

namespace qmomap {

using nlohmann::json;

namespace {

constexpr const char* kInfinitesimal = "checked in infinitesimal form: derivative at the unit along each basis direction";

std::vector<MultiPoly> monomials(const Universe& u, std::vector<Family> families, int max_deg) {
  std::vector<int> slots;
  for (Family f : families)
    for (int k = 0; k < u.family_size(f); ++k) slots.push_back(u.slot({f, k}));
  std::vector<Monomial> ms;
  Monomial m(u.size(), 0);
  auto rec = [&](auto&& self, std::size_t idx, int left) -> void {
    if (idx == slots.size()) {
      ms.push_back(m);
      return;
    }
    for (int e = 0; e <= left; ++e) {
      m[slots[idx]] = static_cast<std::uint8_t>(e);
      self(self, idx + 1, left - e);
    }
    m[slots[idx]] = 0;
  };
  rec(rec, 0, max_deg);
  std::sort(ms.begin(), ms.end(), GrlexLess{});
  std::vector<MultiPoly> out;
  for (auto& e : ms) out.push_back(MultiPoly::monomial(u, e));
  return out;
}

std::string basis(int i) { return "e" + std::to_string(i + 1); }

CheckResult make(std::string test, json inputs, const HbarSeries& residual) {
  return {std::move(test), std::move(inputs), io::residual_to_json(residual), residual.is_zero(), nullptr};
}

}  // namespace

json CheckResult::to_json() const {
  json j{{"test", test}, {"inputs", inputs}, {"residual", residual}, {"status", pass ? "PASS" : "FAIL"}};
  if (!extra.is_null())
    for (const auto& [k, v] : extra.items()) j[k] = v;
  return j;
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"mc", "unital", "linear", "morphism", "second", "equivariance", "casimir"};
  return names;
}

CheckResult mc_check(const GSystem& a) {
  McReport r = mc_residual(a);
  CheckResult c = make("mc", {{"N", a.N()}, {"M", a.M()}}, r.residual);
  c.extra = {{"location", r.location()}};
  return c;
}

std::vector<CheckResult> run_suite(const QmmModel& model, const std::string& suite, int deg,
                                   const std::vector<std::string>& casimirs) {
  const InfinitesimalAction& act = model.action();
  const Universe& U = model.universe();
  const Universe du{0, act.n(), 0, false};
  std::vector<CheckResult> out;
  if (suite == "mc") {
    out.push_back(mc_check(model.gsystem()));
  } else if (suite == "unital") {
    out.push_back(make("unital", {{"u", "1"}}, qmm_apply(model, MultiPoly::constant(du, 1)) - HbarSeries::constant(U, model.N(), 1)));
  } else if (suite == "linear") {
    for (int i = 0; i < act.n(); ++i)
      out.push_back(make("linear", {{"i", basis(i)}}, qmm_linear(model, i) - qmm_apply(model, MultiPoly::variable(du, th_(i)))));
  } else if (suite == "morphism") {
    auto ms = monomials(du, {Family::th}, deg);
    for (const auto& f : ms)
      for (const auto& g : ms)
        out.push_back(make("morphism", {{"f", f.to_string()}, {"g", g.to_string()}}, verify_morphism(model, f, g)));
  } else if (suite == "second") {
    for (int i = 0; i < act.n(); ++i)
      for (const auto& f : monomials(U, {Family::x, Family::xi}, deg)) {
        SecondReport r = verify_second(model, i, f);
        CheckResult c;
        c.test = "second";
        c.inputs = {{"i", basis(i)}, {"f", f.to_string()}};
        c.pass = r.ok();
        c.residual = r.ok() ? json("0")
                            : json{{"generator", io::residual_to_json(r.generator.coefficients())},
                                   {"leading", r.leading.is_zero() ? "0" : r.leading.to_string()},
                                   {"commutator", io::residual_to_json(r.commutator.coefficients())}};
        c.extra = {{"t_tilde", io::series_to_json(r.tilde)}, {"form", kInfinitesimal}};
        out.push_back(std::move(c));
      }
  } else if (suite == "equivariance") {
    auto fs = monomials(U, {Family::x, Family::xi}, deg);
    for (int i = 0; i < act.n(); ++i)
      for (const auto& f : fs)
        for (const auto& g : fs) {
          CheckResult c = make("equivariance", {{"i", basis(i)}, {"f", f.to_string()}, {"g", g.to_string()}},
                               verify_equivariance(model, i, f, g));
          c.extra = {{"form", kInfinitesimal}};
          out.push_back(std::move(c));
        }
  } else if (suite == "casimir") {
    if (casimirs.empty()) throw Error("casimir suite needs at least one Casimir polynomial");
    for (const auto& text : casimirs) {
      MultiPoly f = parse_poly(text, du);
      InvariantReport r = verify_invariant_hamiltonian(model, f);
      for (int i = 0; i < act.n(); ++i) {
        CheckResult c = make("casimir", {{"i", basis(i)}, {"f", f.to_string()}}, r.quantum[i].coefficients());
        c.extra = {{"naive_commutator", io::residual_to_json(r.naive[i].coefficients())}, {"form", kInfinitesimal}};
        out.push_back(std::move(c));
      }
    }
  } else {
    throw Error("unknown suite '" + suite + "'");
  }
  return out;
}

}  // namespace qmomap
