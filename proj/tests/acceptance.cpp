// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.
#include <chrono>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <functional>
#include <map>
#include <random>
#include <string>

#include "generators.hpp"
#include "qmomap/error.hpp"
#include "qmomap/expand.hpp"
#include "qmomap/graph.hpp"
#include "qmomap/gutt_phase.hpp"
#include "qmomap/io.hpp"
#include "qmomap/matrix.hpp"
#include "qmomap/parse.hpp"
#include "qmomap/qmomap.hpp"
#include "qmomap/symbol.hpp"
#include "qmomap/uea.hpp"

using namespace qmomap;
namespace fs = std::filesystem;

namespace {

const fs::path kModels = QMOMAP_MODELS_DIR;

struct Outcome {
  bool pass = true;
  std::string detail;
  void fail(std::string what) {
    if (pass) detail = std::move(what);
    pass = false;
  }
  void expect(bool ok, const std::string& what) {
    if (!ok) fail(what);
  }
};

int failures = 0;

void criterion(int id, const char* title, double limit_s, const std::function<void(Outcome&)>& body) {
  Outcome out;
  auto t0 = std::chrono::steady_clock::now();
  try {
    body(out);
  } catch (const std::exception& e) {
    out.fail(std::string("exception: ") + e.what());
  }
  double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (limit_s > 0 && s > limit_s) out.fail("runtime " + std::to_string(s) + " s exceeds " + std::to_string(limit_s) + " s");
  if (!out.pass) ++failures;
  std::printf("%s %2d %s (%.2f s)%s%s\n", out.pass ? "PASS" : "FAIL", id, title, s, out.pass ? "" : ": ",
              out.detail.c_str());
  std::fflush(stdout);
}

std::vector<InfinitesimalAction> matrix_actions() {
  return {InfinitesimalAction::translations(2), InfinitesimalAction::so3_rotations(), InfinitesimalAction::quadratic1d()};
}

Universe theta_universe(int n) { return Universe{0, n, 0, false}; }

QmmModel trivial(const InfinitesimalAction& act, int N, bool check = true) {
  return QmmModel(GSystem::trivial(act, N, 2 * N + 2), check);
}

long long fact(int n) { return n <= 1 ? 1 : n * fact(n - 1); }
long long double_factorial(int n) { return n <= 0 ? 1 : n * double_factorial(n - 2); }

// Σ 1/|Aut| per degree configuration = (2E-1)!! / (Π val! · Π_k m_k!).
bool pairing_bookkeeping(int n_ext, int P) {
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
    mpq_class expect(mpz_class(static_cast<long>(double_factorial(2 * edges[key] - 1))), denom);
    expect.canonicalize();
    if (s != expect) return false;
  }
  return true;
}

// Laplace expansion; the Hessians here have dimension ≤ 6.
MultiPoly det(const PolyMatrix& a, const Universe& u) {
  const int n = static_cast<int>(a.size());
  if (n == 0) return MultiPoly::constant(u, 1);
  MultiPoly out(u);
  for (int j = 0; j < n; ++j) {
    if (a[0][j].is_zero()) continue;
    PolyMatrix minor;
    for (int r = 1; r < n; ++r) {
      std::vector<MultiPoly> row;
      for (int c = 0; c < n; ++c)
        if (c != j) row.push_back(a[r][c]);
      minor.push_back(std::move(row));
    }
    MultiPoly term = a[0][j] * det(minor, u);
    if (j % 2) out -= term;
    else out += term;
  }
  return out;
}

}  // namespace

int main() {
  criterion(1, "translations: J^a u = u(-xi) at N = 4", 1.0, [](Outcome& out) {
    QmmModel m = trivial(InfinitesimalAction::translations(2), 4);
    const Universe& U = m.universe();
    std::vector<std::pair<Var, MultiPoly>> minus_xi{{th_(0), parse_poly("-xi1", U)}, {th_(1), parse_poly("-xi2", U)}};
    for (const char* u : {"1", "th1", "th2", "th1^2", "th1*th2", "th2^2", "th1^3"}) {
      MultiPoly up = parse_poly(u, theta_universe(2));
      HbarSeries expect = HbarSeries::from_poly(substitute(parse_poly(u, U), minus_xi, U), 4);
      out.expect(qmm_apply(m, up) == expect, std::string("u = ") + u);
    }
  });

  criterion(2, "Gutt product: BCH phase = PBW on so3 and heisenberg, degree <= 4, N = 4", 60.0, [](Outcome& out) {
    for (const auto& g : {LieAlgebra::so3(), LieAlgebra::heisenberg()}) {
      Universe U = theta_universe(g.dim());
      auto ms = gen::monomials(U, {Family::th}, 4);
      for (const auto& f : ms)
        for (const auto& h : ms) {
          if (f.degree() + h.degree() > 4) continue;
          out.expect(gutt_via_phase(g, f, h, 4) == gutt_pbw(g, f, h, 4), f.to_string() + " * " + h.to_string());
        }
    }
  });

  criterion(3, "standard product: closed formula = symbol of Op(f)Op(g), degree <= 5, d <= 2, N = 4", 30.0,
            [](Outcome& out) {
              std::mt19937 rng(2024);
              for (int d = 1; d <= 2; ++d) {
                Universe U{d, 0, 0, false};
                for (int trial = 0; trial < 20; ++trial) {
                  HbarSeries f = gen::series(rng, U, {Family::x, Family::xi}, 5, 4, 4);
                  HbarSeries g = gen::series(rng, U, {Family::x, Family::xi}, 5, 4, 4);
                  out.expect(star_standard(f, g) == star_standard_oracle(f, g), "d = " + std::to_string(d));
                }
              }
            });

  criterion(4, "graph sum = Wick expansion for the x^2 d/dx phase at N = 3; pairing bookkeeping", 120.0,
            [](Outcome& out) {
              QmmModel m = trivial(InfinitesimalAction::quadratic1d(), 3);
              for (const char* u : {"1", "th1", "th1^2", "th1^3"}) {
                PhaseModel ph = build_phase(m, parse_poly(u, theta_universe(1)));
                out.expect(expand(ph, 3) == wick_expand(ph, 3), std::string("u = ") + u);
              }
              for (int n_ext = 1; n_ext <= 3; ++n_ext)
                for (int P = 0; P <= 3; ++P)
                  out.expect(pairing_bookkeeping(n_ext, P),
                             "n_ext = " + std::to_string(n_ext) + ", power = " + std::to_string(P));
            });

  criterion(5, "phase Hessian: |det B| = 1, sign B = 0, B B^-1 = I", 0, [](Outcome& out) {
    for (const auto& act : matrix_actions()) {
      QmmModel m = trivial(act, 2);
      PhaseModel ph = build_phase(m, parse_poly("th1", theta_universe(act.n())));
      const Universe& U = ph.coeff_universe();
      const auto& B = ph.hessian();
      MultiPoly D = det(B, U);
      out.expect(D.is_constant() && (D.constant_term() == GaussianRational(1) || D.constant_term() == GaussianRational(-1)),
                 "det B = " + D.to_string());
      // det B is a constant unit, so the inertia is that of B at any point.
      out.expect(inertia(constant_part(B)).signature() == 0, "signature");
      out.expect(multiply(B, ph.inverse_hessian()) == lift(identity_matrix(ph.dim()), U), "B B^-1");
      out.expect(ph.abs_det() == GaussianRational(1) && ph.signature() == 0, "certified values");
    }
  });

  criterion(6, "J^a(f *G g) = J^a f *st J^a g to hbar^2, degree <= 2; J^a(1) = 1 at N = 4", 300.0, [](Outcome& out) {
    for (const auto& act : matrix_actions()) {
      QmmModel m = trivial(act, 2);
      auto ms = gen::monomials(theta_universe(act.n()), {Family::th}, 2);
      for (const auto& f : ms)
        for (const auto& g : ms)
          out.expect(verify_morphism(m, f, g).is_zero(), act.universe().describe() + ": " + f.to_string() + ", " + g.to_string());
      // a = 1 is checked against Maurer-Cartan in criterion 10.
      QmmModel m4 = trivial(act, 4, false);
      out.expect(qmm_apply(m4, MultiPoly::constant(theta_universe(act.n()), 1)) == HbarSeries::constant(m4.universe(), 4, 1),
                 "unitality");
    }
  });

  criterion(7, "t_v = Op((i/hbar) J^a v); commutator identity and leading term, degree <= 3, N = 2", 0, [](Outcome& out) {
    for (const auto& act : matrix_actions()) {
      QmmModel m = trivial(act, 2);
      for (const auto& f : gen::monomials(m.universe(), {Family::x, Family::xi}, 3))
        for (int i = 0; i < act.n(); ++i) {
          SecondReport r = verify_second(m, i, f);
          out.expect(r.generator.is_zero(), "generator e" + std::to_string(i + 1));
          out.expect(r.leading.is_zero(), "leading term, f = " + f.to_string());
          out.expect(r.commutator.is_zero(), "commutator, f = " + f.to_string());
        }
    }
  });

  criterion(8, "t~_v is a derivation of *st at N = 2", 0, [](Outcome& out) {
    for (const auto& act : matrix_actions()) {
      QmmModel m = trivial(act, 2);
      auto fs = gen::monomials(m.universe(), {Family::x, Family::xi}, 2);
      for (const auto& f : fs)
        for (const auto& g : fs)
          for (int i = 0; i < act.n(); ++i)
            out.expect(verify_equivariance(m, i, f, g).is_zero(), f.to_string() + ", " + g.to_string());
    }
  });

  criterion(9, "invariant Hamiltonians commute with t_v at N = 2; naive anomaly on x^2 d/dx", 0, [](Outcome& out) {
    QmmModel so3 = trivial(InfinitesimalAction::so3_rotations(), 2);
    out.expect(verify_invariant_hamiltonian(so3, parse_poly("th1^2 + th2^2 + th3^2", theta_universe(3))).ok(), "so3 Casimir");
    QmmModel q = trivial(InfinitesimalAction::quadratic1d(), 2);
    InvariantReport r = verify_invariant_hamiltonian(q, parse_poly("th1^2", theta_universe(1)));
    out.expect(r.ok(), "x^2 d/dx, th1^2");
    out.expect(r.anomalous(), "naive commutator vanishes");
  });

  criterion(10, "Maurer-Cartan at N = 2, M = 6; broken system localized; linear elements by two routes", 0,
            [](Outcome& out) {
              std::vector<InfinitesimalAction> actions{InfinitesimalAction::translations(1), InfinitesimalAction::translations(2),
                                                       InfinitesimalAction::so3_rotations(), InfinitesimalAction::heisenberg(),
                                                       InfinitesimalAction::quadratic1d()};
              for (const auto& file : fs::directory_iterator(kModels)) {
                auto text = file.path().filename().string();
                if (text == "broken_gsystem.json" || !io::read_json_file(file.path()).contains("action")) continue;
                actions.push_back(io::load_bundle(file.path()).action);
              }
              for (const auto& act : actions)
                out.expect(mc_residual(GSystem::trivial(act, 2, 6)).ok(), "a = 1 on " + act.universe().describe());

              auto broken = io::load_bundle(kModels / "broken_gsystem.json").make_gsystem();
              McReport bad = mc_residual(broken);
              out.expect(!bad.ok() && bad.location() != "0", "broken system passes");
              std::printf("     broken G-system residual at %s\n", bad.location().c_str());

              std::vector<QmmModel> models;
              for (const auto& act : matrix_actions()) models.push_back(trivial(act, 2));
              models.emplace_back(GSystem::trivial(InfinitesimalAction::heisenberg(), 2, 6));
              GSystem gauge = io::load_bundle(kModels / "quadratic1d_gauge.json").make_gsystem();
              out.expect(gauge.P().size() > 1 && !gauge.P()[1].homogeneous_part(Family::v, 1).is_zero(),
                         "gauge system lacks an hbar^1 v-linear part");
              models.emplace_back(gauge);
              auto so3 = InfinitesimalAction::so3_rotations();
              models.emplace_back(GSystem::gauge(so3, parse_poly("x1*x2 + x3", so3.universe()), 2, 4));
              for (const auto& m : models)
                for (int i = 0; i < m.action().n(); ++i) {
                  Universe du = theta_universe(m.action().n());
                  out.expect(qmm_linear(m, i) == qmm_apply(m, MultiPoly::variable(du, th_(i))),
                             "linear element e" + std::to_string(i + 1) + " on " + m.universe().describe());
                }
            });

  std::printf("%d of 10 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
