#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "qmomap/error.hpp"
#include "qmomap/gutt_phase.hpp"
#include "qmomap/io.hpp"
#include "qmomap/parse.hpp"
#include "qmomap/suite.hpp"
#include "qmomap/uea.hpp"

using namespace qmomap;
using nlohmann::json;

namespace {

constexpr int kOk = 0, kFailed = 1, kInputError = 2;

struct Output {
  std::string format = "json";
  std::string out;

  void emit(const json& j, const std::string& text) const {
    std::string body = format == "text" ? text : j.dump(2);
    if (out.empty()) {
      std::cout << body << "\n";
      return;
    }
    std::ofstream f(out);
    if (!f) throw Error("cannot write " + out);
    f << body << "\n";
  }
};

int max_th_index(const std::string& text) {
  int best = 0;
  for (std::size_t p = text.find("th"); p != std::string::npos; p = text.find("th", p + 2)) {
    std::size_t q = p + 2;
    int k = 0;
    while (q < text.size() && std::isdigit(static_cast<unsigned char>(text[q]))) k = 10 * k + (text[q++] - '0');
    best = std::max(best, k);
  }
  return std::max(best, 1);
}

std::string report_text(const std::vector<CheckResult>& results) {
  std::ostringstream s;
  for (const auto& r : results) {
    s << (r.pass ? "PASS " : "FAIL ") << r.test;
    for (const auto& [k, v] : r.inputs.items()) s << " " << k << "=" << (v.is_string() ? v.get<std::string>() : v.dump());
    if (!r.pass) s << " residual=" << r.residual.dump();
    if (r.extra.is_object() && r.extra.contains("location") && !r.pass) s << " at " << r.extra["location"].get<std::string>();
    s << "\n";
  }
  std::string t = s.str();
  if (!t.empty()) t.pop_back();
  return t;
}

std::vector<std::string> split_suites(const std::vector<std::string>& raw) {
  std::vector<std::string> out;
  for (const auto& r : raw) {
    std::stringstream ss(r);
    std::string item;
    while (std::getline(ss, item, ','))
      if (!item.empty()) out.push_back(item);
  }
  for (const auto& s : out)
    if (std::find(suite_names().begin(), suite_names().end(), s) == suite_names().end())
      throw Error("unknown suite '" + s + "'");
  return out;
}

// MC first; the theorem suites need a Maurer-Cartan G-system.
int run_verify(const io::ModelBundle& bundle, const std::vector<std::string>& suites, int deg,
               std::vector<std::string> casimirs, const Output& out) {
  if (casimirs.empty()) casimirs = bundle.casimirs;
  GSystem a = bundle.make_gsystem();
  std::vector<CheckResult> results;
  CheckResult mc = mc_check(a);
  bool want_mc = std::find(suites.begin(), suites.end(), "mc") != suites.end();
  if (want_mc) results.push_back(mc);
  json skipped = json::array();
  if (mc.pass) {
    QmmModel model(a, false);
    for (const auto& s : suites) {
      if (s == "mc") continue;
      auto r = run_suite(model, s, deg, casimirs);
      results.insert(results.end(), r.begin(), r.end());
    }
  } else {
    if (!want_mc) results.push_back(mc);
    for (const auto& s : suites)
      if (s != "mc") skipped.push_back(s);
  }
  bool ok = mc.pass;
  json checks = json::array();
  for (const auto& r : results) {
    ok = ok && r.pass;
    checks.push_back(r.to_json());
  }
  json j{{"model", bundle.name}, {"N", a.N()}, {"M", a.M()}, {"deg", deg}, {"checks", checks}, {"status", ok ? "PASS" : "FAIL"}};
  std::string text = report_text(results);
  if (!skipped.empty()) {
    j["skipped"] = skipped;
    text += "\nSKIP " + skipped.dump() + " (G-system fails Maurer-Cartan)";
  }
  out.emit(j, text);
  return ok ? kOk : kFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quantum momentum maps, star products and Feynman expansions in exact arithmetic"};
  app.require_subcommand(1);
  app.fallthrough();
  Output out;
  app.add_option("--format", out.format, "json or text")->check(CLI::IsMember({"json", "text"}));
  app.add_option("--out", out.out, "write the result to a file");

  std::optional<int> order, vdeg;
  int deg = 2;
  std::string model_file;
  auto add_trunc = [&](CLI::App* c) {
    c->add_option("--order", order, "hbar truncation N");
    c->add_option("--vdeg", vdeg, "v-degree truncation M");
  };

  // star
  auto* star = app.add_subcommand("star", "star products");
  star->require_subcommand(1);
  std::string f_text, g_text, algebra, route = "pbw";
  int dim = 1, star_order = 2;
  auto* gutt = star->add_subcommand("gutt", "Gutt product on polynomials in th");
  auto* standard = star->add_subcommand("standard", "standard-ordered product on T*R^d");
  for (auto* c : {gutt, standard}) {
    c->add_option("--f", f_text)->required();
    c->add_option("--g", g_text)->required();
    c->add_option("--order", star_order, "hbar truncation N");
  }
  gutt->add_option("--algebra", algebra, "so3, heisenberg, abelianN or a JSON file (default: abelian)");
  gutt->add_option("--route", route, "pbw or phase")->check(CLI::IsMember({"pbw", "phase"}));
  standard->add_option("--dim", dim, "d")->check(CLI::PositiveNumber);

  // qmm
  auto* qmm = app.add_subcommand("qmm", "quantum momentum map");
  qmm->require_subcommand(1);
  std::string u_text;
  std::vector<std::string> suites_raw, casimirs;
  auto* apply = qmm->add_subcommand("apply", "evaluate J^a(u)");
  apply->add_option("--model", model_file)->required();
  apply->add_option("--u", u_text)->required();
  add_trunc(apply);
  auto* verify = qmm->add_subcommand("verify", "run verification suites");
  verify->add_option("--model", model_file)->required();
  verify->add_option("--suite", suites_raw, "mc, unital, linear, morphism, second, equivariance, casimir")->required();
  verify->add_option("--deg", deg, "test-function degree bound");
  verify->add_option("--casimir", casimirs, "Casimir polynomial for the casimir suite");
  add_trunc(verify);

  // gsystem check
  auto* gs = app.add_subcommand("gsystem", "G-systems");
  gs->require_subcommand(1);
  auto* gs_check = gs->add_subcommand("check", "Maurer-Cartan residual");
  gs_check->add_option("--model", model_file)->required();
  add_trunc(gs_check);

  // graphs enumerate
  auto* graphs = app.add_subcommand("graphs", "Feynman graphs");
  graphs->require_subcommand(1);
  int n_ext = 2, max_power = 0;
  auto* en = graphs->add_subcommand("enumerate", "list graphs");
  en->add_option("--ext", n_ext, "number of external vertices")->check(CLI::NonNegativeNumber);
  en->add_option("--max-power", max_power, "bound on |E| - |V_int|")->required();

  // casimir check
  auto* cas = app.add_subcommand("casimir", "Casimir elements");
  cas->require_subcommand(1);
  auto* cas_check = cas->add_subcommand("check", "is f a Casimir");
  cas_check->add_option("--algebra", algebra)->required();
  cas_check->add_option("--f", f_text)->required();

  // report
  auto* report = app.add_subcommand("report", "every suite on a model");
  report->add_option("--model", model_file)->required();
  report->add_option("--deg", deg, "test-function degree bound");
  add_trunc(report);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kOk : kInputError;
  }

  try {
    if (star->parsed()) {
      if (gutt->parsed()) {
        LieAlgebra g = algebra.empty() ? LieAlgebra::abelian(std::max(max_th_index(f_text), max_th_index(g_text)))
                                       : io::load_algebra(algebra);
        Universe u{0, g.dim(), 0, false};
        MultiPoly f = parse_poly(f_text, u), h = parse_poly(g_text, u);
        HbarSeries r = route == "pbw" ? gutt_pbw(g, f, h, star_order) : gutt_via_phase(g, f, h, star_order);
        out.emit(io::series_to_json(r), io::series_to_text(r));
      } else {
        Universe u{dim, 0, 0, false};
        HbarSeries r = star_standard(HbarSeries::from_poly(parse_poly(f_text, u), star_order),
                                     HbarSeries::from_poly(parse_poly(g_text, u), star_order));
        out.emit(io::series_to_json(r), io::series_to_text(r));
      }
      return kOk;
    }
    if (qmm->parsed()) {
      io::ModelBundle bundle = io::load_bundle(model_file, {order, vdeg});
      if (apply->parsed()) {
        QmmModel model(bundle.make_gsystem());
        MultiPoly u = parse_poly(u_text, Universe{0, bundle.action.n(), 0, false});
        HbarSeries r = qmm_apply(model, u);
        out.emit(io::series_to_json(r), io::series_to_text(r));
        return kOk;
      }
      return run_verify(bundle, split_suites(suites_raw), deg, casimirs, out);
    }
    if (gs->parsed()) {
      io::ModelBundle bundle = io::load_bundle(model_file, {order, vdeg});
      CheckResult r = mc_check(bundle.make_gsystem());
      out.emit(r.to_json(), report_text({r}));
      return r.pass ? kOk : kFailed;
    }
    if (graphs->parsed()) {
      if (max_power < 0 || max_power > 6) throw Error("--max-power must lie in 0..6");
      auto list = enumerate_graphs(n_ext, max_power);
      json arr = json::array();
      std::ostringstream text;
      text << list.size() << " graphs";
      for (const auto& g : list) {
        arr.push_back(io::graph_to_json(g));
        text << "\n" << io::graph_to_json(g).dump();
      }
      out.emit(arr, text.str());
      return kOk;
    }
    if (cas->parsed()) {
      LieAlgebra g = io::load_algebra(algebra);
      MultiPoly f = parse_poly(f_text, Universe{0, g.dim(), 0, false});
      CasimirCheck c = is_casimir(g, f);
      json res = json::array();
      std::string text = c.casimir ? "casimir" : "not a casimir";
      for (int i = 0; i < g.dim(); ++i) {
        res.push_back(c.residuals[i].is_zero() ? "0" : c.residuals[i].to_string());
        if (!c.residuals[i].is_zero()) text += "\n{th" + std::to_string(i + 1) + ", f} = " + c.residuals[i].to_string();
      }
      out.emit({{"f", f.to_string()}, {"casimir", c.casimir}, {"brackets", res}}, text);
      return c.casimir ? kOk : kFailed;
    }
    if (report->parsed()) {
      io::ModelBundle bundle = io::load_bundle(model_file, {order, vdeg});
      std::vector<std::string> suites{"mc", "unital", "linear", "morphism", "second", "equivariance"};
      if (!bundle.casimirs.empty()) suites.push_back("casimir");
      return run_verify(bundle, suites, deg, {}, out);
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}
