#include "qmomap/io.hpp"

#include <fstream>
#include <map>

#include "qmomap/error.hpp"

namespace qmomap::io {

namespace fs = std::filesystem;

namespace {

GaussianRational scalar_from_json(const json& j) {
  if (j.is_number_integer()) return GaussianRational(j.get<long>());
  if (j.is_string()) return GaussianRational::parse_rational(j.get<std::string>());
  throw Error("expected an integer or a \"p/q\" string, got " + j.dump());
}

const json& field(const json& j, const char* key, const char* where) {
  if (!j.is_object() || !j.contains(key)) throw Error(std::string(where) + ": missing \"" + key + "\"");
  return j.at(key);
}

int int_field(const json& j, const char* key, const char* where) {
  const json& v = field(j, key, where);
  if (!v.is_number_integer()) throw Error(std::string(where) + ": \"" + key + "\" must be an integer");
  return v.get<int>();
}

// Inline object, or a path relative to `base`.
json resolve(const json& j, const fs::path& base) {
  if (j.is_string()) return read_json_file(base / j.get<std::string>());
  return j;
}

}  // namespace

json read_json_file(const fs::path& file) {
  std::ifstream in(file);
  if (!in) throw Error("cannot open " + file.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw Error(file.string() + ": " + e.what());
  }
}

LieAlgebra algebra_from_json(const json& j) {
  if (j.is_object() && j.contains("builtin")) return load_algebra(j.at("builtin").get<std::string>());
  const int dim = int_field(j, "dim", "algebra");
  std::vector<StructureEntry> entries;
  auto check = [dim](int idx) {
    if (idx < 1 || idx > dim) throw Error("structure index out of range 1.." + std::to_string(dim));
    return idx - 1;
  };
  if (j.contains("structure")) {
    for (const auto& b : j.at("structure")) {
      int i = check(int_field(b, "i", "structure")), jj = check(int_field(b, "j", "structure"));
      const json& coeffs = field(b, "coeffs", "structure");
      if (!coeffs.is_object()) throw Error("structure: \"coeffs\" must be an object");
      for (const auto& [k, c] : coeffs.items()) {
        int kk;
        try {
          kk = check(std::stoi(k));
        } catch (const std::logic_error&) {
          throw Error("structure: bad index \"" + k + "\"");
        }
        entries.push_back({i, jj, kk, scalar_from_json(c)});
      }
    }
  }
  return LieAlgebra(dim, entries);
}

json algebra_to_json(const LieAlgebra& g) {
  std::map<std::pair<int, int>, json> rows;
  for (const auto& e : g.entries()) rows[{e.i, e.j}][std::to_string(e.k + 1)] = e.c.to_string();
  json b = json::array();
  for (const auto& [ij, coeffs] : rows) b.push_back({{"i", ij.first + 1}, {"j", ij.second + 1}, {"coeffs", coeffs}});
  return {{"dim", g.dim()}, {"structure", b}};
}

LieAlgebra load_algebra(const std::string& name, const fs::path& base) {
  if (name == "so3") return LieAlgebra::so3();
  if (name == "heisenberg") return LieAlgebra::heisenberg();
  if (name.rfind("abelian", 0) == 0 && name.size() > 7 && name.find('.') == std::string::npos) {
    try {
      return LieAlgebra::abelian(std::stoi(name.substr(7)));
    } catch (const std::logic_error&) {
      throw Error("bad algebra name " + name);
    }
  }
  return algebra_from_json(read_json_file(base / name));
}

InfinitesimalAction action_from_json(const json& j, const LieAlgebra& g) {
  if (j.is_object() && j.contains("builtin")) {
    const std::string name = j.at("builtin").get<std::string>();
    InfinitesimalAction a;
    if (name == "so3_rotations") a = InfinitesimalAction::so3_rotations();
    else if (name == "heisenberg") a = InfinitesimalAction::heisenberg();
    else if (name == "quadratic1d") a = InfinitesimalAction::quadratic1d();
    else if (name.rfind("translations", 0) == 0) a = InfinitesimalAction::translations(std::stoi(name.substr(12)));
    else throw Error("unknown builtin action " + name);
    if (a.n() != g.dim()) throw Error("builtin action " + name + " does not match the algebra dimension");
    return a;
  }
  const int d = int_field(j, "dim", "action");
  const json& rows = field(j, "fields", "action");
  if (!rows.is_array()) throw Error("action: \"fields\" must be an array");
  std::vector<std::vector<std::string>> fields;
  for (const auto& row : rows) fields.push_back(row.get<std::vector<std::string>>());
  return InfinitesimalAction::from_strings(g, d, fields);
}

GSystem gsystem_from_json(const json& j, const InfinitesimalAction& a, int N, int M) {
  std::vector<std::pair<int, std::string>> P;
  for (const auto& e : field(j, "P", "gsystem")) {
    int n = int_field(e, "n", "gsystem term");
    if (n > N) continue;
    P.emplace_back(n, field(e, "poly", "gsystem term").get<std::string>());
  }
  return GSystem::from_strings(a, N, M, P);
}

GSystem ModelBundle::make_gsystem() const {
  if (gsystem.is_null()) return GSystem::trivial(action, N, M);
  return gsystem_from_json(gsystem, action, N, M);
}

ModelBundle load_bundle(const fs::path& file, Truncations overrides) {
  json j = read_json_file(file);
  const fs::path base = file.parent_path();
  ModelBundle b;
  b.name = j.value("name", file.stem().string());
  const json& alg = field(j, "algebra", "model");
  LieAlgebra g = alg.is_string() ? load_algebra(alg.get<std::string>(), base) : algebra_from_json(alg);
  b.action = action_from_json(resolve(field(j, "action", "model"), base), g);
  if (j.contains("gsystem") && !j.at("gsystem").is_null()) b.gsystem = resolve(j.at("gsystem"), base);
  json tr = j.value("truncations", json::object());
  std::optional<int> N = overrides.N, M = overrides.M;
  if (!N && tr.contains("N")) N = tr.at("N").get<int>();
  if (!N && b.gsystem.is_object() && b.gsystem.contains("N")) N = b.gsystem.at("N").get<int>();
  if (!M && tr.contains("M")) M = tr.at("M").get<int>();
  if (!M && b.gsystem.is_object() && b.gsystem.contains("M")) M = b.gsystem.at("M").get<int>();
  b.N = N.value_or(2);
  b.M = M.value_or(2 * b.N + 2);
  if (b.N < 0 || b.M < 1) throw Error("invalid truncations N = " + std::to_string(b.N) + ", M = " + std::to_string(b.M));
  if (j.contains("casimirs")) b.casimirs = j.at("casimirs").get<std::vector<std::string>>();
  return b;
}

json series_to_json(const HbarSeries& s) {
  json out = json::object();
  for (int k = 0; k <= s.order(); ++k) out[std::to_string(k)] = s[k].to_string();
  return out;
}

std::string series_to_text(const HbarSeries& s) { return s.to_string(); }

json residual_to_json(const HbarSeries& s) {
  if (s.is_zero()) return "0";
  json out = json::object();
  for (int k = 0; k <= s.order(); ++k)
    if (!s[k].is_zero()) out[std::to_string(k)] = s[k].to_string();
  return out;
}

json graph_to_json(const FeynmanGraph& g) {
  json edges = json::array();
  for (const auto& [a, b] : g.edges) edges.push_back({a, b});
  return {{"externals", g.n_ext}, {"internal_valences", g.internal_valences}, {"edges", edges}, {"aut", g.aut}, {"power", g.power()}};
}

}  // namespace qmomap::io
