#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "qmomap/graph.hpp"
#include "qmomap/gsystem.hpp"

namespace qmomap::io {

using nlohmann::json;

json read_json_file(const std::filesystem::path& file);

// {"dim": n, "structure": [{"i": 1, "j": 2, "coeffs": {"3": "1"}}, ...]}, 1-based.
LieAlgebra algebra_from_json(const json& j);
json algebra_to_json(const LieAlgebra& g);
// Builtin name (so3, heisenberg, abelianN) or a JSON file.
LieAlgebra load_algebra(const std::string& name_or_path, const std::filesystem::path& base = {});

// {"dim": d, "fields": [["x-component", ...], ...]}, one row per basis element.
InfinitesimalAction action_from_json(const json& j, const LieAlgebra& g);

// {"N": n, "M": m, "P": [{"n": 0, "poly": "1"}, ...]}; orders above N are dropped.
GSystem gsystem_from_json(const json& j, const InfinitesimalAction& a, int N, int M);

struct Truncations {
  std::optional<int> N, M;
};

// {name, algebra, action, gsystem?, truncations?, casimirs?}; the first three
// may be inline objects or paths relative to the bundle file.
struct ModelBundle {
  std::string name;
  InfinitesimalAction action;
  json gsystem;  // null for the trivial G-system
  int N = 2, M = 6;
  std::vector<std::string> casimirs;

  GSystem make_gsystem() const;
};

ModelBundle load_bundle(const std::filesystem::path& file, Truncations overrides = {});

// {"0": "...", "1": "...", ...}, every order present.
json series_to_json(const HbarSeries& s);
std::string series_to_text(const HbarSeries& s);
// "0" for the zero series.
json residual_to_json(const HbarSeries& s);
json graph_to_json(const FeynmanGraph& g);

}  // namespace qmomap::io
