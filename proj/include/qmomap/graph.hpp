#pragma once

#include <compare>
#include <utility>
#include <vector>

namespace qmomap {

// Vertices 0..n_ext-1 are external, n_ext.. are internal.
struct FeynmanGraph {
  int n_ext = 0;
  std::vector<int> internal_valences;
  std::vector<std::pair<int, int>> edges;  // a <= b, sorted; a == b is a loop
  long long aut = 1;

  int vertex_count() const { return n_ext + static_cast<int>(internal_valences.size()); }
  int power() const { return static_cast<int>(edges.size()) - static_cast<int>(internal_valences.size()); }
  std::vector<int> valences() const;
};

// Restricts generation to graphs whose amplitude can be nonzero.  Vertex
// kinds are 0..n_ext-1 for the externals and n_ext for internal vertices.
struct GraphFilter {
  std::vector<std::vector<bool>> edge_allowed;  // (n_ext+1)^2, symmetric
  std::vector<int> max_valence;                 // per kind, -1 = unbounded
  auto operator<=>(const GraphFilter&) const = default;
};

// Every multigraph with internal valence >= 3 and |E| - |V_int| <= max_power,
// one per isomorphism class (externals fixed), in a deterministic order.
std::vector<FeynmanGraph> enumerate_graphs(int n_ext, int max_power, const GraphFilter* filter = nullptr);

}  // namespace qmomap
