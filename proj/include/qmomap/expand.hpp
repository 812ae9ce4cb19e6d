#pragma once

#include <span>

#include "qmomap/graph.hpp"
#include "qmomap/phase.hpp"
#include "qmomap/series.hpp"

namespace qmomap {

// F_Γ: contraction of vertex tensors with one B⁻¹ per edge.  External j uses
// its ħ^{orders[j]} component; internal vertices carry ∂^k S (no sign).
MultiPoly amplitude(const FeynmanGraph& g, const PhaseModel& model, std::span<const int> orders);

// Edge kinds and valences that can carry a nonzero amplitude for this model.
GraphFilter graph_filter(const PhaseModel& model);

struct ExpandOptions {
  bool prune = true;
};

// Σ_Γ (iħ)^{|E|-|V_int|} (-1)^{|V_int|} / |Aut Γ| · ħ^{Σ l_j} F_Γ, truncated at ħ^N.
HbarSeries expand(const PhaseModel& model, int N, ExpandOptions options = {});

// The same series from Gaussian moments: expand exp((i/ħ)·interaction) and
// the insertions, and integrate monomials by the sum over pairings.
HbarSeries wick_expand(const PhaseModel& model, int N);

}  // namespace qmomap
