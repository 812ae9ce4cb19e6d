#pragma once

#include "qmomap/expand.hpp"
#include "qmomap/lie.hpp"

namespace qmomap {

// z = (v1, v2, δθ1, δθ2) with S = ⟨θ, BCH(v1, v2) − v1 − v2⟩ − ⟨δθ1, v1⟩ − ⟨δθ2, v2⟩
// and insertions f(θ + δθ1), h(θ + δθ2).  BCH is kept through order N + 1,
// the largest internal valence that survives at ħ^N.
PhaseModel gutt_phase(const LieAlgebra& g, const MultiPoly& f, const MultiPoly& h, int N);

// f ⋆_G h through the stationary-phase expansion of the BCH-phase integral.
HbarSeries gutt_via_phase(const LieAlgebra& g, const MultiPoly& f, const MultiPoly& h, int N,
                          ExpandOptions options = {});

}  // namespace qmomap
