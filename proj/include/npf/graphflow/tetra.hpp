#pragma once

#include "npf/graphflow/graph.hpp"

namespace npf::graphflow {

// Gamma1 with weight 2 plus Gamma2' with weight 6, the latter antisymmetrized
// over its two sinks. The overall factor 2 is the scale at which the stored
// velocity data (adot, rhodot, the collapsed R^3 and R^4 formulas) reassemble.
GraphSum builtin_gamma3();
const char* builtin_gamma3_text();

// Q^{ij} = 2 d_k d_l d_m P^{ij} d_{l'}P^{kk'} d_{m'}P^{ll'} d_{k'}P^{mm'}
//        + 6 (C^{ij} - C^{ji}),
// C^{im} = d_k d_l P^{ij} d_{k'} d_{l'}P^{km} d_{m'}P^{k'l} d_j P^{m'l'}.
// Evaluated by explicit index loops.
PolyVector tetra_flow(const PolyVector& p);
// Same flow through the generic graph evaluator.
PolyVector tetra_flow_graph(const PolyVector& p);

}  // namespace npf::graphflow
