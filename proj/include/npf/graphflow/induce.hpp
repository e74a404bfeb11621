#pragma once

#include "npf/nambu/nambu.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace npf::graphflow {

using jetcalc::DiffPoly;
using multivec::PolyVector;
using nambu::NambuData;

struct InduceOptions {
  int vertices = 4;              // n; every monomial carries n-1 derivatives per coordinate
  int order_cap = 3;             // per-factor derivative order bound
  int casimir_min_order = 1;     // Casimirs enter P through their gradients only
};

struct Velocities {
  std::vector<DiffPoly> casimirs;  // a_i dot
  DiffPoly density;                // rho dot
  std::size_t unknowns = 0;
  std::size_t equations = 0;
};

struct InductionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Monomials with the given symbol multiplicities, (n-1) derivatives along every
// coordinate, and per-factor order in [min_order(symbol), cap].
std::vector<jetcalc::Monomial> candidate_monomials(const jetcalc::SpacePtr& space,
                                                   const std::vector<std::pair<jetcalc::SymbolId, int>>& factors,
                                                   int per_coordinate, int order_cap,
                                                   const std::vector<int>& min_order);

// P(rho_dot,[a]) + sum_i P(rho,[a_1],...,[a_i dot],...)
PolyVector reassemble(const NambuData& data, const std::vector<DiffPoly>& casimir_dots, const DiffPoly& density_dot);

// Solves dotP = reassemble(...) over all candidate monomials; throws
// InductionError("no solution") or InductionError("non-unique").
Velocities induce_velocities(const NambuData& data, const PolyVector& dot_p, const InduceOptions& opt = {});

// Divides the residual dotP - sum_i P(rho,...,[a_i dot],...) by the unit-density
// Nambu components; all quotients must agree.
DiffPoly extract_density_velocity(const NambuData& data, const PolyVector& dot_p,
                                  const std::vector<DiffPoly>& casimir_dots);

}  // namespace npf::graphflow
