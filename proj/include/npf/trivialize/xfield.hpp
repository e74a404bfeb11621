#pragma once

#include "npf/civita/formula.hpp"
#include "npf/graphflow/induce.hpp"
#include "npf/nambu/nambu.hpp"

#include <vector>

namespace npf::trivialize {

using civita::CivitaFormula;
using jetcalc::DiffPoly;
using multivec::PolyVector;
using nambu::NambuData;

// The eleven-marker field on R^3 (symbolic rho, a), in formula text form.
const char* builtin_x_text();
CivitaFormula builtin_x_formula();
PolyVector builtin_x_field();

// tetra_flow(P) - [[P, X]]
PolyVector verify_coboundary(const PolyVector& p, const PolyVector& x);

struct VelocityReport {
  DiffPoly minus_x_a;        // -X(a) = [[a, X]]
  DiffPoly density_from_x;   // coefficient of [[rho d_x^d_y^d_z, X]]
  bool casimir_ok = false;   // adot == -X(a)
  bool density_ok = false;   // rhodot == density_from_x
  bool consistent() const { return casimir_ok && density_ok; }
};

// Checks adot = -X(a) and rhodot d_x^d_y^d_z = [[rho d_x^d_y^d_z, X]]
// against given velocities (d = 3, one Casimir).
VelocityReport verify_velocity_consistency(const NambuData& data, const PolyVector& x,
                                           const graphflow::Velocities& v);

// -X(a) for a vector field and a scalar.
DiffPoly minus_derivation(const PolyVector& x, const DiffPoly& a);

// Indices of markers whose own field gives a nonzero X(a).
std::vector<std::size_t> contributing_markers(const CivitaFormula& f, const DiffPoly& a);

}  // namespace npf::trivialize
