#pragma once

#include "npf/multivec/polyvector.hpp"

#include <vector>

namespace npf::nambu {

using jetcalc::DiffPoly;
using jetcalc::SpacePtr;
using multivec::PolyVector;

struct NambuData {
  SpacePtr space;
  DiffPoly rho;                    // the constant 1 when the density is unit
  std::vector<DiffPoly> casimirs;  // exactly d-2 entries

  // rho (or 1) and Casimirs "a" (d=3) or "a1".."a{d-2}".
  static NambuData symbolic(SpacePtr space, bool unit_density = false);
  bool unit_density() const { return rho.is_constant() && rho.constant_value().is_one(); }
  void validate() const;
};

// P^{ij} = rho * sum eps^{i1..i_{d-2} i j} d_{i1}a_1 ... d_{i_{d-2}}a_{d-2}.
PolyVector nambu_bivector(const NambuData& data);
// [[...[[rho d_1^...^d_d, a_1]]..., a_{d-2}]]
PolyVector nambu_bivector_iterated(const NambuData& data);
PolyVector top_multivector(SpacePtr space, const DiffPoly& rho);

// 1/2 [[P,P]]
PolyVector jacobi_check(const PolyVector& p);
// [[P,H]]
PolyVector hamiltonian_field(const PolyVector& p, const DiffPoly& h);
// Every 3x3 minor of the d x d coefficient matrix of P.
std::vector<DiffPoly> coefficient_minors3(const PolyVector& p);

// Monomials in the coordinates of degree <= D, graded-lex, constants first.
std::vector<DiffPoly> coordinate_monomials(SpacePtr space, int max_degree);

// Basis (reduced echelon form over the monomial basis, leading coefficient 1)
// of polynomials c with deg c <= D and [[P,c]] = 0.
std::vector<DiffPoly> casimir_search(const PolyVector& p, int max_degree);

}  // namespace npf::nambu
