#pragma once

#include "npf/multivec/polyvector.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

namespace npf::civita {

using jetcalc::DiffPoly;
using jetcalc::Monomial;
using jetcalc::SpacePtr;
using jetcalc::SymbolId;
using multivec::PolyVector;

// Occurrence of a derivative letter: position p (0..d-1) of tuple k.
struct Letter {
  std::uint8_t tuple = 0;
  std::uint8_t position = 0;
  friend bool operator==(const Letter&, const Letter&) = default;
  friend auto operator<=>(const Letter&, const Letter&) = default;
};

// One comultiple; an empty letter list is an undifferentiated factor.
struct MarkerFactor {
  SymbolId symbol = 0;
  std::vector<Letter> letters;
};

// A marker-monomial with coefficient. When free is set the marker is the
// coefficient of d/dx^{free} in a vector field.
struct Marker {
  Rational coeff{1};
  std::vector<MarkerFactor> factors;
  std::optional<Letter> free;
};

// Every (tuple, position) must occur exactly once; throws std::invalid_argument.
void validate_marker(const Marker& m, int d, int tuples);

// Sum over (S_d)^tuples of sign-weighted substitutions, times m.coeff.
DiffPoly alternating_sum(const SpacePtr& space, int tuples, const Marker& m);
// Same for a marker with a free slot; a degree-1 PolyVector.
PolyVector alternating_sum_field(const SpacePtr& space, int tuples, const Marker& m);
bool is_zero_marker(const SpacePtr& space, int tuples, const Marker& m);

// The monomial obtained from m at the identity permutations.
Monomial marker_monomial(const SpacePtr& space, const Marker& m);

// Factor-by-tuple letter counts, canonical under tuple relabelling and
// reordering of factors. Markers with equal keys have alternating sums
// equal up to sign.
std::vector<std::uint8_t> incidence_key(const Marker& m, int tuples);

// Calls fn for every letter partition of a monomial into `tuples` d-tuples,
// in lexicographic order of the occurrence assignments. Each coordinate must
// occur exactly `tuples` times among the derivatives; throws otherwise.
void for_each_partition(const SpacePtr& space, const Monomial& mono, int tuples,
                        const std::function<void(const Marker&)>& fn);

struct Permutation {
  std::vector<int> image;
  int sign = 1;
};
// All of S_n, lexicographic, identity first.
const std::vector<Permutation>& permutations(int n);

// Coordinates relabelled by sigma: x^k -> x^{sigma(k)} in every multi-index.
Monomial permute_coordinates(const Monomial& m, const std::vector<int>& sigma);
DiffPoly permute_coordinates(const DiffPoly& p, const std::vector<int>& sigma);

}  // namespace npf::civita
