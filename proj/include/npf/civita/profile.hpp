#pragma once

#include "npf/civita/marker.hpp"

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace npf::civita {

// Derivative orders per fibre symbol, orders sorted ascending.
// Casimirs come first, then the density, then anything else.
struct Profile {
  std::vector<std::pair<SymbolId, std::vector<int>>> entries;

  // "a1223ρ001", or "a1 1123 a2 112 ρ001" when a name ends in a digit.
  std::string str() const;
  friend bool operator==(const Profile&, const Profile&) = default;
  friend bool operator<(const Profile& a, const Profile& b);
};

Profile profile_of(const Monomial& m);
std::map<Profile, DiffPoly> partition_by_profile(const DiffPoly& p);

struct SkewRepresentative {
  Rational coeff;
  Monomial mono;
};

// Greedy decomposition into signed orbit sums of the diagonal S_d action
// with weight sign(sigma)^exponent. Throws std::domain_error when p is not
// of that symmetry.
std::vector<SkewRepresentative> greedy_skew_decompose(const DiffPoly& p, int sign_exponent = 1);
// sum_sigma sign(sigma)^exponent * (m relabelled by sigma)
DiffPoly diagonal_orbit_sum(const SpacePtr& space, const Monomial& m, int sign_exponent = 1);

}  // namespace npf::civita
