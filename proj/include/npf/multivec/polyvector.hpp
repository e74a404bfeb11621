#pragma once

#include "npf/jetcalc/diffpoly.hpp"

#include <json.hpp>

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

namespace npf::multivec {

using jetcalc::DiffPoly;
using jetcalc::SpacePtr;

// Bit k set <=> coordinate k in the index set.
using IndexMask = std::uint32_t;

IndexMask mask_of(const std::vector<int>& sorted_indices);
std::vector<int> indices_of(IndexMask m);

// Antisymmetric multivector with DiffPoly coefficients; zero components are absent.
class PolyVector {
public:
  PolyVector() = default;
  PolyVector(SpacePtr space, int degree);

  static PolyVector scalar(SpacePtr space, const DiffPoly& f);
  static PolyVector vector_field(SpacePtr space, const std::vector<DiffPoly>& comps);
  // Coefficient times d_{i1} ^ ... ^ d_{ip}, indices in any order.
  static PolyVector basis(SpacePtr space, const std::vector<int>& indices, const DiffPoly& coeff = DiffPoly(1));

  int degree() const { return degree_; }
  const SpacePtr& space() const { return space_; }
  int dim() const { return space_->d; }
  const std::map<IndexMask, DiffPoly>& components() const { return comps_; }
  bool is_zero() const { return comps_.empty(); }

  // Arbitrary index order: sign of the sorting permutation, zero on repeats.
  DiffPoly get(const std::vector<int>& indices) const;
  DiffPoly at(IndexMask m) const;
  void set(const std::vector<int>& indices, const DiffPoly& value);
  void set_mask(IndexMask m, DiffPoly value);

  PolyVector operator-() const;
  PolyVector& operator+=(const PolyVector& o);
  PolyVector& operator-=(const PolyVector& o);
  friend PolyVector operator+(PolyVector a, const PolyVector& b) { return a += b; }
  friend PolyVector operator-(PolyVector a, const PolyVector& b) { return a -= b; }
  friend PolyVector operator*(const DiffPoly& f, const PolyVector& v);
  friend PolyVector operator*(const Rational& c, const PolyVector& v);
  friend bool operator==(const PolyVector& a, const PolyVector& b);

  PolyVector total_derivative(int k) const;
  PolyVector map(const std::function<DiffPoly(const DiffPoly&)>& fn) const;

private:
  SpacePtr space_;
  int degree_ = 0;
  std::map<IndexMask, DiffPoly> comps_;
};

PolyVector wedge(const PolyVector& a, const PolyVector& b);
PolyVector schouten(const PolyVector& a, const PolyVector& b);
PolyVector lie_derive(const PolyVector& t, const PolyVector& y);
PolyVector euler_field(SpacePtr space);
PolyVector homogeneous_power_field(SpacePtr space, int k);

// One "P[x][y] = <expr>" line per nonzero component, in lexicographic index order.
std::string print(const PolyVector& v, const std::string& name = "P");
nlohmann::json to_json(const PolyVector& v);
PolyVector polyvector_from_json(const nlohmann::json& j, const SpacePtr& space);

}  // namespace npf::multivec
