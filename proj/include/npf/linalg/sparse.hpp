#pragma once

#include "npf/rational.hpp"

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace npf::linalg {

using SparseVector = std::vector<std::pair<int, Rational>>;  // sorted by column, no zeros

class SparseSystem {
public:
  explicit SparseSystem(int unknowns = 0) : unknowns_(unknowns) {}

  int unknowns() const { return unknowns_; }
  std::size_t rows() const { return rows_.size(); }
  const SparseVector& row(std::size_t i) const { return rows_[i]; }
  const Rational& rhs(std::size_t i) const { return rhs_[i]; }

  // Entries may come unsorted and with repeats; they are combined.
  void add_row(SparseVector entries, Rational rhs = 0);

private:
  int unknowns_;
  std::vector<SparseVector> rows_;
  std::vector<Rational> rhs_;
};

struct Solution {
  bool feasible = false;
  std::vector<Rational> particular;
  std::vector<SparseVector> kernel;  // one vector per free unknown
  std::size_t rank = 0;
  std::string reason;                // set when infeasible
};

Solution solve(const SparseSystem& system);

// A·x - b, row by row.
std::vector<Rational> residual(const SparseSystem& system, const std::vector<Rational>& x);
bool annihilates(const SparseSystem& system, const SparseVector& v);

// Rows keyed by arbitrary ordered keys; columns are unknown indices.
template <class Key, class Less = std::less<Key>>
class RowAssembler {
public:
  explicit RowAssembler(int unknowns) : unknowns_(unknowns) {}
  void add(const Key& k, int column, const Rational& v) { rows_[k].first.emplace_back(column, v); }
  void add_rhs(const Key& k, const Rational& v) { rows_[k].second += v; }
  SparseSystem build() const {
    SparseSystem s(unknowns_);
    for (const auto& [k, r] : rows_) s.add_row(r.first, r.second);
    return s;
  }
  std::size_t size() const { return rows_.size(); }

private:
  int unknowns_;
  std::map<Key, std::pair<SparseVector, Rational>, Less> rows_;
};

}  // namespace npf::linalg
