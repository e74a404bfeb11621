#pragma once

#include "npf/jetcalc/space.hpp"

#include <boost/container/small_vector.hpp>

#include <cstddef>
#include <initializer_list>

namespace npf::jetcalc {

// Sorted multiset of jet variables (powers are repeats).
class Monomial {
public:
  using Storage = boost::container::small_vector<VarCode, 12>;

  Monomial() = default;
  Monomial(std::initializer_list<VarCode> vars);
  static Monomial from_sorted(Storage vars);
  static Monomial from_unsorted(Storage vars);

  std::size_t degree() const { return v_.size(); }
  bool empty() const { return v_.empty(); }
  const VarCode* begin() const { return v_.data(); }
  const VarCode* end() const { return v_.data() + v_.size(); }
  VarCode operator[](std::size_t i) const { return v_[i]; }
  const Storage& vars() const { return v_; }

  bool divides(const Monomial& other) const;
  // this / m; requires m.divides(*this).
  Monomial quotient(const Monomial& m) const;
  int count(VarCode v) const;
  int degree_in(SymbolId s) const;
  // Monomial with the i-th factor replaced by v.
  Monomial replaced(std::size_t i, VarCode v) const;

  std::size_t hash() const;

  friend Monomial operator*(const Monomial& a, const Monomial& b);
  friend bool operator==(const Monomial& a, const Monomial& b) { return a.v_ == b.v_; }

private:
  Storage v_;
};

// Graded reverse-lexicographic comparison: negative, zero or positive.
int grevlex_compare(const Monomial& a, const Monomial& b);

inline bool operator<(const Monomial& a, const Monomial& b) { return grevlex_compare(a, b) < 0; }

struct MonomialLess {
  bool operator()(const Monomial& a, const Monomial& b) const { return grevlex_compare(a, b) < 0; }
};

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const { return m.hash(); }
};

}  // namespace npf::jetcalc
