#pragma once

#include "npf/jetcalc/monomial.hpp"
#include "npf/jetcalc/space.hpp"
#include "npf/rational.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace npf::jetcalc {

struct Term {
  Monomial mono;
  Rational coeff;
};

// Sparse differential polynomial. Terms are kept in ascending grevlex order;
// the leading term is the last one. A null space means "no coordinates
// referenced yet" and is compatible with any space.
class DiffPoly {
public:
  DiffPoly() = default;
  DiffPoly(const Rational& c, SpacePtr space = {});
  DiffPoly(int c) : DiffPoly(Rational(c)) {}

  static DiffPoly jet(SpacePtr space, SymbolId s, const MultiIndex& m = {});
  static DiffPoly jet(SpacePtr space, const std::string& symbol, const MultiIndex& m = {});
  static DiffPoly coordinate(SpacePtr space, int i);
  static DiffPoly monomial(SpacePtr space, Monomial m, Rational c = 1);
  // Sorts, combines and drops zeros.
  static DiffPoly from_terms(SpacePtr space, std::vector<Term> terms);
  // Trusts that terms are already canonical.
  static DiffPoly from_canonical(SpacePtr space, std::vector<Term> terms);

  const SpacePtr& space() const { return space_; }
  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  Rational constant_value() const;  // coefficient of the empty monomial
  const Term& leading_term() const;
  Rational coefficient(const Monomial& m) const;
  DiffPoly with_space(SpacePtr s) const;

  DiffPoly operator-() const;
  DiffPoly& operator+=(const DiffPoly& o);
  DiffPoly& operator-=(const DiffPoly& o);
  DiffPoly& operator*=(const DiffPoly& o);
  DiffPoly& operator*=(const Rational& c);
  friend DiffPoly operator+(const DiffPoly& a, const DiffPoly& b);
  friend DiffPoly operator-(const DiffPoly& a, const DiffPoly& b);
  friend DiffPoly operator*(const DiffPoly& a, const DiffPoly& b);
  friend DiffPoly operator*(const Rational& c, const DiffPoly& p);
  friend DiffPoly operator*(const DiffPoly& p, const Rational& c) { return c * p; }
  friend bool operator==(const DiffPoly& a, const DiffPoly& b);

  // Total derivative D_k.
  DiffPoly total_derivative(int k) const;
  DiffPoly total_derivative(const MultiIndex& m) const;

  // Sets the symbol to the constant 1 (all its derivatives vanish).
  DiffPoly substitute_unit(SymbolId s) const;
  // Replaces every jet of s by the corresponding total derivative of value.
  DiffPoly substitute(SymbolId s, const DiffPoly& value) const;

  std::size_t hash() const;

private:
  SpacePtr space_;
  std::vector<Term> terms_;
};

DiffPoly add(const DiffPoly& p, const DiffPoly& q);
DiffPoly mul(const DiffPoly& p, const DiffPoly& q);
DiffPoly total_derivative(const DiffPoly& p, int k);

// r with r*q == p exactly; throws std::domain_error("not divisible").
DiffPoly exact_divide(const DiffPoly& p, const DiffPoly& q);

struct SymbolProfile {
  int degree = 0;
  int derivatives = 0;
  friend bool operator==(const SymbolProfile&, const SymbolProfile&) = default;
};

struct HomogeneityProfile {
  std::map<std::string, SymbolProfile> symbols;
  int total_derivatives = 0;
  // Per-coordinate derivative count when uniform across monomials.
  std::vector<std::optional<int>> per_coordinate;
};

// Throws std::invalid_argument on input that is not homogeneous per symbol.
HomogeneityProfile homogeneity_profile_counts(const DiffPoly& p);

// Reduced echelon basis (leading coefficients 1) of the span of polys.
std::vector<DiffPoly> echelon_basis(const std::vector<DiffPoly>& polys);

// Accumulates many terms and canonicalizes once.
class PolyAccumulator {
public:
  explicit PolyAccumulator(SpacePtr space = {}, std::size_t compact_at = 1u << 20);
  void add(Monomial m, const Rational& c);
  void add(const DiffPoly& p, const Rational& scale = 1);
  void add_product(const DiffPoly& a, const DiffPoly& b, const Rational& scale = 1);
  DiffPoly take();
  bool empty() const { return buf_.empty(); }

private:
  void compact();
  SpacePtr space_;
  std::vector<Term> buf_;
  std::size_t compact_at_;
  std::size_t canonical_prefix_ = 0;
};

void canonicalize_terms(std::vector<Term>& terms);

}  // namespace npf::jetcalc
