#pragma once

#include "npf/civita/formula.hpp"
#include "npf/civita/profile.hpp"

#include <optional>
#include <stdexcept>

namespace npf::civita {

struct CollapseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// target == lambda * s exactly (cross-multiplied).
std::optional<Rational> proportion(const DiffPoly& target, const DiffPoly& s);

struct CollapseClass {
  Profile profile;
  std::size_t terms = 0;
  Monomial chosen;                  // the monomial whose partitions were tried
  std::size_t candidates = 0;       // distinct partitions up to tuple symmetry
  std::vector<Marker> markers;      // one, or two from the fallback
};

struct CollapseResult {
  CivitaFormula formula;
  std::vector<CollapseClass> classes;
};

// Per profile class: the leading monomial's partitions, first proportional
// marker wins; otherwise the first pair of markers spanning the class.
// Throws CollapseError("no collapse found ...").
CollapseResult collapse_search(const DiffPoly& target, int tuples);

struct SymmetryReport {
  Profile profile;
  std::size_t terms = 0;
  std::size_t orbit_monomials = 0;  // class monomials up to relabelling coordinates
  std::size_t partitions = 0;       // partitions enumerated
  std::size_t marker_classes = 0;   // distinct factor/tuple incidences
  std::size_t zero_markers = 0;
  std::size_t nonzero_markers = 0;
  std::size_t rank = 0;             // of the span of all nonzero alternating sums
  std::size_t min_span = 0;         // fewest nonzero sums whose span holds the class (0: none)
  bool pairwise_proportional = false;
  bool class_in_span = false;
};

// Exhausts all partitions of all monomials of a single-profile class.
SymmetryReport extra_symmetry_check(const DiffPoly& cls, int tuples);

}  // namespace npf::civita
