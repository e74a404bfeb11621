#pragma once

#include "npf/civita/marker.hpp"
#include "npf/linalg/sparse.hpp"
#include "npf/nambu/nambu.hpp"

#include <array>
#include <string>
#include <vector>

namespace npf::trivialize {

using multivec::PolyVector;
using nambu::NambuData;

// Vertices 0..2 carry rho times a Civita symbol and have three ordered
// out-edges each; 3..5 carry a copy of the Casimir; 6 is the sink.
struct MicroGraph {
  static constexpr int kDensity = 3;
  static constexpr int kCasimir = 3;
  static constexpr int kSink = 6;
  std::array<std::array<int, 3>, kDensity> targets{};  // target of slot p of density vertex v

  bool has_tadpole() const;
  void validate() const;  // exactly one edge on the sink; throws std::invalid_argument
  // e.g. "(s 1 a3)(0 a4 a5)(2 a3 a4)"
  std::string encoding() const;
  // Same graph up to relabelling density and Casimir vertices and reordering
  // the slots of each density vertex.
  std::string canonical_key() const;
  // The vector field as a marker: tuple v is the Civita symbol of vertex v.
  civita::Marker to_marker() const;
};

// One representative per isomorphism class, in order of first appearance.
std::vector<MicroGraph> enumerate_micrographs(bool allow_tadpoles);

PolyVector evaluate(const MicroGraph& g, const jetcalc::SpacePtr& space);

struct TrivializeOptions {
  bool allow_tadpoles = true;
};

struct TrivializeResult {
  bool feasible = false;
  std::string reason;
  std::size_t graphs = 0;           // isomorphism classes enumerated
  std::vector<MicroGraph> columns;  // the ones with a nonzero value
  std::vector<Rational> particular; // one coefficient per column
  std::vector<linalg::SparseVector> kernel;
  std::size_t equations = 0;
  PolyVector field;                 // sum of particular coefficients times values
};

// Solves [[P, sum c_g X_g]] = rhs for the coefficients; rhs is normally
// tetra_flow(P). d = 3, one Casimir.
TrivializeResult solve_trivialization(const NambuData& data, const PolyVector& rhs, const TrivializeOptions& opt = {});

// "(encoding) coefficient" lines for the nonzero particular coefficients.
std::string dump_solution(const TrivializeResult& r);

}  // namespace npf::trivialize
