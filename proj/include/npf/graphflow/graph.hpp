#pragma once

#include "npf/multivec/polyvector.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace npf::graphflow {

using jetcalc::DiffPoly;
using jetcalc::SpacePtr;
using multivec::PolyVector;

// target >= 0 is an internal vertex; target = -s is sink s (1-based).
struct Edge {
  int source = 0;
  int slot = 0;
  int target = 0;
  friend bool operator==(const Edge&, const Edge&) = default;
};

struct DirectedGraph {
  int vertices = 0;
  std::vector<Edge> edges;

  int sinks() const;
  std::vector<int> out_degree() const;
  // Slots per vertex are 0..k-1 without gaps; sinks 1..s each get one edge.
  void validate() const;
  friend bool operator==(const DirectedGraph&, const DirectedGraph&) = default;
};

struct GraphTerm {
  Rational coeff;
  DirectedGraph graph;
};

struct GraphSum {
  std::vector<GraphTerm> terms;
};

struct GraphParseError : std::runtime_error {
  GraphParseError(const std::string& msg, std::size_t line, std::size_t column);
  std::size_t line;
  std::size_t column;
};

// One graph per line: "coeff ; vertex-count ; (source,slot,target) ...".
// '#' starts a comment. Sinks are -1, -2, ...
GraphSum load_graph_sum(std::string_view text);
std::string print_graph_sum(const GraphSum& gs);

// Raw contraction: entry for sink indices (i_1..i_s) at position
// sum_k i_k d^{s-k}.
std::vector<DiffPoly> evaluate_raw(const DirectedGraph& g, const std::vector<PolyVector>& contents,
                                   const SpacePtr& space);

// contents[v] sits at vertex v; a single entry is shared by all vertices.
// The result is the skew-symmetric part of the summed raw tensors.
PolyVector evaluate_graph(const GraphSum& gs, const std::vector<PolyVector>& contents, const SpacePtr& space);

PolyVector skew_part(const std::vector<DiffPoly>& raw, int legs, const SpacePtr& space);

}  // namespace npf::graphflow
