#include "npf/civita/formula.hpp"
#include "npf/fixtures.hpp"
#include "npf/graphflow/induce.hpp"
#include "npf/graphflow/tetra.hpp"
#include "npf/jetcalc/text.hpp"
#include "npf/trivialize/micrograph.hpp"
#include "npf/trivialize/xfield.hpp"

#include "support.hpp"

#include <doctest.h>

using namespace npf;
using namespace npf::trivialize;
using jetcalc::make_space;

namespace {

struct Setup {
  NambuData nd = NambuData::symbolic(make_space(3));
  PolyVector p = nambu::nambu_bivector(nd);
  PolyVector q = graphflow::tetra_flow(p);
  PolyVector x = builtin_x_field();
};

const Setup& setup() {
  static Setup s;
  return s;
}

MicroGraph graph(std::array<std::array<int, 3>, 3> t) {
  MicroGraph g;
  g.targets = t;
  return g;
}

}  // namespace

TEST_CASE("the built-in field matches its fixture") {
  auto a = builtin_x_formula();
  auto b = civita::load_civita_formula(testing::fixture("x_field.civ"));
  CHECK(a.markers.size() == 11);
  CHECK(a.has_free());
  CHECK(civita::print_civita_formula(a) == civita::print_civita_formula(b));
  for (const auto& [m, c] : setup().x.components()) CHECK(c.size() == 324);
}

TEST_CASE("the printed field trivializes four times the flow") {
  const auto& s = setup();
  CHECK(multivec::schouten(s.p, s.x) == Rational(4) * s.q);
  CHECK_FALSE(verify_coboundary(s.p, s.x).is_zero());
}

TEST_CASE("a quarter of the printed field is a trivialization") {
  const auto& s = setup();
  PolyVector x = Rational(1, 4) * s.x;
  CHECK(verify_coboundary(s.p, x).is_zero());
  auto v = graphflow::induce_velocities(s.nd, s.q);
  auto rep = verify_velocity_consistency(s.nd, x, v);
  CHECK(rep.casimir_ok);
  CHECK(rep.density_ok);
  CHECK(rep.minus_x_a == minus_derivation(x, s.nd.casimirs[0]));
}

TEST_CASE("three markers feed X(a)") {
  auto idx = contributing_markers(builtin_x_formula(), setup().nd.casimirs[0]);
  CHECK(idx == std::vector<std::size_t>{6, 7, 9});
}

TEST_CASE("Poisson-exact shifts leave the residual unchanged") {
  const auto& s = setup();
  testing::Gen g(2024);
  PolyVector base = verify_coboundary(s.p, s.x);
  for (int k = 0; k < 3; ++k) {
    DiffPoly h = g.poly(s.nd.space, 3, 3);
    PolyVector shift = multivec::schouten(s.p, PolyVector::scalar(s.nd.space, h));
    CHECK(verify_coboundary(s.p, s.x + shift) == base);
  }
}

TEST_CASE("micro-graph encoding and validation") {
  auto g = graph({{{1, 3, 4}, {0, 3, 6}, {3, 4, 5}}});
  CHECK_NOTHROW(g.validate());
  CHECK_FALSE(g.has_tadpole());
  CHECK(g.encoding() == "(1 a3 a4)(0 a3 s)(a3 a4 a5)");
  CHECK(graph({{{0, 3, 6}, {3, 4, 5}, {3, 4, 5}}}).has_tadpole());
  CHECK_THROWS_AS(graph({{{6, 3, 6}, {3, 4, 5}, {3, 4, 5}}}).validate(), std::invalid_argument);
  CHECK_THROWS_AS(graph({{{1, 3, 4}, {3, 4, 5}, {3, 4, 5}}}).validate(), std::invalid_argument);
}

TEST_CASE("canonical keys ignore vertex labels and slot order") {
  auto g = graph({{{1, 3, 4}, {0, 3, 6}, {3, 4, 5}}});
  // swap density vertices 0 and 1, Casimirs 3 and 5, and reorder slots
  auto h = graph({{{5, 1, 6}, {4, 5, 0}, {3, 4, 5}}});
  CHECK(g.canonical_key() == h.canonical_key());
  auto other = graph({{{1, 3, 3}, {0, 3, 6}, {3, 4, 5}}});
  CHECK_FALSE(g.canonical_key() == other.canonical_key());
}

TEST_CASE("micro-graph evaluation agrees with its marker") {
  auto sp = make_space(3);
  auto graphs = enumerate_micrographs(true);
  for (std::size_t i = 0; i < graphs.size(); i += 997) {
    auto m = graphs[i].to_marker();
    CHECK(evaluate(graphs[i], sp) == civita::alternating_sum_field(sp, 3, m));
  }
}

TEST_CASE("micro-graph enumeration") {
  CHECK(enumerate_micrographs(true).size() == 7318);
  CHECK(enumerate_micrographs(false).size() == 1887);
}

TEST_CASE("trivialization solver") {
  const auto& s = setup();
  auto without = solve_trivialization(s.nd, s.q, {false});
  CHECK_FALSE(without.feasible);
  CHECK_FALSE(without.reason.empty());

  auto with = solve_trivialization(s.nd, s.q, {true});
  REQUIRE(with.feasible);
  CHECK(verify_coboundary(s.p, with.field).is_zero());
  // differs from the printed field (rescaled) by a cocycle
  CHECK(multivec::schouten(s.p, with.field - Rational(1, 4) * s.x).is_zero());
  CHECK(with.particular.size() == with.columns.size());
  auto sp = s.nd.space;
  for (std::size_t k = 0; k < std::min<std::size_t>(3, with.kernel.size()); ++k) {
    PolyVector y(sp, 1);
    for (const auto& [col, c] : with.kernel[k]) y += c * evaluate(with.columns[col], sp);
    CHECK(multivec::schouten(s.p, y).is_zero());
  }
  CHECK_FALSE(dump_solution(with).empty());
}
