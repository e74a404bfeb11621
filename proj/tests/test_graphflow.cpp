#include "npf/fixtures.hpp"
#include "npf/graphflow/graph.hpp"
#include "npf/graphflow/induce.hpp"
#include "npf/graphflow/tetra.hpp"
#include "npf/jetcalc/text.hpp"
#include "npf/nambu/nambu.hpp"

#include "support.hpp"

#include <doctest.h>

using namespace npf;
using namespace npf::graphflow;
using jetcalc::make_space;
using nambu::NambuData;

TEST_CASE("graph text round trip") {
  GraphSum gs = builtin_gamma3();
  REQUIRE(gs.terms.size() == 3);
  GraphSum back = load_graph_sum(print_graph_sum(gs));
  REQUIRE(back.terms.size() == 3);
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(back.terms[i].coeff == gs.terms[i].coeff);
    CHECK(back.terms[i].graph == gs.terms[i].graph);
  }
}

TEST_CASE("the graph fixture is the built-in cocycle") {
  GraphSum file = load_graph_sum(read_file(testing::fixture("gamma3.graph")));
  GraphSum gs = builtin_gamma3();
  REQUIRE(file.terms.size() == gs.terms.size());
  for (std::size_t i = 0; i < gs.terms.size(); ++i) {
    CHECK(file.terms[i].coeff == gs.terms[i].coeff);
    CHECK(file.terms[i].graph == gs.terms[i].graph);
  }
}

TEST_CASE("graph parse errors") {
  try {
    load_graph_sum("1 ; 1 ; (0,0,-1) (0,1,-2)\n1 ; 1 ; (0,0,-1 (0,1,-2)\n");
    FAIL("no exception");
  } catch (const GraphParseError& e) {
    CHECK(e.line == 2);
  }
  // slot gap
  CHECK_THROWS(load_graph_sum("1 ; 1 ; (0,0,-1) (0,2,-2)\n"));
  // edge to a missing vertex
  CHECK_THROWS(load_graph_sum("1 ; 1 ; (0,0,-1) (0,1,4)\n"));
}

TEST_CASE("a single vertex with two leaves evaluates to P") {
  auto nd = NambuData::symbolic(make_space(3));
  auto p = nambu::nambu_bivector(nd);
  auto gs = load_graph_sum("1 ; 1 ; (0,0,-1) (0,1,-2)\n");
  CHECK(evaluate_graph(gs, {p}, p.space()) == p);
}

TEST_CASE("tetrahedral flow degenerates for rho = 1 on R^3") {
  auto p = nambu::nambu_bivector(NambuData::symbolic(make_space(3), true));
  CHECK(tetra_flow(p).is_zero());
  CHECK(tetra_flow_graph(p).is_zero());
}

TEST_CASE("tetrahedral flow with symbolic rho on R^3") {
  auto p = nambu::nambu_bivector(NambuData::symbolic(make_space(3)));
  auto q = tetra_flow(p);
  CHECK(q == tetra_flow_graph(p));
  CHECK(q.components().size() == 3);
  for (const auto& [m, c] : q.components()) CHECK(c.size() == 1504);
}

TEST_CASE("the flow is a Poisson cocycle on a polynomial bracket") {
  auto sp = make_space(3);
  NambuData nd{sp, jetcalc::parse("1 + x^2*y + x*z^3", sp), {jetcalc::parse("x^3*y^2 + y*z^4 + x^2*z^3", sp)}};
  auto p = nambu::nambu_bivector(nd);
  auto q = tetra_flow(p);
  CHECK_FALSE(q.is_zero());
  CHECK(multivec::schouten(p, q).is_zero());
}

TEST_CASE("candidate monomials carry n-1 derivatives per coordinate") {
  auto sp = make_space(3);
  auto c = candidate_monomials(sp, {{jetcalc::casimir_symbol(0), 2}, {jetcalc::rho_symbol(), 1}}, 1, 3, {1, 0});
  CHECK_FALSE(c.empty());
  for (const auto& m : c) {
    std::array<int, 3> per{};
    for (auto v : m)
      for (int k = 0; k < 3; ++k) per[k] += jetcalc::var_exp(v, k);
    CHECK(per == std::array<int, 3>{1, 1, 1});
  }
}

TEST_CASE("induced velocities on R^3") {
  auto nd = NambuData::symbolic(make_space(3));
  auto q = tetra_flow(nambu::nambu_bivector(nd));
  auto v = induce_velocities(nd, q);
  REQUIRE(v.casimirs.size() == 1);
  CHECK(v.casimirs[0].size() == 228);
  CHECK(v.density.size() == 426);
  CHECK(reassemble(nd, v.casimirs, v.density) == q);
  CHECK(extract_density_velocity(nd, q, v.casimirs) == v.density);

  auto fix = load_expanded_velocities(testing::fixture("adot_rhodot_g3_3D.txt"), nd.space);
  CHECK(fix.adot == v.casimirs[0]);
  CHECK(fix.rhodot == v.density);
}

TEST_CASE("induction rejects a bivector that is not a flow") {
  auto nd = NambuData::symbolic(make_space(3));
  auto p = nambu::nambu_bivector(nd);
  auto q = tetra_flow(p);
  q.set({0, 1}, q.get({0, 1}) + jetcalc::parse("rho_x*rho_y*rho_z*a_xyz^3", nd.space));
  CHECK_THROWS_AS(induce_velocities(nd, q), InductionError);
}
