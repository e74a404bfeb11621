#include "npf/jetcalc/text.hpp"
#include "npf/nambu/nambu.hpp"

#include "support.hpp"

#include <doctest.h>

using namespace npf;
using jetcalc::DiffPoly;
using jetcalc::make_space;
using multivec::PolyVector;
using nambu::NambuData;

namespace {

DiffPoly P(const std::string& s, int d = 3) { return jetcalc::parse(s, make_space(d)); }

NambuData polynomial_data(const std::string& a) {
  auto sp = make_space(3);
  return NambuData{sp, DiffPoly(1), {jetcalc::parse(a, sp)}};
}

}  // namespace

TEST_CASE("wedge and basis signs") {
  auto sp = make_space(3);
  auto dx = PolyVector::basis(sp, {0}), dy = PolyVector::basis(sp, {1});
  auto xy = multivec::wedge(dx, dy);
  CHECK(xy.get({0, 1}) == DiffPoly(1));
  CHECK(xy.get({1, 0}) == DiffPoly(-1));
  CHECK(multivec::wedge(dy, dx) == -xy);
  CHECK(multivec::wedge(dx, dx).is_zero());
}

TEST_CASE("Schouten bracket of vector fields is the commutator") {
  auto sp = make_space(3);
  auto X = PolyVector::vector_field(sp, {P("y"), DiffPoly(0), DiffPoly(0)});
  auto Y = PolyVector::vector_field(sp, {DiffPoly(0), P("x"), DiffPoly(0)});
  auto c = multivec::schouten(X, Y);
  // [y d_x, x d_y] = y d_y - x d_x
  CHECK(c.get({0}) == P("-x"));
  CHECK(c.get({1}) == P("y"));
}

TEST_CASE("Euler top components") {
  auto p = nambu::nambu_bivector(polynomial_data("1/2*(x^2+y^2+z^2)"));
  CHECK(p.get({0, 1}) == P("z"));
  CHECK(p.get({1, 2}) == P("x"));
  CHECK(p.get({2, 0}) == P("y"));
  CHECK(nambu::jacobi_check(p).is_zero());
}

TEST_CASE("log-symplectic components") {
  auto p = nambu::nambu_bivector(polynomial_data("1/2*x*y*z"));
  CHECK(p.get({0, 1}) == P("1/2*x*y"));
  CHECK(p.get({1, 2}) == P("1/2*y*z"));
  CHECK(p.get({2, 0}) == P("1/2*z*x"));
  CHECK(nambu::jacobi_check(p).is_zero());
}

TEST_CASE("symbolic Nambu bivectors are Poisson with Casimirs") {
  for (int d : {3, 4}) {
    for (bool unit : {false, true}) {
      auto nd = NambuData::symbolic(make_space(d), unit);
      CHECK(nd.casimirs.size() == static_cast<std::size_t>(d - 2));
      auto p = nambu::nambu_bivector(nd);
      CHECK(nambu::jacobi_check(p).is_zero());
      for (const auto& a : nd.casimirs) CHECK(nambu::hamiltonian_field(p, a).is_zero());
      for (const auto& m : nambu::coefficient_minors3(p)) CHECK(m.is_zero());
      CHECK(nambu::nambu_bivector_iterated(nd) == p);
    }
  }
}

TEST_CASE("d = 3 symbolic components") {
  auto p = nambu::nambu_bivector(NambuData::symbolic(make_space(3)));
  CHECK(p.get({0, 1}) == P("rho*a_z"));
  CHECK(p.get({0, 2}) == P("-rho*a_y"));
  CHECK(p.get({1, 2}) == P("rho*a_x"));
}

TEST_CASE("a generic bivector is not Poisson") {
  auto sp = make_space(3);
  PolyVector p(sp, 2);
  p.set({0, 1}, P("x"));
  p.set({1, 2}, P("y"));
  CHECK_FALSE(nambu::jacobi_check(p).is_zero());
}

TEST_CASE("V wedge E is Poisson") {
  for (int d : {3, 4})
    for (int k : {2, 3, 4}) {
      auto sp = make_space(d);
      auto p = multivec::wedge(multivec::homogeneous_power_field(sp, k), multivec::euler_field(sp));
      CHECK(nambu::jacobi_check(p).is_zero());
    }
}

TEST_CASE("casimir search") {
  auto euler = nambu::nambu_bivector(polynomial_data("1/2*(x^2+y^2+z^2)"));
  auto basis = nambu::casimir_search(euler, 2);
  REQUIRE(basis.size() == 2);
  auto span = jetcalc::echelon_basis({DiffPoly(1).with_space(make_space(3)), P("x^2+y^2+z^2")});
  CHECK(jetcalc::echelon_basis({basis[0], basis[1], span[0], span[1]}).size() == 2);

  auto sp = make_space(3);
  auto ve = multivec::wedge(multivec::homogeneous_power_field(sp, 2), multivec::euler_field(sp));
  auto c = nambu::casimir_search(ve, 4);
  REQUIRE(c.size() == 1);
  CHECK(c[0].is_constant());
}

TEST_CASE("validation rejects malformed data") {
  auto sp = make_space(4);
  NambuData bad{sp, DiffPoly(1), {jetcalc::parse("a1", sp)}};
  CHECK_THROWS(bad.validate());
}
