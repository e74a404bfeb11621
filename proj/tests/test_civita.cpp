#include "npf/civita/collapse.hpp"
#include "npf/fixtures.hpp"
#include "npf/jetcalc/text.hpp"

#include "support.hpp"

#include <doctest.h>

using namespace npf;
using namespace npf::civita;
using jetcalc::make_space;

namespace {

DiffPoly P(const std::string& s, int d) { return jetcalc::parse(s, make_space(d)); }

CivitaFormula F(const std::string& body, int d, int tuples) {
  return parse_civita_formula("dim " + std::to_string(d) + "\ntuples " + std::to_string(tuples) + "\n" + body);
}

DiffPoly expand(const std::string& body, int d, int tuples) { return expand_civita_formula(F(body, d, tuples)); }

const ExpandedVelocities& appendix() {
  static ExpandedVelocities v = load_expanded_velocities(testing::fixture("adot_rhodot_g3_3D.txt"), make_space(3));
  return v;
}

}  // namespace

TEST_CASE("M1 is a zero marker, M2 is not") {
  auto m1 = F("rho_x1*rho_y1*rho_x2y2", 2, 2);
  CHECK(expand_civita_formula(m1).is_zero());
  CHECK(is_zero_marker(m1.space, 2, m1.markers[0]));

  auto m2 = F("rho_x1*rho_y2*rho_x2y1", 2, 2);
  CHECK_FALSE(is_zero_marker(m2.space, 2, m2.markers[0]));
  CHECK(expand_civita_formula(m2) == P("2*rho_x*rho_y*rho_xy - rho_y^2*rho_xx - rho_x^2*rho_yy", 2));
}

TEST_CASE("the four equivalent markers") {
  DiffPoly target = P("rho_x^2*rho_yy - 2*rho_x*rho_y*rho_xy + rho_y^2*rho_xx", 2);
  CHECK(expand("rho_x1*rho_x2*rho_y1y2", 2, 2) == target);
  CHECK(expand("rho_y1*rho_y2*rho_x1x2", 2, 2) == target);
  CHECK(expand("-rho_x1*rho_y2*rho_y1x2", 2, 2) == target);
  CHECK(expand("-rho_y1*rho_x2*rho_x1y2", 2, 2) == target);
}

TEST_CASE("a symmetric swap cancels") {
  CHECK(expand("rho_x1y1*rho_x2y2", 2, 2).is_zero());
}

TEST_CASE("partition choice matters") {
  DiffPoly m3 = expand("a_x1*rho_x2*a_y1y3*rho_x3y2", 2, 3);
  DiffPoly m4 = expand("a_x1*rho_x2*a_y2y3*rho_x3y1", 2, 3);
  REQUIRE_FALSE(m3.is_zero());
  REQUIRE_FALSE(m4.is_zero());
  CHECK_FALSE(m3 == m4);
  CHECK_FALSE(proportion(m3, m4).has_value());
  // they share the identity term
  auto mono = jetcalc::parse("a_x*rho_x*a_yy*rho_xy", make_space(2)).leading_term().mono;
  CHECK_FALSE(m3.coefficient(mono).is_zero());
  CHECK_FALSE(m4.coefficient(mono).is_zero());
  auto report = extra_symmetry_check(m3, 3);
  CHECK(report.rank >= 2);
  CHECK_FALSE(report.pairwise_proportional);
}

TEST_CASE("equal incidence keys give sums equal up to sign") {
  auto f = F("a_x1*rho_x2*a_y1y3*rho_x3y2\na_x2*rho_x1*a_y2y3*rho_x3y1", 2, 3);
  CHECK(incidence_key(f.markers[0], 3) == incidence_key(f.markers[1], 3));
  auto s0 = alternating_sum(f.space, 3, f.markers[0]);
  auto s1 = alternating_sum(f.space, 3, f.markers[1]);
  CHECK((s0 == s1 || s0 == -s1));
}

TEST_CASE("marker validation") {
  CHECK_THROWS_AS(F("rho_x1*rho_x1*rho_y2y2", 2, 2), jetcalc::ParseError);
  CHECK_THROWS_AS(F("rho_x1*rho_y1", 2, 2), jetcalc::ParseError);
  auto good = F("rho_x1*rho_y1*rho_x2y2", 2, 2).markers[0];
  CHECK_NOTHROW(validate_marker(good, 2, 2));
  CHECK_THROWS_AS(validate_marker(good, 2, 3), std::invalid_argument);
  good.factors[0].letters[0].position = 1;
  CHECK_THROWS_AS(validate_marker(good, 2, 2), std::invalid_argument);
  CHECK_THROWS_AS(F("rho_q1*rho_y1*rho_x2y2", 2, 2), jetcalc::ParseError);
  CHECK_THROWS_AS(parse_civita_formula("tuples 2\nrho_x1*rho_y1"), jetcalc::ParseError);
}

TEST_CASE("formula text round trip") {
  for (const char* name : {"r3_adot.civ", "r3_rhodot.civ", "r4_unit_a1.civ", "x_field.civ"}) {
    auto f = load_civita_formula(testing::fixture(name));
    auto g = parse_civita_formula(print_civita_formula(f));
    CHECK(print_civita_formula(g) == print_civita_formula(f));
    CHECK(g.markers.size() == f.markers.size());
  }
}

TEST_CASE("permutations") {
  const auto& s3 = permutations(3);
  CHECK(s3.size() == 6);
  CHECK(s3[0].image == std::vector<int>{0, 1, 2});
  int total = 0;
  for (const auto& p : s3) total += p.sign;
  CHECK(total == 0);
}

TEST_CASE("partitions of a small monomial") {
  auto sp = make_space(2);
  auto mono = jetcalc::parse("rho_x*rho_y*rho_xy", sp).leading_term().mono;
  int count = 0;
  for_each_partition(sp, mono, 2, [&](const Marker& m) {
    validate_marker(m, 2, 2);
    ++count;
  });
  CHECK(count > 1);
  auto bad = jetcalc::parse("rho_x*rho_xy", sp).leading_term().mono;
  CHECK_THROWS(for_each_partition(sp, bad, 2, [](const Marker&) {}));
}

TEST_CASE("profiles") {
  auto sp = make_space(3);
  CHECK(profile_of(jetcalc::parse("rho_x*rho_y*rho_xy", sp).leading_term().mono).str() == "ρ112");
  CHECK(profile_of(jetcalc::parse("rho^2*a_x*rho_y*a_xy*a_zz*a_xyz", sp).leading_term().mono).str() == "a1223ρ001");

  auto a = partition_by_profile(appendix().adot);
  std::map<std::string, std::size_t> ca;
  for (const auto& [p, c] : a) ca[p.str()] = c.size();
  CHECK(ca == std::map<std::string, std::size_t>{{"a1113ρ111", 54}, {"a1123ρ011", 102}, {"a1223ρ001", 72}});

  auto r = partition_by_profile(appendix().rhodot);
  std::map<std::string, std::size_t> cr;
  for (const auto& [p, c] : r) cr[p.str()] = c.size();
  CHECK(cr == std::map<std::string, std::size_t>{
                  {"a111ρ1113", 54}, {"a112ρ0113", 102}, {"a112ρ1112", 102}, {"a122ρ0013", 72}, {"a122ρ0112", 96}});
}

TEST_CASE("greedy diagonal decomposition") {
  auto sp = make_space(3);
  for (auto [poly, expected] : {std::pair{appendix().adot, 38}, std::pair{appendix().rhodot, 71}}) {
    auto reps = greedy_skew_decompose(poly);
    CHECK(reps.size() == static_cast<std::size_t>(expected));
    DiffPoly sum(0);
    for (const auto& r : reps) sum = sum + r.coeff * diagonal_orbit_sum(sp, r.mono);
    CHECK(sum == poly);
  }
  auto one = diagonal_orbit_sum(sp, jetcalc::parse("a_x*rho_y*a_zz", sp).leading_term().mono);
  CHECK(greedy_skew_decompose(one).size() == 1);
  CHECK_THROWS_AS(greedy_skew_decompose(jetcalc::parse("a_x*rho_y", sp)), std::domain_error);
}

TEST_CASE("collapsed formulas expand to the fixture velocities") {
  CHECK(expand_civita_formula(load_civita_formula(testing::fixture("r3_adot.civ"))) == appendix().adot);
  CHECK(expand_civita_formula(load_civita_formula(testing::fixture("r3_rhodot.civ"))) == appendix().rhodot);
}

TEST_CASE("collapse search rediscovers small formulas") {
  auto ra = collapse_search(appendix().adot, 3);
  CHECK(ra.formula.markers.size() == 3);
  CHECK(expand_civita_formula(ra.formula) == appendix().adot);
  auto rr = collapse_search(appendix().rhodot, 3);
  CHECK(rr.formula.markers.size() == 5);
  CHECK(expand_civita_formula(rr.formula) == appendix().rhodot);
}

TEST_CASE("collapse search on R^4") {
  auto target = expand_civita_formula(load_civita_formula(testing::fixture("r4_unit_a1.civ")));
  auto r = collapse_search(target, 3);
  REQUIRE(r.formula.markers.size() == 2);
  std::vector<Rational> coeffs{r.formula.markers[0].coeff, r.formula.markers[1].coeff};
  std::sort(coeffs.begin(), coeffs.end(), [](const Rational& x, const Rational& y) { return abs(x) < abs(y); });
  CHECK(abs(coeffs[0]) == Rational(3));
  CHECK(abs(coeffs[1]) == Rational(6));
  CHECK(expand_civita_formula(r.formula) == target);
}

TEST_CASE("extra symmetry on every R^3 profile") {
  for (const auto* poly : {&appendix().adot, &appendix().rhodot})
    for (const auto& [p, cls] : partition_by_profile(*poly)) {
      auto rep = extra_symmetry_check(cls, 3);
      INFO(p.str());
      CHECK(rep.pairwise_proportional);
      CHECK(rep.rank == 1);
      CHECK(rep.class_in_span);
      CHECK(rep.min_span == 1);
      CHECK(rep.nonzero_markers > 0);
    }
}

TEST_CASE("collapse fails loudly on a non-skew target") {
  auto sp = make_space(2);
  CHECK_THROWS(collapse_search(jetcalc::parse("rho_x*rho_y*rho_xy", sp), 2));
}
