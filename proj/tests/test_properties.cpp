#include "support.hpp"

#include <doctest.h>

using namespace npf::testing;

namespace {

void run(const Property& p, std::uint64_t seed) {
  auto r = run_property(p, 1000, seed);
  INFO("case " << r.cases << ": " << r.failure);
  CHECK(r.failure.empty());
  CHECK(r.cases == 1000);
}

}  // namespace

TEST_CASE("ring axioms on random differential polynomials") { run(check_ring_axioms, 11); }
TEST_CASE("total derivatives commute and obey Leibniz") { run(check_derivative_commutation, 12); }
TEST_CASE("parse of print is the identity") { run(check_parse_roundtrip, 13); }
TEST_CASE("Schouten bracket graded antisymmetry") { run(check_schouten_antisymmetry, 14); }
TEST_CASE("Schouten bracket graded Jacobi identity") { run(check_schouten_jacobi, 15); }
TEST_CASE("sparse solver agrees with a dense elimination") { run(check_sparse_vs_dense, 16); }
