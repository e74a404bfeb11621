#include "npf/trivialize/xfield.hpp"

#include "npf/graphflow/tetra.hpp"

#include <stdexcept>

namespace npf::trivialize {

const char* builtin_x_text() {
  return "dim 3\n"
         "tuples 3\n"
         "12*rho*rho_v3*rho_u1u2*a_w3*a_v1v2*a_w1w2*partial_u3\n"
         "48*rho*rho_w2*rho_u1u2*a_w3*a_v1v2*a_w1u3*partial_v3\n"
         "8*rho_v2*rho_u1u3*rho_v1v3*a_w1*a_w2*a_w3*partial_u2\n"
         "-40*rho_w1*rho_v2*rho_u1u3*a_w2*a_w3*a_v1v3*partial_u2\n"
         "8*rho_w1*rho_v2*rho_w3*a_w2*a_u1u3*a_v1v3*partial_u2\n"
         "24*rho_v2*rho_w3*rho_u1u3*a_w1*a_w2*a_u2v3*partial_v1\n"
         "-12*rho^2*rho_v3*a_u1u2*a_v1v2*a_w1w2w3*partial_u3\n"
         "24*rho*rho_v2*rho_u3*a_v3*a_u1u2*a_w1w2w3*partial_v1\n"
         "-36*rho*rho_v1*rho_v2*a_v3*a_u1u2*a_w1w2w3*partial_u3\n"
         "8*rho_v1*rho_u2*rho_u3*a_v2*a_v3*a_w1w2w3*partial_u1\n"
         "-8*rho_u2*rho_u3*rho_w1w2w3*a_v1*a_v2*a_v3*partial_u1\n";
}

CivitaFormula builtin_x_formula() { return civita::parse_civita_formula(builtin_x_text()); }

PolyVector builtin_x_field() { return civita::expand_civita_field(builtin_x_formula()); }

PolyVector verify_coboundary(const PolyVector& p, const PolyVector& x) {
  if (p.degree() != 2 || x.degree() != 1) throw std::invalid_argument("need a bivector and a vector field");
  return graphflow::tetra_flow(p) - multivec::schouten(p, x);
}

DiffPoly minus_derivation(const PolyVector& x, const DiffPoly& a) {
  jetcalc::PolyAccumulator acc(x.space());
  for (int i = 0; i < x.dim(); ++i) acc.add_product(x.get({i}), a.total_derivative(i), Rational(-1));
  return acc.take();
}

VelocityReport verify_velocity_consistency(const NambuData& data, const PolyVector& x, const graphflow::Velocities& v) {
  if (data.space->d != 3 || v.casimirs.size() != 1) throw std::invalid_argument("velocity check is for d = 3");
  VelocityReport r;
  r.minus_x_a = minus_derivation(x, data.casimirs[0]);
  auto top = nambu::top_multivector(data.space, data.rho);
  r.density_from_x = multivec::schouten(top, x).get({0, 1, 2});
  r.casimir_ok = r.minus_x_a == v.casimirs[0];
  r.density_ok = r.density_from_x == v.density;
  return r;
}

std::vector<std::size_t> contributing_markers(const CivitaFormula& f, const DiffPoly& a) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < f.markers.size(); ++i) {
    auto field = civita::alternating_sum_field(f.space, f.tuples, f.markers[i]);
    if (!minus_derivation(field, a).is_zero()) out.push_back(i);
  }
  return out;
}

}  // namespace npf::trivialize
