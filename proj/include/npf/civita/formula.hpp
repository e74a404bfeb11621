#pragma once

#include "npf/civita/marker.hpp"
#include "npf/jetcalc/text.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace npf::civita {

struct CivitaFormula {
  SpacePtr space;
  int tuples = 0;
  std::vector<Marker> markers;

  bool has_free() const;
  void validate() const;
};

// Position letters for tuple entries: uvw (d=3), stuv (d=4), xy (d=2).
std::string position_letters(int d);

// Text form, one marker per line:
//   dim 3
//   tuples 3
//   2*a_u1*a_u2*a_u3*rho_w1*rho_w2*rho_w3*a_v1v2v3
// `partial_u3` marks the free slot; `rho^2` repeats an undifferentiated factor.
// Throws jetcalc::ParseError.
CivitaFormula parse_civita_formula(std::string_view text);
CivitaFormula load_civita_formula(const std::string& path);
std::string print_civita_formula(const CivitaFormula& f);
std::string marker_text(const Marker& m, int d);

DiffPoly expand_civita_formula(const CivitaFormula& f);
PolyVector expand_civita_field(const CivitaFormula& f);

}  // namespace npf::civita
