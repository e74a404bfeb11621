#pragma once

#include "npf/jetcalc/diffpoly.hpp"

#include <string>
#include <utility>

namespace npf {

struct ExpandedVelocities {
  jetcalc::DiffPoly adot;
  jetcalc::DiffPoly rhodot;
};

// Reads "adot = <poly> rhodot = <poly>" with arbitrary line breaks inside
// the polynomials. Throws jetcalc::ParseError or std::runtime_error.
ExpandedVelocities parse_expanded_velocities(const std::string& text, const jetcalc::SpacePtr& space);
ExpandedVelocities load_expanded_velocities(const std::string& path, const jetcalc::SpacePtr& space);

std::string read_file(const std::string& path);
// Drops all whitespace.
std::string squeeze(const std::string& s);

}  // namespace npf
