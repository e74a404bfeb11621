#include "npf/fixtures.hpp"

#include "npf/jetcalc/text.hpp"

#include <cctype>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace npf {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string squeeze(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s)
    if (!std::isspace(static_cast<unsigned char>(c))) out += c;
  return out;
}

ExpandedVelocities parse_expanded_velocities(const std::string& text, const jetcalc::SpacePtr& space) {
  std::string s = squeeze(text);
  auto a = s.find("adot=");
  auto r = s.find("rhodot=");
  if (a == std::string::npos || r == std::string::npos || r < a)
    throw std::runtime_error("expected 'adot = ...' followed by 'rhodot = ...'");
  ExpandedVelocities v;
  v.adot = jetcalc::parse(s.substr(a + 5, r - a - 5), space);
  v.rhodot = jetcalc::parse(s.substr(r + 7), space);
  return v;
}

ExpandedVelocities load_expanded_velocities(const std::string& path, const jetcalc::SpacePtr& space) {
  return parse_expanded_velocities(read_file(path), space);
}

}  // namespace npf
