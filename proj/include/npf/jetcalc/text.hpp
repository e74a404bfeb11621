#pragma once

#include "npf/jetcalc/diffpoly.hpp"

#include <stdexcept>
#include <string>
#include <string_view>

namespace npf::jetcalc {

struct ParseError : std::runtime_error {
  ParseError(const std::string& msg, std::size_t line, std::size_t column);
  std::size_t line;
  std::size_t column;
};

// Canonical text form: descending term order, `*` between factors, `^` for powers.
std::string print(const DiffPoly& p);
std::string var_token(VarCode v, const SpacePtr& space);
std::string monomial_text(const Monomial& m, const SpacePtr& space);

// Accepts the printed grammar plus parentheses, `/` by constants and whitespace anywhere
// between tokens.
DiffPoly parse(std::string_view text, const SpacePtr& space);

}  // namespace npf::jetcalc
