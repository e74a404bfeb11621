#include "npf/jetcalc/json.hpp"

#include "npf/jetcalc/text.hpp"

#include <stdexcept>

namespace npf::jetcalc {

namespace {

nlohmann::json integer_json(const mpz_class& z) {
  if (z.fits_slong_p()) return z.get_si();
  return z.get_str();
}

mpz_class integer_from_json(const nlohmann::json& j) {
  if (j.is_number_integer()) return mpz_class(std::to_string(j.get<long long>()));
  if (j.is_string()) return mpz_class(j.get<std::string>());
  throw std::invalid_argument("expected integer in JSON");
}

}  // namespace

nlohmann::json to_json(const DiffPoly& p) {
  nlohmann::json arr = nlohmann::json::array();
  int d = p.space() ? p.space()->d : kMaxDim;
  for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
    nlohmann::json factors = nlohmann::json::array();
    for (auto v : it->mono) {
      SymbolId s = var_symbol(v);
      nlohmann::json idx = nlohmann::json::array();
      for (int k = 0; k < d; ++k) idx.push_back(var_exp(v, k));
      std::string name = is_coordinate(s) ? var_token(v, p.space()) : symbol_name(s);
      factors.push_back({name, idx});
    }
    arr.push_back({{"coeff", {integer_json(it->coeff.numerator()), integer_json(it->coeff.denominator())}},
                   {"factors", factors}});
  }
  return arr;
}

DiffPoly diffpoly_from_json(const nlohmann::json& j, const SpacePtr& space) {
  if (!j.is_array()) throw std::invalid_argument("DiffPoly JSON must be an array");
  std::vector<Term> terms;
  for (const auto& t : j) {
    const auto& c = t.at("coeff");
    if (!c.is_array() || c.size() != 2) throw std::invalid_argument("coeff must be [num, den]");
    mpq_class q(integer_from_json(c[0]), integer_from_json(c[1]));
    if (q.get_den() == 0) throw std::invalid_argument("zero denominator");
    q.canonicalize();
    Monomial::Storage vars;
    for (const auto& f : t.at("factors")) {
      std::string name = f.at(0).get<std::string>();
      MultiIndex m;
      const auto& idx = f.at(1);
      for (std::size_t k = 0; k < idx.size(); ++k) {
        if (k >= static_cast<std::size_t>(kMaxDim)) throw std::invalid_argument("multi-index too long");
        m.e[k] = static_cast<std::uint8_t>(idx[k].get<int>());
      }
      int ci = (space && name.size() == 1) ? space->index_of(name[0]) : -1;
      if (ci >= 0) {
        vars.push_back(make_var(coordinate_symbol(ci), {}));
      } else {
        vars.push_back(make_var(symbol_by_name(name), m));
      }
    }
    terms.push_back({Monomial::from_unsorted(std::move(vars)), Rational(q)});
  }
  return DiffPoly::from_terms(space, std::move(terms));
}

}  // namespace npf::jetcalc
