#include "npf/civita/profile.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <stdexcept>

namespace npf::civita {

namespace {

int symbol_rank(SymbolId s) {
  switch (jetcalc::symbol_kind(s)) {
    case jetcalc::SymbolKind::casimir: return 0;
    case jetcalc::SymbolKind::density: return 1;
    default: return 2;
  }
}

bool symbol_before(SymbolId a, SymbolId b) {
  int ra = symbol_rank(a), rb = symbol_rank(b);
  return ra != rb ? ra < rb : a < b;
}

}  // namespace

bool operator<(const Profile& a, const Profile& b) {
  return std::lexicographical_compare(
      a.entries.begin(), a.entries.end(), b.entries.begin(), b.entries.end(), [](const auto& x, const auto& y) {
        if (x.first != y.first) return symbol_before(x.first, y.first);
        return x.second < y.second;
      });
}

std::string Profile::str() const {
  bool spaced = false;
  for (const auto& [s, orders] : entries) {
    const auto& n = jetcalc::symbol_name(s);
    if (!n.empty() && std::isdigit(static_cast<unsigned char>(n.back()))) spaced = true;
  }
  std::string out;
  for (const auto& [s, orders] : entries) {
    if (spaced && !out.empty()) out += ' ';
    out += s == jetcalc::rho_symbol() ? std::string("ρ") : jetcalc::symbol_name(s);
    if (spaced) out += ' ';
    for (int o : orders) out += o < 10 ? std::to_string(o) : "(" + std::to_string(o) + ")";
  }
  return out;
}

Profile profile_of(const Monomial& m) {
  std::map<SymbolId, std::vector<int>> by;
  for (auto v : m) by[jetcalc::var_symbol(v)].push_back(jetcalc::var_order(v));
  Profile p;
  for (auto& [s, orders] : by) {
    std::sort(orders.begin(), orders.end());
    p.entries.emplace_back(s, std::move(orders));
  }
  std::sort(p.entries.begin(), p.entries.end(),
            [](const auto& x, const auto& y) { return symbol_before(x.first, y.first); });
  return p;
}

std::map<Profile, DiffPoly> partition_by_profile(const DiffPoly& p) {
  std::map<Profile, std::vector<jetcalc::Term>> buckets;
  for (const auto& t : p.terms()) buckets[profile_of(t.mono)].push_back(t);
  std::map<Profile, DiffPoly> out;
  for (auto& [prof, terms] : buckets) out.emplace(prof, DiffPoly::from_canonical(p.space(), std::move(terms)));
  return out;
}

DiffPoly diagonal_orbit_sum(const SpacePtr& space, const Monomial& m, int sign_exponent) {
  jetcalc::PolyAccumulator acc(space);
  for (const auto& s : permutations(space->d)) {
    int w = (sign_exponent % 2 != 0) ? s.sign : 1;
    acc.add(permute_coordinates(m, s.image), Rational(w));
  }
  return acc.take();
}

std::vector<SkewRepresentative> greedy_skew_decompose(const DiffPoly& p, int sign_exponent) {
  if (p.is_zero()) return {};
  if (!p.space()) throw std::invalid_argument("polynomial has no base space");
  std::vector<SkewRepresentative> out;
  DiffPoly rest = p;
  std::set<Monomial> done;
  while (!rest.is_zero()) {
    const auto& lead = rest.leading_term();
    Monomial key = lead.mono;
    for (const auto& s : permutations(p.space()->d)) key = std::min(key, permute_coordinates(lead.mono, s.image));
    if (!done.insert(key).second) throw std::domain_error("input is not of the claimed diagonal symmetry");
    DiffPoly orbit = diagonal_orbit_sum(p.space(), lead.mono, sign_exponent);
    Rational k = orbit.coefficient(lead.mono);
    if (k.is_zero()) throw std::domain_error("input is not of the claimed diagonal symmetry");
    Rational c = lead.coeff / k;
    out.push_back({c, lead.mono});
    rest -= c * orbit;
  }
  return out;
}

}  // namespace npf::civita
