#include "npf/civita/collapse.hpp"

#include "npf/parallel.hpp"

#include <map>
#include <set>

namespace npf::civita {

std::optional<Rational> proportion(const DiffPoly& target, const DiffPoly& s) {
  if (s.is_zero()) return target.is_zero() ? std::optional<Rational>(Rational(0)) : std::nullopt;
  if (target.size() != s.size()) return std::nullopt;
  const auto& t = target.terms();
  const auto& u = s.terms();
  const Rational& t0 = t.back().coeff;
  const Rational& u0 = u.back().coeff;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (!(t[i].mono == u[i].mono)) return std::nullopt;
    if (!(t[i].coeff * u0 == u[i].coeff * t0)) return std::nullopt;
  }
  return t0 / u0;
}

namespace {

using Key = std::vector<std::uint8_t>;

// Distinct partitions of mono up to incidence, in enumeration order.
std::vector<Marker> distinct_partitions(const SpacePtr& space, const Monomial& mono, int tuples, std::size_t* seen = nullptr) {
  std::set<Key> keys;
  std::vector<Marker> out;
  std::size_t n = 0;
  for_each_partition(space, mono, tuples, [&](const Marker& m) {
    ++n;
    if (keys.insert(incidence_key(m, tuples)).second) out.push_back(m);
  });
  if (seen) *seen = n;
  return out;
}

struct ClassMarkers {
  std::size_t orbit_monomials = 0;
  std::size_t partitions = 0;
  std::vector<Marker> markers;  // one per incidence key
};

// Partitions of every class monomial, taken up to relabelling coordinates.
ClassMarkers class_markers(const DiffPoly& cls, int tuples, const Profile* profile) {
  const auto& space = cls.space();
  std::set<Monomial> reps;
  for (const auto& t : cls.terms()) {
    if (profile && !(profile_of(t.mono) == *profile)) throw std::invalid_argument("class mixes differential profiles");
    Monomial key = t.mono;
    for (const auto& s : permutations(space->d)) key = std::min(key, permute_coordinates(t.mono, s.image));
    reps.insert(key);
  }
  std::vector<Monomial> monos(reps.begin(), reps.end());
  ClassMarkers out;
  out.orbit_monomials = monos.size();
  std::vector<std::size_t> counts(monos.size());
  auto per = parallel_map<std::vector<Marker>>(monos.size(), [&](std::size_t i) {
    return distinct_partitions(space, monos[i], tuples, &counts[i]);
  });
  std::set<Key> keys;
  for (std::size_t i = 0; i < monos.size(); ++i) {
    out.partitions += counts[i];
    for (auto& m : per[i])
      if (keys.insert(incidence_key(m, tuples)).second) out.markers.push_back(std::move(m));
  }
  return out;
}

// lambda*a + mu*b == c on the union of supports, or nothing.
std::optional<std::pair<Rational, Rational>> pair_fit(const DiffPoly& c, const DiffPoly& a, const DiffPoly& b) {
  std::set<Monomial> support;
  for (const auto* p : {&c, &a, &b})
    for (const auto& t : p->terms()) support.insert(t.mono);
  std::vector<std::array<Rational, 3>> rows;
  for (const auto& m : support) rows.push_back({a.coefficient(m), b.coefficient(m), c.coefficient(m)});
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = i + 1; j < rows.size(); ++j) {
      Rational det = rows[i][0] * rows[j][1] - rows[i][1] * rows[j][0];
      if (det.is_zero()) continue;
      Rational lam = (rows[i][2] * rows[j][1] - rows[i][1] * rows[j][2]) / det;
      Rational mu = (rows[i][0] * rows[j][2] - rows[i][2] * rows[j][0]) / det;
      for (const auto& r : rows)
        if (!(lam * r[0] + mu * r[1] == r[2])) return std::nullopt;
      return std::make_pair(lam, mu);
    }
  return std::nullopt;
}

}  // namespace

CollapseResult collapse_search(const DiffPoly& target, int tuples) {
  if (!target.space()) throw std::invalid_argument("target has no base space");
  const auto& space = target.space();
  CollapseResult res;
  res.formula.space = space;
  res.formula.tuples = tuples;
  for (const auto& [prof, cls] : partition_by_profile(target)) {
    CollapseClass cc;
    cc.profile = prof;
    cc.terms = cls.size();
    cc.chosen = cls.leading_term().mono;
    auto cands = distinct_partitions(space, cc.chosen, tuples);
    cc.candidates = cands.size();
    std::vector<DiffPoly> sums(cands.size());
    std::vector<bool> done(cands.size(), false);
    bool found = false;
    for (std::size_t i = 0; i < cands.size() && !found; ++i) {
      sums[i] = alternating_sum(space, tuples, cands[i]);
      done[i] = true;
      if (sums[i].is_zero()) continue;
      if (auto lam = proportion(cls, sums[i])) {
        Marker m = cands[i];
        m.coeff = *lam;
        cc.markers.push_back(m);
        found = true;
      }
    }
    if (!found) {
      // Pairs among the leading monomial's markers first, then among
      // markers of the whole class.
      std::vector<Marker> pool = cands;
      std::vector<DiffPoly> pool_sums = sums;
      std::size_t lead = pool.size();
      std::set<Key> keys;
      for (const auto& m : pool) keys.insert(incidence_key(m, tuples));
      for (auto& m : class_markers(cls, tuples, nullptr).markers)
        if (keys.insert(incidence_key(m, tuples)).second) pool.push_back(std::move(m));
      pool_sums.resize(pool.size());
      for (std::size_t i = lead; i < pool.size(); ++i) pool_sums[i] = alternating_sum(space, tuples, pool[i]);
      std::vector<std::size_t> nz;
      for (std::size_t i = 0; i < pool.size(); ++i) {
        if (pool_sums[i].is_zero()) continue;
        bool dup = false;
        for (std::size_t j : nz)
          if (proportion(pool_sums[i], pool_sums[j])) dup = true;
        if (!dup) nz.push_back(i);
      }
      for (std::size_t x = 0; x < nz.size() && !found; ++x)
        for (std::size_t y = x + 1; y < nz.size() && !found; ++y) {
          auto fit = pair_fit(cls, pool_sums[nz[x]], pool_sums[nz[y]]);
          if (!fit) continue;
          Marker m1 = pool[nz[x]], m2 = pool[nz[y]];
          m1.coeff = fit->first;
          m2.coeff = fit->second;
          if (!m1.coeff.is_zero()) cc.markers.push_back(m1);
          if (!m2.coeff.is_zero()) cc.markers.push_back(m2);
          found = true;
        }
    }
    if (!found) throw CollapseError("no collapse found for profile " + prof.str());
    for (const auto& m : cc.markers) res.formula.markers.push_back(m);
    res.classes.push_back(std::move(cc));
  }
  return res;
}

SymmetryReport extra_symmetry_check(const DiffPoly& cls, int tuples) {
  SymmetryReport rep;
  if (cls.is_zero()) return rep;
  const auto& space = cls.space();
  rep.terms = cls.size();
  rep.profile = profile_of(cls.terms().front().mono);
  auto cm = class_markers(cls, tuples, &rep.profile);
  rep.orbit_monomials = cm.orbit_monomials;
  rep.partitions = cm.partitions;
  std::vector<Marker>& markers = cm.markers;
  rep.marker_classes = markers.size();

  std::vector<DiffPoly> sums(markers.size());
  for (std::size_t i = 0; i < markers.size(); ++i) sums[i] = alternating_sum(space, tuples, markers[i]);
  std::vector<DiffPoly> nonzero;
  for (auto& s : sums) {
    if (s.is_zero()) ++rep.zero_markers;
    else nonzero.push_back(std::move(s));
  }
  rep.nonzero_markers = nonzero.size();
  auto basis = jetcalc::echelon_basis(nonzero);
  rep.rank = basis.size();
  rep.pairwise_proportional = rep.rank == 1;
  DiffPoly r = cls;
  for (const auto& b : basis) {
    Rational c = r.coefficient(b.leading_term().mono);
    if (!c.is_zero()) r -= c * b;
  }
  rep.class_in_span = r.is_zero();
  if (!rep.class_in_span) return rep;
  if (rep.rank == 1) {
    rep.min_span = 1;
    return rep;
  }
  std::vector<std::size_t> nz;
  for (std::size_t i = 0; i < nonzero.size(); ++i) {
    if (proportion(cls, nonzero[i])) {
      rep.min_span = 1;
      return rep;
    }
    bool dup = false;
    for (std::size_t j : nz)
      if (proportion(nonzero[i], nonzero[j])) dup = true;
    if (!dup) nz.push_back(i);
  }
  for (std::size_t x = 0; x < nz.size(); ++x)
    for (std::size_t y = x + 1; y < nz.size(); ++y)
      if (pair_fit(cls, nonzero[nz[x]], nonzero[nz[y]])) {
        rep.min_span = 2;
        return rep;
      }
  rep.min_span = rep.rank;
  return rep;
}

}  // namespace npf::civita
