#include "npf/civita/marker.hpp"

#include "npf/parallel.hpp"

#include <algorithm>
#include <mutex>
#include <stdexcept>

namespace npf::civita {

using jetcalc::MultiIndex;
using jetcalc::PolyAccumulator;
using jetcalc::VarCode;

const std::vector<Permutation>& permutations(int n) {
  static std::vector<std::vector<Permutation>> cache(jetcalc::kMaxDim + 1);
  static std::once_flag once;
  std::call_once(once, [] {
    for (int k = 0; k <= jetcalc::kMaxDim; ++k) {
      std::vector<int> p(k);
      for (int i = 0; i < k; ++i) p[i] = i;
      do {
        int inv = 0;
        for (int i = 0; i < k; ++i)
          for (int j = i + 1; j < k; ++j) inv += p[i] > p[j];
        cache[k].push_back({p, inv % 2 ? -1 : 1});
      } while (std::next_permutation(p.begin(), p.end()));
    }
  });
  if (n < 0 || n > jetcalc::kMaxDim) throw std::invalid_argument("permutation size out of range");
  return cache[n];
}

void validate_marker(const Marker& m, int d, int tuples) {
  if (d < 1 || d > jetcalc::kMaxDim || tuples < 0) throw std::invalid_argument("bad marker shape");
  std::vector<int> seen(static_cast<std::size_t>(d * tuples), 0);
  auto mark = [&](const Letter& l) {
    if (l.tuple >= tuples || l.position >= d) throw std::invalid_argument("marker letter out of range");
    ++seen[l.tuple * d + l.position];
  };
  for (const auto& f : m.factors)
    for (const auto& l : f.letters) mark(l);
  if (m.free) mark(*m.free);
  for (int s : seen)
    if (s != 1) throw std::invalid_argument("invalid partition: every tuple needs each position exactly once");
}

namespace {

// Calls fn(first-tuple index, per-tuple permutation indices) for the whole
// product group, parallel over the first tuple.
template <class Acc, class Visit>
std::vector<Acc> over_group(int d, int tuples, const std::function<Acc()>& make, Visit visit) {
  const auto& perms = permutations(d);
  const std::size_t np = perms.size();
  if (tuples == 0) {
    std::vector<Acc> out;
    out.push_back(make());
    std::vector<const Permutation*> sig;
    visit(out[0], sig);
    return out;
  }
  std::vector<Acc> out(np);
  parallel_for(np, [&](std::size_t i0) {
    Acc acc = make();
    std::vector<std::size_t> idx(static_cast<std::size_t>(tuples), 0);
    idx[0] = i0;
    std::vector<const Permutation*> sig(static_cast<std::size_t>(tuples));
    while (true) {
      for (int k = 0; k < tuples; ++k) sig[k] = &perms[idx[k]];
      visit(acc, sig);
      int k = tuples - 1;
      while (k >= 1 && ++idx[k] == np) idx[k--] = 0;
      if (k < 1) break;
    }
    out[i0] = std::move(acc);
  });
  return out;
}

Monomial substituted(const Marker& m, const std::vector<const Permutation*>& sig, int& sign) {
  sign = 1;
  for (const auto* s : sig) sign *= s->sign;
  Monomial::Storage vars;
  for (const auto& f : m.factors) {
    MultiIndex e;
    for (const auto& l : f.letters) ++e.e[sig[l.tuple]->image[l.position]];
    vars.push_back(jetcalc::make_var(f.symbol, e));
  }
  return Monomial::from_unsorted(std::move(vars));
}

}  // namespace

DiffPoly alternating_sum(const SpacePtr& space, int tuples, const Marker& m) {
  if (m.free) throw std::invalid_argument("marker has a free index; use alternating_sum_field");
  validate_marker(m, space->d, tuples);
  auto parts = over_group<PolyAccumulator>(
      space->d, tuples, [&] { return PolyAccumulator(space); },
      [&](PolyAccumulator& acc, const std::vector<const Permutation*>& sig) {
        int sign;
        Monomial mono = substituted(m, sig, sign);
        acc.add(std::move(mono), sign > 0 ? m.coeff : -m.coeff);
      });
  PolyAccumulator all(space);
  for (auto& p : parts) all.add(p.take());
  return all.take();
}

PolyVector alternating_sum_field(const SpacePtr& space, int tuples, const Marker& m) {
  if (!m.free) throw std::invalid_argument("marker has no free index");
  validate_marker(m, space->d, tuples);
  const int d = space->d;
  using Accs = std::vector<PolyAccumulator>;
  auto parts = over_group<Accs>(
      d, tuples, [&] { return Accs(static_cast<std::size_t>(d), PolyAccumulator(space)); },
      [&](Accs& acc, const std::vector<const Permutation*>& sig) {
        int sign;
        Monomial mono = substituted(m, sig, sign);
        int slot = sig[m.free->tuple]->image[m.free->position];
        acc[slot].add(std::move(mono), sign > 0 ? m.coeff : -m.coeff);
      });
  std::vector<DiffPoly> comps;
  for (int i = 0; i < d; ++i) {
    PolyAccumulator all(space);
    for (auto& p : parts) all.add(p[i].take());
    comps.push_back(all.take());
  }
  return PolyVector::vector_field(space, comps);
}

bool is_zero_marker(const SpacePtr& space, int tuples, const Marker& m) {
  if (m.free) return alternating_sum_field(space, tuples, m).is_zero();
  return alternating_sum(space, tuples, m).is_zero();
}

Monomial marker_monomial(const SpacePtr& space, const Marker& m) {
  Monomial::Storage vars;
  for (const auto& f : m.factors) {
    MultiIndex e;
    for (const auto& l : f.letters) {
      if (l.position >= space->d) throw std::invalid_argument("marker letter out of range");
      ++e.e[l.position];
    }
    vars.push_back(jetcalc::make_var(f.symbol, e));
  }
  return Monomial::from_unsorted(std::move(vars));
}

std::vector<std::uint8_t> incidence_key(const Marker& m, int tuples) {
  std::vector<std::vector<std::uint8_t>> rows;
  for (const auto& f : m.factors) {
    std::vector<std::uint8_t> r(static_cast<std::size_t>(tuples) + 1, 0);
    r[0] = f.symbol;
    for (const auto& l : f.letters) ++r[1 + l.tuple];
    rows.push_back(std::move(r));
  }
  if (m.free) {
    std::vector<std::uint8_t> r(static_cast<std::size_t>(tuples) + 1, 0);
    r[0] = 255;
    ++r[1 + m.free->tuple];
    rows.push_back(std::move(r));
  }
  std::vector<std::uint8_t> best;
  for (const auto& pi : permutations(tuples)) {
    auto rr = rows;
    for (std::size_t i = 0; i < rows.size(); ++i)
      for (int k = 0; k < tuples; ++k) rr[i][1 + pi.image[k]] = rows[i][1 + k];
    std::sort(rr.begin(), rr.end());
    std::vector<std::uint8_t> flat;
    for (const auto& r : rr) flat.insert(flat.end(), r.begin(), r.end());
    if (best.empty() || flat < best) best = std::move(flat);
  }
  return best;
}

void for_each_partition(const SpacePtr& space, const Monomial& mono, int tuples,
                        const std::function<void(const Marker&)>& fn) {
  const int d = space->d;
  std::vector<std::vector<int>> occ(static_cast<std::size_t>(d));
  for (std::size_t f = 0; f < mono.degree(); ++f)
    for (int c = 0; c < d; ++c)
      for (int r = 0; r < jetcalc::var_exp(mono[f], c); ++r) occ[c].push_back(static_cast<int>(f));
  for (int c = 0; c < d; ++c)
    if (static_cast<int>(occ[c].size()) != tuples)
      throw std::invalid_argument("each coordinate must occur once per tuple among the derivatives");
  const auto& perms = permutations(tuples);
  std::vector<std::size_t> idx(static_cast<std::size_t>(d), 0);
  Marker m;
  while (true) {
    m.factors.assign(mono.degree(), MarkerFactor{});
    for (std::size_t f = 0; f < mono.degree(); ++f) m.factors[f].symbol = jetcalc::var_symbol(mono[f]);
    for (int c = 0; c < d; ++c)
      for (int j = 0; j < tuples; ++j)
        m.factors[occ[c][j]].letters.push_back(
            {static_cast<std::uint8_t>(perms[idx[c]].image[j]), static_cast<std::uint8_t>(c)});
    for (auto& f : m.factors) std::sort(f.letters.begin(), f.letters.end());
    fn(m);
    int c = d - 1;
    while (c >= 0 && ++idx[c] == perms.size()) idx[c--] = 0;
    if (c < 0) break;
  }
}

Monomial permute_coordinates(const Monomial& m, const std::vector<int>& sigma) {
  Monomial::Storage vars;
  for (VarCode v : m) {
    MultiIndex e = jetcalc::var_index(v), out;
    for (std::size_t k = 0; k < sigma.size(); ++k) out.e[sigma[k]] = e.e[k];
    vars.push_back(jetcalc::make_var(jetcalc::var_symbol(v), out));
  }
  return Monomial::from_unsorted(std::move(vars));
}

DiffPoly permute_coordinates(const DiffPoly& p, const std::vector<int>& sigma) {
  std::vector<jetcalc::Term> terms;
  terms.reserve(p.size());
  for (const auto& t : p.terms()) terms.push_back({permute_coordinates(t.mono, sigma), t.coeff});
  return DiffPoly::from_terms(p.space(), std::move(terms));
}

}  // namespace npf::civita
