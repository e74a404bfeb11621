#include "npf/graphflow/induce.hpp"

#include "npf/linalg/sparse.hpp"
#include "npf/parallel.hpp"

#include <algorithm>

namespace npf::graphflow {

using jetcalc::Monomial;
using jetcalc::MultiIndex;
using jetcalc::SymbolId;
using jetcalc::VarCode;
using multivec::IndexMask;

std::vector<Monomial> candidate_monomials(const jetcalc::SpacePtr& space,
                                          const std::vector<std::pair<SymbolId, int>>& factors,
                                          int per_coordinate, int order_cap, const std::vector<int>& min_order) {
  const int d = space->d;
  // all multi-indices with order in [lo, cap] and entries <= per_coordinate
  auto indices = [&](int lo) {
    std::vector<MultiIndex> out;
    MultiIndex m;
    auto rec = [&](auto&& self, int k, int left) -> void {
      if (k == d) {
        if (m.order() >= lo) out.push_back(m);
        return;
      }
      for (int v = 0; v <= std::min(left, per_coordinate); ++v) {
        m.e[k] = static_cast<std::uint8_t>(v);
        self(self, k + 1, left - v);
      }
      m.e[k] = 0;
    };
    rec(rec, 0, order_cap);
    return out;
  };

  std::vector<Monomial> out;
  std::vector<VarCode> chosen;
  std::vector<int> budget(static_cast<std::size_t>(d), per_coordinate);
  std::vector<std::vector<VarCode>> pools;
  for (std::size_t f = 0; f < factors.size(); ++f) {
    std::vector<VarCode> pool;
    for (const auto& m : indices(min_order[f])) pool.push_back(jetcalc::make_var(factors[f].first, m));
    std::sort(pool.begin(), pool.end());
    pools.push_back(pool);
  }
  // choose multisets symbol by symbol with non-decreasing codes
  auto rec = [&](auto&& self, std::size_t f, int left, std::size_t from) -> void {
    if (f == factors.size()) {
      for (int k = 0; k < d; ++k)
        if (budget[k] != 0) return;
      out.push_back(Monomial::from_unsorted(Monomial::Storage(chosen.begin(), chosen.end())));
      return;
    }
    if (left == 0) {
      std::size_t nf = f + 1;
      self(self, nf, nf < factors.size() ? factors[nf].second : 0, 0);
      return;
    }
    const auto& pool = pools[f];
    for (std::size_t i = from; i < pool.size(); ++i) {
      VarCode v = pool[i];
      bool ok = true;
      for (int k = 0; k < d; ++k)
        if (jetcalc::var_exp(v, k) > budget[k]) ok = false;
      if (!ok) continue;
      for (int k = 0; k < d; ++k) budget[k] -= jetcalc::var_exp(v, k);
      chosen.push_back(v);
      self(self, f, left - 1, i);
      chosen.pop_back();
      for (int k = 0; k < d; ++k) budget[k] += jetcalc::var_exp(v, k);
    }
  };
  if (!factors.empty()) rec(rec, 0, factors[0].second, 0);
  std::sort(out.begin(), out.end());
  return out;
}

PolyVector reassemble(const NambuData& data, const std::vector<DiffPoly>& casimir_dots, const DiffPoly& density_dot) {
  data.validate();
  NambuData with_rho = data;
  with_rho.rho = density_dot;
  PolyVector out = nambu::nambu_bivector(with_rho);
  for (std::size_t i = 0; i < casimir_dots.size(); ++i) {
    NambuData with_a = data;
    with_a.casimirs[i] = casimir_dots[i];
    out += nambu::nambu_bivector(with_a);
  }
  return out;
}

namespace {

std::vector<std::pair<SymbolId, int>> velocity_factors(const NambuData& data, int n, int bumped) {
  std::vector<std::pair<SymbolId, int>> f;
  if (!data.unit_density()) f.emplace_back(jetcalc::rho_symbol(), bumped < 0 ? n : n - 1);
  for (std::size_t i = 0; i < data.casimirs.size(); ++i) {
    const auto& c = data.casimirs[i];
    if (c.size() != 1 || c.terms()[0].mono.degree() != 1)
      throw std::invalid_argument("induce_velocities needs symbolic Casimirs");
    f.emplace_back(jetcalc::var_symbol(c.terms()[0].mono[0]), static_cast<int>(i) == bumped ? n : n - 1);
  }
  return f;
}

}  // namespace

Velocities induce_velocities(const NambuData& data, const PolyVector& dot_p, const InduceOptions& opt) {
  data.validate();
  const auto& sp = data.space;
  const int n = opt.vertices;
  std::size_t ncas = data.casimirs.size();

  struct Block {
    int casimir;  // -1 for the density
    std::vector<Monomial> cands;
  };
  std::vector<Block> blocks;
  for (std::size_t i = 0; i <= ncas; ++i) {
    int which = i < ncas ? static_cast<int>(i) : -1;
    auto factors = velocity_factors(data, n, which);
    std::vector<int> lo;
    for (const auto& f : factors) lo.push_back(f.first == jetcalc::rho_symbol() ? 0 : opt.casimir_min_order);
    blocks.push_back({which, candidate_monomials(sp, factors, n - 1, opt.order_cap, lo)});
  }

  std::vector<std::pair<int, std::size_t>> cols;  // (block, candidate)
  for (std::size_t b = 0; b < blocks.size(); ++b)
    for (std::size_t c = 0; c < blocks[b].cands.size(); ++c) cols.emplace_back(static_cast<int>(b), c);

  NambuData unit = data;
  unit.rho = DiffPoly(Rational(1), sp);
  PolyVector unit_p = nambu::nambu_bivector(unit);

  auto images = parallel_map<PolyVector>(cols.size(), [&](std::size_t k) {
    const auto& blk = blocks[cols[k].first];
    DiffPoly m = DiffPoly::monomial(sp, blk.cands[cols[k].second]);
    if (blk.casimir < 0) return m * unit_p;
    NambuData with_a = data;
    with_a.casimirs[blk.casimir] = m;
    return nambu::nambu_bivector(with_a);
  });

  linalg::RowAssembler<std::pair<IndexMask, Monomial>, std::less<>> rows(static_cast<int>(cols.size()));
  for (std::size_t k = 0; k < cols.size(); ++k)
    for (const auto& [mask, poly] : images[k].components())
      for (const auto& t : poly.terms()) rows.add({mask, t.mono}, static_cast<int>(k), t.coeff);
  for (const auto& [mask, poly] : dot_p.components())
    for (const auto& t : poly.terms()) rows.add_rhs({mask, t.mono}, t.coeff);

  auto system = rows.build();
  auto sol = linalg::solve(system);
  if (!sol.feasible) throw InductionError("no solution: " + sol.reason);
  if (!sol.kernel.empty()) throw InductionError("non-unique: kernel of dimension " + std::to_string(sol.kernel.size()));

  Velocities v;
  v.unknowns = cols.size();
  v.equations = system.rows();
  std::vector<std::vector<jetcalc::Term>> acc(blocks.size());
  for (std::size_t k = 0; k < cols.size(); ++k)
    if (!sol.particular[k].is_zero()) acc[cols[k].first].push_back({blocks[cols[k].first].cands[cols[k].second], sol.particular[k]});
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    DiffPoly p = DiffPoly::from_terms(sp, std::move(acc[b]));
    if (blocks[b].casimir < 0)
      v.density = p;
    else
      v.casimirs.push_back(p);
  }
  return v;
}

DiffPoly extract_density_velocity(const NambuData& data, const PolyVector& dot_p,
                                  const std::vector<DiffPoly>& casimir_dots) {
  data.validate();
  const auto& sp = data.space;
  PolyVector residual = dot_p - reassemble(data, casimir_dots, DiffPoly(Rational(0), sp));
  NambuData unit = data;
  unit.rho = DiffPoly(Rational(1), sp);
  PolyVector unit_p = nambu::nambu_bivector(unit);
  std::vector<IndexMask> masks;
  for (const auto& [m, p] : residual.components()) masks.push_back(m);
  for (const auto& [m, p] : unit_p.components())
    if (!residual.components().count(m)) masks.push_back(m);
  std::sort(masks.begin(), masks.end());
  auto quotients = parallel_map<DiffPoly>(masks.size(), [&](std::size_t k) {
    DiffPoly num = residual.at(masks[k]), den = unit_p.at(masks[k]);
    if (den.is_zero()) {
      if (!num.is_zero()) throw InductionError("inconsistent components: residual where the Nambu component vanishes");
      return DiffPoly(Rational(0), sp);
    }
    return jetcalc::exact_divide(num, den);
  });
  for (std::size_t k = 0; k < masks.size(); ++k) {
    if (unit_p.at(masks[k]).is_zero()) continue;
    for (std::size_t j = 0; j < k; ++j) {
      if (unit_p.at(masks[j]).is_zero()) continue;
      if (!(quotients[j] == quotients[k])) throw InductionError("inconsistent components: quotients differ");
    }
  }
  for (std::size_t k = 0; k < masks.size(); ++k)
    if (!unit_p.at(masks[k]).is_zero()) return quotients[k];
  return DiffPoly(Rational(0), sp);
}

}  // namespace npf::graphflow
