#include "npf/nambu/nambu.hpp"

#include "npf/linalg/sparse.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace npf::nambu {

using jetcalc::Monomial;
using jetcalc::MonomialLess;
using multivec::IndexMask;

NambuData NambuData::symbolic(SpacePtr space, bool unit_density) {
  NambuData n;
  n.space = space;
  n.rho = unit_density ? DiffPoly(Rational(1), space) : DiffPoly::jet(space, jetcalc::rho_symbol());
  if (space->d == 3) {
    n.casimirs.push_back(DiffPoly::jet(space, jetcalc::casimir_symbol(0)));
  } else {
    for (int k = 1; k <= space->d - 2; ++k) n.casimirs.push_back(DiffPoly::jet(space, jetcalc::casimir_symbol(k)));
  }
  return n;
}

void NambuData::validate() const {
  if (!space) throw std::invalid_argument("Nambu data needs a base space");
  if (static_cast<int>(casimirs.size()) != space->d - 2)
    throw std::invalid_argument("Nambu data needs exactly d-2 Casimirs");
}

namespace {

int perm_sign(const std::vector<int>& p) {
  int s = 1;
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = i + 1; j < p.size(); ++j)
      if (p[i] > p[j]) s = -s;
  return s;
}

}  // namespace

PolyVector nambu_bivector(const NambuData& data) {
  data.validate();
  const auto& sp = data.space;
  int d = sp->d;
  std::vector<std::vector<DiffPoly>> grad(data.casimirs.size());
  for (std::size_t k = 0; k < data.casimirs.size(); ++k)
    for (int i = 0; i < d; ++i) grad[k].push_back(data.casimirs[k].total_derivative(i));
  PolyVector p(sp, 2);
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j) {
      std::vector<int> rest;
      for (int k = 0; k < d; ++k)
        if (k != i && k != j) rest.push_back(k);
      jetcalc::PolyAccumulator acc(sp);
      do {
        std::vector<int> full = rest;
        full.push_back(i);
        full.push_back(j);
        DiffPoly term(Rational(perm_sign(full)), sp);
        for (std::size_t k = 0; k < rest.size(); ++k) term = term * grad[k][rest[k]];
        acc.add(term);
      } while (std::next_permutation(rest.begin(), rest.end()));
      p.set({i, j}, data.rho * acc.take());
    }
  return p;
}

PolyVector top_multivector(SpacePtr space, const DiffPoly& rho) {
  std::vector<int> all(static_cast<std::size_t>(space->d));
  std::iota(all.begin(), all.end(), 0);
  return PolyVector::basis(space, all, rho);
}

PolyVector nambu_bivector_iterated(const NambuData& data) {
  data.validate();
  PolyVector t = top_multivector(data.space, data.rho);
  for (const auto& a : data.casimirs) t = multivec::schouten(t, PolyVector::scalar(data.space, a));
  return t;
}

PolyVector jacobi_check(const PolyVector& p) {
  if (p.degree() != 2) throw std::invalid_argument("jacobi_check needs a bivector");
  return Rational(1, 2) * multivec::schouten(p, p);
}

PolyVector hamiltonian_field(const PolyVector& p, const DiffPoly& h) {
  if (p.degree() != 2) throw std::invalid_argument("hamiltonian_field needs a bivector");
  return multivec::schouten(p, PolyVector::scalar(p.space(), h));
}

std::vector<DiffPoly> coefficient_minors3(const PolyVector& p) {
  int d = p.dim();
  std::vector<DiffPoly> out;
  std::vector<std::vector<DiffPoly>> m(static_cast<std::size_t>(d));
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) m[i].push_back(p.get({i, j}));
  for (int r0 = 0; r0 < d; ++r0)
    for (int r1 = r0 + 1; r1 < d; ++r1)
      for (int r2 = r1 + 1; r2 < d; ++r2)
        for (int c0 = 0; c0 < d; ++c0)
          for (int c1 = c0 + 1; c1 < d; ++c1)
            for (int c2 = c1 + 1; c2 < d; ++c2) {
              int r[3] = {r0, r1, r2}, c[3] = {c0, c1, c2};
              DiffPoly det(0, p.space());
              int perm[3] = {0, 1, 2};
              do {
                int s = perm_sign({perm[0], perm[1], perm[2]});
                det += Rational(s) * (m[r[0]][c[perm[0]]] * m[r[1]][c[perm[1]]] * m[r[2]][c[perm[2]]]);
              } while (std::next_permutation(perm, perm + 3));
              out.push_back(det);
            }
  return out;
}

std::vector<DiffPoly> coordinate_monomials(SpacePtr space, int max_degree) {
  int d = space->d;
  std::vector<DiffPoly> out;
  for (int deg = 0; deg <= max_degree; ++deg) {
    // exponent vectors of total degree deg in lexicographically decreasing order
    std::vector<int> e(static_cast<std::size_t>(d), 0);
    std::vector<std::vector<int>> all;
    auto rec = [&](auto&& self, int k, int left) -> void {
      if (k == d - 1) {
        e[k] = left;
        all.push_back(e);
        return;
      }
      for (int v = left; v >= 0; --v) {
        e[k] = v;
        self(self, k + 1, left - v);
      }
    };
    rec(rec, 0, deg);
    for (const auto& ev : all) {
      DiffPoly m(Rational(1), space);
      for (int k = 0; k < d; ++k)
        for (int n = 0; n < ev[k]; ++n) m = m * DiffPoly::coordinate(space, k);
      out.push_back(m);
    }
  }
  return out;
}

std::vector<DiffPoly> casimir_search(const PolyVector& p, int max_degree) {
  if (p.degree() != 2) throw std::invalid_argument("casimir_search needs a bivector");
  auto basis = coordinate_monomials(p.space(), max_degree);
  int n = static_cast<int>(basis.size());
  linalg::RowAssembler<std::pair<IndexMask, Monomial>, std::less<>> rows(n);
  std::vector<PolyVector> cols(basis.size());
  for (int c = 0; c < n; ++c) cols[c] = hamiltonian_field(p, basis[c]);
  for (int c = 0; c < n; ++c)
    for (const auto& [m, poly] : cols[c].components())
      for (const auto& t : poly.terms()) rows.add({m, t.mono}, c, t.coeff);
  auto sol = linalg::solve(rows.build());
  std::vector<DiffPoly> found;
  for (const auto& kv : sol.kernel) {
    DiffPoly q(0, p.space());
    for (const auto& [c, v] : kv) q += v * basis[c];
    found.push_back(q);
  }
  return jetcalc::echelon_basis(found);
}

}  // namespace npf::nambu
