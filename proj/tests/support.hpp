#pragma once

#include "npf/jetcalc/text.hpp"
#include "npf/linalg/sparse.hpp"
#include "npf/multivec/polyvector.hpp"

#include <algorithm>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace npf::testing {

using jetcalc::DiffPoly;
using jetcalc::MultiIndex;
using jetcalc::SpacePtr;
using multivec::PolyVector;

#ifndef NPF_FIXTURE_DIR
#define NPF_FIXTURE_DIR "fixtures"
#endif

inline std::string fixture(const std::string& name) { return std::string(NPF_FIXTURE_DIR) + "/" + name; }

class Gen {
public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

  Rational coeff() {
    int n = 0;
    while (n == 0) n = uniform(-5, 5);
    return Rational(n, uniform(1, 3));
  }

  // Coordinates, rho and a (or a1, a2) jets of order <= max_order.
  DiffPoly factor(const SpacePtr& sp, int max_order) {
    int pick = uniform(0, 2);
    if (pick == 2 && sp->d < 3) pick = 1;
    if (pick == 0) return DiffPoly::coordinate(sp, uniform(0, sp->d - 1));
    std::string sym = pick == 1 ? "rho" : (sp->d == 3 ? "a" : "a" + std::to_string(uniform(1, sp->d - 2)));
    MultiIndex m;
    int order = uniform(0, max_order);
    for (int k = 0; k < order; ++k) ++m.e[uniform(0, sp->d - 1)];
    return DiffPoly::jet(sp, sym, m);
  }

  DiffPoly poly(const SpacePtr& sp, int terms, int degree, int max_order = 2) {
    DiffPoly p(0);
    int n = uniform(1, terms);
    for (int t = 0; t < n; ++t) {
      DiffPoly m(coeff());
      int deg = uniform(0, degree);
      for (int k = 0; k < deg; ++k) m = m * factor(sp, max_order);
      p = p + m;
    }
    return p.with_space(sp);
  }

  PolyVector multivector(const SpacePtr& sp, int degree, int terms, int poly_degree) {
    PolyVector v(sp, degree);
    std::vector<int> idx(static_cast<std::size_t>(sp->d));
    for (int i = 0; i < sp->d; ++i) idx[i] = i;
    int comps = uniform(1, 3);
    for (int c = 0; c < comps; ++c) {
      std::shuffle(idx.begin(), idx.end(), rng_);
      std::vector<int> pick(idx.begin(), idx.begin() + degree);
      v += PolyVector::basis(sp, pick, poly(sp, terms, poly_degree));
    }
    return v;
  }

  std::mt19937_64& engine() { return rng_; }

private:
  std::mt19937_64 rng_;
};

// Plain dense Gauss-Jordan over Rational; used as an oracle for the sparse solver.
struct DenseResult {
  bool feasible = false;
  std::size_t rank = 0;
  std::vector<Rational> particular;
  std::vector<std::vector<Rational>> kernel;
};

inline DenseResult dense_solve(std::vector<std::vector<Rational>> a, std::vector<Rational> b, std::size_t n) {
  std::size_t m = a.size();
  std::vector<int> pivot_col;
  std::size_t r = 0;
  for (std::size_t c = 0; c < n && r < m; ++c) {
    std::size_t p = r;
    while (p < m && a[p][c].is_zero()) ++p;
    if (p == m) continue;
    std::swap(a[p], a[r]);
    std::swap(b[p], b[r]);
    Rational inv = Rational(1) / a[r][c];
    for (auto& x : a[r]) x = x * inv;
    b[r] = b[r] * inv;
    for (std::size_t i = 0; i < m; ++i) {
      if (i == r || a[i][c].is_zero()) continue;
      Rational f = a[i][c];
      for (std::size_t j = 0; j < n; ++j) a[i][j] = a[i][j] - f * a[r][j];
      b[i] = b[i] - f * b[r];
    }
    pivot_col.push_back(static_cast<int>(c));
    ++r;
  }
  DenseResult out;
  out.rank = r;
  for (std::size_t i = r; i < m; ++i)
    if (!b[i].is_zero()) return out;
  out.feasible = true;
  out.particular.assign(n, Rational(0));
  for (std::size_t i = 0; i < r; ++i) out.particular[pivot_col[i]] = b[i];
  std::vector<bool> is_pivot(n, false);
  for (int c : pivot_col) is_pivot[c] = true;
  for (std::size_t f = 0; f < n; ++f) {
    if (is_pivot[f]) continue;
    std::vector<Rational> v(n, Rational(0));
    v[f] = 1;
    for (std::size_t i = 0; i < r; ++i) v[pivot_col[i]] = -a[i][f];
    out.kernel.push_back(v);
  }
  return out;
}

// Rank of a list of dense vectors.
inline std::size_t dense_rank(std::vector<std::vector<Rational>> rows, std::size_t n) {
  std::vector<Rational> zero(rows.size(), Rational(0));
  return dense_solve(std::move(rows), zero, n).rank;
}

// Each property returns an empty string on success, otherwise a description
// of the first counterexample.
using Property = std::function<std::string(Gen&)>;

std::string check_ring_axioms(Gen& g);
std::string check_derivative_commutation(Gen& g);
std::string check_parse_roundtrip(Gen& g);
std::string check_schouten_antisymmetry(Gen& g);
std::string check_schouten_jacobi(Gen& g);
std::string check_sparse_vs_dense(Gen& g);

struct PropertyRun {
  std::size_t cases = 0;
  std::string failure;
};

inline PropertyRun run_property(const Property& p, std::size_t cases, std::uint64_t seed) {
  Gen g(seed);
  PropertyRun r;
  for (; r.cases < cases; ++r.cases) {
    r.failure = p(g);
    if (!r.failure.empty()) break;
  }
  return r;
}

}  // namespace npf::testing
