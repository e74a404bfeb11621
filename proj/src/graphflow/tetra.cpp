#include "npf/graphflow/tetra.hpp"

#include "npf/parallel.hpp"

#include <map>

namespace npf::graphflow {

using jetcalc::MultiIndex;
using jetcalc::PolyAccumulator;

const char* builtin_gamma3_text() {
  return "# tetrahedral flow: 2 (Gamma1 + 3 (Gamma2'(1,2) - Gamma2'(2,1)))\n"
         "2 ; 4 ; (0,0,-1) (0,1,-2) (1,0,0) (1,1,3) (2,0,0) (2,1,1) (3,0,0) (3,1,2)\n"
         "6 ; 4 ; (0,0,-1) (0,1,3) (1,0,0) (1,1,-2) (2,0,1) (2,1,0) (3,0,2) (3,1,1)\n"
         "-6 ; 4 ; (0,0,-2) (0,1,3) (1,0,0) (1,1,-1) (2,0,1) (2,1,0) (3,0,2) (3,1,1)\n";
}

GraphSum builtin_gamma3() { return load_graph_sum(builtin_gamma3_text()); }

PolyVector tetra_flow_graph(const PolyVector& p) {
  if (p.degree() != 2) throw std::invalid_argument("tetra_flow needs a bivector");
  return evaluate_graph(builtin_gamma3(), {p}, p.space());
}

namespace {

class Derivs {
public:
  explicit Derivs(const PolyVector& p) : p_(p), d_(p.dim()) {}

  // Fill every entry up to the given order before any parallel use.
  void warm(int order) {
    std::vector<int> dirs;
    auto rec = [&](auto&& self, int start, int left) -> void {
      for (int i = 0; i < d_; ++i)
        for (int j = 0; j < d_; ++j) {
          MultiIndex m;
          for (int k : dirs) ++m.e[k];
          auto key = std::make_tuple(i, j, m.e);
          if (!cache_.count(key)) cache_.emplace(key, p_.get({i, j}).total_derivative(m));
        }
      if (left == 0) return;
      for (int k = start; k < d_; ++k) {
        dirs.push_back(k);
        self(self, k, left - 1);
        dirs.pop_back();
      }
    };
    rec(rec, 0, order);
  }

  const DiffPoly& at(int i, int j, const MultiIndex& m) const { return cache_.at(std::make_tuple(i, j, m.e)); }

private:
  const PolyVector& p_;
  int d_;
  std::map<std::tuple<int, int, std::array<std::uint8_t, jetcalc::kMaxDim>>, DiffPoly> cache_;
};

MultiIndex mi(std::initializer_list<int> dirs) {
  MultiIndex m;
  for (int k : dirs) ++m.e[k];
  return m;
}

}  // namespace

PolyVector tetra_flow(const PolyVector& p) {
  if (p.degree() != 2) throw std::invalid_argument("tetra_flow needs a bivector");
  const int d = p.dim();
  const auto& sp = p.space();
  Derivs D(p);
  D.warm(3);
  auto idx3 = [d](int a, int b, int c) { return static_cast<std::size_t>((a * d + b) * d + c); };
  auto idx4 = [d](int a, int b, int c, int e) { return static_cast<std::size_t>(((a * d + b) * d + c) * d + e); };

  // T[k][l][m] = sum d_{l'}P^{kk'} d_{m'}P^{ll'} d_{k'}P^{mm'}
  std::size_t n3 = static_cast<std::size_t>(d * d * d);
  std::vector<DiffPoly> T(n3);
  parallel_for(n3, [&](std::size_t pos) {
    int k = static_cast<int>(pos) / (d * d), l = (static_cast<int>(pos) / d) % d, m = static_cast<int>(pos) % d;
    PolyAccumulator acc(sp);
    for (int k2 = 0; k2 < d; ++k2)
      for (int l2 = 0; l2 < d; ++l2)
        for (int m2 = 0; m2 < d; ++m2) {
          const DiffPoly& x = D.at(k, k2, mi({l2}));
          const DiffPoly& y = D.at(l, l2, mi({m2}));
          const DiffPoly& z = D.at(m, m2, mi({k2}));
          if (x.is_zero() || y.is_zero() || z.is_zero()) continue;
          acc.add_product(x * y, z);
        }
    T[pos] = acc.take();
  });

  // U[k][l][j][m] = sum d_{k'}d_{l'}P^{km} d_{m'}P^{k'l} d_j P^{m'l'}
  std::size_t n4 = n3 * static_cast<std::size_t>(d);
  std::vector<DiffPoly> U(n4);
  parallel_for(n4, [&](std::size_t pos) {
    int k = static_cast<int>(pos) / (d * d * d), l = (static_cast<int>(pos) / (d * d)) % d,
        j = (static_cast<int>(pos) / d) % d, m = static_cast<int>(pos) % d;
    PolyAccumulator acc(sp);
    for (int k2 = 0; k2 < d; ++k2)
      for (int l2 = 0; l2 < d; ++l2)
        for (int m2 = 0; m2 < d; ++m2) {
          const DiffPoly& x = D.at(k, m, mi({k2, l2}));
          const DiffPoly& y = D.at(k2, l, mi({m2}));
          const DiffPoly& z = D.at(m2, l2, mi({j}));
          if (x.is_zero() || y.is_zero() || z.is_zero()) continue;
          acc.add_product(x * y, z);
        }
    U[pos] = acc.take();
  });

  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j) pairs.emplace_back(i, j);

  auto c2 = [&](int i, int m) {
    PolyAccumulator acc(sp);
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k)
        for (int l = 0; l < d; ++l) {
          const DiffPoly& x = D.at(i, j, mi({k, l}));
          const DiffPoly& u = U[idx4(k, l, j, m)];
          if (!x.is_zero() && !u.is_zero()) acc.add_product(x, u);
        }
    return acc.take();
  };

  std::vector<DiffPoly> comps(pairs.size());
  parallel_for(pairs.size(), [&](std::size_t q) {
    auto [i, j] = pairs[q];
    PolyAccumulator acc(sp);
    for (int k = 0; k < d; ++k)
      for (int l = 0; l < d; ++l)
        for (int m = 0; m < d; ++m) {
          const DiffPoly& x = D.at(i, j, mi({k, l, m}));
          const DiffPoly& t = T[idx3(k, l, m)];
          if (!x.is_zero() && !t.is_zero()) acc.add_product(x, t);
        }
    acc.add(c2(i, j), Rational(3));
    acc.add(c2(j, i), Rational(-3));
    comps[q] = Rational(2) * acc.take();
  });
  PolyVector out(sp, 2);
  for (std::size_t q = 0; q < pairs.size(); ++q) out.set({pairs[q].first, pairs[q].second}, comps[q]);
  return out;
}

}  // namespace npf::graphflow
