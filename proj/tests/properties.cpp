#include "support.hpp"

#include <sstream>

namespace npf::testing {

namespace {

std::string show(const DiffPoly& p) { return jetcalc::print(p); }

int sign_pow(int e) { return e % 2 ? -1 : 1; }

std::vector<Rational> densify(const linalg::SparseVector& v, std::size_t n) {
  std::vector<Rational> out(n, Rational(0));
  for (const auto& [c, x] : v) out[c] = x;
  return out;
}

}  // namespace

std::string check_ring_axioms(Gen& g) {
  auto sp = jetcalc::make_space(g.uniform(2, 4));
  DiffPoly p = g.poly(sp, 3, 3), q = g.poly(sp, 3, 3), r = g.poly(sp, 3, 2);
  if (!(p + q == q + p)) return "addition not commutative for " + show(p) + ", " + show(q);
  if (!((p + q) + r == p + (q + r))) return "addition not associative";
  if (!(p * q == q * p)) return "multiplication not commutative for " + show(p) + ", " + show(q);
  if (!((p * q) * r == p * (q * r))) return "multiplication not associative";
  if (!(p * (q + r) == p * q + p * r)) return "not distributive for " + show(p);
  if (!(p - p).is_zero()) return "p - p nonzero for " + show(p);
  if (!(DiffPoly(1) * p == p)) return "1 is not a unit";
  if (!(DiffPoly(0) * p).is_zero()) return "0 is not absorbing";
  Rational c = g.coeff();
  if (!(c * (p + q) == c * p + c * q)) return "scalar multiple not linear";
  return "";
}

std::string check_derivative_commutation(Gen& g) {
  auto sp = jetcalc::make_space(g.uniform(2, 4));
  DiffPoly p = g.poly(sp, 3, 3), q = g.poly(sp, 3, 2);
  int i = g.uniform(0, sp->d - 1), j = g.uniform(0, sp->d - 1);
  if (!(p.total_derivative(i).total_derivative(j) == p.total_derivative(j).total_derivative(i)))
    return "D" + std::to_string(i) + " D" + std::to_string(j) + " do not commute on " + show(p);
  if (!((p * q).total_derivative(i) == p.total_derivative(i) * q + p * q.total_derivative(i)))
    return "Leibniz rule fails for " + show(p) + ", " + show(q);
  if (!((p + q).total_derivative(i) == p.total_derivative(i) + q.total_derivative(i))) return "D not additive";
  return "";
}

std::string check_parse_roundtrip(Gen& g) {
  auto sp = jetcalc::make_space(g.uniform(2, 4));
  DiffPoly p = g.poly(sp, 4, 4, 3);
  std::string text = jetcalc::print(p);
  DiffPoly back = jetcalc::parse(text, sp);
  if (!(back == p)) return "parse(print(p)) != p for " + text;
  if (jetcalc::print(back) != text) return "print not stable for " + text;
  return "";
}

// [[A,B]] = -(-1)^{(a-1)(b-1)} [[B,A]]
std::string check_schouten_antisymmetry(Gen& g) {
  auto sp = jetcalc::make_space(3);
  int a = g.uniform(0, 3), b = g.uniform(a == 0 ? 1 : 0, 3);
  if (a + b - 1 > 3) b = 4 - a;
  PolyVector A = g.multivector(sp, a, 2, 2), B = g.multivector(sp, b, 2, 2);
  PolyVector lhs = multivec::schouten(A, B);
  PolyVector rhs = Rational(-sign_pow((a - 1) * (b - 1))) * multivec::schouten(B, A);
  if (!(lhs == rhs)) {
    std::ostringstream os;
    os << "antisymmetry fails for degrees " << a << ", " << b;
    return os.str();
  }
  return "";
}

// sum over cyclic (A,B,C) of (-1)^{(a-1)(c-1)} [[A,[[B,C]]]] = 0
std::string check_schouten_jacobi(Gen& g) {
  auto sp = jetcalc::make_space(3);
  int deg[3];
  for (;;) {
    for (int& x : deg) x = g.uniform(0, 3);
    int zeros = (deg[0] == 0) + (deg[1] == 0) + (deg[2] == 0);
    int sum = deg[0] + deg[1] + deg[2];
    bool pairs_ok = deg[0] + deg[1] <= 4 && deg[1] + deg[2] <= 4 && deg[0] + deg[2] <= 4;
    if (zeros <= 1 && pairs_ok && sum - 2 <= 3 && sum >= 2) break;
  }
  PolyVector v[3];
  for (int k = 0; k < 3; ++k) v[k] = g.multivector(sp, deg[k], 2, 2);
  PolyVector total(sp, deg[0] + deg[1] + deg[2] - 2);
  for (int k = 0; k < 3; ++k) {
    const PolyVector& A = v[k];
    const PolyVector& B = v[(k + 1) % 3];
    const PolyVector& C = v[(k + 2) % 3];
    int a = A.degree(), c = C.degree();
    total += Rational(sign_pow((a - 1) * (c - 1))) * multivec::schouten(A, multivec::schouten(B, C));
  }
  if (!total.is_zero()) {
    std::ostringstream os;
    os << "Jacobi fails for degrees " << deg[0] << ", " << deg[1] << ", " << deg[2];
    return os.str();
  }
  return "";
}

std::string check_sparse_vs_dense(Gen& g) {
  std::size_t m = g.uniform(1, 7), n = g.uniform(1, 7);
  std::vector<std::vector<Rational>> a(m, std::vector<Rational>(n, Rational(0)));
  for (auto& row : a)
    for (auto& x : row)
      if (g.uniform(0, 1)) x = g.uniform(-3, 3);
  // duplicate rows make rank deficiency common
  if (m > 1 && g.uniform(0, 2) == 0) a[m - 1] = a[0];
  std::vector<Rational> b(m, Rational(0));
  if (g.uniform(0, 1)) {
    for (auto& x : b) x = g.uniform(-3, 3);
  } else {
    std::vector<Rational> x0(n);
    for (auto& x : x0) x = g.uniform(-2, 2);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < n; ++j) b[i] = b[i] + a[i][j] * x0[j];
  }
  linalg::SparseSystem sys(static_cast<int>(n));
  for (std::size_t i = 0; i < m; ++i) {
    linalg::SparseVector row;
    for (std::size_t j = 0; j < n; ++j)
      if (!a[i][j].is_zero()) row.emplace_back(static_cast<int>(j), a[i][j]);
    sys.add_row(row, b[i]);
  }
  auto sparse = linalg::solve(sys);
  auto dense = dense_solve(a, b, n);
  if (sparse.feasible != dense.feasible) return "feasibility disagrees";
  if (!dense.feasible) return "";
  if (sparse.rank != dense.rank) return "rank disagrees";
  for (const auto& x : linalg::residual(sys, sparse.particular))
    if (!x.is_zero()) return "particular solution has a nonzero residual";
  if (sparse.kernel.size() != dense.kernel.size()) return "kernel dimension disagrees";
  std::vector<std::vector<Rational>> both;
  for (const auto& k : sparse.kernel) {
    if (!linalg::annihilates(sys, k)) return "kernel vector not annihilated";
    both.push_back(densify(k, n));
  }
  if (dense_rank(both, n) != sparse.kernel.size()) return "kernel vectors dependent";
  for (const auto& k : dense.kernel) both.push_back(k);
  if (dense_rank(both, n) != dense.kernel.size()) return "kernels span different spaces";
  return "";
}

}  // namespace npf::testing
