#include "npf/linalg/sparse.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <stdexcept>

namespace npf::linalg {

void SparseSystem::add_row(SparseVector entries, Rational rhs) {
  std::sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  SparseVector row;
  for (auto& [c, v] : entries) {
    if (c < 0 || c >= unknowns_) throw std::out_of_range("column index");
    if (!row.empty() && row.back().first == c) {
      row.back().second += v;
      if (row.back().second.is_zero()) row.pop_back();
    } else if (!v.is_zero()) {
      row.emplace_back(c, std::move(v));
    }
  }
  if (row.empty() && rhs.is_zero()) return;
  rows_.push_back(std::move(row));
  rhs_.push_back(std::move(rhs));
}

namespace {

struct Row {
  SparseVector a;
  Rational b;
  bool active = true;
};

Rational int_gcd(const Rational& x, const Rational& y) {
  if (x.is_small() && y.is_small()) return Rational(std::gcd(x.small_num(), y.small_num()));
  mpz_class g;
  mpz_gcd(g.get_mpz_t(), x.numerator().get_mpz_t(), y.numerator().get_mpz_t());
  return Rational(g);
}

Rational int_lcm(const Rational& x, const Rational& y) {
  if (x.is_small() && y.is_small()) {
    std::int64_t g = std::gcd(x.small_num(), y.small_num());
    Rational r = Rational(x.small_num() / g) * y;
    return abs(r);
  }
  mpz_class l;
  mpz_lcm(l.get_mpz_t(), x.numerator().get_mpz_t(), y.numerator().get_mpz_t());
  return Rational(l);
}

// Scale to coprime integers.
void make_primitive(Row& r) {
  Rational den = 1;
  for (auto& e : r.a)
    if (!e.second.is_integer()) den = int_lcm(den, Rational(e.second.denominator()));
  if (!r.b.is_integer()) den = int_lcm(den, Rational(r.b.denominator()));
  if (!den.is_one()) {
    for (auto& e : r.a) e.second *= den;
    r.b *= den;
  }
  Rational g = 0;
  for (auto& e : r.a) {
    g = int_gcd(g, e.second);
    if (g.is_one()) return;
  }
  g = int_gcd(g, r.b);
  if (g.is_zero() || g.is_one()) return;
  for (auto& e : r.a) e.second /= g;
  r.b /= g;
}

const Rational* find(const SparseVector& v, int c) {
  auto it = std::lower_bound(v.begin(), v.end(), c, [](const auto& e, int x) { return e.first < x; });
  return it != v.end() && it->first == c ? &it->second : nullptr;
}

// row := p*row - q*piv
void eliminate(Row& row, const Row& piv, const Rational& p, const Rational& q) {
  SparseVector out;
  out.reserve(row.a.size() + piv.a.size());
  auto i = row.a.cbegin();
  auto j = piv.a.cbegin();
  while (i != row.a.end() || j != piv.a.end()) {
    if (j == piv.a.end() || (i != row.a.end() && i->first < j->first)) {
      out.emplace_back(i->first, p * i->second);
      ++i;
    } else if (i == row.a.end() || j->first < i->first) {
      out.emplace_back(j->first, -(q * j->second));
      ++j;
    } else {
      Rational v = p * i->second - q * j->second;
      if (!v.is_zero()) out.emplace_back(i->first, std::move(v));
      ++i;
      ++j;
    }
  }
  row.a = std::move(out);
  row.b = p * row.b - q * piv.b;
}

struct Component {
  std::vector<int> columns;
  std::vector<std::size_t> rows;
};

std::vector<Component> components(const SparseSystem& s) {
  int n = s.unknowns();
  std::vector<int> parent(static_cast<std::size_t>(n));
  std::iota(parent.begin(), parent.end(), 0);
  auto root = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t r = 0; r < s.rows(); ++r) {
    const auto& row = s.row(r);
    for (std::size_t k = 1; k < row.size(); ++k) {
      int a = root(row[0].first), b = root(row[k].first);
      if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
  }
  std::map<int, Component> by_root;
  for (int c = 0; c < n; ++c) by_root[root(c)].columns.push_back(c);
  for (std::size_t r = 0; r < s.rows(); ++r)
    if (!s.row(r).empty()) by_root[root(s.row(r)[0].first)].rows.push_back(r);
  std::vector<Component> out;
  for (auto& [k, c] : by_root) out.push_back(std::move(c));
  return out;
}

}  // namespace

Solution solve(const SparseSystem& s) {
  Solution sol;
  int n = s.unknowns();
  sol.particular.assign(static_cast<std::size_t>(n), Rational(0));

  for (std::size_t r = 0; r < s.rows(); ++r) {
    if (s.row(r).empty() && !s.rhs(r).is_zero()) {
      sol.reason = "row " + std::to_string(r) + " reads 0 = " + s.rhs(r).str();
      return sol;
    }
  }

  for (const auto& comp : components(s)) {
    std::vector<Row> rows;
    rows.reserve(comp.rows.size());
    for (auto r : comp.rows) {
      rows.push_back({s.row(r), s.rhs(r), true});
      make_primitive(rows.back());
    }
    std::map<int, std::vector<std::size_t>> col_rows;
    for (std::size_t i = 0; i < rows.size(); ++i)
      for (auto& e : rows[i].a) col_rows[e.first].push_back(i);

    using QItem = std::pair<std::size_t, std::size_t>;  // (length, row)
    std::priority_queue<QItem, std::vector<QItem>, std::greater<>> queue;
    for (std::size_t i = 0; i < rows.size(); ++i) queue.emplace(rows[i].a.size(), i);

    std::vector<std::pair<int, std::size_t>> pivots;  // (column, row)
    std::vector<char> pivoted_col(static_cast<std::size_t>(n), 0);
    while (!queue.empty()) {
      auto [len, ri] = queue.top();
      queue.pop();
      Row& pr = rows[ri];
      if (!pr.active || len != pr.a.size()) continue;
      if (pr.a.empty()) {
        pr.active = false;
        if (!pr.b.is_zero()) {
          sol.reason = "reduced row reads 0 = " + pr.b.str();
          sol.particular.clear();
          return sol;
        }
        continue;
      }
      // Markowitz-style: sparsest column of the sparsest row.
      int best = -1;
      std::size_t best_count = 0;
      for (auto& e : pr.a) {
        auto& lst = col_rows[e.first];
        std::size_t cnt = 0;
        for (auto r : lst)
          if (rows[r].active && find(rows[r].a, e.first)) ++cnt;
        if (best < 0 || cnt < best_count) {
          best = e.first;
          best_count = cnt;
        }
      }
      pr.active = false;
      pivots.emplace_back(best, ri);
      pivoted_col[best] = 1;
      Rational p = *find(pr.a, best);
      auto lst = col_rows[best];
      for (auto r : lst) {
        if (r == ri || !rows[r].active) continue;
        const Rational* q = find(rows[r].a, best);
        if (!q) continue;
        Rational g = int_gcd(p, *q);
        Rational pp = p / g, qq = *q / g;
        eliminate(rows[r], pr, pp, qq);
        make_primitive(rows[r]);
        for (auto& e : rows[r].a) {
          if (pivoted_col[e.first]) continue;
          auto& cl = col_rows[e.first];
          if (cl.empty() || cl.back() != r) cl.push_back(r);
        }
        queue.emplace(rows[r].a.size(), r);
      }
      col_rows.erase(best);
    }
    sol.rank += pivots.size();

    auto back_substitute = [&](std::vector<Rational>& x, bool homogeneous) {
      for (auto it = pivots.rbegin(); it != pivots.rend(); ++it) {
        const Row& r = rows[it->second];
        Rational acc = homogeneous ? Rational(0) : r.b;
        const Rational* pc = nullptr;
        for (auto& e : r.a) {
          if (e.first == it->first) {
            pc = &e.second;
          } else if (!x[e.first].is_zero()) {
            acc -= e.second * x[e.first];
          }
        }
        x[it->first] = acc / *pc;
      }
    };
    back_substitute(sol.particular, false);

    std::vector<Rational> x(static_cast<std::size_t>(n), Rational(0));
    for (int c : comp.columns) {
      if (pivoted_col[c]) continue;
      x[c] = 1;
      back_substitute(x, true);
      SparseVector kv;
      for (int cc : comp.columns)
        if (!x[cc].is_zero()) kv.emplace_back(cc, x[cc]);
      for (int cc : comp.columns) x[cc] = 0;
      sol.kernel.push_back(std::move(kv));
    }
  }
  for (const auto& r : residual(s, sol.particular))
    if (!r.is_zero()) throw std::logic_error("sparse solver produced a nonzero residual");
  sol.feasible = true;
  return sol;
}

std::vector<Rational> residual(const SparseSystem& s, const std::vector<Rational>& x) {
  std::vector<Rational> out;
  out.reserve(s.rows());
  for (std::size_t r = 0; r < s.rows(); ++r) {
    Rational acc = -s.rhs(r);
    for (auto& [c, v] : s.row(r))
      if (!x[c].is_zero()) acc += v * x[c];
    out.push_back(std::move(acc));
  }
  return out;
}

bool annihilates(const SparseSystem& s, const SparseVector& v) {
  std::vector<Rational> x(static_cast<std::size_t>(s.unknowns()), Rational(0));
  for (auto& [c, val] : v) x[c] = val;
  for (std::size_t r = 0; r < s.rows(); ++r) {
    Rational acc = 0;
    for (auto& [c, a] : s.row(r))
      if (!x[c].is_zero()) acc += a * x[c];
    if (!acc.is_zero()) return false;
  }
  return true;
}

}  // namespace npf::linalg
