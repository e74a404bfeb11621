#include "npf/jetcalc/monomial.hpp"

#include <algorithm>
#include <stdexcept>

namespace npf::jetcalc {

Monomial::Monomial(std::initializer_list<VarCode> vars) : v_(vars) { std::sort(v_.begin(), v_.end()); }

Monomial Monomial::from_sorted(Storage vars) {
  Monomial m;
  m.v_ = std::move(vars);
  return m;
}

Monomial Monomial::from_unsorted(Storage vars) {
  std::sort(vars.begin(), vars.end());
  return from_sorted(std::move(vars));
}

Monomial operator*(const Monomial& a, const Monomial& b) {
  Monomial r;
  r.v_.resize(a.v_.size() + b.v_.size());
  std::merge(a.v_.begin(), a.v_.end(), b.v_.begin(), b.v_.end(), r.v_.begin());
  return r;
}

bool Monomial::divides(const Monomial& other) const {
  return std::includes(other.v_.begin(), other.v_.end(), v_.begin(), v_.end());
}

Monomial Monomial::quotient(const Monomial& m) const {
  Monomial r;
  std::set_difference(v_.begin(), v_.end(), m.v_.begin(), m.v_.end(), std::back_inserter(r.v_));
  if (r.v_.size() + m.v_.size() != v_.size()) throw std::invalid_argument("monomial does not divide");
  return r;
}

int Monomial::count(VarCode v) const {
  auto range = std::equal_range(v_.begin(), v_.end(), v);
  return static_cast<int>(range.second - range.first);
}

int Monomial::degree_in(SymbolId s) const {
  int n = 0;
  for (auto v : v_)
    if (var_symbol(v) == s) ++n;
  return n;
}

Monomial Monomial::replaced(std::size_t i, VarCode v) const {
  Monomial r = *this;
  r.v_[i] = v;
  // restore order by moving the changed entry
  auto it = r.v_.begin() + static_cast<std::ptrdiff_t>(i);
  if (i + 1 < r.v_.size() && *(it + 1) < v) {
    std::rotate(it, it + 1, std::upper_bound(it + 1, r.v_.end(), v));
  } else if (i > 0 && *(it - 1) > v) {
    std::rotate(std::upper_bound(r.v_.begin(), it, v), it, it + 1);
  }
  return r;
}

std::size_t Monomial::hash() const {
  std::size_t h = 1469598103934665603ull;
  for (auto v : v_) {
    h ^= v;
    h *= 1099511628211ull;
  }
  return h;
}

int grevlex_compare(const Monomial& a, const Monomial& b) {
  if (a.degree() != b.degree()) return a.degree() < b.degree() ? -1 : 1;
  // Variables rank opposite to their codes (x > y > z, rho > a). Scanning
  // from the top code down, the first difference names the lowest-ranked
  // variable whose exponents differ; more of it means a smaller monomial.
  for (std::size_t i = a.degree(); i-- > 0;) {
    if (a[i] != b[i]) return a[i] > b[i] ? -1 : 1;
  }
  return 0;
}

}  // namespace npf::jetcalc
