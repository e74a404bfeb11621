#include "npf/jetcalc/diffpoly.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>

namespace npf::jetcalc {

void canonicalize_terms(std::vector<Term>& terms) {
  std::sort(terms.begin(), terms.end(),
            [](const Term& a, const Term& b) { return grevlex_compare(a.mono, b.mono) < 0; });
  std::size_t out = 0;
  for (std::size_t i = 0; i < terms.size();) {
    std::size_t j = i + 1;
    Rational c = std::move(terms[i].coeff);
    while (j < terms.size() && terms[j].mono == terms[i].mono) {
      c += terms[j].coeff;
      ++j;
    }
    if (!c.is_zero()) {
      if (out != i) terms[out].mono = std::move(terms[i].mono);
      terms[out].coeff = std::move(c);
      ++out;
    }
    i = j;
  }
  terms.resize(out);
}

DiffPoly::DiffPoly(const Rational& c, SpacePtr space) : space_(std::move(space)) {
  if (!c.is_zero()) terms_.push_back({Monomial(), c});
}

DiffPoly DiffPoly::jet(SpacePtr space, SymbolId s, const MultiIndex& m) {
  if (is_coordinate(s)) throw std::invalid_argument("coordinates have no jets");
  if (space) {
    for (int k = space->d; k < kMaxDim; ++k)
      if (m.e[k] != 0) throw std::out_of_range("multi-index beyond dimension");
  }
  return monomial(std::move(space), Monomial{make_var(s, m)});
}

DiffPoly DiffPoly::jet(SpacePtr space, const std::string& symbol, const MultiIndex& m) {
  return jet(std::move(space), symbol_by_name(symbol), m);
}

DiffPoly DiffPoly::coordinate(SpacePtr space, int i) {
  if (!space || i < 0 || i >= space->d) throw std::out_of_range("coordinate index");
  return monomial(std::move(space), Monomial{make_var(coordinate_symbol(i), {})});
}

DiffPoly DiffPoly::monomial(SpacePtr space, Monomial m, Rational c) {
  DiffPoly p;
  p.space_ = std::move(space);
  if (!c.is_zero()) p.terms_.push_back({std::move(m), std::move(c)});
  return p;
}

DiffPoly DiffPoly::from_terms(SpacePtr space, std::vector<Term> terms) {
  canonicalize_terms(terms);
  return from_canonical(std::move(space), std::move(terms));
}

DiffPoly DiffPoly::from_canonical(SpacePtr space, std::vector<Term> terms) {
  DiffPoly p;
  p.space_ = std::move(space);
  p.terms_ = std::move(terms);
  return p;
}

bool DiffPoly::is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.empty()); }

Rational DiffPoly::constant_value() const {
  if (!terms_.empty() && terms_.front().mono.empty()) return terms_.front().coeff;
  return Rational(0);
}

const Term& DiffPoly::leading_term() const {
  if (terms_.empty()) throw std::logic_error("leading term of zero polynomial");
  return terms_.back();
}

Rational DiffPoly::coefficient(const Monomial& m) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), m,
                             [](const Term& t, const Monomial& x) { return grevlex_compare(t.mono, x) < 0; });
  if (it != terms_.end() && it->mono == m) return it->coeff;
  return Rational(0);
}

DiffPoly DiffPoly::with_space(SpacePtr s) const {
  DiffPoly r = *this;
  r.space_ = join_spaces(space_, s);
  return r;
}

DiffPoly DiffPoly::operator-() const {
  DiffPoly r = *this;
  for (auto& t : r.terms_) t.coeff = -t.coeff;
  return r;
}

DiffPoly operator+(const DiffPoly& a, const DiffPoly& b) {
  DiffPoly r;
  r.space_ = join_spaces(a.space_, b.space_);
  r.terms_.reserve(a.terms_.size() + b.terms_.size());
  auto i = a.terms_.begin(), j = b.terms_.begin();
  while (i != a.terms_.end() && j != b.terms_.end()) {
    int c = grevlex_compare(i->mono, j->mono);
    if (c < 0) {
      r.terms_.push_back(*i++);
    } else if (c > 0) {
      r.terms_.push_back(*j++);
    } else {
      Rational s = i->coeff + j->coeff;
      if (!s.is_zero()) r.terms_.push_back({i->mono, std::move(s)});
      ++i;
      ++j;
    }
  }
  r.terms_.insert(r.terms_.end(), i, a.terms_.end());
  r.terms_.insert(r.terms_.end(), j, b.terms_.end());
  return r;
}

DiffPoly operator-(const DiffPoly& a, const DiffPoly& b) { return a + (-b); }

DiffPoly& DiffPoly::operator+=(const DiffPoly& o) { return *this = *this + o; }
DiffPoly& DiffPoly::operator-=(const DiffPoly& o) { return *this = *this - o; }
DiffPoly& DiffPoly::operator*=(const DiffPoly& o) { return *this = *this * o; }

DiffPoly& DiffPoly::operator*=(const Rational& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& t : terms_) t.coeff *= c;
  return *this;
}

DiffPoly operator*(const Rational& c, const DiffPoly& p) {
  DiffPoly r = p;
  r *= c;
  return r;
}

namespace {

// Multiplying by one term keeps grevlex order and cannot collide.
DiffPoly times_term(const DiffPoly& p, const Term& t, SpacePtr space) {
  std::vector<Term> out;
  out.reserve(p.size());
  for (const auto& s : p.terms()) out.push_back({s.mono * t.mono, s.coeff * t.coeff});
  return DiffPoly::from_canonical(std::move(space), std::move(out));
}

}  // namespace

DiffPoly operator*(const DiffPoly& a, const DiffPoly& b) {
  SpacePtr sp = join_spaces(a.space_, b.space_);
  if (a.is_zero() || b.is_zero()) return DiffPoly(Rational(0), sp);
  if (b.size() == 1) return times_term(a, b.terms_[0], sp);
  if (a.size() == 1) return times_term(b, a.terms_[0], sp);
  PolyAccumulator acc(sp);
  acc.add_product(a, b);
  return acc.take();
}

bool operator==(const DiffPoly& a, const DiffPoly& b) {
  if (a.terms_.size() != b.terms_.size()) return false;
  for (std::size_t i = 0; i < a.terms_.size(); ++i) {
    if (!(a.terms_[i].mono == b.terms_[i].mono) || !(a.terms_[i].coeff == b.terms_[i].coeff)) return false;
  }
  return a.terms_.empty() || same_space(a.space_, b.space_) || !a.space_ || !b.space_;
}

DiffPoly DiffPoly::total_derivative(int k) const {
  if (space_ && (k < 0 || k >= space_->d)) throw std::out_of_range("coordinate index");
  if (k < 0 || k >= kMaxDim) throw std::out_of_range("coordinate index");
  std::vector<Term> out;
  for (const auto& t : terms_) {
    const auto& v = t.mono.vars();
    for (std::size_t i = 0; i < v.size();) {
      std::size_t j = i;
      while (j < v.size() && v[j] == v[i]) ++j;
      int mult = static_cast<int>(j - i);
      SymbolId s = var_symbol(v[i]);
      if (is_coordinate(s)) {
        if (coordinate_index(s) == k) {
          auto st = v;
          st.erase(st.begin() + static_cast<std::ptrdiff_t>(i));
          out.push_back({Monomial::from_sorted(std::move(st)), t.coeff * Rational(mult)});
        }
      } else {
        out.push_back({t.mono.replaced(i, var_shift(v[i], k)), t.coeff * Rational(mult)});
      }
      i = j;
    }
  }
  return from_terms(space_, std::move(out));
}

DiffPoly DiffPoly::total_derivative(const MultiIndex& m) const {
  DiffPoly r = *this;
  for (int k = 0; k < kMaxDim; ++k)
    for (int n = 0; n < m.e[k]; ++n) r = r.total_derivative(k);
  return r;
}

DiffPoly DiffPoly::substitute_unit(SymbolId s) const {
  std::vector<Term> out;
  for (const auto& t : terms_) {
    Monomial::Storage kept;
    bool dead = false;
    for (auto v : t.mono) {
      if (var_symbol(v) != s) {
        kept.push_back(v);
      } else if (var_order(v) > 0) {
        dead = true;
        break;
      }
    }
    if (!dead) out.push_back({Monomial::from_sorted(std::move(kept)), t.coeff});
  }
  return from_terms(space_, std::move(out));
}

DiffPoly DiffPoly::substitute(SymbolId s, const DiffPoly& value) const {
  SpacePtr sp = join_spaces(space_, value.space());
  std::unordered_map<VarCode, DiffPoly> cache;
  PolyAccumulator acc(sp);
  for (const auto& t : terms_) {
    Monomial::Storage kept;
    DiffPoly factor(t.coeff, sp);
    for (auto v : t.mono) {
      if (var_symbol(v) != s) {
        kept.push_back(v);
        continue;
      }
      auto it = cache.find(v);
      if (it == cache.end()) it = cache.emplace(v, value.total_derivative(var_index(v))).first;
      factor = factor * it->second;
    }
    acc.add_product(factor, DiffPoly::monomial(sp, Monomial::from_sorted(std::move(kept))));
  }
  return acc.take();
}

std::size_t DiffPoly::hash() const {
  std::size_t h = terms_.size();
  for (const auto& t : terms_) h = h * 31 + (t.mono.hash() ^ (t.coeff.hash() << 1));
  return h;
}

DiffPoly add(const DiffPoly& p, const DiffPoly& q) { return p + q; }
DiffPoly mul(const DiffPoly& p, const DiffPoly& q) { return p * q; }
DiffPoly total_derivative(const DiffPoly& p, int k) { return p.total_derivative(k); }

DiffPoly exact_divide(const DiffPoly& p, const DiffPoly& q) {
  if (q.is_zero()) throw std::domain_error("division by zero polynomial");
  SpacePtr sp = join_spaces(p.space(), q.space());
  std::map<Monomial, Rational, MonomialLess> rem;
  for (const auto& t : p.terms()) rem.emplace_hint(rem.end(), t.mono, t.coeff);
  const Term& lq = q.leading_term();
  std::vector<Term> quot;
  while (!rem.empty()) {
    auto top = std::prev(rem.end());
    if (!lq.mono.divides(top->first)) throw std::domain_error("not divisible");
    Term t{top->first.quotient(lq.mono), top->second / lq.coeff};
    for (const auto& s : q.terms()) {
      Monomial m = s.mono * t.mono;
      Rational c = s.coeff * t.coeff;
      auto it = rem.find(m);
      if (it == rem.end()) {
        rem.emplace(std::move(m), -c);
      } else {
        it->second -= c;
        if (it->second.is_zero()) rem.erase(it);
      }
    }
    quot.push_back(std::move(t));
  }
  std::reverse(quot.begin(), quot.end());
  return DiffPoly::from_canonical(sp, std::move(quot));
}

HomogeneityProfile homogeneity_profile_counts(const DiffPoly& p) {
  HomogeneityProfile out;
  int d = p.space() ? p.space()->d : kMaxDim;
  out.per_coordinate.assign(static_cast<std::size_t>(d), std::nullopt);
  bool first = true;
  for (const auto& t : p.terms()) {
    std::map<std::string, SymbolProfile> prof;
    std::vector<int> per(static_cast<std::size_t>(d), 0);
    int total = 0;
    for (auto v : t.mono) {
      SymbolId s = var_symbol(v);
      std::string name = is_coordinate(s) && p.space() ? p.space()->names[coordinate_index(s)] : symbol_name(s);
      auto& sp = prof[name];
      sp.degree += 1;
      sp.derivatives += var_order(v);
      total += var_order(v);
      for (int k = 0; k < d; ++k) per[k] += var_exp(v, k);
    }
    if (first) {
      out.symbols = prof;
      out.total_derivatives = total;
      for (int k = 0; k < d; ++k) out.per_coordinate[k] = per[k];
      first = false;
      continue;
    }
    if (prof != out.symbols) throw std::invalid_argument("polynomial is not homogeneous per symbol");
    for (int k = 0; k < d; ++k)
      if (out.per_coordinate[k] && *out.per_coordinate[k] != per[k]) out.per_coordinate[k].reset();
  }
  if (first) out.per_coordinate.clear();
  return out;
}

std::vector<DiffPoly> echelon_basis(const std::vector<DiffPoly>& polys) {
  SpacePtr sp;
  for (const auto& p : polys) sp = jetcalc::join_spaces(sp, p.space());
  std::vector<DiffPoly> rows;
  for (const auto& p : polys) {
    DiffPoly r = p;
    for (const auto& b : rows) {
      Rational c = r.coefficient(b.leading_term().mono);
      if (!c.is_zero()) r = r - c * b;
    }
    if (r.is_zero()) continue;
    r = (Rational(1) / r.leading_term().coeff) * r;
    for (auto& b : rows) {
      Rational c = b.coefficient(r.leading_term().mono);
      if (!c.is_zero()) b = b - c * r;
    }
    rows.push_back(r);
  }
  std::sort(rows.begin(), rows.end(), [](const DiffPoly& a, const DiffPoly& b) {
    return jetcalc::grevlex_compare(a.leading_term().mono, b.leading_term().mono) < 0;
  });
  return rows;
}

PolyAccumulator::PolyAccumulator(SpacePtr space, std::size_t compact_at)
    : space_(std::move(space)), compact_at_(compact_at) {}

void PolyAccumulator::add(Monomial m, const Rational& c) {
  if (c.is_zero()) return;
  buf_.push_back({std::move(m), c});
  if (buf_.size() >= compact_at_ + canonical_prefix_) compact();
}

void PolyAccumulator::add(const DiffPoly& p, const Rational& scale) {
  space_ = join_spaces(space_, p.space());
  if (scale.is_zero()) return;
  for (const auto& t : p.terms()) add(t.mono, scale.is_one() ? t.coeff : t.coeff * scale);
}

void PolyAccumulator::add_product(const DiffPoly& a, const DiffPoly& b, const Rational& scale) {
  space_ = join_spaces(space_, join_spaces(a.space(), b.space()));
  if (scale.is_zero()) return;
  for (const auto& s : a.terms()) {
    Rational cs = scale.is_one() ? s.coeff : s.coeff * scale;
    for (const auto& t : b.terms()) add(s.mono * t.mono, cs * t.coeff);
  }
}

void PolyAccumulator::compact() {
  canonicalize_terms(buf_);
  canonical_prefix_ = buf_.size();
}

DiffPoly PolyAccumulator::take() {
  canonicalize_terms(buf_);
  canonical_prefix_ = 0;
  DiffPoly r = DiffPoly::from_canonical(space_, std::move(buf_));
  buf_.clear();
  return r;
}

}  // namespace npf::jetcalc
