#include "npf/multivec/polyvector.hpp"

#include "npf/jetcalc/json.hpp"
#include "npf/jetcalc/text.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace npf::multivec {

using jetcalc::PolyAccumulator;

IndexMask mask_of(const std::vector<int>& idx) {
  IndexMask m = 0;
  for (int i : idx) m |= IndexMask{1} << i;
  return m;
}

std::vector<int> indices_of(IndexMask m) {
  std::vector<int> out;
  for (int i = 0; m; ++i, m >>= 1)
    if (m & 1) out.push_back(i);
  return out;
}

namespace {

// Sign of moving the vectors of `b` past those of `a` into sorted position:
// (-1)^{#(i in a, j in b, i > j)}.
int merge_sign(IndexMask a, IndexMask b) {
  int inv = 0;
  while (b) {
    int j = std::countr_zero(b);
    b &= b - 1;
    inv += std::popcount(a >> (j + 1));
  }
  return (inv & 1) ? -1 : 1;
}

// Left derivative d/d(xi_i) of xi_I: (-1)^{#(k in I, k < i)}.
int left_sign(IndexMask m, int i) { return (std::popcount(m & ((IndexMask{1} << i) - 1)) & 1) ? -1 : 1; }

}  // namespace

PolyVector::PolyVector(SpacePtr space, int degree) : space_(std::move(space)), degree_(degree) {
  if (!space_) throw std::invalid_argument("PolyVector needs a base space");
  if (degree < 0 || degree > space_->d) throw std::invalid_argument("degree out of range");
}

PolyVector PolyVector::scalar(SpacePtr space, const DiffPoly& f) {
  PolyVector v(std::move(space), 0);
  v.set_mask(0, f);
  return v;
}

PolyVector PolyVector::vector_field(SpacePtr space, const std::vector<DiffPoly>& comps) {
  PolyVector v(std::move(space), 1);
  if (static_cast<int>(comps.size()) != v.dim()) throw std::invalid_argument("vector field needs d components");
  for (int i = 0; i < v.dim(); ++i) v.set_mask(IndexMask{1} << i, comps[i]);
  return v;
}

PolyVector PolyVector::basis(SpacePtr space, const std::vector<int>& indices, const DiffPoly& coeff) {
  PolyVector v(std::move(space), static_cast<int>(indices.size()));
  v.set(indices, coeff);
  return v;
}

namespace {

// Sorts idx, returns the permutation sign, or 0 on repeats.
int sort_sign(std::vector<int>& idx) {
  int sign = 1;
  for (std::size_t i = 1; i < idx.size(); ++i)
    for (std::size_t j = i; j > 0 && idx[j - 1] >= idx[j]; --j) {
      if (idx[j - 1] == idx[j]) return 0;
      std::swap(idx[j - 1], idx[j]);
      sign = -sign;
    }
  return sign;
}

}  // namespace

DiffPoly PolyVector::get(const std::vector<int>& indices) const {
  if (static_cast<int>(indices.size()) != degree_) throw std::invalid_argument("index count must equal degree");
  std::vector<int> idx = indices;
  int s = sort_sign(idx);
  if (s == 0) return DiffPoly(Rational(0), space_);
  for (int i : idx)
    if (i < 0 || i >= dim()) throw std::out_of_range("component index");
  DiffPoly v = at(mask_of(idx));
  return s > 0 ? v : -v;
}

DiffPoly PolyVector::at(IndexMask m) const {
  auto it = comps_.find(m);
  return it == comps_.end() ? DiffPoly(Rational(0), space_) : it->second;
}

void PolyVector::set(const std::vector<int>& indices, const DiffPoly& value) {
  if (static_cast<int>(indices.size()) != degree_) throw std::invalid_argument("index count must equal degree");
  std::vector<int> idx = indices;
  int s = sort_sign(idx);
  if (s == 0) {
    if (!value.is_zero()) throw std::invalid_argument("repeated index with nonzero value");
    return;
  }
  for (int i : idx)
    if (i < 0 || i >= dim()) throw std::out_of_range("component index");
  set_mask(mask_of(idx), s > 0 ? value : -value);
}

void PolyVector::set_mask(IndexMask m, DiffPoly value) {
  if (std::popcount(m) != degree_) throw std::invalid_argument("mask degree mismatch");
  if (value.is_zero()) {
    comps_.erase(m);
  } else {
    comps_[m] = value.with_space(space_);
  }
}

PolyVector PolyVector::operator-() const {
  PolyVector r = *this;
  for (auto& [m, p] : r.comps_) p = -p;
  return r;
}

PolyVector& PolyVector::operator+=(const PolyVector& o) {
  if (degree_ != o.degree_) throw std::invalid_argument("degree mismatch in sum");
  space_ = jetcalc::join_spaces(space_, o.space_);
  for (const auto& [m, p] : o.comps_) set_mask(m, at(m) + p);
  return *this;
}

PolyVector& PolyVector::operator-=(const PolyVector& o) { return *this += -o; }

PolyVector operator*(const DiffPoly& f, const PolyVector& v) {
  PolyVector r(v.space_, v.degree_);
  for (const auto& [m, p] : v.comps_) r.set_mask(m, f * p);
  return r;
}

PolyVector operator*(const Rational& c, const PolyVector& v) {
  PolyVector r(v.space_, v.degree_);
  for (const auto& [m, p] : v.comps_) r.set_mask(m, c * p);
  return r;
}

bool operator==(const PolyVector& a, const PolyVector& b) {
  if (a.is_zero() && b.is_zero()) return true;
  return a.degree_ == b.degree_ && a.comps_ == b.comps_;
}

PolyVector PolyVector::total_derivative(int k) const {
  PolyVector r(space_, degree_);
  for (const auto& [m, p] : comps_) r.set_mask(m, p.total_derivative(k));
  return r;
}

PolyVector PolyVector::map(const std::function<DiffPoly(const DiffPoly&)>& fn) const {
  PolyVector r(space_, degree_);
  for (const auto& [m, p] : comps_) r.set_mask(m, fn(p));
  return r;
}

PolyVector wedge(const PolyVector& a, const PolyVector& b) {
  SpacePtr sp = jetcalc::join_spaces(a.space(), b.space());
  if (a.degree() + b.degree() > sp->d) throw std::invalid_argument("wedge degree exceeds dimension");
  std::map<IndexMask, PolyAccumulator> acc;
  for (const auto& [ma, pa] : a.components())
    for (const auto& [mb, pb] : b.components()) {
      if (ma & mb) continue;
      auto it = acc.try_emplace(ma | mb, sp).first;
      it->second.add_product(pa, pb, Rational(merge_sign(ma, mb)));
    }
  PolyVector r(sp, a.degree() + b.degree());
  for (auto& [m, ac] : acc) r.set_mask(m, ac.take());
  return r;
}

namespace {

// Right derivative A<-d/dxi_i on xi_I: (-1)^{#(k in I, k > i)}.
int right_sign(IndexMask m, int i) { return (std::popcount(m >> (i + 1)) & 1) ? -1 : 1; }

std::vector<std::map<IndexMask, DiffPoly>> partials(const PolyVector& v) {
  std::vector<std::map<IndexMask, DiffPoly>> out(static_cast<std::size_t>(v.dim()));
  for (int i = 0; i < v.dim(); ++i)
    for (const auto& [m, p] : v.components()) {
      DiffPoly q = p.total_derivative(i);
      if (!q.is_zero()) out[i].emplace(m, std::move(q));
    }
  return out;
}

}  // namespace

// S(A,B) = sum_i (A <-d/dxi_i)(d_i B) - (d_i A)(d/dxi_i-> B), twisted by
// (-1)^{(|A|+1)(|B|+1)} so that iterated brackets with Casimirs reproduce
// the determinant bracket in every dimension.
PolyVector schouten(const PolyVector& a, const PolyVector& b) {
  SpacePtr sp = jetcalc::join_spaces(a.space(), b.space());
  int deg = a.degree() + b.degree() - 1;
  if (deg < 0) throw std::invalid_argument("schouten of two scalars");
  if (deg > sp->d) throw std::invalid_argument("schouten degree exceeds dimension");
  int d = sp->d;
  Rational twist = ((a.degree() + 1) * (b.degree() + 1)) % 2 ? Rational(-1) : Rational(1);
  std::map<IndexMask, PolyAccumulator> acc;
  auto db = partials(b);
  for (const auto& [ma, pa] : a.components())
    for (int i = 0; i < d; ++i) {
      if (!(ma & (IndexMask{1} << i))) continue;
      IndexMask rest = ma & ~(IndexMask{1} << i);
      int s0 = right_sign(ma, i);
      for (const auto& [mb, q] : db[i]) {
        if (rest & mb) continue;
        int s = s0 * merge_sign(rest, mb);
        acc.try_emplace(rest | mb, sp).first->second.add_product(pa, q, s > 0 ? twist : -twist);
      }
    }
  auto da = partials(a);
  for (int i = 0; i < d; ++i)
    for (const auto& [ma, q] : da[i])
      for (const auto& [mb, pb] : b.components()) {
        if (!(mb & (IndexMask{1} << i))) continue;
        IndexMask rest = mb & ~(IndexMask{1} << i);
        if (rest & ma) continue;
        int s = -left_sign(mb, i) * merge_sign(ma, rest);
        acc.try_emplace(ma | rest, sp).first->second.add_product(q, pb, s > 0 ? twist : -twist);
      }
  PolyVector r(sp, deg);
  for (auto& [m, ac] : acc) r.set_mask(m, ac.take());
  return r;
}

PolyVector lie_derive(const PolyVector& t, const PolyVector& y) {
  if (y.degree() != 1) throw std::invalid_argument("Lie derivative along a non-vector");
  return schouten(y, t);
}

PolyVector euler_field(SpacePtr space) {
  std::vector<DiffPoly> c;
  for (int i = 0; i < space->d; ++i) c.push_back(DiffPoly::coordinate(space, i));
  return PolyVector::vector_field(space, c);
}

PolyVector homogeneous_power_field(SpacePtr space, int k) {
  if (k < 2) throw std::invalid_argument("power field needs k >= 2");
  std::vector<DiffPoly> c;
  for (int i = 0; i < space->d; ++i) {
    DiffPoly x = DiffPoly::coordinate(space, i), p(Rational(1), space);
    for (int n = 0; n < k; ++n) p = p * x;
    c.push_back(p);
  }
  return PolyVector::vector_field(space, c);
}

namespace {

bool lex_less(IndexMask a, IndexMask b) { return indices_of(a) < indices_of(b); }

std::vector<IndexMask> ordered_masks(const PolyVector& v) {
  std::vector<IndexMask> ms;
  for (const auto& [m, p] : v.components()) ms.push_back(m);
  std::sort(ms.begin(), ms.end(), lex_less);
  return ms;
}

}  // namespace

std::string print(const PolyVector& v, const std::string& name) {
  std::string out;
  for (IndexMask m : ordered_masks(v)) {
    out += name;
    for (int i : indices_of(m)) out += "[" + v.space()->names[i] + "]";
    out += " = " + jetcalc::print(v.at(m)) + "\n";
  }
  if (out.empty()) out = name + " = 0\n";
  return out;
}

nlohmann::json to_json(const PolyVector& v) {
  nlohmann::json comps = nlohmann::json::array();
  for (IndexMask m : ordered_masks(v)) comps.push_back({indices_of(m), jetcalc::to_json(v.at(m))});
  return {{"degree", v.degree()}, {"components", comps}};
}

PolyVector polyvector_from_json(const nlohmann::json& j, const SpacePtr& space) {
  PolyVector v(space, j.at("degree").get<int>());
  for (const auto& c : j.at("components")) v.set(c.at(0).get<std::vector<int>>(), jetcalc::diffpoly_from_json(c.at(1), space));
  return v;
}

}  // namespace npf::multivec
