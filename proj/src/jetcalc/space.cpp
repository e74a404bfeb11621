#include "npf/jetcalc/space.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <set>
#include <stdexcept>

namespace npf::jetcalc {

int BaseSpace::index_of(char letter) const {
  for (int i = 0; i < d; ++i)
    if (names[i].size() == 1 && names[i][0] == letter) return i;
  return -1;
}

SpacePtr make_space(int d) {
  if (d < 2 || d > kMaxDim) throw std::invalid_argument("dimension must be in [2, " + std::to_string(kMaxDim) + "]");
  static const std::vector<std::string> letters3 = {"x", "y", "z"};
  static const std::vector<std::string> letters = {"x", "y", "z", "w", "v", "u"};
  std::vector<std::string> names;
  for (int i = 0; i < d; ++i) names.push_back(d <= 3 ? letters3[i] : letters[i]);
  return make_space(std::move(names));
}

SpacePtr make_space(std::vector<std::string> names) {
  int d = static_cast<int>(names.size());
  if (d < 2 || d > kMaxDim) throw std::invalid_argument("dimension must be in [2, " + std::to_string(kMaxDim) + "]");
  std::set<std::string> seen;
  for (const auto& n : names) {
    if (n.size() != 1 || !std::islower(static_cast<unsigned char>(n[0])))
      throw std::invalid_argument("coordinate names must be single lowercase letters: " + n);
    if (!seen.insert(n).second) throw std::invalid_argument("duplicate coordinate name " + n);
  }
  auto s = std::make_shared<BaseSpace>();
  s->d = d;
  s->names = std::move(names);
  return s;
}

bool same_space(const SpacePtr& a, const SpacePtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  return a->d == b->d && a->names == b->names;
}

SpacePtr join_spaces(const SpacePtr& a, const SpacePtr& b) {
  if (!a) return b;
  if (!b) return a;
  if (!same_space(a, b)) throw std::invalid_argument("mismatched base spaces");
  return a;
}

namespace {

constexpr int kRho = 16;
constexpr int kCasimir = 17;   // "a", then a1..a9 at 18..26
constexpr int kComponent = 32; // 32 + 8*i + j
constexpr int kDynamic = 128;

struct Registry {
  std::mutex mu;
  std::vector<std::string> names = std::vector<std::string>(256);
  std::vector<SymbolKind> kinds = std::vector<SymbolKind>(256, SymbolKind::other);
  std::map<std::string, SymbolId> by_name;
  int next = kDynamic;

  Registry() {
    for (int i = 0; i < 8; ++i) {
      names[1 + i] = "#" + std::to_string(i);
      kinds[1 + i] = SymbolKind::coordinate;
    }
    put(kRho, "rho", SymbolKind::density);
    put(kCasimir, "a", SymbolKind::casimir);
    for (int k = 1; k <= 9; ++k) put(kCasimir + k, "a" + std::to_string(k), SymbolKind::casimir);
    for (int i = 0; i < 8; ++i)
      for (int j = i + 1; j < 8; ++j)
        put(kComponent + 8 * i + j, "P" + std::to_string(i + 1) + std::to_string(j + 1), SymbolKind::component);
  }
  void put(int id, const std::string& n, SymbolKind k) {
    names[id] = n;
    kinds[id] = k;
    by_name[n] = static_cast<SymbolId>(id);
  }
};

Registry& registry() {
  static Registry r;
  return r;
}

bool valid_symbol_name(const std::string& n) {
  if (n.empty() || !std::isalpha(static_cast<unsigned char>(n[0]))) return false;
  for (char c : n)
    if (!std::isalnum(static_cast<unsigned char>(c))) return false;
  return n.size() > 1 || n == "a";
}

}  // namespace

SymbolId coordinate_symbol(int i) {
  if (i < 0 || i >= kMaxDim) throw std::out_of_range("coordinate index");
  return static_cast<SymbolId>(1 + i);
}
SymbolId rho_symbol() { return kRho; }
SymbolId casimir_symbol(int k) {
  if (k < 0 || k > 9) throw std::out_of_range("casimir index");
  return static_cast<SymbolId>(kCasimir + k);
}
SymbolId component_symbol(int i, int j) {
  if (i > j) std::swap(i, j);
  if (i < 0 || j >= 8 || i == j) throw std::out_of_range("component index");
  return static_cast<SymbolId>(kComponent + 8 * i + j);
}

SymbolId symbol_by_name(const std::string& name) {
  auto& r = registry();
  std::lock_guard lock(r.mu);
  auto it = r.by_name.find(name);
  if (it != r.by_name.end()) return it->second;
  if (!valid_symbol_name(name)) throw std::invalid_argument("invalid symbol name '" + name + "'");
  if (r.next > 255) throw std::length_error("too many symbols");
  int id = r.next++;
  r.put(id, name, SymbolKind::other);
  return static_cast<SymbolId>(id);
}

bool symbol_exists(const std::string& name) {
  auto& r = registry();
  std::lock_guard lock(r.mu);
  return r.by_name.count(name) > 0;
}

const std::string& symbol_name(SymbolId s) { return registry().names[s]; }
SymbolKind symbol_kind(SymbolId s) { return registry().kinds[s]; }
bool is_coordinate(SymbolId s) { return s >= 1 && s <= 8; }
int coordinate_index(SymbolId s) { return is_coordinate(s) ? s - 1 : -1; }

int MultiIndex::order() const {
  int o = 0;
  for (auto v : e) o += v;
  return o;
}

VarCode make_var(SymbolId s, const MultiIndex& m) {
  VarCode v = static_cast<VarCode>(s) << 24;
  int order = 0;
  for (int k = 0; k < kMaxDim; ++k) {
    if (m.e[k] > kMaxPartial) throw std::out_of_range("derivative order per coordinate exceeds 7");
    order += m.e[k];
    v |= static_cast<VarCode>(m.e[k]) << (3 * (kMaxDim - 1 - k));
  }
  if (order > kMaxOrder) throw std::out_of_range("derivative order exceeds 63");
  return v | (static_cast<VarCode>(order) << 18);
}

MultiIndex var_index(VarCode v) {
  MultiIndex m;
  for (int k = 0; k < kMaxDim; ++k) m.e[k] = static_cast<std::uint8_t>(var_exp(v, k));
  return m;
}

VarCode var_shift(VarCode v, int k) {
  if (var_exp(v, k) >= kMaxPartial) throw std::out_of_range("derivative order per coordinate exceeds 7");
  return v + (VarCode{1} << 18) + (VarCode{1} << (3 * (kMaxDim - 1 - k)));
}

}  // namespace npf::jetcalc
