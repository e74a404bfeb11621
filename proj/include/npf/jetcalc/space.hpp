#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace npf::jetcalc {

constexpr int kMaxDim = 6;
constexpr int kMaxPartial = 7;   // per-coordinate derivative order
constexpr int kMaxOrder = 63;

struct BaseSpace {
  int d = 0;
  std::vector<std::string> names;

  int index_of(char letter) const;  // -1 when absent
};

using SpacePtr = std::shared_ptr<const BaseSpace>;

// x,y (d=2), x,y,z (d=3), x,y,z,w (d=4); longer spaces get x1..xd-free letters.
SpacePtr make_space(int d);
SpacePtr make_space(std::vector<std::string> names);

bool same_space(const SpacePtr& a, const SpacePtr& b);
// Non-null one of the two; throws std::invalid_argument on mismatch.
SpacePtr join_spaces(const SpacePtr& a, const SpacePtr& b);

using SymbolId = std::uint8_t;

enum class SymbolKind { coordinate, density, casimir, component, other };

// Fixed ranks keep the canonical order independent of registration order.
SymbolId coordinate_symbol(int i);
SymbolId rho_symbol();
SymbolId casimir_symbol(int k);  // 0 -> "a", k>=1 -> "ak"
SymbolId component_symbol(int i, int j);  // generic P^{ij}, i<j
SymbolId symbol_by_name(const std::string& name);  // registers unknown names
bool symbol_exists(const std::string& name);
const std::string& symbol_name(SymbolId s);
SymbolKind symbol_kind(SymbolId s);
bool is_coordinate(SymbolId s);
int coordinate_index(SymbolId s);

struct MultiIndex {
  std::array<std::uint8_t, kMaxDim> e{};

  int order() const;
  int operator[](int k) const { return e[k]; }
  friend bool operator==(const MultiIndex&, const MultiIndex&) = default;
};

// Packed jet variable: symbol | total order | per-coordinate counts.
// Integer order on codes is the canonical JetVar order.
using VarCode = std::uint32_t;

VarCode make_var(SymbolId s, const MultiIndex& m);
inline SymbolId var_symbol(VarCode v) { return static_cast<SymbolId>(v >> 24); }
inline int var_order(VarCode v) { return static_cast<int>((v >> 18) & 0x3f); }
inline int var_exp(VarCode v, int k) { return static_cast<int>((v >> (3 * (kMaxDim - 1 - k))) & 0x7); }
MultiIndex var_index(VarCode v);
VarCode var_shift(VarCode v, int k);  // adds e_k; throws on overflow

}  // namespace npf::jetcalc
