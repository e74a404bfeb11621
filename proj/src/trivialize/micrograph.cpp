#include "npf/trivialize/micrograph.hpp"

#include "npf/parallel.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

namespace npf::trivialize {

using jetcalc::Monomial;
using multivec::IndexMask;

bool MicroGraph::has_tadpole() const {
  for (int v = 0; v < kDensity; ++v)
    for (int t : targets[v])
      if (t == v) return true;
  return false;
}

void MicroGraph::validate() const {
  int sink = 0;
  for (const auto& slots : targets)
    for (int t : slots) {
      if (t < 0 || t > kSink) throw std::invalid_argument("micro-graph edge target out of range");
      sink += t == kSink;
    }
  if (sink != 1) throw std::invalid_argument("micro-graph sink needs in-degree 1");
}

namespace {

std::string target_name(int t) {
  if (t == MicroGraph::kSink) return "s";
  if (t < MicroGraph::kDensity) return std::to_string(t);
  return "a" + std::to_string(t);
}

}  // namespace

std::string MicroGraph::encoding() const {
  std::string out;
  for (const auto& slots : targets) {
    out += '(';
    for (int p = 0; p < 3; ++p) out += (p ? " " : "") + target_name(slots[p]);
    out += ')';
  }
  return out;
}

std::string MicroGraph::canonical_key() const {
  static const std::vector<std::array<int, 3>> perms = [] {
    std::vector<std::array<int, 3>> v;
    std::array<int, 3> p{0, 1, 2};
    do v.push_back(p);
    while (std::next_permutation(p.begin(), p.end()));
    return v;
  }();
  std::string best;
  for (const auto& pi : perms)
    for (const auto& ka : perms) {
      std::array<std::array<int, 3>, kDensity> t{};
      for (int v = 0; v < kDensity; ++v) {
        std::array<int, 3> s{};
        for (int p = 0; p < 3; ++p) {
          int x = targets[v][p];
          s[p] = x < kDensity ? pi[x] : x < kSink ? kDensity + ka[x - kDensity] : kSink;
        }
        std::sort(s.begin(), s.end());
        t[pi[v]] = s;
      }
      std::string key;
      for (const auto& s : t)
        for (int x : s) key += static_cast<char>('0' + x);
      if (best.empty() || key < best) best = key;
    }
  return best;
}

civita::Marker MicroGraph::to_marker() const {
  civita::Marker m;
  std::vector<civita::MarkerFactor> f(kSink);
  for (int v = 0; v < kSink; ++v) f[v].symbol = v < kDensity ? jetcalc::rho_symbol() : jetcalc::casimir_symbol(0);
  for (int v = 0; v < kDensity; ++v)
    for (int p = 0; p < 3; ++p) {
      civita::Letter l{static_cast<std::uint8_t>(v), static_cast<std::uint8_t>(p)};
      int t = targets[v][p];
      if (t == kSink) m.free = l;
      else f[t].letters.push_back(l);
    }
  for (auto& x : f) std::sort(x.letters.begin(), x.letters.end());
  m.factors = std::move(f);
  return m;
}

std::vector<MicroGraph> enumerate_micrographs(bool allow_tadpoles) {
  std::vector<std::array<int, 3>> triples;
  for (int a = 0; a <= MicroGraph::kSink; ++a)
    for (int b = a; b <= MicroGraph::kSink; ++b)
      for (int c = b; c <= MicroGraph::kSink; ++c) triples.push_back({a, b, c});
  std::set<std::string> seen;
  std::vector<MicroGraph> out;
  for (const auto& t0 : triples)
    for (const auto& t1 : triples)
      for (const auto& t2 : triples) {
        MicroGraph g;
        g.targets = {t0, t1, t2};
        int sink = 0;
        for (const auto& s : g.targets)
          for (int x : s) sink += x == MicroGraph::kSink;
        if (sink != 1) continue;
        if (!allow_tadpoles && g.has_tadpole()) continue;
        if (seen.insert(g.canonical_key()).second) out.push_back(g);
      }
  return out;
}

PolyVector evaluate(const MicroGraph& g, const jetcalc::SpacePtr& space) {
  g.validate();
  if (space->d != 3) throw std::invalid_argument("micro-graphs are built for d = 3");
  return civita::alternating_sum_field(space, MicroGraph::kDensity, g.to_marker());
}

TrivializeResult solve_trivialization(const NambuData& data, const PolyVector& rhs, const TrivializeOptions& opt) {
  if (data.space->d != 3 || data.unit_density()) throw std::invalid_argument("trivialization ansatz needs d = 3 and symbolic rho");
  TrivializeResult res;
  auto graphs = enumerate_micrographs(opt.allow_tadpoles);
  res.graphs = graphs.size();
  auto values = parallel_map<PolyVector>(graphs.size(), [&](std::size_t i) { return evaluate(graphs[i], data.space); });
  std::vector<PolyVector> fields;
  for (std::size_t i = 0; i < graphs.size(); ++i) {
    if (values[i].is_zero()) continue;
    res.columns.push_back(graphs[i]);
    fields.push_back(std::move(values[i]));
  }
  auto p = nambu::nambu_bivector(data);
  auto images = parallel_map<PolyVector>(fields.size(), [&](std::size_t i) { return multivec::schouten(p, fields[i]); });

  linalg::RowAssembler<std::pair<IndexMask, Monomial>, std::less<>> rows(static_cast<int>(fields.size()));
  for (std::size_t k = 0; k < fields.size(); ++k)
    for (const auto& [mask, poly] : images[k].components())
      for (const auto& t : poly.terms()) rows.add({mask, t.mono}, static_cast<int>(k), t.coeff);
  for (const auto& [mask, poly] : rhs.components())
    for (const auto& t : poly.terms()) rows.add_rhs({mask, t.mono}, t.coeff);
  auto system = rows.build();
  res.equations = system.rows();
  auto sol = linalg::solve(system);
  res.feasible = sol.feasible;
  res.field = PolyVector(data.space, 1);
  if (!sol.feasible) {
    res.reason = "infeasible: " + sol.reason;
    return res;
  }
  res.particular = sol.particular;
  res.kernel = sol.kernel;
  for (std::size_t k = 0; k < fields.size(); ++k)
    if (!res.particular[k].is_zero()) res.field += res.particular[k] * fields[k];
  return res;
}

std::string dump_solution(const TrivializeResult& r) {
  std::string out;
  for (std::size_t k = 0; k < r.columns.size(); ++k)
    if (!r.particular.empty() && !r.particular[k].is_zero()) out += r.columns[k].encoding() + " " + r.particular[k].str() + "\n";
  return out;
}

}  // namespace npf::trivialize
