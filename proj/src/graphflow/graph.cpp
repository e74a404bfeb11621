#include "npf/graphflow/graph.hpp"

#include "npf/parallel.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace npf::graphflow {

using jetcalc::MultiIndex;
using jetcalc::PolyAccumulator;

int DirectedGraph::sinks() const {
  int s = 0;
  for (const auto& e : edges) s = std::max(s, -e.target);
  return s;
}

std::vector<int> DirectedGraph::out_degree() const {
  std::vector<int> deg(static_cast<std::size_t>(vertices), 0);
  for (const auto& e : edges)
    if (e.source >= 0 && e.source < vertices) deg[e.source] = std::max(deg[e.source], e.slot + 1);
  return deg;
}

void DirectedGraph::validate() const {
  if (vertices <= 0) throw std::invalid_argument("graph needs at least one vertex");
  std::set<std::pair<int, int>> slots;
  std::vector<int> sink_in(static_cast<std::size_t>(sinks()), 0);
  for (const auto& e : edges) {
    if (e.source < 0 || e.source >= vertices) throw std::invalid_argument("edge source out of range");
    if (e.target >= vertices) throw std::invalid_argument("edge target out of range");
    if (e.slot < 0) throw std::invalid_argument("negative slot");
    if (!slots.insert({e.source, e.slot}).second) throw std::invalid_argument("duplicate out-slot");
    if (e.target < 0) ++sink_in[-e.target - 1];
  }
  auto deg = out_degree();
  for (int v = 0; v < vertices; ++v)
    for (int s = 0; s < deg[v]; ++s)
      if (!slots.count({v, s})) throw std::invalid_argument("gap in out-slots of vertex " + std::to_string(v));
  for (std::size_t s = 0; s < sink_in.size(); ++s)
    if (sink_in[s] != 1) throw std::invalid_argument("sink " + std::to_string(s + 1) + " needs in-degree 1");
}

GraphParseError::GraphParseError(const std::string& msg, std::size_t l, std::size_t c)
    : std::runtime_error(msg + " at line " + std::to_string(l) + ", column " + std::to_string(c)), line(l), column(c) {}

namespace {

struct LineScanner {
  std::string_view s;
  std::size_t line;
  std::size_t pos = 0;

  [[noreturn]] void fail(const std::string& msg) const { throw GraphParseError(msg, line, pos + 1); }
  void skip() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }
  void expect(char c) {
    skip();
    if (pos >= s.size() || s[pos] != c) fail(std::string("expected '") + c + "'");
    ++pos;
  }
  bool at_end() {
    skip();
    return pos >= s.size();
  }
  long integer() {
    skip();
    std::size_t start = pos;
    if (pos < s.size() && (s[pos] == '-' || s[pos] == '+')) ++pos;
    std::size_t digits = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    if (digits == pos) {
      pos = start;
      fail("expected integer");
    }
    return std::stol(std::string(s.substr(start, pos - start)));
  }
  Rational rational() {
    skip();
    std::size_t start = pos;
    while (pos < s.size() && (std::isdigit(static_cast<unsigned char>(s[pos])) || s[pos] == '-' || s[pos] == '+' ||
                              s[pos] == '/'))
      ++pos;
    if (start == pos) fail("expected coefficient");
    try {
      return Rational::parse(s.substr(start, pos - start));
    } catch (const std::exception&) {
      pos = start;
      fail("bad coefficient");
    }
  }
};

}  // namespace

GraphSum load_graph_sum(std::string_view text) {
  GraphSum gs;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    ++line_no;
    if (auto h = line.find('#'); h != std::string_view::npos) line = line.substr(0, h);
    LineScanner sc{line, line_no};
    if (!sc.at_end()) {
      GraphTerm t;
      t.coeff = sc.rational();
      sc.expect(';');
      long n = sc.integer();
      if (n <= 0) sc.fail("vertex count must be positive");
      t.graph.vertices = static_cast<int>(n);
      sc.expect(';');
      while (!sc.at_end()) {
        sc.expect('(');
        Edge e;
        e.source = static_cast<int>(sc.integer());
        sc.expect(',');
        e.slot = static_cast<int>(sc.integer());
        sc.expect(',');
        e.target = static_cast<int>(sc.integer());
        sc.expect(')');
        t.graph.edges.push_back(e);
      }
      try {
        t.graph.validate();
      } catch (const std::invalid_argument& err) {
        sc.fail(err.what());
      }
      gs.terms.push_back(std::move(t));
    }
    start = end + 1;
  }
  if (gs.terms.empty()) throw GraphParseError("no graphs in input", line_no, 1);
  return gs;
}

std::string print_graph_sum(const GraphSum& gs) {
  std::ostringstream os;
  for (const auto& t : gs.terms) {
    os << t.coeff << " ; " << t.graph.vertices << " ;";
    for (const auto& e : t.graph.edges) os << " (" << e.source << "," << e.slot << "," << e.target << ")";
    os << "\n";
  }
  return os.str();
}

namespace {

struct Tensor {
  std::vector<int> axes;  // edge ids
  std::vector<DiffPoly> data;
};

std::size_t ipow(int d, std::size_t k) {
  std::size_t r = 1;
  for (std::size_t i = 0; i < k; ++i) r *= static_cast<std::size_t>(d);
  return r;
}

// Index assignment of flat position `pos` over `k` axes (first axis most significant).
void unflatten(std::size_t pos, int d, std::vector<int>& out) {
  for (std::size_t i = out.size(); i-- > 0;) {
    out[i] = static_cast<int>(pos % static_cast<std::size_t>(d));
    pos /= static_cast<std::size_t>(d);
  }
}

Tensor vertex_tensor(const DirectedGraph& g, int v, const PolyVector& content, int d) {
  std::vector<int> out_edges(content.degree(), -1);
  std::vector<int> in_edges;
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    if (g.edges[e].source == v) out_edges.at(g.edges[e].slot) = static_cast<int>(e);
    if (g.edges[e].target == v) in_edges.push_back(static_cast<int>(e));
  }
  Tensor t;
  t.axes = out_edges;
  for (int e : in_edges)
    if (std::find(t.axes.begin(), t.axes.end(), e) == t.axes.end()) t.axes.push_back(e);
  std::size_t n = ipow(d, t.axes.size());
  t.data.assign(n, DiffPoly(0, content.space()));
  std::map<std::pair<multivec::IndexMask, std::vector<int>>, DiffPoly> cache;
  std::vector<int> idx(t.axes.size());
  for (std::size_t pos = 0; pos < n; ++pos) {
    unflatten(pos, d, idx);
    std::vector<int> comp(out_edges.size());
    for (std::size_t s = 0; s < out_edges.size(); ++s) comp[s] = idx[s];
    DiffPoly base = content.get(comp);
    if (base.is_zero()) continue;
    MultiIndex mi;
    for (int e : in_edges) {
      auto at = std::find(t.axes.begin(), t.axes.end(), e) - t.axes.begin();
      ++mi.e[idx[at]];
    }
    t.data[pos] = base.total_derivative(mi);
  }
  return t;
}

Tensor contract(const Tensor& a, const Tensor& b, int d) {
  std::vector<int> shared, result;
  for (int e : a.axes)
    if (std::find(b.axes.begin(), b.axes.end(), e) != b.axes.end()) shared.push_back(e);
  for (int e : a.axes)
    if (std::find(shared.begin(), shared.end(), e) == shared.end()) result.push_back(e);
  for (int e : b.axes)
    if (std::find(shared.begin(), shared.end(), e) == shared.end()) result.push_back(e);
  auto where = [](const std::vector<int>& axes, int e) {
    return static_cast<std::size_t>(std::find(axes.begin(), axes.end(), e) - axes.begin());
  };
  std::vector<std::size_t> a_stride(a.axes.size()), b_stride(b.axes.size());
  for (std::size_t i = 0; i < a.axes.size(); ++i) a_stride[i] = ipow(d, a.axes.size() - 1 - i);
  for (std::size_t i = 0; i < b.axes.size(); ++i) b_stride[i] = ipow(d, b.axes.size() - 1 - i);

  Tensor out;
  out.axes = result;
  std::size_t n = ipow(d, result.size());
  std::size_t ns = ipow(d, shared.size());
  SpacePtr sp;
  for (const auto& p : a.data) sp = jetcalc::join_spaces(sp, p.space());
  out.data.assign(n, DiffPoly(0, sp));
  parallel_for(n, [&](std::size_t pos) {
    std::vector<int> ridx(result.size()), sidx(shared.size());
    unflatten(pos, d, ridx);
    std::size_t abase = 0, bbase = 0;
    for (std::size_t i = 0; i < result.size(); ++i) {
      std::size_t ia = where(a.axes, result[i]);
      if (ia < a.axes.size()) {
        abase += a_stride[ia] * static_cast<std::size_t>(ridx[i]);
      } else {
        bbase += b_stride[where(b.axes, result[i])] * static_cast<std::size_t>(ridx[i]);
      }
    }
    PolyAccumulator acc(sp);
    for (std::size_t sp_pos = 0; sp_pos < ns; ++sp_pos) {
      unflatten(sp_pos, d, sidx);
      std::size_t ai = abase, bi = bbase;
      for (std::size_t i = 0; i < shared.size(); ++i) {
        ai += a_stride[where(a.axes, shared[i])] * static_cast<std::size_t>(sidx[i]);
        bi += b_stride[where(b.axes, shared[i])] * static_cast<std::size_t>(sidx[i]);
      }
      if (a.data[ai].is_zero() || b.data[bi].is_zero()) continue;
      acc.add_product(a.data[ai], b.data[bi]);
    }
    out.data[pos] = acc.take();
  });
  return out;
}

}  // namespace

std::vector<DiffPoly> evaluate_raw(const DirectedGraph& g, const std::vector<PolyVector>& contents,
                                   const SpacePtr& space) {
  g.validate();
  int d = space->d;
  auto deg = g.out_degree();
  std::vector<Tensor> ts;
  for (int v = 0; v < g.vertices; ++v) {
    const PolyVector& c = contents.size() == 1 ? contents[0] : contents.at(v);
    if (c.degree() != deg[v])
      throw std::invalid_argument("vertex " + std::to_string(v) + " has out-degree " + std::to_string(deg[v]) +
                                  " but content of degree " + std::to_string(c.degree()));
    ts.push_back(vertex_tensor(g, v, c, d));
  }
  while (ts.size() > 1) {
    // Greedy order: the pair whose contraction leaves the fewest free axes.
    std::size_t bi = 0, bj = 1, best = SIZE_MAX;
    bool best_shares = false;
    for (std::size_t i = 0; i < ts.size(); ++i)
      for (std::size_t j = i + 1; j < ts.size(); ++j) {
        std::size_t common = 0;
        for (int e : ts[i].axes)
          if (std::find(ts[j].axes.begin(), ts[j].axes.end(), e) != ts[j].axes.end()) ++common;
        std::size_t left = ts[i].axes.size() + ts[j].axes.size() - 2 * common;
        bool shares = common > 0;
        if ((shares && !best_shares) || (shares == best_shares && left < best)) {
          best = left;
          best_shares = shares;
          bi = i;
          bj = j;
        }
      }
    Tensor c = contract(ts[bi], ts[bj], d);
    ts.erase(ts.begin() + static_cast<std::ptrdiff_t>(bj));
    ts[bi] = std::move(c);
  }
  // Reorder remaining axes (sink edges) by sink number.
  int s = g.sinks();
  const Tensor& t = ts[0];
  std::vector<int> sink_of_axis(t.axes.size());
  for (std::size_t i = 0; i < t.axes.size(); ++i) sink_of_axis[i] = -g.edges[t.axes[i]].target - 1;
  std::size_t n = ipow(d, static_cast<std::size_t>(s));
  std::vector<DiffPoly> raw(n, DiffPoly(0, space));
  std::vector<int> idx(t.axes.size());
  for (std::size_t pos = 0; pos < t.data.size(); ++pos) {
    unflatten(pos, d, idx);
    std::size_t out = 0;
    for (std::size_t i = 0; i < t.axes.size(); ++i)
      out += ipow(d, static_cast<std::size_t>(s - 1 - sink_of_axis[i])) * static_cast<std::size_t>(idx[i]);
    raw[out] = t.data[pos];
  }
  return raw;
}

PolyVector skew_part(const std::vector<DiffPoly>& raw, int legs, const SpacePtr& space) {
  int d = space->d;
  PolyVector out(space, legs);
  std::vector<int> perm(static_cast<std::size_t>(legs));
  Rational fact = 1;
  for (int k = 2; k <= legs; ++k) fact *= Rational(k);
  for (multivec::IndexMask m = 0; m < (multivec::IndexMask{1} << d); ++m) {
    if (std::popcount(m) != legs) continue;
    auto idx = multivec::indices_of(m);
    std::iota(perm.begin(), perm.end(), 0);
    PolyAccumulator acc(space);
    do {
      int sign = 1;
      for (int i = 0; i < legs; ++i)
        for (int j = i + 1; j < legs; ++j)
          if (perm[i] > perm[j]) sign = -sign;
      std::size_t pos = 0;
      for (int i = 0; i < legs; ++i) pos = pos * static_cast<std::size_t>(d) + static_cast<std::size_t>(idx[perm[i]]);
      acc.add(raw[pos], Rational(sign) / fact);
    } while (std::next_permutation(perm.begin(), perm.end()));
    out.set_mask(m, acc.take());
  }
  return out;
}

PolyVector evaluate_graph(const GraphSum& gs, const std::vector<PolyVector>& contents, const SpacePtr& space) {
  if (gs.terms.empty()) throw std::invalid_argument("empty graph sum");
  int legs = gs.terms[0].graph.sinks();
  std::vector<DiffPoly> total;
  for (const auto& t : gs.terms) {
    if (t.graph.sinks() != legs) throw std::invalid_argument("graphs in a sum must share the sink count");
    auto raw = evaluate_raw(t.graph, contents, space);
    if (total.empty()) total.assign(raw.size(), DiffPoly(0, space));
    for (std::size_t i = 0; i < raw.size(); ++i)
      if (!raw[i].is_zero()) total[i] += t.coeff * raw[i];
  }
  return skew_part(total, legs, space);
}

}  // namespace npf::graphflow
