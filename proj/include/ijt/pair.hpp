#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "ijt/graph.hpp"

namespace ijt {

// Element of the ground order 1 ≺ 1̄ ≺ 2 ≺ 2̄ ≺ … : plain values come right
// before their barred copies.
struct OrderedElement {
  int value = 0;
  bool barred = false;

  friend auto operator<=>(const OrderedElement& a, const OrderedElement& b) {
    return std::tie(a.value, a.barred) <=> std::tie(b.value, b.barred);
  }
  friend bool operator==(const OrderedElement&, const OrderedElement&) = default;
};

struct InvalidPair : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct EmptyPair : InvalidPair {
  using InvalidPair::InvalidPair;
};

// A pair (I, J̄) whose combined minimum is unbarred and maximum is barred.
// Jbar stores the numeric values of the barred elements.
struct ValidPair {
  std::vector<int> I;     // sorted, distinct
  std::vector<int> Jbar;  // sorted, distinct
  int n = 0;              // max value present

  bool in_I(int v) const {
    return std::binary_search(I.begin(), I.end(), v);
  }
  bool in_Jbar(int v) const {
    return std::binary_search(Jbar.begin(), Jbar.end(), v);
  }
  // The combined ground set in ≺ order.
  std::vector<OrderedElement> ground() const {
    std::vector<OrderedElement> g;
    for (int i : I) g.push_back({i, false});
    for (int j : Jbar) g.push_back({j, true});
    std::sort(g.begin(), g.end());
    return g;
  }
  friend bool operator==(const ValidPair&, const ValidPair&) = default;
};

namespace detail {
inline std::vector<int> sorted_set(std::vector<int> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}
}  // namespace detail

inline ValidPair validate_pair(std::vector<int> I, std::vector<int> Jbar) {
  I = detail::sorted_set(std::move(I));
  Jbar = detail::sorted_set(std::move(Jbar));
  if (I.empty()) throw InvalidPair("I is empty");
  if (Jbar.empty()) throw InvalidPair("Jbar is empty");
  if (I.front() <= 0 || Jbar.front() <= 0)
    throw InvalidPair("elements must be positive integers");
  // min of I ⊔ J̄ must be the unbarred I.front(); i ≺ j̄ iff i ≤ j.
  if (!(I.front() <= Jbar.front()))
    throw InvalidPair("minimum of the combined set is barred");
  if (!(Jbar.back() >= I.back()))
    throw InvalidPair("maximum of the combined set is unbarred");
  ValidPair vp{std::move(I), std::move(Jbar), 0};
  vp.n = std::max(vp.I.back(), vp.Jbar.back());
  return vp;
}

// Drop elements that participate in no arc (j̄ with no i ≼ j in I, i with no
// j̄ above it), then validate.  The surviving arc set is unchanged.
inline ValidPair normalize_pair(std::vector<int> I, std::vector<int> Jbar) {
  I = detail::sorted_set(std::move(I));
  Jbar = detail::sorted_set(std::move(Jbar));
  if (I.empty() || Jbar.empty()) throw EmptyPair("no arcs survive pruning");
  for (int v : I)
    if (v <= 0) throw InvalidPair("elements must be positive integers");
  for (int v : Jbar)
    if (v <= 0) throw InvalidPair("elements must be positive integers");
  std::vector<int> I2, J2;
  for (int i : I)
    if (i <= Jbar.back()) I2.push_back(i);
  if (I2.empty()) throw EmptyPair("no arcs survive pruning");
  for (int j : Jbar)
    if (j >= I2.front()) J2.push_back(j);
  if (J2.empty()) throw EmptyPair("no arcs survive pruning");
  return validate_pair(std::move(I2), std::move(J2));
}

// prec(j̄): the element immediately before j̄ in (I ⊔ J̄, ≺) when that element
// is unbarred, else j itself.
struct PrecMap {
  std::map<int, int> forward;  // j (barred value) -> prec(j̄)
  std::map<int, int> inverse;  // prec(j̄) -> j

  int at(int j) const {
    auto it = forward.find(j);
    if (it == forward.end())
      throw std::invalid_argument("prec: value not in Jbar");
    return it->second;
  }
  std::set<int> image() const {
    std::set<int> s;
    for (const auto& [j, p] : forward) s.insert(p);
    return s;
  }
};

inline PrecMap prec(const ValidPair& vp) {
  PrecMap pm;
  auto g = vp.ground();
  for (std::size_t p = 0; p < g.size(); ++p) {
    if (!g[p].barred) continue;
    int j = g[p].value;
    int val = (p > 0 && !g[p - 1].barred) ? g[p - 1].value : j;
    pm.forward[j] = val;
  }
  for (const auto& [j, v] : pm.forward) {
    if (pm.inverse.count(v))
      throw std::logic_error("prec map is not injective");
    pm.inverse[v] = j;
  }
  return pm;
}

// Arc (i, j̄) recorded as (i, j).  i ≺ j̄ iff i ≤ j.
using Arc = std::pair<int, int>;

inline std::vector<Arc> build_A(const ValidPair& vp) {
  std::vector<Arc> arcs;
  for (int i : vp.I)
    for (int j : vp.Jbar)
      if (i <= j) arcs.emplace_back(i, j);
  std::sort(arcs.begin(), arcs.end());
  return arcs;
}

// Quotient of an arc set under prec.  Arcs collapsing to loops are dropped
// from the graph but kept as metadata: they mark the cone points.
struct Quotient {
  ProvGraph graph;
  std::vector<Arc> collapsed;
};

inline Quotient prec_quotient(const std::vector<Arc>& arcs, const ValidPair& vp,
                              const PrecMap& pm) {
  auto full = build_A(vp);
  std::set<Arc> universe(full.begin(), full.end());
  std::set<std::pair<int, int>> edge_set;
  Quotient q;
  for (const Arc& a : arcs) {
    if (!universe.count(a))
      throw std::invalid_argument("prec_quotient: arc outside A(I,Jbar)");
    int p = pm.at(a.second);
    if (p == a.first)
      q.collapsed.push_back(a);
    else
      edge_set.insert({a.first, p});
  }
  std::vector<int> verts(vp.I.begin(), vp.I.end());
  for (int p : pm.image()) verts.push_back(p);
  q.graph = make_base_graph(std::move(verts),
                            {edge_set.begin(), edge_set.end()});
  std::sort(q.collapsed.begin(), q.collapsed.end());
  return q;
}

// Keep exactly the edges whose endpoints admit no directed path of length
// >= 2 in g.
inline ProvGraph minimal_graph(const ProvGraph& g) {
  auto reaches = [&](int from, int to) {
    auto dfs = [&](auto&& self, int at) -> bool {
      if (at == to) return true;
      if (at > to) return false;
      for (const auto& e : g.edges)
        if (e.tail == at && self(self, e.head)) return true;
      return false;
    };
    return dfs(dfs, from);
  };
  ProvGraph out;
  out.vertices = g.vertices;
  out.base_edges = g.base_edges;
  for (const auto& e : g.edges) {
    bool dominated = false;
    for (const auto& f : g.edges) {
      if (f.tail != e.tail || f.head >= e.head) continue;
      if (reaches(f.head, e.head)) {
        dominated = true;
        break;
      }
    }
    if (!dominated) out.edges.push_back(e);
  }
  normalize_graph(out);
  return out;
}

inline bool is_connected_undirected(const ProvGraph& g) {
  if (g.vertices.empty()) return true;
  std::map<int, std::vector<int>> adj;
  for (const auto& e : g.edges) {
    adj[e.tail].push_back(e.head);
    adj[e.head].push_back(e.tail);
  }
  std::set<int> seen{g.vertices.front()};
  std::vector<int> stack{g.vertices.front()};
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (int w : adj[v])
      if (seen.insert(w).second) stack.push_back(w);
  }
  return seen.size() == g.vertices.size();
}

// The minimal graph of the prec quotient of the full arc set.  Always a
// tree on I ∪ prec(J̄) with tails in I and heads in prec(J̄).
inline ProvGraph build_G(const ValidPair& vp) {
  PrecMap pm = prec(vp);
  ProvGraph g = minimal_graph(prec_quotient(build_A(vp), vp, pm).graph);
  if (!is_connected_undirected(g) || !is_acyclic_undirected(g))
    throw std::logic_error("build_G: result is not a tree");
  auto image = pm.image();
  for (const auto& e : g.edges)
    if (!vp.in_I(e.tail) || !image.count(e.head))
      throw std::logic_error("build_G: edge not from I to prec(Jbar)");
  return g;
}

// G plus source edges (s,i) for every i in I and sink edges (j,t) for every
// j in prec(J̄).
inline AugmentedGraph build_Ghat(const ValidPair& vp) {
  PrecMap pm = prec(vp);
  std::set<int> sources(vp.I.begin(), vp.I.end());
  return augment(build_G(vp), std::move(sources), pm.image());
}

inline std::string to_string(const ValidPair& vp) {
  std::ostringstream os;
  os << "I={";
  for (std::size_t i = 0; i < vp.I.size(); ++i)
    os << (i ? "," : "") << vp.I[i];
  os << "} Jbar={";
  for (std::size_t i = 0; i < vp.Jbar.size(); ++i)
    os << (i ? "," : "") << vp.Jbar[i];
  os << "}";
  return os.str();
}

}  // namespace ijt
