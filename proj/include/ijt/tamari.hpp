#pragma once

#include <algorithm>
#include <array>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "ijt/algebra.hpp"
#include "ijt/graph.hpp"
#include "ijt/lattice.hpp"
#include "ijt/pair.hpp"
#include "ijt/report.hpp"

namespace ijt {

// Arc subsets of A(I,J̄).  A forest is non-crossing; a tree is a maximal
// forest, which always has |I|+|Jbar|-1 arcs.
using IJForest = std::set<Arc>;
using IJTree = IJForest;

namespace detail {
// Arcs (i,j̄) and (i',j̄') cross iff i ≺ i' ≺ j̄ ≺ j̄', i.e. i<i', i'≤j, j<j'.
inline bool arcs_cross(const Arc& a, const Arc& b) {
  auto test = [](const Arc& x, const Arc& y) {
    return x.first < y.first && y.first <= x.second && x.second < y.second;
  };
  return test(a, b) || test(b, a);
}
}  // namespace detail

inline bool is_noncrossing(const IJForest& f, const ValidPair& vp) {
  auto full = build_A(vp);
  std::set<Arc> universe(full.begin(), full.end());
  for (const Arc& a : f)
    if (!universe.count(a))
      throw std::invalid_argument("arc outside A(I,Jbar)");
  for (auto it = f.begin(); it != f.end(); ++it)
    for (auto jt = std::next(it); jt != f.end(); ++jt)
      if (detail::arcs_cross(*it, *jt)) return false;
  return true;
}

// All maximal non-crossing arc sets, by depth-first search over arcs in
// order.  Every size-(|I|+|Jbar|-1) non-crossing set is maximal and vice
// versa, so the search targets that size directly.
inline std::vector<IJTree> enumerate_IJ_trees(const ValidPair& vp) {
  auto arcs = build_A(vp);
  int target = static_cast<int>(vp.I.size() + vp.Jbar.size()) - 1;
  std::vector<IJTree> out;
  std::vector<Arc> chosen;
  auto dfs = [&](auto&& self, std::size_t next) -> void {
    if (static_cast<int>(chosen.size()) == target) {
      out.emplace_back(chosen.begin(), chosen.end());
      return;
    }
    if (chosen.size() + (arcs.size() - next) < static_cast<std::size_t>(target))
      return;
    for (std::size_t k = next; k < arcs.size(); ++k) {
      bool ok = true;
      for (const Arc& c : chosen)
        if (detail::arcs_cross(c, arcs[k])) {
          ok = false;
          break;
        }
      if (!ok) continue;
      chosen.push_back(arcs[k]);
      self(self, k + 1);
      chosen.pop_back();
    }
  };
  dfs(dfs, 0);
  if (out.empty()) throw std::logic_error("no (I,Jbar)-tree found");
  return out;
}

namespace detail {
// Non-crossing in the graph sense: edges (i,j),(i',j') with i<i'<j<j'.
inline bool graph_noncrossing(const ProvGraph& g) {
  auto es = g.endpoint_pairs();
  for (std::size_t a = 0; a < es.size(); ++a)
    for (std::size_t b = a + 1; b < es.size(); ++b) {
      auto [i, j] = es[a];
      auto [k, l] = es[b];
      if ((i < k && k < j && j < l) || (k < i && i < l && l < j)) return true;
    }
  return false;
}
}  // namespace detail

// Quotient of a tree's arcs under prec; loops drop out.  The result is an
// alternating non-crossing spanning tree of I ∪ prec(Jbar).
inline ProvGraph prec_tree(const IJTree& t, const ValidPair& vp) {
  if (!is_noncrossing(t, vp))
    throw std::invalid_argument("prec_tree: input arcs cross");
  int target = static_cast<int>(vp.I.size() + vp.Jbar.size()) - 1;
  if (static_cast<int>(t.size()) != target)
    throw std::invalid_argument("prec_tree: input is not maximal");
  PrecMap pm = prec(vp);
  std::vector<Arc> arcs(t.begin(), t.end());
  ProvGraph g = prec_quotient(arcs, vp, pm).graph;
  if (!is_alternating(g) || detail::graph_noncrossing(g) ||
      !is_connected_undirected(g) || !is_acyclic_undirected(g))
    throw std::logic_error("prec_tree: quotient is not an alternating non-crossing tree");
  return g;
}

// Inverse of prec_tree on maximal alternating non-crossing graphs: lift each
// edge head through prec and re-attach one loop arc per cone point.
inline IJTree prec_tree_inverse(const ProvGraph& d, const ValidPair& vp) {
  PrecMap pm = prec(vp);
  auto image = pm.image();
  std::set<int> expect_verts(vp.I.begin(), vp.I.end());
  expect_verts.insert(image.begin(), image.end());
  std::set<int> have_verts(d.vertices.begin(), d.vertices.end());
  if (have_verts != expect_verts)
    throw std::invalid_argument("input is not a graph on I ∪ prec(Jbar)");
  if (!is_alternating(d))
    throw std::invalid_argument("input is not alternating");
  if (detail::graph_noncrossing(d))
    throw std::invalid_argument("input is not non-crossing");
  if (d.edges.size() + 1 != d.vertices.size() || !is_connected_undirected(d) ||
      !is_acyclic_undirected(d))
    throw std::invalid_argument("input is not maximal (not a spanning tree)");
  IJTree t;
  for (const auto& e : d.edges) {
    if (!vp.in_I(e.tail) || !pm.inverse.count(e.head))
      throw std::invalid_argument("edge does not run from I to prec(Jbar)");
    t.insert({e.tail, pm.inverse.at(e.head)});
  }
  for (int v : vp.I)
    if (pm.inverse.count(v)) t.insert({v, pm.inverse.at(v)});
  if (static_cast<int>(t.size()) !=
          static_cast<int>(vp.I.size() + vp.Jbar.size()) - 1 ||
      !is_noncrossing(t, vp))
    throw std::invalid_argument("input has no non-crossing preimage");
  return t;
}

// Arc translation of one reduction-tree node: its edges lifted through
// prec⁻¹ plus the cone-point loop arcs.
inline IJForest node_forest(const ProvGraph& g, const ValidPair& vp,
                            const PrecMap& pm) {
  IJForest f;
  for (const auto& e : g.edges) {
    auto it = pm.inverse.find(e.head);
    if (it == pm.inverse.end())
      throw std::logic_error("node edge head outside prec(Jbar)");
    f.insert({e.tail, it->second});
  }
  for (int v : vp.I)
    if (pm.inverse.count(v)) f.insert({v, pm.inverse.at(v)});
  return f;
}

// Faces of the complex realized by the reduction tree: every leaf (all
// dimensions) translates to a covering (I,Jbar)-forest.
inline std::set<IJForest> complex_faces(const ReductionTree& tree,
                                        const ValidPair& vp) {
  PrecMap pm = prec(vp);
  std::set<IJForest> out;
  Arc covering_arc{vp.I.front(), vp.Jbar.back()};
  for (int leaf : tree.leaves()) {
    IJForest f = node_forest(tree.nodes[leaf].graph, vp, pm);
    if (!is_noncrossing(f, vp))
      throw std::logic_error("leaf translates to a crossing forest");
    if (!f.count(covering_arc))
      throw std::logic_error("leaf forest misses the arc (min I, max Jbar)");
    std::set<int> touched_I, touched_J;
    for (const Arc& a : f) {
      touched_I.insert(a.first);
      touched_J.insert(a.second);
    }
    if (touched_I.size() != vp.I.size() || touched_J.size() != vp.Jbar.size())
      throw std::logic_error("leaf forest has an isolated element");
    out.insert(std::move(f));
  }
  return out;
}

// Facets adjacent iff their arc sets differ in exactly one arc.
inline std::vector<std::vector<int>> dual_graph(const std::vector<IJTree>& facets) {
  std::vector<std::vector<int>> adj(facets.size());
  for (std::size_t a = 0; a < facets.size(); ++a)
    for (std::size_t b = a + 1; b < facets.size(); ++b) {
      std::vector<Arc> sym;
      std::set_symmetric_difference(facets[a].begin(), facets[a].end(),
                                    facets[b].begin(), facets[b].end(),
                                    std::back_inserter(sym));
      if (sym.size() == 2) {
        adj[a].push_back(static_cast<int>(b));
        adj[b].push_back(static_cast<int>(a));
      }
    }
  return adj;
}

// Read I ⊔ J̄ in ≺ order as E/N letters and strip the forced initial E and
// terminal N.
inline std::string nu_from_pair(const ValidPair& vp) {
  std::string word;
  for (const OrderedElement& e : vp.ground()) word += e.barred ? 'N' : 'E';
  return word.substr(1, word.size() - 2);
}

namespace detail {
// h[x] = number of N steps of ν before its x-th E; a path weakly above ν
// takes its x-th E (or the D ending at abscissa x) at height >= h[x].
struct NuProfile {
  int a = 0;  // number of E steps
  int b = 0;  // number of N steps
  std::vector<int> h;
};

inline NuProfile nu_profile(const std::string& nu) {
  NuProfile p;
  p.h.push_back(0);
  int ns = 0;
  for (char c : nu) {
    if (c == 'E') {
      ++p.a;
      p.h.push_back(ns);
    } else if (c == 'N') {
      ++ns;
    } else {
      throw std::invalid_argument("nu must be a word over {E,N}");
    }
  }
  p.b = ns;
  return p;
}
}  // namespace detail

inline Int nu_catalan(const std::string& nu) {
  auto p = detail::nu_profile(nu);
  // dp[y] = paths reaching (x, y).
  std::vector<Int> dp(p.b + 1, 0);
  dp[0] = 1;
  for (int x = 1; x <= p.a; ++x) {
    std::vector<Int> next(p.b + 1, 0);
    // N steps first inside column x-1 are implicit: prefix sums.
    Int run = 0;
    for (int y = 0; y <= p.b; ++y) {
      run += dp[y];
      if (y >= p.h[x]) next[y] = run;
    }
    dp = std::move(next);
  }
  Int total = 0;
  for (int y = 0; y <= p.b; ++y) total += dp[y];
  return total;
}

// Counts of ν-Dyck paths by number of valleys (EN factors of the path word).
inline std::vector<Int> nu_narayana(const std::string& nu) {
  auto p = detail::nu_profile(nu);
  int vmax = std::min(p.a, p.b) + 1;
  // cur[y][last][v]: paths currently at (x,y); last = 1 iff the previous
  // step was an E (the start counts as non-E, so leading Ns form no valley).
  auto blank = std::vector<std::array<std::vector<Int>, 2>>(
      p.b + 1, {std::vector<Int>(vmax, 0), std::vector<Int>(vmax, 0)});
  auto cur = blank;
  cur[0][0][0] = 1;
  for (int x = 0; x <= p.a; ++x) {
    // N steps within column x; an N right after an E closes a valley.
    for (int y = 0; y < p.b; ++y)
      for (int last = 0; last < 2; ++last)
        for (int v = 0; v < vmax; ++v) {
          if (cur[y][last][v] == 0) continue;
          int v2 = v + (last == 1 ? 1 : 0);
          if (v2 < vmax) cur[y + 1][0][v2] += cur[y][last][v];
        }
    if (x == p.a) break;
    // E step into column x+1, allowed at height >= h[x+1].
    auto next = blank;
    for (int y = p.h[x + 1]; y <= p.b; ++y)
      for (int last = 0; last < 2; ++last)
        for (int v = 0; v < vmax; ++v)
          next[y][1][v] += cur[y][last][v];
    cur = std::move(next);
  }
  std::vector<Int> out(vmax, 0);
  for (int last = 0; last < 2; ++last)
    for (int v = 0; v < vmax; ++v) out[v] += cur[p.b][last][v];
  while (out.size() > 1 && out.back() == 0) out.pop_back();
  return out;
}

// Counts of ν-Schröder paths (steps E, N, D) by number of D steps.
inline std::vector<Int> nu_schroeder(const std::string& nu) {
  auto p = detail::nu_profile(nu);
  int dmax = std::min(p.a, p.b) + 1;
  // dp[y][d]: paths at (x,y) with d diagonal steps.
  auto col = std::vector<std::vector<Int>>(p.b + 1, std::vector<Int>(dmax, 0));
  col[0][0] = 1;
  for (int x = 0; x <= p.a; ++x) {
    // N closure within column x.
    for (int y = 1; y <= p.b; ++y)
      for (int d = 0; d < dmax; ++d) col[y][d] += col[y - 1][d];
    if (x == p.a) break;
    auto next = std::vector<std::vector<Int>>(p.b + 1,
                                              std::vector<Int>(dmax, 0));
    for (int y = 0; y <= p.b; ++y)
      for (int d = 0; d < dmax; ++d) {
        if (col[y][d] == 0) continue;
        if (y >= p.h[x + 1]) next[y][d] += col[y][d];          // E
        if (y + 1 <= p.b && y >= p.h[x + 1] && d + 1 < dmax)
          next[y + 1][d + 1] += col[y][d];                     // D
      }
    col = std::move(next);
  }
  std::vector<Int> out(dmax, 0);
  for (int d = 0; d < dmax; ++d) out[d] = col[p.b][d];
  while (out.size() > 1 && out.back() == 0) out.pop_back();
  return out;
}

// Reduced form evaluated at x=1 matches the ν-Schröder vector; shifting
// β -> β-1 matches the ν-Narayana vector.
inline Report verify_corollary_4_9(const ValidPair& vp) {
  Report rep;
  rep.subject = "h-polynomial " + to_string(vp);
  BetaPolynomial p = reduced_form(build_G(vp), ReductionOrder::length());
  std::vector<Int> e = evaluate_at_one(p);
  std::string nu = nu_from_pair(vp);
  std::vector<Int> sch = nu_schroeder(nu);
  std::vector<Int> nar = nu_narayana(nu);
  auto eq = [](std::vector<Int> a, std::vector<Int> b) {
    while (a.size() > 1 && a.back() == 0) a.pop_back();
    while (b.size() > 1 && b.back() == 0) b.pop_back();
    return a == b;
  };
  rep.add("schroeder-match", eq(e, sch));
  rep.add("narayana-match", eq(shift_beta(e, -1), nar));
  Int cat = nu_catalan(nu), nar_sum = 0;
  for (const Int& v : nar) nar_sum += v;
  rep.add("narayana-sum", nar_sum == cat);
  return rep;
}

}  // namespace ijt
