#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "ijt/algebra.hpp"
#include "ijt/graph.hpp"
#include "ijt/lattice.hpp"
#include "ijt/pair.hpp"
#include "ijt/report.hpp"

namespace ijt {

// The four ambient spaces: flow space R^m̂ (edges of Ĝ), pair space R^{2n}
// (unbarred and barred unit vectors), edge space R^m (base edges of G), and
// root space R^n.
enum class Ambient { flow, pair_space, edge, root };

inline std::string to_string(Ambient a) {
  switch (a) {
    case Ambient::flow: return "flow";
    case Ambient::pair_space: return "pair";
    case Ambient::edge: return "edge";
    case Ambient::root: return "root";
  }
  return "?";
}

// Sparse coordinate key.  flow/edge space: (tail, head) of an edge, with
// kSource/kSink for boundary edges.  pair space: (value, 0) for e_v and
// (value, 1) for e_v̄.  root space: (value, 0).
struct Coord {
  int a = 0;
  int b = 0;
  friend auto operator<=>(const Coord&, const Coord&) = default;
};

struct LatticeVertex {
  Ambient ambient = Ambient::flow;
  std::map<Coord, int> coords;  // unspecified keys are 0

  void set(Coord c, int v) {
    if (v == 0)
      coords.erase(c);
    else
      coords[c] = v;
  }
  void bump(Coord c, int delta) { set(c, get(c) + delta); }
  int get(Coord c) const {
    auto it = coords.find(c);
    return it == coords.end() ? 0 : it->second;
  }
  friend auto operator<=>(const LatticeVertex& a, const LatticeVertex& b) {
    if (auto c = a.ambient <=> b.ambient; c != 0) return c;
    return a.coords <=> b.coords;
  }
  friend bool operator==(const LatticeVertex&, const LatticeVertex&) = default;
};

// Sorted union of the coordinate keys touched by a vertex set.
inline std::vector<Coord> coordinate_keys(const std::vector<LatticeVertex>& vs) {
  std::set<Coord> keys;
  for (const auto& v : vs)
    for (const auto& [c, val] : v.coords) keys.insert(c);
  return {keys.begin(), keys.end()};
}

inline std::vector<Int> densify(const LatticeVertex& v,
                                const std::vector<Coord>& keys) {
  std::vector<Int> out;
  out.reserve(keys.size());
  for (const Coord& c : keys) out.push_back(v.get(c));
  return out;
}

inline int affine_dim(const std::vector<LatticeVertex>& vs) {
  if (vs.size() <= 1) return 0;
  auto keys = coordinate_keys(vs);
  auto base = densify(vs[0], keys);
  Mat diffs;
  for (std::size_t i = 1; i < vs.size(); ++i) {
    auto row = densify(vs[i], keys);
    for (std::size_t j = 0; j < row.size(); ++j) row[j] -= base[j];
    diffs.push_back(std::move(row));
  }
  return rank_of(diffs);
}

struct VertexSetPolytope {
  std::vector<LatticeVertex> vertices;  // sorted, distinct
  Ambient ambient = Ambient::flow;
  int dim = 0;
};

inline VertexSetPolytope make_polytope(std::vector<LatticeVertex> vs,
                                       Ambient ambient) {
  std::sort(vs.begin(), vs.end());
  vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
  VertexSetPolytope p{std::move(vs), ambient, 0};
  p.dim = affine_dim(p.vertices);
  return p;
}

// Unit-flow indicator of a route, in the flow space of the ambient base
// graph: boundary edges contribute (s,entry) and (exit,t); the inner path
// contributes one coordinate per base edge traversed.
inline LatticeVertex route_vertex(const Route& r, const ProvGraph& base) {
  LatticeVertex v{Ambient::flow, {}};
  v.bump({kSource, r.entry}, 1);
  v.bump({r.exit, kSink}, 1);
  for (int id : r.inner_path) {
    const auto& [a, b] = base.base_edges.at(id);
    v.bump({a, b}, 1);
  }
  return v;
}

inline VertexSetPolytope flow_polytope_vertices(const AugmentedGraph& ag) {
  std::vector<LatticeVertex> vs;
  for (const Route& r : routes(ag)) vs.push_back(route_vertex(r, ag.inner));
  auto p = make_polytope(std::move(vs), Ambient::flow);
  int expected = ag.edge_count() - ag.vertex_count() + 1;
  if (p.dim != expected)
    throw std::logic_error("flow polytope dimension differs from |E|-|V|+1");
  return p;
}

inline VertexSetPolytope U_polytope_vertices(const ValidPair& vp) {
  std::vector<LatticeVertex> vs;
  for (const Arc& a : build_A(vp)) {
    LatticeVertex v{Ambient::pair_space, {}};
    v.bump({a.first, 0}, 1);
    v.bump({a.second, 1}, 1);
    vs.push_back(std::move(v));
  }
  auto p = make_polytope(std::move(vs), Ambient::pair_space);
  int expected = static_cast<int>(vp.I.size() + vp.Jbar.size()) - 2;
  if (p.dim != expected)
    throw std::logic_error("pair polytope dimension differs from |I|+|Jbar|-2");
  return p;
}

// Edge-indicator vectors of directed paths of g that start in I and end in
// prec(Jbar), plus the origin (the empty path).
inline VertexSetPolytope S_polytope_vertices(const ProvGraph& g,
                                             const ValidPair& vp) {
  PrecMap pm = prec(vp);
  auto ends = pm.image();
  std::vector<LatticeVertex> vs;
  vs.push_back({Ambient::edge, {}});  // origin
  for (int i : vp.I) {
    if (!g.has_vertex(i)) continue;
    for (int p : ends) {
      if (!(i < p) || !g.has_vertex(p)) continue;
      for (const auto& path : all_directed_paths(g, i, p)) {
        LatticeVertex v{Ambient::edge, {}};
        for (int idx : path)
          v.bump({g.edges[idx].tail, g.edges[idx].head}, 1);
        vs.push_back(std::move(v));
      }
    }
  }
  return make_polytope(std::move(vs), Ambient::edge);
}

// Origin plus the roots e_i - e_j over the edges of prec(A).
inline VertexSetPolytope P_polytope_vertices(const ValidPair& vp) {
  PrecMap pm = prec(vp);
  Quotient q = prec_quotient(build_A(vp), vp, pm);
  std::vector<LatticeVertex> vs;
  vs.push_back({Ambient::root, {}});
  for (const auto& e : q.graph.edges) {
    LatticeVertex v{Ambient::root, {}};
    v.bump({e.tail, 0}, 1);
    v.bump({e.head, 0}, -1);
    vs.push_back(std::move(v));
  }
  return make_polytope(std::move(vs), Ambient::root);
}

// Route -> vertex of U: (e_entry, e_j̄) where prec(j̄) = exit.
inline LatticeVertex phi1(const Route& r, const ValidPair& vp) {
  PrecMap pm = prec(vp);
  auto it = pm.inverse.find(r.exit);
  if (it == pm.inverse.end())
    throw std::invalid_argument("phi1: route exit outside the image of prec");
  LatticeVertex v{Ambient::pair_space, {}};
  v.bump({r.entry, 0}, 1);
  v.bump({it->second, 1}, 1);
  return v;
}

// Projection R^m̂ -> R^m: drop the boundary-edge coordinates.
inline LatticeVertex pi1(const LatticeVertex& v) {
  if (v.ambient != Ambient::flow)
    throw std::invalid_argument("pi1 expects a flow-space vertex");
  LatticeVertex out{Ambient::edge, {}};
  for (const auto& [c, val] : v.coords)
    if (c.a != kSource && c.b != kSink) out.bump(c, val);
  return out;
}

// (e_i, e_j̄) -> e_i - e_prec(j̄), extended linearly; barred values outside
// Jbar fall through to e_i - e_j.
inline LatticeVertex pi2(const LatticeVertex& v, const ValidPair& vp) {
  if (v.ambient != Ambient::pair_space)
    throw std::invalid_argument("pi2 expects a pair-space vertex");
  PrecMap pm = prec(vp);
  LatticeVertex out{Ambient::root, {}};
  for (const auto& [c, val] : v.coords) {
    if (c.b == 0) {
      out.bump({c.a, 0}, val);
    } else {
      int target = vp.in_Jbar(c.a) ? pm.at(c.a) : c.a;
      out.bump({target, 0}, -val);
    }
  }
  return out;
}

// e_(i,j) -> e_i - e_j, extended linearly.
inline LatticeVertex phi2(const LatticeVertex& v) {
  if (v.ambient != Ambient::edge)
    throw std::invalid_argument("phi2 expects an edge-space vertex");
  LatticeVertex out{Ambient::root, {}};
  for (const auto& [c, val] : v.coords) {
    out.bump({c.a, 0}, val);
    out.bump({c.b, 0}, -val);
  }
  return out;
}

// The five commuting-diagram assertions.
inline Report verify_theorem_3_1(const ValidPair& vp) {
  Report rep;
  rep.subject = "commuting-diagram " + to_string(vp);
  ProvGraph g = build_G(vp);
  AugmentedGraph ghat = build_Ghat(vp);
  auto rts = routes(ghat);
  VertexSetPolytope F = flow_polytope_vertices(ghat);
  VertexSetPolytope U = U_polytope_vertices(vp);
  VertexSetPolytope S = S_polytope_vertices(g, vp);
  VertexSetPolytope P = P_polytope_vertices(vp);

  // (a) phi1 bijects routes onto the vertices of U.
  std::set<LatticeVertex> images;
  for (const Route& r : rts) images.insert(phi1(r, vp));
  std::set<LatticeVertex> u_verts(U.vertices.begin(), U.vertices.end());
  rep.add("phi1-bijection",
          images.size() == rts.size() && images == u_verts,
          images.size() != rts.size() ? "phi1 not injective on routes"
                                      : "image differs from vertex set of U");

  // (b) dim F = dim U = |I|+|Jbar|-2.
  int expected = static_cast<int>(vp.I.size() + vp.Jbar.size()) - 2;
  rep.add("upper-dims", F.dim == expected && U.dim == expected);

  // (c) pi2(phi1(r)) = phi2(pi1(r)) on every vertex of F.
  bool commutes = true;
  for (const Route& r : rts) {
    if (pi2(phi1(r, vp), vp) != phi2(pi1(route_vertex(r, g)))) {
      commutes = false;
      break;
    }
  }
  rep.add("square-commutes", commutes);

  // (d) phi2 bijects the vertices of S onto the vertices of P.
  std::set<LatticeVertex> s_images;
  for (const LatticeVertex& v : S.vertices) s_images.insert(phi2(v));
  std::set<LatticeVertex> p_verts(P.vertices.begin(), P.vertices.end());
  rep.add("phi2-bijection",
          s_images.size() == S.vertices.size() && s_images == p_verts);

  // (e) dim S = dim P = |E(G)|.
  int m = static_cast<int>(g.edges.size());
  rep.add("lower-dims", S.dim == m && P.dim == m);
  return rep;
}

// ---------------------------------------------------------------------------
// Integer-flow oracle.

namespace detail {

struct FlowNetwork {
  struct Edge {
    int tail_pos = 0;
    int head_pos = 0;
    std::vector<Coord> expansion;  // ambient flow-space coordinates
  };
  std::vector<int> labels;                // position -> vertex label
  std::vector<std::vector<int>> out;      // position -> edge indices
  std::vector<Edge> edges;
  int sink_pos = 0;
};

inline FlowNetwork make_network(const AugmentedGraph& ag) {
  FlowNetwork net;
  net.labels.push_back(kSource);
  for (int v : ag.inner.vertices) net.labels.push_back(v);
  net.labels.push_back(kSink);
  net.sink_pos = static_cast<int>(net.labels.size()) - 1;
  net.out.resize(net.labels.size());
  auto pos_of = [&](int label) {
    for (int p = 0; p < static_cast<int>(net.labels.size()); ++p)
      if (net.labels[p] == label) return p;
    throw std::logic_error("label not in network");
  };
  auto add = [&](int tail, int head, std::vector<Coord> exp) {
    int idx = static_cast<int>(net.edges.size());
    net.edges.push_back({tail, head, std::move(exp)});
    net.out[tail].push_back(idx);
  };
  for (int v : ag.source_edges)
    add(0, pos_of(v), {Coord{kSource, v}});
  for (const auto& e : ag.inner.edges) {
    std::vector<Coord> exp;
    for (int id : e.provenance) {
      const auto& [a, b] = ag.inner.base_edges.at(id);
      exp.push_back({a, b});
    }
    add(pos_of(e.tail), pos_of(e.head), std::move(exp));
  }
  for (int v : ag.sink_edges)
    add(pos_of(v), net.sink_pos, {Coord{v, kSink}});
  return net;
}

}  // namespace detail

inline constexpr long long kDefaultFlowWorkLimit = 400'000'000;

// Number of nonnegative integer flows with net flow t out of s (equivalently
// |t·F ∩ Z^m̂|), by dynamic programming over the vertex order.
inline Int count_integer_flows(const AugmentedGraph& ag, int t,
                               long long work_limit = kDefaultFlowWorkLimit) {
  if (t < 0) throw std::invalid_argument("dilation must be nonnegative");
  detail::FlowNetwork net = detail::make_network(ag);
  int P = static_cast<int>(net.labels.size());
  std::map<std::vector<int>, Int> states;
  std::vector<int> init(P, 0);
  init[0] = t;
  states[std::move(init)] = 1;
  long long work = 0;
  for (int p = 0; p < P; ++p) {
    if (p == net.sink_pos) continue;
    std::map<std::vector<int>, Int> next;
    const auto& out = net.out[p];
    for (const auto& [state, cnt] : states) {
      int amount = state[p];
      if (amount > 0 && out.empty()) continue;  // stranded flow
      std::vector<int> base = state;
      base[p] = 0;
      // Distribute `amount` over the outgoing edges.
      std::function<void(std::size_t, int)> go = [&](std::size_t k, int rest) {
        if (++work > work_limit)
          throw std::runtime_error("flow counting work limit exceeded");
        if (k + 1 == out.size() || out.empty()) {
          if (out.empty()) {
            next[base] += cnt;
            return;
          }
          base[net.edges[out[k]].head_pos] += rest;
          next[base] += cnt;
          base[net.edges[out[k]].head_pos] -= rest;
          return;
        }
        for (int f = 0; f <= rest; ++f) {
          base[net.edges[out[k]].head_pos] += f;
          go(k + 1, rest - f);
          base[net.edges[out[k]].head_pos] -= f;
        }
      };
      if (out.empty())
        next[base] += cnt;
      else
        go(0, amount);
    }
    states = std::move(next);
  }
  Int total = 0;
  for (const auto& [state, cnt] : states)
    if (state[net.sink_pos] == t) total += cnt;
  return total;
}

// All integer t-flows, reported as ambient flow-space lattice points (edge
// flows pushed through each edge's provenance expansion), deduplicated.
inline std::set<LatticeVertex> integer_flow_points(
    const AugmentedGraph& ag, int t,
    long long work_limit = kDefaultFlowWorkLimit) {
  if (t < 0) throw std::invalid_argument("dilation must be nonnegative");
  detail::FlowNetwork net = detail::make_network(ag);
  int P = static_cast<int>(net.labels.size());
  std::vector<int> pending(P, 0);
  pending[0] = t;
  std::vector<int> flow(net.edges.size(), 0);
  std::set<LatticeVertex> out;
  long long work = 0;
  std::function<void(int)> vertex_step = [&](int p) {
    if (p == net.sink_pos) {
      LatticeVertex v{Ambient::flow, {}};
      for (std::size_t e = 0; e < flow.size(); ++e)
        for (const Coord& c : net.edges[e].expansion) v.bump(c, flow[e]);
      out.insert(std::move(v));
      return;
    }
    int amount = pending[p];
    const auto& edges = net.out[p];
    if (edges.empty()) {
      if (amount == 0) vertex_step(p + 1);
      return;
    }
    std::function<void(std::size_t, int)> go = [&](std::size_t k, int rest) {
      if (++work > work_limit)
        throw std::runtime_error("flow enumeration work limit exceeded");
      int e = edges[k];
      if (k + 1 == edges.size()) {
        flow[e] = rest;
        pending[net.edges[e].head_pos] += rest;
        vertex_step(p + 1);
        pending[net.edges[e].head_pos] -= rest;
        flow[e] = 0;
        return;
      }
      for (int f = 0; f <= rest; ++f) {
        flow[e] = f;
        pending[net.edges[e].head_pos] += f;
        go(k + 1, rest - f);
        pending[net.edges[e].head_pos] -= f;
        flow[e] = 0;
      }
    };
    go(0, amount);
  };
  vertex_step(0);
  return out;
}

// Leading Ehrhart coefficient times d!: exact finite differences of the
// lattice-point counts at t = 0..d.
inline Int normalized_volume(const AugmentedGraph& ag,
                             long long work_limit = kDefaultFlowWorkLimit) {
  std::vector<LatticeVertex> vs;
  for (const Route& r : routes(ag)) vs.push_back(route_vertex(r, ag.inner));
  std::sort(vs.begin(), vs.end());
  vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
  int d = affine_dim(vs);
  Int vol = 0;
  for (int k = 0; k <= d; ++k) {
    Int term = binomial(d, k) * count_integer_flows(ag, k, work_limit);
    if ((d - k) % 2 == 0)
      vol += term;
    else
      vol -= term;
  }
  return vol;
}

// ---------------------------------------------------------------------------
// Simplices and unimodularity.

struct Simplex {
  std::vector<LatticeVertex> vertices;  // sorted, distinct
  friend auto operator<=>(const Simplex&, const Simplex&) = default;
};

// Saturated basis of the difference lattice of a vertex set, with the key
// order used for densification.
struct AffineLattice {
  std::vector<Coord> keys;
  Mat basis;
};

inline AffineLattice affine_lattice(const std::vector<LatticeVertex>& vs) {
  AffineLattice lat;
  lat.keys = coordinate_keys(vs);
  if (vs.size() <= 1) return lat;
  auto base = densify(vs[0], lat.keys);
  Mat diffs;
  for (std::size_t i = 1; i < vs.size(); ++i) {
    auto row = densify(vs[i], lat.keys);
    for (std::size_t j = 0; j < row.size(); ++j) row[j] -= base[j];
    diffs.push_back(std::move(row));
  }
  lat.basis = saturated_basis(diffs, static_cast<int>(lat.keys.size()));
  return lat;
}

// |det| of the simplex's edge vectors expressed in the saturated lattice
// basis equals 1.
inline bool is_unimodular(const Simplex& sx, const AffineLattice& lat) {
  int d = static_cast<int>(sx.vertices.size()) - 1;
  if (d <= 0) return true;
  if (static_cast<int>(lat.basis.size()) != d) return false;
  auto base = densify(sx.vertices[0], lat.keys);
  Mat m;
  for (int i = 1; i <= d; ++i) {
    auto row = densify(sx.vertices[i], lat.keys);
    for (std::size_t j = 0; j < row.size(); ++j) row[j] -= base[j];
    auto coords = in_lattice_coords(lat.basis, row);
    if (!coords) return false;  // vertex outside the affine lattice
    m.push_back(std::move(*coords));
  }
  return int_abs(det_of(std::move(m))) == 1;
}

// One simplex per full-dimensional leaf: the route readings of its edges
// plus the trivial cone routes (s,v,t), v in I ∩ prec(Jbar); realized in
// flow space or, via phi1, in pair space.
inline std::vector<Simplex> facet_simplices(const ReductionTree& tree,
                                            Ambient target,
                                            const ValidPair& vp) {
  if (target != Ambient::flow && target != Ambient::pair_space)
    throw std::invalid_argument("facet_simplices: target must be flow or pair space");
  AugmentedGraph ghat = build_Ghat(vp);
  PrecMap pm = prec(vp);
  std::vector<Route> cone;
  for (int v : vp.I)
    if (pm.inverse.count(v)) cone.push_back({v, v, {}});
  int dim = static_cast<int>(vp.I.size() + vp.Jbar.size()) - 2;
  std::vector<Simplex> out;
  for (int leaf : tree.full_dimensional_leaves()) {
    std::vector<Route> rts = cone;
    for (const ProvEdge& e : tree.nodes[leaf].graph.edges)
      rts.push_back(mu(e, ghat));
    Simplex sx;
    for (const Route& r : rts)
      sx.vertices.push_back(target == Ambient::flow ? route_vertex(r, ghat.inner)
                                                    : phi1(r, vp));
    std::sort(sx.vertices.begin(), sx.vertices.end());
    sx.vertices.erase(std::unique(sx.vertices.begin(), sx.vertices.end()),
                      sx.vertices.end());
    if (static_cast<int>(sx.vertices.size()) != dim + 1)
      throw std::logic_error("facet leaf does not span dim+1 distinct vertices");
    if (affine_dim(sx.vertices) != dim)
      throw std::logic_error("facet leaf vertices are affinely dependent");
    out.push_back(std::move(sx));
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Subdivision step check: both full children span the parent's polytope
// dimension, the third drops by one, and lattice points satisfy exact
// inclusion-exclusion in every dilation up to dim+1.
inline Report verify_reduction_lemma(const ProvGraph& parent,
                                     const PairChoice& pair,
                                     const ValidPair& vp,
                                     long long work_limit = kDefaultFlowWorkLimit) {
  if (!non_alternating_pairs(parent).count(pair))
    throw std::invalid_argument("pair is not a non-alternating pair of the parent");
  auto children = reduce_graph(parent, pair.first, pair.second);
  PrecMap pm = prec(vp);
  std::set<int> sources(vp.I.begin(), vp.I.end());
  std::set<int> sinks = pm.image();
  auto hat = [&](const ProvGraph& g) { return augment(g, sources, sinks); };
  auto dim_of = [&](const AugmentedGraph& ag) {
    std::vector<LatticeVertex> vs;
    for (const Route& r : routes(ag)) vs.push_back(route_vertex(r, ag.inner));
    std::sort(vs.begin(), vs.end());
    vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
    return affine_dim(vs);
  };
  AugmentedGraph agp = hat(parent);
  AugmentedGraph ag1 = hat(children[0]);
  AugmentedGraph ag2 = hat(children[1]);
  AugmentedGraph ag3 = hat(children[2]);
  int dim = dim_of(agp);
  Report rep;
  rep.subject = "subdivision-step " + to_string(vp);
  rep.add("dim-child-1", dim_of(ag1) == dim);
  rep.add("dim-child-2", dim_of(ag2) == dim);
  rep.add("dim-child-3", dim_of(ag3) == dim - 1);
  for (int t = 1; t <= dim + 1; ++t) {
    auto L = integer_flow_points(agp, t, work_limit);
    auto L1 = integer_flow_points(ag1, t, work_limit);
    auto L2 = integer_flow_points(ag2, t, work_limit);
    auto L3 = integer_flow_points(ag3, t, work_limit);
    std::set<LatticeVertex> uni = L1;
    uni.insert(L2.begin(), L2.end());
    std::set<LatticeVertex> inter;
    std::set_intersection(L1.begin(), L1.end(), L2.begin(), L2.end(),
                          std::inserter(inter, inter.begin()));
    std::string at = " at t=" + std::to_string(t);
    rep.add("cover" + std::to_string(t), L == uni,
            L == uni ? "" : "union of child lattice points differs" + at);
    rep.add("intersection" + std::to_string(t), inter == L3,
            inter == L3 ? "" : "child intersection differs from third child" + at);
    rep.add("cardinality" + std::to_string(t),
            L.size() + L3.size() == L1.size() + L2.size(),
            "inclusion-exclusion" + at);
  }
  return rep;
}

}  // namespace ijt
