#pragma once

#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "ijt/algebra.hpp"
#include "ijt/geometry.hpp"
#include "ijt/graph.hpp"
#include "ijt/pair.hpp"
#include "ijt/report.hpp"
#include "ijt/tamari.hpp"

namespace ijt {

// Every valid pair with values in [max_n], in deterministic order (subset
// bitmasks ascending, I outer).
inline std::vector<ValidPair> enumerate_valid_pairs(int max_n) {
  std::vector<ValidPair> out;
  for (unsigned mi = 1; mi < (1u << max_n); ++mi) {
    std::vector<int> I;
    for (int v = 1; v <= max_n; ++v)
      if (mi & (1u << (v - 1))) I.push_back(v);
    for (unsigned mj = 1; mj < (1u << max_n); ++mj) {
      std::vector<int> J;
      for (int v = 1; v <= max_n; ++v)
        if (mj & (1u << (v - 1))) J.push_back(v);
      if (I.front() <= J.front() && J.back() >= I.back())
        out.push_back(validate_pair(I, J));
    }
  }
  return out;
}

// Seeded rejection sampling over subset pairs of [max_n]; deterministic for
// a given (count, max_n, seed).
inline std::vector<ValidPair> random_valid_pairs(int count, int max_n,
                                                 std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<unsigned> dist(1, (1u << max_n) - 1);
  std::vector<ValidPair> out;
  while (static_cast<int>(out.size()) < count) {
    unsigned mi = dist(rng), mj = dist(rng);
    std::vector<int> I, J;
    for (int v = 1; v <= max_n; ++v) {
      if (mi & (1u << (v - 1))) I.push_back(v);
      if (mj & (1u << (v - 1))) J.push_back(v);
    }
    if (I.front() <= J.front() && J.back() >= I.back())
      out.push_back(validate_pair(I, J));
  }
  return out;
}

struct SweepOptions {
  bool check_diagram = true;        // commuting-diagram assertions
  bool check_triangulation = true;  // facet/volume/tree identities
  bool check_h_polynomial = true;   // Schröder/Narayana identities
  bool check_roundtrip = true;      // tree <-> quotient round trips
  bool check_volume_oracle = true;  // Ehrhart normalized volume (slowest)
  long long work_limit = kDefaultFlowWorkLimit;
};

// Triangulation identities for one pair: leaf/volume/path/tree counts agree,
// facets are unimodular simplices carrying the cone points, faces are
// covering forests, and facets coincide with the enumerated trees.
inline Report verify_triangulation(const ValidPair& vp,
                                   const SweepOptions& opt = {}) {
  Report rep;
  rep.subject = "triangulation " + to_string(vp);
  ProvGraph g = build_G(vp);
  AugmentedGraph ghat = build_Ghat(vp);
  PrecMap pm = prec(vp);
  ReductionTree tree = build_reduction_tree(g, ReductionOrder::length());
  auto full = tree.full_dimensional_leaves();
  Int leaf_count = full.size();

  std::string nu = nu_from_pair(vp);
  rep.add("leaves-vs-catalan", leaf_count == nu_catalan(nu));
  auto trees = enumerate_IJ_trees(vp);
  rep.add("leaves-vs-trees", leaf_count == Int(trees.size()));
  if (opt.check_volume_oracle)
    rep.add("leaves-vs-volume",
            leaf_count == normalized_volume(ghat, opt.work_limit));

  // Facet simplices: dim+1 vertices, unimodular, cone points present.
  int dim = static_cast<int>(vp.I.size() + vp.Jbar.size()) - 2;
  VertexSetPolytope F = flow_polytope_vertices(ghat);
  VertexSetPolytope U = U_polytope_vertices(vp);
  AffineLattice flow_lat = affine_lattice(F.vertices);
  AffineLattice pair_lat = affine_lattice(U.vertices);
  std::vector<LatticeVertex> cone_flow, cone_pair;
  for (int v : vp.I)
    if (pm.inverse.count(v)) {
      Route r{v, v, {}};
      cone_flow.push_back(route_vertex(r, g));
      cone_pair.push_back(phi1(r, vp));
    }
  bool sizes_ok = true, unimodular_ok = true, cone_ok = true;
  auto facets_flow = facet_simplices(tree, Ambient::flow, vp);
  auto facets_pair = facet_simplices(tree, Ambient::pair_space, vp);
  for (const Simplex& sx : facets_flow) {
    if (static_cast<int>(sx.vertices.size()) != dim + 1) sizes_ok = false;
    if (!is_unimodular(sx, flow_lat)) unimodular_ok = false;
    for (const LatticeVertex& c : cone_flow)
      if (!std::binary_search(sx.vertices.begin(), sx.vertices.end(), c))
        cone_ok = false;
  }
  for (const Simplex& sx : facets_pair) {
    if (static_cast<int>(sx.vertices.size()) != dim + 1) sizes_ok = false;
    if (!is_unimodular(sx, pair_lat)) unimodular_ok = false;
    for (const LatticeVertex& c : cone_pair)
      if (!std::binary_search(sx.vertices.begin(), sx.vertices.end(), c))
        cone_ok = false;
  }
  rep.add("facet-sizes", sizes_ok);
  rep.add("facet-unimodular", unimodular_ok);
  rep.add("facet-cone-points", cone_ok);
  rep.add("facet-count", Int(facets_flow.size()) == leaf_count &&
                             Int(facets_pair.size()) == leaf_count);

  // Full-dimensional leaves are exactly the quotients of the (I,Jbar)-trees.
  std::set<std::vector<std::pair<int, int>>> leaf_edge_sets, tree_edge_sets;
  for (int l : full)
    leaf_edge_sets.insert(tree.nodes[l].graph.endpoint_pairs());
  for (const IJTree& t : trees)
    tree_edge_sets.insert(prec_tree(t, vp).endpoint_pairs());
  rep.add("leaves-are-tree-quotients", leaf_edge_sets == tree_edge_sets);

  // Facet vertex sets in pair space match the phi1 translation of trees.
  std::set<std::vector<LatticeVertex>> facet_sets, tree_sets;
  for (const Simplex& sx : facets_pair) facet_sets.insert(sx.vertices);
  for (const IJTree& t : trees) {
    std::vector<LatticeVertex> vs;
    for (const Arc& a : t) {
      LatticeVertex v{Ambient::pair_space, {}};
      v.bump({a.first, 0}, 1);
      v.bump({a.second, 1}, 1);
      vs.push_back(std::move(v));
    }
    std::sort(vs.begin(), vs.end());
    tree_sets.insert(std::move(vs));
  }
  rep.add("facets-are-trees", facet_sets == tree_sets);

  // Every face of the complex is a covering forest (throws on violation).
  bool faces_ok = true;
  std::string faces_detail;
  try {
    complex_faces(tree, vp);  // throws on a crossing or non-covering face
  } catch (const std::exception& e) {
    faces_ok = false;
    faces_detail = e.what();
  }
  rep.add("faces-covering", faces_ok, faces_detail);
  return rep;
}

// Round trips of the quotient bijection over every tree of the pair.
inline Report verify_tree_bijection(const ValidPair& vp) {
  Report rep;
  rep.subject = "tree-bijection " + to_string(vp);
  auto trees = enumerate_IJ_trees(vp);
  bool forward = true, backward = true;
  for (const IJTree& t : trees) {
    ProvGraph d = prec_tree(t, vp);
    if (prec_tree_inverse(d, vp) != t) forward = false;
  }
  // The other direction over D(I,Jbar) = full-dimensional leaves.
  ReductionTree tree = build_reduction_tree(build_G(vp), ReductionOrder::length());
  for (int l : tree.full_dimensional_leaves()) {
    // Rebuild the leaf as a plain graph (provenance-free) on the tree's
    // vertex set; membership in D depends on endpoints only.
    const ProvGraph& leaf = tree.nodes[l].graph;
    ProvGraph d = make_base_graph(leaf.vertices, leaf.endpoint_pairs());
    IJTree t = prec_tree_inverse(d, vp);
    if (prec_tree(t, vp).endpoint_pairs() != d.endpoint_pairs())
      backward = false;
  }
  rep.add("tree-to-quotient-roundtrip", forward);
  rep.add("quotient-to-tree-roundtrip", backward);
  return rep;
}

inline Report verify_pair(const ValidPair& vp, const SweepOptions& opt = {}) {
  Report rep;
  rep.subject = to_string(vp);
  if (opt.check_diagram) rep.merge(verify_theorem_3_1(vp));
  if (opt.check_triangulation) rep.merge(verify_triangulation(vp, opt));
  if (opt.check_h_polynomial) rep.merge(verify_corollary_4_9(vp));
  if (opt.check_roundtrip) rep.merge(verify_tree_bijection(vp));
  return rep;
}

}  // namespace ijt
