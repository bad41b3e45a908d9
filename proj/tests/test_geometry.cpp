#include <catch2/catch_amalgamated.hpp>

#include "ijt/geometry.hpp"
#include "ijt/sweep.hpp"

using namespace ijt;

namespace {
ValidPair running() { return validate_pair({1, 2, 3, 5, 9}, {2, 7, 8, 9}); }
ValidPair claw_pair() { return validate_pair({1, 2}, {2, 3, 4}); }
}  // namespace

TEST_CASE("integer linear algebra primitives") {
  REQUIRE(rank_of({{1, 0}, {0, 1}, {1, 1}}) == 2);
  REQUIRE(rank_of({{2, 4}, {1, 2}}) == 1);
  REQUIRE(det_of({{2, 0}, {0, 3}}) == 6);
  REQUIRE(det_of({{0, 1}, {1, 0}}) == -1);
  REQUIRE(det_of({{1, 2}, {2, 4}}) == 0);
  REQUIRE(det_of({}) == 1);

  // Saturation: the row lattice of (2,0),(0,2) saturates to Z^2.
  Mat sat = saturated_basis({{2, 0}, {0, 2}}, 2);
  REQUIRE(sat.size() == 2);
  REQUIRE(int_abs(det_of(sat)) == 1);

  Mat k = left_kernel({{1, 1}, {2, 2}});
  REQUIRE(k.size() == 1);
}

TEST_CASE("left_kernel rows annihilate the matrix") {
  Mat a{{1, 1}, {2, 2}, {3, 5}};
  Mat k = left_kernel(a);
  REQUIRE(k.size() == 1);
  for (std::size_t c = 0; c < 2; ++c) {
    Int s = 0;
    for (std::size_t r = 0; r < 3; ++r) s += k[0][r] * a[r][c];
    REQUIRE(s == 0);
  }
}

TEST_CASE("in_lattice_coords solves exactly and detects non-members") {
  Mat basis{{1, 0, 1}, {0, 1, 1}};
  auto c = in_lattice_coords(basis, {2, 3, 5});
  REQUIRE(c.has_value());
  REQUIRE(*c == std::vector<Int>({2, 3}));
  REQUIRE_FALSE(in_lattice_coords(basis, {1, 0, 0}).has_value());
}

TEST_CASE("flow polytope of the running pair") {
  VertexSetPolytope F = flow_polytope_vertices(build_Ghat(running()));
  REQUIRE(F.vertices.size() == 15);
  REQUIRE(F.dim == 7);
}

TEST_CASE("flow polytope small cases") {
  AugmentedGraph single = build_Ghat(validate_pair({1}, {1}));
  VertexSetPolytope f = flow_polytope_vertices(single);
  REQUIRE(f.vertices.size() == 1);
  REQUIRE(f.dim == 0);

  VertexSetPolytope f1 = flow_polytope_vertices(build_Ghat(claw_pair()));
  REQUIRE(f1.vertices.size() == 6);
  REQUIRE(f1.dim == 3);
}

TEST_CASE("U polytope") {
  VertexSetPolytope U = U_polytope_vertices(running());
  REQUIRE(U.vertices.size() == 15);
  REQUIRE(U.dim == 7);
  VertexSetPolytope sq = U_polytope_vertices(validate_pair({1, 2}, {3, 4}));
  REQUIRE(sq.vertices.size() == 4);
  REQUIRE(sq.dim == 2);
}

TEST_CASE("S and P polytopes of the running pair have 13 vertices") {
  // Candidate generators: 12 paths/roots plus the origin; every one is a
  // genuine vertex (checked by LP independently of this code).  Counting 12
  // would conflate the three trivial routes with three distinct points; they
  // all land on the single origin.
  ValidPair vp = running();
  VertexSetPolytope S = S_polytope_vertices(build_G(vp), vp);
  VertexSetPolytope P = P_polytope_vertices(vp);
  REQUIRE(S.vertices.size() == 13);
  REQUIRE(P.vertices.size() == 13);
  REQUIRE(S.dim == 5);
  REQUIRE(P.dim == 5);
}

TEST_CASE("S and P small cases") {
  ValidPair unit = validate_pair({1}, {1});
  REQUIRE(S_polytope_vertices(build_G(unit), unit).vertices.size() == 1);
  REQUIRE(P_polytope_vertices(unit).vertices.size() == 1);

  ValidPair sq = validate_pair({1, 2}, {3, 4});
  VertexSetPolytope S = S_polytope_vertices(build_G(sq), sq);
  REQUIRE(S.vertices.size() == 4);  // 0, e12, e24, e12+e24
  REQUIRE(S.dim == 2);
  VertexSetPolytope P = P_polytope_vertices(sq);
  REQUIRE(P.vertices.size() == 4);  // 0, e1-e2, e1-e4, e2-e4
  REQUIRE(P.dim == 2);
}

TEST_CASE("phi1 reproduces the route-to-vertex table rows") {
  ValidPair vp = running();
  auto expect_pair = [&](Route r, int i, int jbar) {
    LatticeVertex v = phi1(r, vp);
    LatticeVertex want{Ambient::pair_space, {}};
    want.bump({i, 0}, 1);
    want.bump({jbar, 1}, 1);
    REQUIRE(v == want);
  };
  expect_pair({9, 9, {}}, 9, 9);
  expect_pair({5, 5, {}}, 5, 7);
  expect_pair({2, 2, {}}, 2, 2);
  ProvGraph g = build_G(vp);
  // (s,3,5,8,t): base ids for (3,5) and (5,8).
  auto id_of = [&](int a, int b) {
    for (std::size_t i = 0; i < g.base_edges.size(); ++i)
      if (g.base_edges[i] == std::pair<int, int>(a, b)) return static_cast<int>(i);
    FAIL("missing base edge");
    return -1;
  };
  expect_pair({3, 8, {id_of(3, 5), id_of(5, 8)}}, 3, 8);
  REQUIRE_THROWS_AS(phi1(Route{1, 3, {}}, vp), std::invalid_argument);
}

TEST_CASE("pi1, pi2, phi2 behave linearly") {
  ValidPair vp = running();
  // pi1 drops boundary coordinates.
  LatticeVertex f{Ambient::flow, {}};
  f.bump({kSource, 5}, 1);
  f.bump({5, 8}, 1);
  f.bump({8, kSink}, 1);
  LatticeVertex e = pi1(f);
  REQUIRE(e.ambient == Ambient::edge);
  REQUIRE(e.coords == std::map<Coord, int>({{{5, 8}, 1}}));

  // pi2 on (e_1, e_2bar): prec(2bar)=2.
  LatticeVertex u{Ambient::pair_space, {}};
  u.bump({1, 0}, 1);
  u.bump({2, 1}, 1);
  LatticeVertex r = pi2(u, vp);
  REQUIRE(r.coords == std::map<Coord, int>({{{1, 0}, 1}, {{2, 0}, -1}}));

  // Cone-point arc maps to the origin.
  LatticeVertex cone{Ambient::pair_space, {}};
  cone.bump({2, 0}, 1);
  cone.bump({2, 1}, 1);
  REQUIRE(pi2(cone, vp).coords.empty());

  // Barred value outside Jbar falls through.
  LatticeVertex ext{Ambient::pair_space, {}};
  ext.bump({1, 0}, 1);
  ext.bump({3, 1}, 1);
  LatticeVertex rx = pi2(ext, vp);
  REQUIRE(rx.coords == std::map<Coord, int>({{{1, 0}, 1}, {{3, 0}, -1}}));

  // phi2 telescopes.
  LatticeVertex chain{Ambient::edge, {}};
  chain.bump({1, 2}, 1);
  chain.bump({2, 5}, 1);
  LatticeVertex t = phi2(chain);
  REQUIRE(t.coords == std::map<Coord, int>({{{1, 0}, 1}, {{5, 0}, -1}}));
  REQUIRE(phi2(LatticeVertex{Ambient::edge, {}}).coords.empty());

  REQUIRE_THROWS_AS(pi1(u), std::invalid_argument);
  REQUIRE_THROWS_AS(pi2(f, vp), std::invalid_argument);
  REQUIRE_THROWS_AS(phi2(f), std::invalid_argument);
}

TEST_CASE("commuting diagram verifies on sample pairs") {
  REQUIRE(verify_theorem_3_1(running()).ok());
  REQUIRE(verify_theorem_3_1(validate_pair({1}, {1})).ok());
  REQUIRE(verify_theorem_3_1(claw_pair()).ok());
}

TEST_CASE("count_integer_flows") {
  AugmentedGraph f1 = build_Ghat(claw_pair());
  REQUIRE(count_integer_flows(f1, 0) == 1);
  REQUIRE(count_integer_flows(f1, 1) == 6);
  AugmentedGraph single = build_Ghat(validate_pair({1}, {1}));
  REQUIRE(count_integer_flows(single, 3) == 1);
  REQUIRE_THROWS_AS(count_integer_flows(f1, -1), std::invalid_argument);
  REQUIRE_THROWS_AS(count_integer_flows(f1, 5, 3), std::runtime_error);
}

TEST_CASE("unit flows are exactly the routes on sweep-size pairs") {
  for (const ValidPair& vp : enumerate_valid_pairs(4)) {
    AugmentedGraph ghat = build_Ghat(vp);
    REQUIRE(count_integer_flows(ghat, 1) == Int(routes(ghat).size()));
  }
}

TEST_CASE("normalized volume") {
  REQUIRE(normalized_volume(build_Ghat(claw_pair())) == 3);
  REQUIRE(normalized_volume(build_Ghat(running())) == 16);
  REQUIRE(normalized_volume(build_Ghat(validate_pair({1}, {1}))) == 1);
}

TEST_CASE("integer_flow_points dedupes expanded flows") {
  AugmentedGraph f1 = build_Ghat(claw_pair());
  auto pts = integer_flow_points(f1, 1);
  REQUIRE(pts.size() == 6);
  auto pts0 = integer_flow_points(f1, 0);
  REQUIRE(pts0.size() == 1);
}

TEST_CASE("facet simplices of the claw pair") {
  ValidPair vp = claw_pair();
  ReductionTree tree = build_reduction_tree(build_G(vp), ReductionOrder::length());
  auto flow_facets = facet_simplices(tree, Ambient::flow, vp);
  REQUIRE(flow_facets.size() == 3);
  for (const Simplex& sx : flow_facets) REQUIRE(sx.vertices.size() == 4);
  auto pair_facets = facet_simplices(tree, Ambient::pair_space, vp);
  REQUIRE(pair_facets.size() == 3);
  // The trivial route (s,2,t) appears in every facet.
  Route cone{2, 2, {}};
  LatticeVertex cv = phi1(cone, vp);
  for (const Simplex& sx : pair_facets)
    REQUIRE(std::binary_search(sx.vertices.begin(), sx.vertices.end(), cv));
}

TEST_CASE("facet simplices of the running pair include the reference leaf") {
  ValidPair vp = running();
  ReductionTree tree = build_reduction_tree(build_G(vp), ReductionOrder::length());
  auto facets = facet_simplices(tree, Ambient::pair_space, vp);
  REQUIRE(facets.size() == 16);
  // The leaf with edges {12,19,38,39,58} realizes the eight arcs below:
  // five edge readings (heads lifted through prec inverse) plus the three
  // cone-point arcs (2,2~),(5,7~),(9,9~).
  std::vector<std::pair<int, int>> arcs{{1, 2}, {1, 9}, {3, 8}, {3, 9},
                                        {5, 8}, {2, 2}, {5, 7}, {9, 9}};
  Simplex want;
  for (auto [i, j] : arcs) {
    LatticeVertex v{Ambient::pair_space, {}};
    v.bump({i, 0}, 1);
    v.bump({j, 1}, 1);
    want.vertices.push_back(v);
  }
  std::sort(want.vertices.begin(), want.vertices.end());
  bool found = false;
  for (const Simplex& sx : facets)
    if (sx.vertices == want.vertices) found = true;
  REQUIRE(found);
}

TEST_CASE("facet simplices are unimodular in their polytope lattice") {
  ValidPair vp = claw_pair();
  ReductionTree tree = build_reduction_tree(build_G(vp), ReductionOrder::length());
  AffineLattice flow_lat =
      affine_lattice(flow_polytope_vertices(build_Ghat(vp)).vertices);
  for (const Simplex& sx : facet_simplices(tree, Ambient::flow, vp))
    REQUIRE(is_unimodular(sx, flow_lat));
  AffineLattice pair_lat = affine_lattice(U_polytope_vertices(vp).vertices);
  for (const Simplex& sx : facet_simplices(tree, Ambient::pair_space, vp))
    REQUIRE(is_unimodular(sx, pair_lat));
}

TEST_CASE("reduction lemma on the claw and the running pair") {
  ProvGraph c = build_G(claw_pair());
  Report r = verify_reduction_lemma(c, {{1, 2}, {2, 4}}, claw_pair());
  INFO(r.summary());
  REQUIRE(r.ok());

  ValidPair vp = running();
  ProvGraph g = build_G(vp);
  Report r2 = verify_reduction_lemma(g, length_pick(g), vp);
  INFO(r2.summary());
  REQUIRE(r2.ok());

  ProvGraph alt = make_base_graph({1, 2, 3}, {{1, 3}, {2, 3}});
  REQUIRE_THROWS_AS(verify_reduction_lemma(alt, {{1, 2}, {2, 3}}, claw_pair()),
                    std::invalid_argument);
}

TEST_CASE("phi1 maps facet route sets onto tree arc sets bijectively") {
  // Spot check that phi1 is injective on the routes of each facet.
  ValidPair vp = running();
  ReductionTree tree = build_reduction_tree(build_G(vp), ReductionOrder::length());
  for (const Simplex& sx : facet_simplices(tree, Ambient::pair_space, vp))
    REQUIRE(sx.vertices.size() == 8);
}
