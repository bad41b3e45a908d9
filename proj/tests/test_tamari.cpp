#include <catch2/catch_amalgamated.hpp>

#include "ijt/sweep.hpp"
#include "ijt/tamari.hpp"

using namespace ijt;

namespace {
ValidPair running() { return validate_pair({1, 2, 3, 5, 9}, {2, 7, 8, 9}); }
ValidPair claw_pair() { return validate_pair({1, 2}, {2, 3, 4}); }

// The reference tree whose quotient is the leaf {12,19,38,39,58}.
IJTree reference_tree() {
  return {{1, 2}, {1, 9}, {3, 8}, {3, 9}, {5, 8},
          {2, 2}, {5, 7}, {9, 9}};
}
}  // namespace

TEST_CASE("is_noncrossing") {
  ValidPair vp = running();
  REQUIRE(is_noncrossing(reference_tree(), vp));
  REQUIRE_FALSE(is_noncrossing({{1, 7}, {2, 9}}, vp));  // 1 < 2 <= 7 < 9
  REQUIRE(is_noncrossing({}, vp));
  REQUIRE_THROWS_AS(is_noncrossing({{9, 2}}, vp), std::invalid_argument);
}

TEST_CASE("enumerate_IJ_trees counts") {
  REQUIRE(enumerate_IJ_trees(running()).size() == 16);
  auto unit = enumerate_IJ_trees(validate_pair({1}, {1}));
  REQUIRE(unit.size() == 1);
  REQUIRE(unit[0] == IJTree({{1, 1}}));
  REQUIRE(enumerate_IJ_trees(claw_pair()).size() == 3);
}

TEST_CASE("every enumerated tree has the maximal arc count") {
  for (const ValidPair& vp : enumerate_valid_pairs(4)) {
    std::size_t want = vp.I.size() + vp.Jbar.size() - 1;
    for (const IJTree& t : enumerate_IJ_trees(vp)) {
      REQUIRE(t.size() == want);
      REQUIRE(is_noncrossing(t, vp));
    }
  }
}

TEST_CASE("prec_tree of the reference tree") {
  ProvGraph d = prec_tree(reference_tree(), running());
  REQUIRE(d.endpoint_pairs() == std::vector<std::pair<int, int>>(
                                    {{1, 2}, {1, 9}, {3, 8}, {3, 9}, {5, 8}}));
}

TEST_CASE("prec_tree small cases") {
  ValidPair unit = validate_pair({1}, {1});
  ProvGraph d = prec_tree({{1, 1}}, unit);
  REQUIRE(d.vertices == std::vector<int>({1}));
  REQUIRE(d.edges.empty());

  // The three trees of the claw pair quotient to the three leaves.
  ValidPair vp = claw_pair();
  ReductionTree tree = build_reduction_tree(build_G(vp), ReductionOrder::length());
  std::set<std::vector<std::pair<int, int>>> leaves, quotients;
  for (int l : tree.full_dimensional_leaves())
    leaves.insert(tree.nodes[l].graph.endpoint_pairs());
  for (const IJTree& t : enumerate_IJ_trees(vp))
    quotients.insert(prec_tree(t, vp).endpoint_pairs());
  REQUIRE(leaves == quotients);
}

TEST_CASE("prec_tree rejects crossing or non-maximal input") {
  ValidPair vp = running();
  REQUIRE_THROWS_AS(prec_tree({{1, 2}}, vp), std::invalid_argument);
  // (2,8~) and (3,9~) cross: 2 < 3 <= 8 < 9.
  IJTree bad = {{1, 2}, {2, 8}, {3, 9}, {5, 8}, {2, 2}, {5, 7}, {9, 9}, {1, 9}};
  REQUIRE_THROWS_AS(prec_tree(bad, vp), std::invalid_argument);
}

TEST_CASE("prec_tree_inverse recovers the reference tree") {
  ValidPair vp = running();
  ProvGraph d = make_base_graph({1, 2, 3, 5, 8, 9},
                                {{1, 2}, {1, 9}, {3, 8}, {3, 9}, {5, 8}});
  REQUIRE(prec_tree_inverse(d, vp) == reference_tree());

  ValidPair unit = validate_pair({1}, {1});
  ProvGraph empty = make_base_graph({1}, {});
  REQUIRE(prec_tree_inverse(empty, unit) == IJTree({{1, 1}}));
}

TEST_CASE("prec_tree_inverse validates membership in D") {
  ValidPair vp = running();
  // Not spanning: missing edges.
  ProvGraph sparse = make_base_graph({1, 2, 3, 5, 8, 9}, {{1, 2}});
  REQUIRE_THROWS_AS(prec_tree_inverse(sparse, vp), std::invalid_argument);
  // Not alternating: (1,2),(2,5).
  ProvGraph nonalt = make_base_graph({1, 2, 3, 5, 8, 9},
                                     {{1, 2}, {2, 5}, {3, 5}, {5, 8}, {5, 9}});
  REQUIRE_THROWS_AS(prec_tree_inverse(nonalt, vp), std::invalid_argument);
  // Wrong vertex set.
  ProvGraph off = make_base_graph({1, 2}, {{1, 2}});
  REQUIRE_THROWS_AS(prec_tree_inverse(off, vp), std::invalid_argument);
}

TEST_CASE("round trip over every tree of small pairs") {
  for (const ValidPair& vp : enumerate_valid_pairs(4))
    for (const IJTree& t : enumerate_IJ_trees(vp))
      REQUIRE(prec_tree_inverse(prec_tree(t, vp), vp) == t);
}

TEST_CASE("complex_faces of the claw tree") {
  ValidPair vp = claw_pair();
  ReductionTree tree = build_reduction_tree(build_G(vp), ReductionOrder::length());
  auto faces = complex_faces(tree, vp);
  REQUIRE(faces.size() == 5);  // 3 facets + 2 lower faces
  Arc covering{1, 4};
  for (const IJForest& f : faces) REQUIRE(f.count(covering) == 1);
}

TEST_CASE("complex_faces trivial case") {
  ValidPair unit = validate_pair({1}, {1});
  ReductionTree tree = build_reduction_tree(build_G(unit), ReductionOrder::length());
  auto faces = complex_faces(tree, unit);
  REQUIRE(faces == std::set<IJForest>({{{1, 1}}}));
}

TEST_CASE("dual graph shapes") {
  auto claw_trees = enumerate_IJ_trees(claw_pair());
  auto adj = dual_graph(claw_trees);
  int degsum = 0, deg1 = 0;
  for (const auto& a : adj) {
    degsum += static_cast<int>(a.size());
    deg1 += a.size() == 1;
  }
  REQUIRE(degsum == 4);  // path on 3 nodes
  REQUIRE(deg1 == 2);

  REQUIRE(dual_graph({IJTree{{1, 1}}}) ==
          std::vector<std::vector<int>>({{}}));

  // Running pair: connected on 16 nodes.
  auto trees = enumerate_IJ_trees(running());
  auto big = dual_graph(trees);
  std::vector<int> seen(big.size(), 0);
  std::vector<int> stack{0};
  seen[0] = 1;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (int w : big[v])
      if (!seen[w]) {
        seen[w] = 1;
        stack.push_back(w);
      }
  }
  for (int s : seen) REQUIRE(s == 1);
}

TEST_CASE("nu_from_pair") {
  REQUIRE(nu_from_pair(running()) == "ENEENNE");
  REQUIRE(nu_from_pair(validate_pair({1}, {1})).empty());
  REQUIRE(nu_from_pair(claw_pair()) == "ENN");
}

TEST_CASE("nu_catalan") {
  REQUIRE(nu_catalan("ENEENNE") == 16);
  REQUIRE(nu_catalan("") == 1);
  REQUIRE(nu_catalan("ENN") == 3);
  REQUIRE(nu_catalan("EN") == 2);
  REQUIRE_THROWS_AS(nu_catalan("EXN"), std::invalid_argument);
}

TEST_CASE("nu_narayana") {
  REQUIRE(nu_narayana("EN") == std::vector<Int>({1, 1}));
  REQUIRE(nu_narayana("") == std::vector<Int>({1}));
  REQUIRE(nu_narayana("ENN") == std::vector<Int>({1, 2}));
}

TEST_CASE("nu_schroeder") {
  REQUIRE(nu_schroeder("EN") == std::vector<Int>({2, 1}));
  REQUIRE(nu_schroeder("") == std::vector<Int>({1}));
  REQUIRE(nu_schroeder("ENN") == std::vector<Int>({3, 2}));
}

TEST_CASE("narayana sums to catalan and schroeder is its shift") {
  for (std::string nu : {"", "EN", "ENN", "ENEENNE", "NNEE", "ENENEN"}) {
    auto nar = nu_narayana(nu);
    Int total = 0;
    for (const auto& v : nar) total += v;
    REQUIRE(total == nu_catalan(nu));
    // Sch(b) = Nar(b+1) coefficientwise.
    std::vector<Int> shifted = shift_beta(nar, 1);
    auto sch = nu_schroeder(nu);
    shifted.resize(std::max(shifted.size(), sch.size()), 0);
    sch.resize(shifted.size(), 0);
    REQUIRE(shifted == sch);
  }
}

TEST_CASE("brute-force path enumeration agrees with the DPs") {
  // Independent oracle: generate all words with the right step counts and
  // filter by the weakly-above condition evaluated pointwise.
  auto brute = [](const std::string& nu) {
    int a = 0, b = 0;
    std::vector<int> floor_at;  // minimal height after x east steps
    {
      int ns = 0;
      floor_at.push_back(0);
      for (char c : nu)
        if (c == 'E')
          floor_at.push_back(ns);
        else
          ++ns;
      b = ns;
      a = static_cast<int>(floor_at.size()) - 1;
    }
    Int count = 0;
    std::string word;
    auto rec = [&](auto&& self, int x, int y) -> void {
      if (x == a && y == b) {
        ++count;
        return;
      }
      if (y < b) self(self, x, y + 1);
      if (x < a && y >= floor_at[x + 1]) self(self, x + 1, y);
    };
    rec(rec, 0, 0);
    return count;
  };
  for (std::string nu : {"", "E", "N", "EN", "ENN", "ENEENNE", "NNEE",
                         "ENENEN", "EENNEE"})
    REQUIRE(nu_catalan(nu) == brute(nu));
}

TEST_CASE("corollary checks pass on sample pairs") {
  REQUIRE(verify_corollary_4_9(claw_pair()).ok());
  REQUIRE(verify_corollary_4_9(validate_pair({1}, {1})).ok());
  REQUIRE(verify_corollary_4_9(running()).ok());
}
