#pragma once

#include <algorithm>
#include <array>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "ijt/graph.hpp"
#include "ijt/lattice.hpp"

namespace ijt {

// The two edges of a reduction step: ((i,j),(j,k)) with i < j < k.
using PairChoice = std::pair<std::pair<int, int>, std::pair<int, int>>;

inline void check_pair_choice(const PairChoice& pc) {
  auto [p1, p2] = pc;
  if (!(p1.first < p1.second && p1.second == p2.first && p2.first < p2.second))
    throw std::invalid_argument("reduction pair must be ((i,j),(j,k)) with i<j<k");
}

// Monomial x^exponents · β^beta_power with an integer coefficient.  The
// witness is a graph whose edge multiset matches the exponents.
struct Monomial {
  std::map<std::pair<int, int>, int> exponents;
  int beta_power = 0;
  Int coefficient = 1;
  std::optional<ProvGraph> witness;

  int degree() const {
    int d = 0;
    for (const auto& [e, m] : exponents) d += m;
    return d;
  }
  auto key() const { return std::tie(exponents, beta_power); }
};

inline Monomial monomial_of_graph(const ProvGraph& g, int beta_power = 0) {
  Monomial m;
  m.beta_power = beta_power;
  for (const auto& e : g.edges) ++m.exponents[{e.tail, e.head}];
  m.witness = g;
  return m;
}

// Sum of monomials, canonicalized: sorted by (exponents, beta_power), no
// duplicate keys, no zero coefficients.
struct BetaPolynomial {
  std::vector<Monomial> terms;

  void add(Monomial m) {
    auto it = std::find_if(terms.begin(), terms.end(), [&](const Monomial& t) {
      return t.key() == m.key();
    });
    if (it == terms.end()) {
      if (m.coefficient != 0) terms.push_back(std::move(m));
    } else {
      it->coefficient += m.coefficient;
      if (it->coefficient == 0) terms.erase(it);
    }
  }
  void canonicalize() {
    std::sort(terms.begin(), terms.end(),
              [](const Monomial& a, const Monomial& b) { return a.key() < b.key(); });
  }
  BetaPolynomial degree_part(int d) const {
    BetaPolynomial p;
    for (const auto& t : terms)
      if (t.degree() == d) p.terms.push_back(t);
    return p;
  }
  friend bool operator==(const BetaPolynomial& a, const BetaPolynomial& b) {
    if (a.terms.size() != b.terms.size()) return false;
    for (std::size_t i = 0; i < a.terms.size(); ++i)
      if (a.terms[i].key() != b.terms[i].key() ||
          a.terms[i].coefficient != b.terms[i].coefficient)
        return false;
    return true;
  }
};

// The three graphs of a reduction at ((i,j),(j,k)); the composed edge (i,k)
// inherits the concatenated provenance.  With parallel candidates the copy
// with the smallest provenance is reduced (deterministic; endpoints are what
// the algebra sees).
inline std::array<ProvGraph, 3> reduce_graph(const ProvGraph& g,
                                             std::pair<int, int> p1,
                                             std::pair<int, int> p2) {
  check_pair_choice({p1, p2});
  auto find_edge = [&](std::pair<int, int> p) {
    for (std::size_t i = 0; i < g.edges.size(); ++i)
      if (g.edges[i].tail == p.first && g.edges[i].head == p.second)
        return static_cast<int>(i);
    throw std::invalid_argument("reduction pair absent from graph");
  };
  int e1 = find_edge(p1);
  int e2 = find_edge(p2);
  ProvEdge composed{p1.first, p2.second, g.edges[e1].provenance};
  composed.provenance.insert(composed.provenance.end(),
                             g.edges[e2].provenance.begin(),
                             g.edges[e2].provenance.end());
  auto without = [&](std::initializer_list<int> removed) {
    ProvGraph h;
    h.vertices = g.vertices;
    h.base_edges = g.base_edges;
    for (int i = 0; i < static_cast<int>(g.edges.size()); ++i)
      if (std::find(removed.begin(), removed.end(), i) == removed.end())
        h.edges.push_back(g.edges[i]);
    h.edges.push_back(composed);
    normalize_graph(h);
    return h;
  };
  return {without({e2}), without({e1}), without({e1, e2})};
}

inline std::set<PairChoice> non_alternating_pairs(const ProvGraph& g) {
  std::set<std::pair<int, int>> pairs;
  for (const auto& e : g.edges) pairs.insert({e.tail, e.head});
  std::set<PairChoice> out;
  for (const auto& a : pairs)
    for (const auto& b : pairs)
      if (a.second == b.first) out.insert({a, b});
  return out;
}

inline bool is_alternating(const ProvGraph& g) {
  return non_alternating_pairs(g).empty();
}

namespace detail {
// Longest pair at the chosen middle vertex; `high_j` flips the tie-break on
// the middle vertex from minimal to maximal.
inline PairChoice longest_pick(const std::set<PairChoice>& pairs, bool high_j) {
  if (pairs.empty()) throw std::invalid_argument("graph is alternating");
  bool have = false;
  int best_j = 0;
  for (const auto& pc : pairs) {
    int j = pc.first.second;
    if (!have || (high_j ? j > best_j : j < best_j)) best_j = j, have = true;
  }
  // Longest pair at best_j: minimal i, then maximal k, chosen among the
  // members so the result is always present in the set (the set may be a
  // union over several graphs, where the (min i, max k) combination need
  // not occur together).
  const PairChoice* best = nullptr;
  for (const auto& pc : pairs) {
    if (pc.first.second != best_j) continue;
    if (!best || pc.first.first < best->first.first ||
        (pc.first.first == best->first.first &&
         pc.second.second > best->second.second))
      best = &pc;
  }
  return *best;
}

inline PairChoice leftmost_pick(const std::set<PairChoice>& pairs) {
  if (pairs.empty()) throw std::invalid_argument("graph is alternating");
  auto key = [](const PairChoice& pc) {
    return std::make_tuple(pc.first.second, pc.first.first, pc.second.second);
  };
  return *std::min_element(pairs.begin(), pairs.end(),
                           [&](const PairChoice& a, const PairChoice& b) {
                             return key(a) < key(b);
                           });
}
}  // namespace detail

inline PairChoice length_pick(const ProvGraph& g) {
  return detail::longest_pick(non_alternating_pairs(g), false);
}

// Selection policy for reduction trees.  `length` is the longest pair at the
// minimal middle vertex; `length_high` flips that tie-break to the maximal
// middle vertex (still a longest-pair order); `leftmost` is lexicographic
// (j,i,k) regardless of length; `custom` consumes an explicit pair list.
struct ReductionOrder {
  enum class Policy { length, length_high, leftmost, custom };
  Policy policy = Policy::length;
  std::vector<PairChoice> custom;

  static ReductionOrder length() { return {Policy::length, {}}; }
  static ReductionOrder length_high() { return {Policy::length_high, {}}; }
  static ReductionOrder leftmost() { return {Policy::leftmost, {}}; }
  static ReductionOrder custom_order(std::vector<PairChoice> pcs) {
    for (const auto& pc : pcs) check_pair_choice(pc);
    return {Policy::custom, std::move(pcs)};
  }

  PairChoice pick(const std::set<PairChoice>& pairs, std::size_t step) const {
    switch (policy) {
      case Policy::length:
        return detail::longest_pick(pairs, false);
      case Policy::length_high:
        return detail::longest_pick(pairs, true);
      case Policy::leftmost:
        return detail::leftmost_pick(pairs);
      case Policy::custom:
        if (step >= custom.size())
          throw std::invalid_argument(
              "custom order exhausted before all leaves were alternating");
        if (!pairs.count(custom[step]))
          throw std::invalid_argument(
              "custom order selected a pair absent from every leaf");
        return custom[step];
    }
    throw std::logic_error("unreachable");
  }
};

// How reductions are interleaved across leaves.  `simultaneous` reduces the
// selected endpoint pair in every leaf containing it (the polynomial
// substitution semantics); `per_leaf` finishes each leaf depth-first.  For
// longest-pair orders on the tree graphs G(I,Jbar) the two agree.
enum class Schedule { simultaneous, per_leaf };

struct ReductionTree {
  struct Node {
    ProvGraph graph;
    std::optional<PairChoice> pair;     // set on internal nodes
    std::vector<int> children;          // 3 (full) or 2 (simple mode)
  };
  std::vector<Node> nodes;  // nodes[0] is the root
  bool simple = false;

  std::vector<int> leaves() const {
    std::vector<int> out;
    for (int i = 0; i < static_cast<int>(nodes.size()); ++i)
      if (nodes[i].children.empty()) out.push_back(i);
    return out;
  }
  std::vector<int> full_dimensional_leaves() const {
    std::vector<int> out;
    std::size_t root_edges = nodes[0].graph.edges.size();
    for (int i : leaves())
      if (nodes[i].graph.edges.size() == root_edges) out.push_back(i);
    return out;
  }
};

inline constexpr std::size_t kDefaultMaxReductions = 1'000'000;

inline ReductionTree build_reduction_tree(
    const ProvGraph& g, const ReductionOrder& order, bool simple = false,
    Schedule schedule = Schedule::simultaneous,
    std::size_t max_steps = kDefaultMaxReductions) {
  check_graph(g);
  ReductionTree tree;
  tree.simple = simple;
  tree.nodes.push_back({g, std::nullopt, {}});
  std::size_t steps = 0;

  auto expand = [&](int node, const PairChoice& pc) {
    if (++steps > max_steps)
      throw std::runtime_error("reduction step limit exceeded");
    auto children = reduce_graph(tree.nodes[node].graph, pc.first, pc.second);
    tree.nodes[node].pair = pc;
    int count = simple ? 2 : 3;
    for (int c = 0; c < count; ++c) {
      tree.nodes[node].children.push_back(static_cast<int>(tree.nodes.size()));
      tree.nodes.push_back({children[c], std::nullopt, {}});
    }
  };

  if (schedule == Schedule::simultaneous) {
    std::size_t order_step = 0;
    while (true) {
      std::vector<int> open = tree.leaves();
      std::set<PairChoice> pairs;
      for (int l : open) {
        auto p = non_alternating_pairs(tree.nodes[l].graph);
        pairs.insert(p.begin(), p.end());
      }
      if (pairs.empty()) break;
      PairChoice pc = order.pick(pairs, order_step++);
      for (int l : open)
        if (non_alternating_pairs(tree.nodes[l].graph).count(pc)) expand(l, pc);
    }
  } else {
    // Depth-first: fully reduce each leaf before touching its siblings.
    std::vector<int> stack{0};
    while (!stack.empty()) {
      int node = stack.back();
      stack.pop_back();
      auto pairs = non_alternating_pairs(tree.nodes[node].graph);
      if (pairs.empty()) continue;
      expand(node, order.pick(pairs, 0));
      const auto& ch = tree.nodes[node].children;
      for (auto it = ch.rbegin(); it != ch.rend(); ++it) stack.push_back(*it);
    }
  }
  return tree;
}

inline BetaPolynomial reduced_form(const ProvGraph& g,
                                   const ReductionOrder& order,
                                   Schedule schedule = Schedule::simultaneous,
                                   std::size_t max_steps = kDefaultMaxReductions) {
  ReductionTree tree = build_reduction_tree(g, order, false, schedule, max_steps);
  int root_edges = static_cast<int>(g.edges.size());
  BetaPolynomial p;
  for (int l : tree.leaves()) {
    const ProvGraph& leaf = tree.nodes[l].graph;
    p.add(monomial_of_graph(leaf, root_edges - static_cast<int>(leaf.edges.size())));
  }
  p.canonicalize();
  return p;
}

// Coefficient vector of p(x=1, β), indexed by β-power.
inline std::vector<Int> evaluate_at_one(const BetaPolynomial& p) {
  std::vector<Int> coeffs;
  for (const auto& t : p.terms) {
    if (static_cast<int>(coeffs.size()) <= t.beta_power)
      coeffs.resize(t.beta_power + 1, 0);
    coeffs[t.beta_power] += t.coefficient;
  }
  while (!coeffs.empty() && coeffs.back() == 0) coeffs.pop_back();
  if (coeffs.empty()) coeffs.push_back(0);
  return coeffs;
}

// q(β + delta), expanded exactly.
inline std::vector<Int> shift_beta(const std::vector<Int>& q, const Int& delta) {
  std::vector<Int> out(q.size(), 0);
  for (int p = 0; p < static_cast<int>(q.size()); ++p) {
    Int power = 1;
    for (int k = p; k >= 0; --k) {
      out[k] += q[p] * binomial(p, p - k) * power;
      power *= delta;
    }
  }
  while (out.size() > 1 && out.back() == 0) out.pop_back();
  return out;
}

inline std::string to_string(const Monomial& m) {
  std::ostringstream os;
  if (m.coefficient != 1 || (m.exponents.empty() && m.beta_power == 0))
    os << m.coefficient;
  for (const auto& [e, mult] : m.exponents) {
    os << "x_{" << e.first << "," << e.second << "}";
    if (mult > 1) os << "^" << mult;
  }
  if (m.beta_power >= 1) {
    os << "b";
    if (m.beta_power > 1) os << "^" << m.beta_power;
  }
  return os.str();
}

inline std::string to_string(const BetaPolynomial& p) {
  if (p.terms.empty()) return "0";
  std::ostringstream os;
  for (std::size_t i = 0; i < p.terms.size(); ++i) {
    if (i) os << " + ";
    os << to_string(p.terms[i]);
  }
  return os.str();
}

}  // namespace ijt
