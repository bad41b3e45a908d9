#pragma once

#include <algorithm>
#include <limits>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

namespace ijt {

// Distinguished endpoints of an augmented graph.  Every ordinary vertex is a
// positive label, so 0 and INT_MAX are free to act as source and sink.
inline constexpr int kSource = 0;
inline constexpr int kSink = std::numeric_limits<int>::max();

// Edge on linearly ordered vertices (tail < head).  `provenance` is the
// ordered list of base-edge ids this edge stands for: a base edge carries
// {its own id}; an edge created by composing (i,j) and (j,k) carries the
// concatenation of the two provenances.  Parallel edges with distinct
// provenance are distinct.
struct ProvEdge {
  int tail = 0;
  int head = 0;
  std::vector<int> provenance;

  friend auto operator<=>(const ProvEdge& a, const ProvEdge& b) {
    return std::tie(a.tail, a.head, a.provenance) <=>
           std::tie(b.tail, b.head, b.provenance);
  }
  friend bool operator==(const ProvEdge&, const ProvEdge&) = default;
};

// Directed multigraph whose edges all point from smaller to larger label.
// `base_edges` records, per base-edge id, the endpoints it had in the root
// graph; it never changes across reductions.
struct ProvGraph {
  std::vector<int> vertices;                     // sorted, distinct
  std::vector<ProvEdge> edges;                   // sorted (tail, head, provenance)
  std::vector<std::pair<int, int>> base_edges;   // id -> endpoints

  bool has_vertex(int v) const {
    return std::binary_search(vertices.begin(), vertices.end(), v);
  }
  bool has_arrow(int tail, int head) const {
    for (const auto& e : edges)
      if (e.tail == tail && e.head == head) return true;
    return false;
  }
  std::vector<std::pair<int, int>> endpoint_pairs() const {
    std::vector<std::pair<int, int>> out;
    out.reserve(edges.size());
    for (const auto& e : edges) out.emplace_back(e.tail, e.head);
    return out;
  }
  friend bool operator==(const ProvGraph&, const ProvGraph&) = default;
  friend auto operator<=>(const ProvGraph& a, const ProvGraph& b) {
    return std::tie(a.vertices, a.edges) <=> std::tie(b.vertices, b.edges);
  }
};

inline void normalize_graph(ProvGraph& g) {
  std::sort(g.vertices.begin(), g.vertices.end());
  g.vertices.erase(std::unique(g.vertices.begin(), g.vertices.end()),
                   g.vertices.end());
  std::sort(g.edges.begin(), g.edges.end());
}

inline void check_graph(const ProvGraph& g) {
  for (int v : g.vertices) {
    if (v <= 0 || v == kSink)
      throw std::invalid_argument("vertex labels must be positive integers");
  }
  for (const auto& e : g.edges) {
    if (!(e.tail < e.head))
      throw std::invalid_argument("edge must point from smaller to larger label");
    if (!g.has_vertex(e.tail) || !g.has_vertex(e.head))
      throw std::invalid_argument("edge endpoint outside vertex set");
    if (e.provenance.empty())
      throw std::invalid_argument("edge without provenance");
    for (int id : e.provenance)
      if (id < 0 || id >= static_cast<int>(g.base_edges.size()))
        throw std::invalid_argument("provenance refers to unknown base edge");
  }
}

// Graph whose edges are exactly the given endpoint pairs, each its own base
// edge (id = position in `edge_list`).
inline ProvGraph make_base_graph(std::vector<int> vertices,
                                 const std::vector<std::pair<int, int>>& edge_list) {
  ProvGraph g;
  g.vertices = std::move(vertices);
  for (int id = 0; id < static_cast<int>(edge_list.size()); ++id) {
    auto [a, b] = edge_list[id];
    g.edges.push_back({a, b, {id}});
    g.base_edges.emplace_back(a, b);
  }
  normalize_graph(g);
  check_graph(g);
  return g;
}

// True when the provenance ids form a directed chain from `tail` to `head`
// in the base graph.
inline bool provenance_chains(const ProvGraph& g, const std::vector<int>& prov,
                              int tail, int head) {
  if (prov.empty()) return false;
  int at = tail;
  for (int id : prov) {
    if (id < 0 || id >= static_cast<int>(g.base_edges.size())) return false;
    const auto& [a, b] = g.base_edges[id];
    if (a != at) return false;
    at = b;
  }
  return at == head;
}

// Some directed path v -> w, reported as the base-edge ids traversed
// (concatenated provenance).  Requires v < w.
inline std::optional<std::vector<int>> directed_path(const ProvGraph& g, int v,
                                                     int w) {
  if (!(v < w)) throw std::invalid_argument("directed_path requires v < w");
  if (!g.has_vertex(v) || !g.has_vertex(w))
    throw std::invalid_argument("directed_path endpoint outside vertex set");
  // Edges only increase labels, so DFS over sorted edges terminates.
  std::vector<int> acc;
  auto dfs = [&](auto&& self, int at) -> bool {
    if (at == w) return true;
    if (at > w) return false;
    for (const auto& e : g.edges) {
      if (e.tail != at) continue;
      acc.insert(acc.end(), e.provenance.begin(), e.provenance.end());
      if (self(self, e.head)) return true;
      acc.resize(acc.size() - e.provenance.size());
    }
    return false;
  };
  if (!dfs(dfs, v)) return std::nullopt;
  return acc;
}

// All directed paths v -> w as lists of edge indices into g.edges.
inline std::vector<std::vector<int>> all_directed_paths(const ProvGraph& g,
                                                        int v, int w) {
  std::vector<std::vector<int>> out;
  std::vector<int> acc;
  auto dfs = [&](auto&& self, int at) -> void {
    if (at == w) {
      out.push_back(acc);
      return;
    }
    if (at > w) return;
    for (int i = 0; i < static_cast<int>(g.edges.size()); ++i) {
      if (g.edges[i].tail != at) continue;
      acc.push_back(i);
      self(self, g.edges[i].head);
      acc.pop_back();
    }
  };
  dfs(dfs, v);
  return out;
}

// Forest test on the underlying undirected multigraph: any repeated edge or
// cycle counts.  Union-find.
inline bool is_acyclic_undirected(const ProvGraph& g) {
  std::map<int, int> parent;
  for (int v : g.vertices) parent[v] = v;
  auto find = [&](int v) {
    while (parent[v] != v) {
      parent[v] = parent[parent[v]];
      v = parent[v];
    }
    return v;
  };
  for (const auto& e : g.edges) {
    int a = find(e.tail), b = find(e.head);
    if (a == b) return false;
    parent[a] = b;
  }
  return true;
}

// Ordinary graph g plus distinguished source s and sink t.  `source_edges`
// lists the vertices i with an edge (s, i); `sink_edges` the vertices j with
// an edge (j, t).
struct AugmentedGraph {
  ProvGraph inner;
  std::set<int> source_edges;
  std::set<int> sink_edges;

  int edge_count() const {
    return static_cast<int>(inner.edges.size() + source_edges.size() +
                            sink_edges.size());
  }
  int vertex_count() const {  // includes s and t
    return static_cast<int>(inner.vertices.size()) + 2;
  }
  friend bool operator==(const AugmentedGraph&, const AugmentedGraph&) = default;
};

inline AugmentedGraph augment(ProvGraph g, std::set<int> sources,
                              std::set<int> sinks) {
  for (int v : sources)
    if (!g.has_vertex(v))
      throw std::invalid_argument("source attachment outside vertex set");
  for (int v : sinks)
    if (!g.has_vertex(v))
      throw std::invalid_argument("sink attachment outside vertex set");
  return {std::move(g), std::move(sources), std::move(sinks)};
}

// Canonical partial augmentation: s feeds every vertex with no incoming
// edge, t drains every vertex with no outgoing edge.
inline AugmentedGraph partially_augment(const ProvGraph& g) {
  if (g.vertices.empty())
    throw std::invalid_argument("cannot augment the empty graph");
  std::set<int> has_in, has_out;
  for (const auto& e : g.edges) {
    has_out.insert(e.tail);
    has_in.insert(e.head);
  }
  std::set<int> sources, sinks;
  for (int v : g.vertices) {
    if (!has_in.count(v)) sources.insert(v);
    if (!has_out.count(v)) sinks.insert(v);
  }
  return {g, std::move(sources), std::move(sinks)};
}

// Maximal path of an augmented graph.  `inner_path` holds the base-edge ids
// traversed between entry and exit; a trivial route (s, v, t) has an empty
// inner path.
struct Route {
  int entry = 0;
  int exit = 0;
  std::vector<int> inner_path;

  bool trivial() const { return inner_path.empty(); }
  friend auto operator<=>(const Route& a, const Route& b) {
    return std::tie(a.entry, a.exit, a.inner_path) <=>
           std::tie(b.entry, b.exit, b.inner_path);
  }
  friend bool operator==(const Route&, const Route&) = default;
};

// All s -> t routes, sorted.  Parallel edges yield distinct routes.
inline std::vector<Route> routes(const AugmentedGraph& ag) {
  std::set<Route> out;
  for (int v : ag.source_edges) {
    if (ag.sink_edges.count(v)) out.insert({v, v, {}});
    for (int w : ag.sink_edges) {
      if (!(v < w)) continue;
      for (const auto& path : all_directed_paths(ag.inner, v, w)) {
        Route r{v, w, {}};
        for (int idx : path) {
          const auto& p = ag.inner.edges[idx].provenance;
          r.inner_path.insert(r.inner_path.end(), p.begin(), p.end());
        }
        out.insert(std::move(r));
      }
    }
  }
  return {out.begin(), out.end()};
}

// Route reading of an edge: the provenance of e, traversed s -> tail ->
// ... -> head -> t.  Defined only when the provenance chains in the base
// graph and the endpoints attach to s and t.
inline Route mu(const ProvEdge& e, const AugmentedGraph& ag) {
  if (!provenance_chains(ag.inner, e.provenance, e.tail, e.head))
    throw std::invalid_argument("mu: provenance does not chain tail to head");
  if (!ag.source_edges.count(e.tail) || !ag.sink_edges.count(e.head))
    throw std::invalid_argument("mu: edge endpoints not attached to s and t");
  return {e.tail, e.head, e.provenance};
}

inline std::string to_dot(const ProvGraph& g, const std::string& name = "g") {
  std::ostringstream os;
  os << "digraph " << name << " {\n";
  for (int v : g.vertices) os << "  " << v << ";\n";
  for (const auto& e : g.edges) {
    os << "  " << e.tail << " -> " << e.head << " [label=\"";
    for (std::size_t i = 0; i < e.provenance.size(); ++i) {
      if (i) os << ",";
      os << e.provenance[i];
    }
    os << "\"];\n";
  }
  os << "}\n";
  return os.str();
}

inline std::string to_dot(const AugmentedGraph& ag,
                          const std::string& name = "ghat") {
  std::ostringstream os;
  os << "digraph " << name << " {\n";
  os << "  s [shape=point];\n  t [shape=point];\n";
  for (int v : ag.inner.vertices) os << "  " << v << ";\n";
  for (int v : ag.source_edges) os << "  s -> " << v << ";\n";
  for (const auto& e : ag.inner.edges) {
    os << "  " << e.tail << " -> " << e.head << " [label=\"";
    for (std::size_t i = 0; i < e.provenance.size(); ++i) {
      if (i) os << ",";
      os << e.provenance[i];
    }
    os << "\"];\n";
  }
  for (int v : ag.sink_edges) os << "  " << v << " -> t;\n";
  os << "}\n";
  return os.str();
}

}  // namespace ijt
