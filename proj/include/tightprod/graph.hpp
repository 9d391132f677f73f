#pragma once

// Dart-based undirected multigraphs, permutations and the permutation
// presentation G(s_1, ..., s_d).
//
// Edge e owns darts 2e and 2e+1; the involution pairing the two darts of an
// edge is therefore d ^ 1. A loop has both darts at the same vertex and so
// contributes 2 to the degree of that vertex.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "tightprod/errors.hpp"

namespace tightprod {

using Vertex = int;
using Dart = int;
using EdgeId = int;

inline constexpr Dart mate(Dart d) { return d ^ 1; }
inline constexpr EdgeId edge_of(Dart d) { return d >> 1; }

class Permutation {
 public:
  Permutation() = default;

  explicit Permutation(std::vector<Vertex> images) : images_(std::move(images)) {
    std::vector<char> seen(images_.size(), 0);
    for (Vertex x : images_) {
      if (x < 0 || static_cast<std::size_t>(x) >= images_.size())
        throw InputError("permutation image out of range: " + std::to_string(x));
      if (seen[x]) throw InputError("permutation repeats image " + std::to_string(x));
      seen[x] = 1;
    }
  }

  static Permutation identity(int n) {
    std::vector<Vertex> images(n);
    std::iota(images.begin(), images.end(), 0);
    return Permutation(std::move(images));
  }

  int size() const { return static_cast<int>(images_.size()); }
  Vertex operator()(Vertex v) const { return images_[v]; }
  std::span<const Vertex> images() const { return images_; }

  Permutation inverse() const {
    std::vector<Vertex> inv(images_.size());
    for (std::size_t i = 0; i < images_.size(); ++i) inv[images_[i]] = static_cast<Vertex>(i);
    Permutation result;
    result.images_ = std::move(inv);
    return result;
  }

  bool is_identity() const {
    for (std::size_t i = 0; i < images_.size(); ++i)
      if (images_[i] != static_cast<Vertex>(i)) return false;
    return true;
  }

  bool has_fixed_point() const {
    for (std::size_t i = 0; i < images_.size(); ++i)
      if (images_[i] == static_cast<Vertex>(i)) return true;
    return false;
  }

  bool is_involution() const {
    for (std::size_t i = 0; i < images_.size(); ++i)
      if (images_[images_[i]] != static_cast<Vertex>(i)) return false;
    return true;
  }

  // outer(inner(x))
  friend Permutation compose(const Permutation& outer, const Permutation& inner) {
    require(outer.size() == inner.size(), "compose: size mismatch");
    Permutation result;
    result.images_.resize(inner.images_.size());
    for (std::size_t i = 0; i < inner.images_.size(); ++i)
      result.images_[i] = outer.images_[inner.images_[i]];
    return result;
  }

  friend bool operator==(const Permutation&, const Permutation&) = default;

 private:
  std::vector<Vertex> images_;
};

struct Edge {
  Vertex u;
  Vertex v;
  friend bool operator==(const Edge&, const Edge&) = default;
};

class MultiGraph {
 public:
  MultiGraph() = default;

  MultiGraph(int n, std::span<const Edge> edges) : n_(n) {
    require(n >= 0, "negative vertex count");
    dart_vertex_.reserve(2 * edges.size());
    for (const Edge& e : edges) {
      if (e.u < 0 || e.u >= n || e.v < 0 || e.v >= n)
        throw InputError("edge endpoint out of range: " + std::to_string(e.u) + " " + std::to_string(e.v));
      dart_vertex_.push_back(e.u);
      dart_vertex_.push_back(e.v);
    }
    offsets_.assign(n + 1, 0);
    for (Vertex v : dart_vertex_) ++offsets_[v + 1];
    for (int v = 0; v < n; ++v) offsets_[v + 1] += offsets_[v];
    incident_.resize(dart_vertex_.size());
    std::vector<int> fill(offsets_.begin(), offsets_.end() - 1);
    for (Dart d = 0; d < num_darts(); ++d) incident_[fill[dart_vertex_[d]]++] = d;
  }

  MultiGraph(int n, const std::vector<Edge>& edges) : MultiGraph(n, std::span<const Edge>(edges)) {}

  int num_vertices() const { return n_; }
  int num_edges() const { return static_cast<int>(dart_vertex_.size() / 2); }
  int num_darts() const { return static_cast<int>(dart_vertex_.size()); }

  Vertex dart_vertex(Dart d) const { return dart_vertex_[d]; }
  Dart involution(Dart d) const { return mate(d); }
  // Vertex at the far end of dart d.
  Vertex head(Dart d) const { return dart_vertex_[mate(d)]; }

  Edge endpoints(EdgeId e) const { return {dart_vertex_[2 * e], dart_vertex_[2 * e + 1]}; }
  bool is_loop(EdgeId e) const { return dart_vertex_[2 * e] == dart_vertex_[2 * e + 1]; }

  // Darts at v in increasing id order.
  std::span<const Dart> darts_at(Vertex v) const {
    return std::span<const Dart>(incident_).subspan(offsets_[v], offsets_[v + 1] - offsets_[v]);
  }

  int degree(Vertex v) const { return offsets_[v + 1] - offsets_[v]; }

  int max_degree() const {
    int best = 0;
    for (Vertex v = 0; v < n_; ++v) best = std::max(best, degree(v));
    return best;
  }

  std::optional<int> regular_degree() const {
    if (n_ == 0) return 0;
    const int d = degree(0);
    for (Vertex v = 1; v < n_; ++v)
      if (degree(v) != d) return std::nullopt;
    return d;
  }

  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    out.reserve(num_edges());
    for (EdgeId e = 0; e < num_edges(); ++e) out.push_back(endpoints(e));
    return out;
  }

  bool has_loop() const {
    for (EdgeId e = 0; e < num_edges(); ++e)
      if (is_loop(e)) return true;
    return false;
  }

 private:
  int n_ = 0;
  std::vector<Vertex> dart_vertex_;
  std::vector<int> offsets_{0};
  std::vector<Dart> incident_;
};

// Neighbor multiset of v, sorted. A loop contributes v twice.
inline std::vector<Vertex> neighbors(const MultiGraph& g, Vertex v) {
  if (v < 0 || v >= g.num_vertices()) throw InputError("vertex out of range: " + std::to_string(v));
  std::vector<Vertex> out;
  out.reserve(g.degree(v));
  for (Dart d : g.darts_at(v)) out.push_back(g.head(d));
  std::sort(out.begin(), out.end());
  return out;
}

// Number of darts at u whose far end is v (a loop at u counts twice toward
// multiplicity(u, u)).
inline int multiplicity(const MultiGraph& g, Vertex u, Vertex v) {
  int count = 0;
  for (Dart d : g.darts_at(u))
    if (g.head(d) == v) ++count;
  return count;
}

struct PermutationGraph {
  int n = 0;
  std::vector<Permutation> generators;
  std::optional<Permutation> pairing;

  void validate() const {
    require(n >= 0, "negative vertex count");
    for (const auto& s : generators) require(s.size() == n, "generator size differs from n");
    if (pairing) {
      require(pairing->size() == n, "pairing size differs from n");
      require(pairing->is_involution(), "pairing is not an involution");
      require(!pairing->has_fixed_point(), "pairing has a fixed point");
    }
  }

  int degree() const { return 2 * static_cast<int>(generators.size()) + (pairing ? 1 : 0); }
};

// Edge order: generator-major (edge i*n + v is v -> s_i(v), dart 2e at v),
// followed by one edge {v, pairing(v)} for each v < pairing(v).
inline MultiGraph from_permutations(const PermutationGraph& pg) {
  pg.validate();
  std::vector<Edge> edges;
  edges.reserve(pg.generators.size() * pg.n + (pg.pairing ? pg.n / 2 : 0));
  for (const auto& s : pg.generators)
    for (Vertex v = 0; v < pg.n; ++v) edges.push_back({v, s(v)});
  if (pg.pairing)
    for (Vertex v = 0; v < pg.n; ++v)
      if (v < (*pg.pairing)(v)) edges.push_back({v, (*pg.pairing)(v)});
  return MultiGraph(pg.n, edges);
}

struct Structure {
  std::optional<int> regular_degree;
  bool connected = true;
  bool bipartite = true;
  std::vector<EdgeId> bridges;       // ascending
  std::vector<int> component;        // component index per vertex
  int num_components = 0;
  std::vector<int> side;             // 0/1 two-coloring; meaningful when bipartite
};

inline Structure structural_predicates(const MultiGraph& g) {
  const int n = g.num_vertices();
  Structure s;
  s.regular_degree = g.regular_degree();
  s.component.assign(n, -1);
  s.side.assign(n, 0);

  // Iterative DFS computing components, a 2-coloring attempt and low-links.
  std::vector<int> order(n, -1), low(n, 0);
  std::vector<Dart> parent_dart(n, -1);
  std::vector<std::size_t> next(n, 0);
  std::vector<char> is_bridge(g.num_edges(), 0);
  int clock = 0;
  for (Vertex root = 0; root < n; ++root) {
    if (order[root] >= 0) continue;
    const int comp = s.num_components++;
    std::vector<Vertex> stack{root};
    order[root] = low[root] = clock++;
    s.component[root] = comp;
    while (!stack.empty()) {
      const Vertex v = stack.back();
      auto darts = g.darts_at(v);
      if (next[v] < darts.size()) {
        const Dart d = darts[next[v]++];
        const Vertex w = g.head(d);
        if (parent_dart[v] >= 0 && edge_of(d) == edge_of(parent_dart[v])) continue;
        if (w == v) {
          s.bipartite = false;
          continue;
        }
        if (order[w] < 0) {
          order[w] = low[w] = clock++;
          s.component[w] = comp;
          s.side[w] = 1 - s.side[v];
          parent_dart[w] = mate(d);
          stack.push_back(w);
        } else {
          if (s.side[w] == s.side[v]) s.bipartite = false;
          low[v] = std::min(low[v], order[w]);
        }
      } else {
        stack.pop_back();
        if (parent_dart[v] >= 0) {
          const Vertex p = g.head(parent_dart[v]);
          low[p] = std::min(low[p], low[v]);
          if (low[v] > order[p]) is_bridge[edge_of(parent_dart[v])] = 1;
        }
      }
    }
  }
  for (EdgeId e = 0; e < g.num_edges(); ++e)
    if (is_bridge[e]) s.bridges.push_back(e);
  s.connected = s.num_components <= 1;
  return s;
}

// Vertex (i, v) of the lift is i*n + v for i in {0, 1}. Lift edge 2e joins
// (0, u) and (1, v), lift edge 2e+1 joins (1, u) and (0, v), where e = {u, v}
// with dart 2e at u.
inline MultiGraph standard_two_lift(const MultiGraph& g) {
  const int n = g.num_vertices();
  std::vector<Edge> edges;
  edges.reserve(2 * g.num_edges());
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    const auto [u, v] = g.endpoints(e);
    edges.push_back({u, n + v});
    edges.push_back({n + u, v});
  }
  return MultiGraph(2 * n, edges);
}

using IntMatrix = Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic>;

// A(u, v) counts edges between u and v; each loop adds 2 to the diagonal so
// that row sums equal degrees.
inline IntMatrix adjacency_matrix(const MultiGraph& g) {
  const int n = g.num_vertices();
  IntMatrix a = IntMatrix::Zero(n, n);
  for (Dart d = 0; d < g.num_darts(); ++d) a(g.dart_vertex(d), g.head(d)) += 1;
  return a;
}

// Edge-induced subgraph on an explicit vertex list. Sub-edge j is parent edge
// to_parent_edge[j] with the same dart orientation.
struct Subgraph {
  MultiGraph graph;
  std::vector<Vertex> to_parent_vertex;
  std::vector<EdgeId> to_parent_edge;
};

inline Subgraph edge_subgraph(const MultiGraph& g, std::span<const EdgeId> edges,
                              std::span<const Vertex> vertices) {
  std::vector<int> local(g.num_vertices(), -1);
  for (std::size_t i = 0; i < vertices.size(); ++i) local[vertices[i]] = static_cast<int>(i);
  std::vector<Edge> sub;
  sub.reserve(edges.size());
  for (EdgeId e : edges) {
    const auto [u, v] = g.endpoints(e);
    require(local[u] >= 0 && local[v] >= 0, "edge_subgraph: endpoint outside vertex list");
    sub.push_back({local[u], local[v]});
  }
  return {MultiGraph(static_cast<int>(vertices.size()), sub),
          std::vector<Vertex>(vertices.begin(), vertices.end()),
          std::vector<EdgeId>(edges.begin(), edges.end())};
}

inline std::vector<Vertex> all_vertices(const MultiGraph& g) {
  std::vector<Vertex> vs(g.num_vertices());
  std::iota(vs.begin(), vs.end(), 0);
  return vs;
}

// Graph with the given edges removed, vertex set unchanged.
inline Subgraph remove_edges(const MultiGraph& g, std::span<const EdgeId> removed) {
  std::vector<char> drop(g.num_edges(), 0);
  for (EdgeId e : removed) drop[e] = 1;
  std::vector<EdgeId> kept;
  for (EdgeId e = 0; e < g.num_edges(); ++e)
    if (!drop[e]) kept.push_back(e);
  const auto vs = all_vertices(g);
  return edge_subgraph(g, kept, vs);
}

}  // namespace tightprod
