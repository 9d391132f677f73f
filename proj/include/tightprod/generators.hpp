#pragma once

// Named graphs and random graph models.

#include <utility>
#include <vector>

#include "tightprod/graph.hpp"
#include "tightprod/random.hpp"

namespace tightprod::gen {

inline MultiGraph cycle(int n) {
  require(n >= 1, "cycle: n must be positive");
  std::vector<Edge> edges;
  for (int i = 0; i < n; ++i) edges.push_back({i, (i + 1) % n});
  return MultiGraph(n, edges);
}

inline MultiGraph path(int n) {
  require(n >= 1, "path: n must be positive");
  std::vector<Edge> edges;
  for (int i = 0; i + 1 < n; ++i) edges.push_back({i, i + 1});
  return MultiGraph(n, edges);
}

inline MultiGraph complete(int n) {
  require(n >= 1, "complete: n must be positive");
  std::vector<Edge> edges;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) edges.push_back({i, j});
  return MultiGraph(n, edges);
}

inline MultiGraph complete_bipartite(int a, int b) {
  std::vector<Edge> edges;
  for (int i = 0; i < a; ++i)
    for (int j = 0; j < b; ++j) edges.push_back({i, a + j});
  return MultiGraph(a + b, edges);
}

inline MultiGraph petersen() {
  std::vector<Edge> edges;
  for (int i = 0; i < 5; ++i) {
    edges.push_back({i, (i + 1) % 5});
    edges.push_back({i, i + 5});
    edges.push_back({i + 5, (i + 2) % 5 + 5});
  }
  return MultiGraph(10, edges);
}

// C_n x K_2.
inline MultiGraph prism(int n) {
  require(n >= 2, "prism: n must be at least 2");
  std::vector<Edge> edges;
  for (int i = 0; i < n; ++i) {
    edges.push_back({i, (i + 1) % n});
    edges.push_back({n + i, n + (i + 1) % n});
    edges.push_back({i, n + i});
  }
  return MultiGraph(2 * n, edges);
}

inline MultiGraph hypercube(int dim) {
  const int n = 1 << dim;
  std::vector<Edge> edges;
  for (int v = 0; v < n; ++v)
    for (int b = 0; b < dim; ++b)
      if (!(v >> b & 1)) edges.push_back({v, v | (1 << b)});
  return MultiGraph(n, edges);
}

// Two triangles joined by a bridge, with one triangle edge doubled on each
// side so the graph is cubic. Vertices 0..2 and 3..5; bridge is 0-3.
inline MultiGraph bridged_triangles() {
  const std::vector<Edge> edges{{0, 1}, {1, 2}, {2, 0}, {1, 2}, {3, 4}, {4, 5},
                                {5, 3}, {4, 5}, {0, 3}};
  return MultiGraph(6, edges);
}

inline Permutation random_fixed_point_free_involution(int n, Rng& rng) {
  require(n % 2 == 0, "pairing needs an even vertex count");
  const Permutation order = random_permutation(n, rng);
  std::vector<Vertex> images(n);
  for (int i = 0; i < n; i += 2) {
    images[order(i)] = order(i + 1);
    images[order(i + 1)] = order(i);
  }
  return Permutation(std::move(images));
}

// Permutation model: degree/2 uniform permutations plus a uniform pairing
// when the degree is odd. Loops and multi-edges may occur.
inline PermutationGraph random_permutation_graph(int n, int degree, Rng& rng) {
  require(n >= 1 && degree >= 0, "random_permutation_graph: bad arguments");
  require(degree % 2 == 0 || n % 2 == 0, "odd degree needs an even vertex count");
  PermutationGraph pg;
  pg.n = n;
  for (int i = 0; i < degree / 2; ++i) pg.generators.push_back(random_permutation(n, rng));
  if (degree % 2 == 1) pg.pairing = random_fixed_point_free_involution(n, rng);
  return pg;
}

// Configuration model. With `simple`, retries until the result has no loops
// and no parallel edges; with `loopless`, only loops are rejected.
inline MultiGraph random_regular(int n, int degree, Rng& rng, bool loopless = true, bool simple = false) {
  require(n >= 1 && degree >= 0 && (static_cast<long>(n) * degree) % 2 == 0,
          "random_regular: n * degree must be even");
  for (int attempt = 0; attempt < 100000; ++attempt) {
    std::vector<Vertex> points;
    for (Vertex v = 0; v < n; ++v)
      for (int k = 0; k < degree; ++k) points.push_back(v);
    for (int i = static_cast<int>(points.size()) - 1; i > 0; --i)
      std::swap(points[i], points[rng.below(static_cast<std::uint64_t>(i) + 1)]);
    std::vector<Edge> edges;
    bool ok = true;
    for (std::size_t i = 0; i < points.size(); i += 2) {
      Edge e{std::min(points[i], points[i + 1]), std::max(points[i], points[i + 1])};
      if ((loopless || simple) && e.u == e.v) ok = false;
      if (simple && std::find(edges.begin(), edges.end(), e) != edges.end()) ok = false;
      if (!ok) break;
      edges.push_back(e);
    }
    if (ok) return MultiGraph(n, edges);
  }
  throw InputError("random_regular: no graph found with the requested constraints");
}

// Relabels vertices by a random permutation and shuffles the edge order and
// each edge's dart orientation.
inline MultiGraph shuffled(const MultiGraph& g, Rng& rng) {
  const Permutation relabel = random_permutation(g.num_vertices(), rng);
  std::vector<Edge> edges = g.edges();
  for (int i = static_cast<int>(edges.size()) - 1; i > 0; --i)
    std::swap(edges[i], edges[rng.below(static_cast<std::uint64_t>(i) + 1)]);
  for (auto& e : edges) {
    e = {relabel(e.u), relabel(e.v)};
    if (rng.below(2)) std::swap(e.u, e.v);
  }
  return MultiGraph(g.num_vertices(), edges);
}

// Disjoint union; vertices of b are shifted by |V(a)|.
inline MultiGraph disjoint_union(const MultiGraph& a, const MultiGraph& b) {
  std::vector<Edge> edges = a.edges();
  for (const auto& e : b.edges()) edges.push_back({e.u + a.num_vertices(), e.v + a.num_vertices()});
  return MultiGraph(a.num_vertices() + b.num_vertices(), edges);
}

inline MultiGraph with_extra_edges(const MultiGraph& g, const std::vector<Edge>& extra) {
  std::vector<Edge> edges = g.edges();
  edges.insert(edges.end(), extra.begin(), extra.end());
  return MultiGraph(g.num_vertices(), edges);
}

// Random multigraph with maximum degree <= max_degree: random edge attempts
// (loops and parallel edges allowed when requested) that respect the cap.
inline MultiGraph random_bounded_degree(int n, int max_degree, int attempts, Rng& rng,
                                        bool allow_loops, bool allow_parallel) {
  std::vector<int> deg(n, 0);
  std::vector<Edge> edges;
  for (int t = 0; t < attempts; ++t) {
    const Vertex u = static_cast<Vertex>(rng.below(n));
    const Vertex v = static_cast<Vertex>(rng.below(n));
    if (u == v) {
      if (!allow_loops || deg[u] + 2 > max_degree) continue;
    } else if (deg[u] + 1 > max_degree || deg[v] + 1 > max_degree) {
      continue;
    }
    const Edge e{std::min(u, v), std::max(u, v)};
    if (!allow_parallel && std::find(edges.begin(), edges.end(), e) != edges.end()) continue;
    edges.push_back(e);
    deg[u] += u == v ? 2 : 1;
    if (u != v) deg[v] += 1;
  }
  return MultiGraph(n, edges);
}

}  // namespace tightprod::gen
