#pragma once

// Decompositions of regular multigraphs: Eulerian orientations, 1- and
// 2-factorizations, maximum matchings and exact edge colorings.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <functional>
#include <optional>
#include <queue>
#include <span>
#include <vector>

#include "tightprod/graph.hpp"

namespace tightprod {

// outgoing[d] is true when dart d is the tail of its edge in the orientation.
struct Orientation {
  std::vector<char> outgoing;
};

inline Orientation eulerian_orientation(const MultiGraph& g) {
  for (Vertex v = 0; v < g.num_vertices(); ++v)
    require(g.degree(v) % 2 == 0, "eulerian_orientation: vertex " + std::to_string(v) +
                                      " has odd degree " + std::to_string(g.degree(v)));
  Orientation o;
  o.outgoing.assign(g.num_darts(), 0);
  std::vector<char> used(g.num_edges(), 0);
  std::vector<std::size_t> next(g.num_vertices(), 0);
  // Every maximal trail in an even graph closes up, so orienting trails one
  // after another balances in- and out-degree everywhere.
  for (Vertex start = 0; start < g.num_vertices(); ++start) {
    for (;;) {
      Vertex v = start;
      bool moved = false;
      for (;;) {
        auto darts = g.darts_at(v);
        while (next[v] < darts.size() && used[edge_of(darts[next[v]])]) ++next[v];
        if (next[v] == darts.size()) break;
        const Dart d = darts[next[v]];
        used[edge_of(d)] = 1;
        o.outgoing[d] = 1;
        v = g.head(d);
        moved = true;
      }
      ensure(v == start, "eulerian_orientation: trail did not close");
      if (!moved) break;
    }
  }
  return o;
}

// Perfect matching of a bipartite multigraph restricted to `allowed` edges,
// by augmenting paths. Returns the matched edge of every vertex, or nullopt.
inline std::optional<std::vector<EdgeId>> bipartite_perfect_matching(
    const MultiGraph& g, std::span<const int> side, std::span<const char> allowed) {
  const int n = g.num_vertices();
  std::vector<EdgeId> match_edge(n, -1);
  std::vector<int> stamp(n, -1);
  int round = 0;

  std::function<bool(Vertex)> augment = [&](Vertex left) -> bool {
    for (Dart d : g.darts_at(left)) {
      const EdgeId e = edge_of(d);
      if (!allowed[e]) continue;
      const Vertex right = g.head(d);
      if (stamp[right] == round) continue;
      stamp[right] = round;
      const EdgeId held = match_edge[right];
      if (held < 0) {
        match_edge[right] = e;
        match_edge[left] = e;
        return true;
      }
      const auto [a, b] = g.endpoints(held);
      const Vertex other = a == right ? b : a;
      if (augment(other)) {
        match_edge[right] = e;
        match_edge[left] = e;
        return true;
      }
    }
    return false;
  };

  for (Vertex v = 0; v < n; ++v) {
    if (side[v] != 0 || match_edge[v] >= 0) continue;
    ++round;
    if (!augment(v)) return std::nullopt;
  }
  for (Vertex v = 0; v < n; ++v)
    if (match_edge[v] < 0) return std::nullopt;
  return match_edge;
}

// k disjoint perfect matchings covering a k-regular bipartite multigraph.
inline std::vector<std::vector<EdgeId>> regular_bipartite_one_factorization(
    const MultiGraph& g, std::span<const int> side) {
  const auto k = g.regular_degree();
  require(k.has_value(), "one-factorization: graph is not regular");
  require(static_cast<int>(side.size()) == g.num_vertices(), "one-factorization: bad bipartition size");
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    const auto [u, v] = g.endpoints(e);
    require(side[u] != side[v], "one-factorization: edge " + std::to_string(e) + " within one side");
  }
  std::vector<char> allowed(g.num_edges(), 1);
  std::vector<std::vector<EdgeId>> matchings;
  for (int round = 0; round < *k; ++round) {
    auto m = bipartite_perfect_matching(g, side, allowed);
    ensure(m.has_value(), "regular bipartite graph without perfect matching");
    std::vector<EdgeId> edges;
    for (Vertex v = 0; v < g.num_vertices(); ++v)
      if (side[v] == 0) edges.push_back((*m)[v]);
    std::sort(edges.begin(), edges.end());
    for (EdgeId e : edges) allowed[e] = 0;
    matchings.push_back(std::move(edges));
  }
  return matchings;
}

// A 2-factorization presented as permutations. out_dart[i][v] is the dart at v
// carrying the edge v -> factors[i](v).
struct TwoFactorization {
  std::vector<Permutation> factors;
  std::vector<std::vector<Dart>> out_dart;
};

// Re-orients every cycle of `perm` so that at its minimum vertex the outgoing
// dart is the smaller of the two cycle darts there.
inline void canonicalize_cycles(Permutation& perm, std::vector<Dart>& out_dart) {
  const int n = perm.size();
  std::vector<Vertex> images(perm.images().begin(), perm.images().end());
  std::vector<char> seen(n, 0);
  const Permutation inv = perm.inverse();
  for (Vertex start = 0; start < n; ++start) {
    if (seen[start]) continue;
    std::vector<Vertex> cycle;
    for (Vertex v = start; !seen[v]; v = perm(v)) {
      seen[v] = 1;
      cycle.push_back(v);
    }
    // start is the minimum of its cycle since cycles are met in vertex order.
    const Dart out = out_dart[start];
    const Dart in = mate(out_dart[inv(start)]);
    if (in >= out) continue;
    std::vector<Dart> reversed(cycle.size());
    for (std::size_t i = 0; i < cycle.size(); ++i) reversed[i] = mate(out_dart[inv(cycle[i])]);
    for (std::size_t i = 0; i < cycle.size(); ++i) {
      images[cycle[i]] = inv(cycle[i]);
      out_dart[cycle[i]] = reversed[i];
    }
  }
  perm = Permutation(std::move(images));
}

inline TwoFactorization two_factorization(const MultiGraph& g) {
  const int n = g.num_vertices();
  const auto deg = g.regular_degree();
  require(deg.has_value(), "two_factorization: graph is not regular");
  require(*deg % 2 == 0, "two_factorization: degree " + std::to_string(*deg) + " is odd");
  const int d = *deg / 2;

  // Bipartite out/in graph: left copy v, right copy n + w, one edge per
  // oriented edge v -> w. Edge j of the split graph is parent edge j.
  const Orientation o = eulerian_orientation(g);
  std::vector<Edge> split;
  std::vector<Dart> tail_dart(g.num_edges());
  split.reserve(g.num_edges());
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    const Dart t = o.outgoing[2 * e] ? 2 * e : 2 * e + 1;
    tail_dart[e] = t;
    split.push_back({g.dart_vertex(t), n + g.head(t)});
  }
  const MultiGraph bip(2 * n, split);
  std::vector<int> side(2 * n, 0);
  std::fill(side.begin() + n, side.end(), 1);
  const auto matchings = regular_bipartite_one_factorization(bip, side);
  ensure(static_cast<int>(matchings.size()) == d, "two_factorization: wrong factor count");

  TwoFactorization result;
  for (const auto& m : matchings) {
    std::vector<Vertex> images(n, -1);
    std::vector<Dart> out(n, -1);
    for (EdgeId e : m) {
      const Dart t = tail_dart[e];
      images[g.dart_vertex(t)] = g.head(t);
      out[g.dart_vertex(t)] = t;
    }
    Permutation perm(std::move(images));
    canonicalize_cycles(perm, out);
    result.factors.push_back(std::move(perm));
    result.out_dart.push_back(std::move(out));
  }
  return result;
}

inline PermutationGraph to_permutation_graph(const TwoFactorization& f, int n) {
  PermutationGraph pg;
  pg.n = n;
  pg.generators = f.factors;
  return pg;
}

inline bool is_matching(const MultiGraph& g, std::span<const EdgeId> edges) {
  std::vector<char> covered(g.num_vertices(), 0);
  for (EdgeId e : edges) {
    if (e < 0 || e >= g.num_edges() || g.is_loop(e)) return false;
    const auto [u, v] = g.endpoints(e);
    if (covered[u] || covered[v]) return false;
    covered[u] = covered[v] = 1;
  }
  return true;
}

inline bool is_perfect_matching(const MultiGraph& g, std::span<const EdgeId> edges) {
  return is_matching(g, edges) && 2 * static_cast<int>(edges.size()) == g.num_vertices();
}

// Maximum-cardinality matching (Edmonds' blossom algorithm). Parallel edges
// collapse to one candidate; loops are never matched. Returns edge ids, using
// the smallest id among parallel copies.
inline std::vector<EdgeId> max_matching(const MultiGraph& g) {
  const int n = g.num_vertices();
  std::vector<std::vector<Vertex>> adj(n);
  for (Vertex v = 0; v < n; ++v) {
    for (Dart d : g.darts_at(v)) {
      const Vertex w = g.head(d);
      if (w != v) adj[v].push_back(w);
    }
    std::sort(adj[v].begin(), adj[v].end());
    adj[v].erase(std::unique(adj[v].begin(), adj[v].end()), adj[v].end());
  }

  std::vector<Vertex> match(n, -1), parent(n, -1), base(n);
  std::vector<char> used(n), blossom(n);

  auto lca = [&](Vertex a, Vertex b) {
    std::vector<char> seen(n, 0);
    for (;;) {
      a = base[a];
      seen[a] = 1;
      if (match[a] < 0) break;
      a = parent[match[a]];
    }
    for (;;) {
      b = base[b];
      if (seen[b]) return b;
      b = parent[match[b]];
    }
  };
  auto mark_path = [&](Vertex v, Vertex b, Vertex child) {
    while (base[v] != b) {
      blossom[base[v]] = blossom[base[match[v]]] = 1;
      parent[v] = child;
      child = match[v];
      v = parent[match[v]];
    }
  };
  auto find_path = [&](Vertex root) -> Vertex {
    std::fill(used.begin(), used.end(), 0);
    std::fill(parent.begin(), parent.end(), -1);
    for (Vertex i = 0; i < n; ++i) base[i] = i;
    used[root] = 1;
    std::queue<Vertex> q;
    q.push(root);
    while (!q.empty()) {
      const Vertex v = q.front();
      q.pop();
      for (Vertex to : adj[v]) {
        if (base[v] == base[to] || match[v] == to) continue;
        if (to == root || (match[to] >= 0 && parent[match[to]] >= 0)) {
          const Vertex cur = lca(v, to);
          std::fill(blossom.begin(), blossom.end(), 0);
          mark_path(v, cur, to);
          mark_path(to, cur, v);
          for (Vertex i = 0; i < n; ++i) {
            if (blossom[base[i]]) {
              base[i] = cur;
              if (!used[i]) {
                used[i] = 1;
                q.push(i);
              }
            }
          }
        } else if (parent[to] < 0) {
          parent[to] = v;
          if (match[to] < 0) return to;
          used[match[to]] = 1;
          q.push(match[to]);
        }
      }
    }
    return -1;
  };

  // Greedy start.
  for (Vertex v = 0; v < n; ++v) {
    if (match[v] >= 0) continue;
    for (Vertex w : adj[v]) {
      if (match[w] < 0) {
        match[v] = w;
        match[w] = v;
        break;
      }
    }
  }
  for (Vertex v = 0; v < n; ++v) {
    if (match[v] >= 0) continue;
    Vertex end = find_path(v);
    while (end >= 0) {
      const Vertex pv = parent[end];
      const Vertex next = match[pv];
      match[end] = pv;
      match[pv] = end;
      end = next;
    }
  }

  std::vector<EdgeId> result;
  for (Vertex v = 0; v < n; ++v) {
    if (match[v] < v) continue;
    EdgeId best = -1;
    for (Dart d : g.darts_at(v))
      if (g.head(d) == match[v] && (best < 0 || edge_of(d) < best)) best = edge_of(d);
    result.push_back(best);
  }
  std::sort(result.begin(), result.end());
  return result;
}

// Proper edge coloring with colors 0..num_colors-1.
struct EdgeColoring {
  std::vector<int> color_of;
  int num_colors = 0;
};

// Incident edges (including the two sides of a loop) must differ, so a graph
// with a loop has no proper edge coloring.
inline bool is_proper(const MultiGraph& g, const EdgeColoring& c) {
  if (static_cast<int>(c.color_of.size()) != g.num_edges()) return false;
  for (EdgeId e = 0; e < g.num_edges(); ++e)
    if (c.color_of[e] < 0 || c.color_of[e] >= c.num_colors || g.is_loop(e)) return false;
  for (Vertex v = 0; v < g.num_vertices(); ++v) {
    std::vector<char> seen(c.num_colors, 0);
    for (Dart d : g.darts_at(v)) {
      const int col = c.color_of[edge_of(d)];
      if (seen[col]) return false;
      seen[col] = 1;
    }
  }
  return true;
}

inline std::vector<std::vector<EdgeId>> color_classes(const EdgeColoring& c) {
  std::vector<std::vector<EdgeId>> classes(c.num_colors);
  for (EdgeId e = 0; e < static_cast<EdgeId>(c.color_of.size()); ++e) classes[c.color_of[e]].push_back(e);
  return classes;
}

enum class SearchStatus { found, absent, undecided };

struct ColoringSearch {
  SearchStatus status = SearchStatus::undecided;
  std::optional<EdgeColoring> coloring;
  std::uint64_t nodes = 0;
};

// Exhaustive backtracking for a proper edge coloring with at most `budget`
// colors. Edges are chosen by saturation (most distinct colors already seen
// around the edge), and a new color is only tried once, which removes color
// permutation symmetry. Exceeding node_cap yields `undecided`.
inline ColoringSearch exact_edge_chromatic(const MultiGraph& g, int budget,
                                           std::uint64_t node_cap = 50'000'000) {
  require(budget >= 0 && budget <= 63, "exact_edge_chromatic: budget must be in [0, 63]");
  ColoringSearch out;
  const int m = g.num_edges();
  if (g.has_loop() || g.max_degree() > budget) {
    out.status = SearchStatus::absent;
    return out;
  }
  std::vector<std::uint64_t> used_at(g.num_vertices(), 0);
  std::vector<int> color(m, -1);
  std::vector<std::vector<EdgeId>> adjacent(m);
  for (Vertex v = 0; v < g.num_vertices(); ++v)
    for (Dart a : g.darts_at(v))
      for (Dart b : g.darts_at(v))
        if (edge_of(a) != edge_of(b)) adjacent[edge_of(a)].push_back(edge_of(b));

  bool aborted = false;
  std::function<bool(int, int)> search = [&](int colored, int colors_used) -> bool {
    if (colored == m) return true;
    if (++out.nodes > node_cap) {
      aborted = true;
      return false;
    }
    EdgeId pick = -1;
    int best_sat = -1, best_free = -1;
    for (EdgeId e = 0; e < m; ++e) {
      if (color[e] >= 0) continue;
      const auto [u, v] = g.endpoints(e);
      const int sat = std::popcount(used_at[u] | used_at[v]);
      int uncolored = 0;
      for (EdgeId f : adjacent[e]) uncolored += color[f] < 0;
      if (sat > best_sat || (sat == best_sat && uncolored > best_free)) {
        pick = e;
        best_sat = sat;
        best_free = uncolored;
      }
    }
    const auto [u, v] = g.endpoints(pick);
    const std::uint64_t blocked = used_at[u] | used_at[v];
    const int limit = std::min(budget, colors_used + 1);
    for (int c = 0; c < limit; ++c) {
      if (blocked >> c & 1) continue;
      color[pick] = c;
      used_at[u] |= std::uint64_t{1} << c;
      used_at[v] |= std::uint64_t{1} << c;
      if (search(colored + 1, std::max(colors_used, c + 1))) return true;
      used_at[u] &= ~(std::uint64_t{1} << c);
      used_at[v] &= ~(std::uint64_t{1} << c);
      color[pick] = -1;
      if (aborted) return false;
    }
    return false;
  };

  if (search(0, 0)) {
    out.status = SearchStatus::found;
    out.coloring = EdgeColoring{color, budget};
  } else {
    out.status = aborted ? SearchStatus::undecided : SearchStatus::absent;
  }
  return out;
}

}  // namespace tightprod
