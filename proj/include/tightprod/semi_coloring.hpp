#pragma once

// Semi-colorings: every edge is either solid(i) or bright({i, j}) with colors
// in 1..delta. At every vertex the weight of each color (solid = 1, bright
// = 1/2 per containing dart) is at most 1, and each bright pair occurs on 0 or
// 2 darts. Weights are tracked doubled so they stay integral.

#include <algorithm>
#include <array>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tightprod/factorization.hpp"
#include "tightprod/graph.hpp"

namespace tightprod {

class SemiColor {
 public:
  SemiColor() = default;
  static SemiColor solid(int i) { return SemiColor(i, 0); }
  static SemiColor bright(int i, int j) {
    require(i != j, "bright pair needs two distinct colors");
    return SemiColor(std::min(i, j), std::max(i, j));
  }

  bool is_solid() const { return second_ == 0; }
  bool is_bright() const { return second_ != 0; }
  int first() const { return first_; }
  // Only meaningful for bright colors.
  int second() const { return second_; }
  bool contains(int c) const { return c == first_ || (second_ != 0 && c == second_); }

  friend bool operator==(const SemiColor&, const SemiColor&) = default;
  friend auto operator<=>(const SemiColor&, const SemiColor&) = default;

 private:
  SemiColor(int a, int b) : first_(a), second_(b) {}
  int first_ = 0;
  int second_ = 0;
};

struct SemiColoring {
  std::vector<SemiColor> color_of;
  int delta = 0;
};

// One bright cycle, traversed from its minimum vertex along the smaller of the
// two darts there. darts[t] leaves the t-th vertex of the cycle.
struct BrightCycle {
  int i = 0;
  int j = 0;
  std::vector<Dart> darts;
};

struct SemiViolation {
  enum class Kind { weight, parity };
  Vertex v;
  Kind kind;
  int i;
  int j;  // 0 for weight violations
};

struct SemiColoringReport {
  bool valid = false;
  std::vector<SemiViolation> violations;
  std::vector<BrightCycle> cycles;       // filled when the parity condition holds
  bool cycles_vertex_disjoint = false;   // every bright class splits into disjoint cycles
};

// Bright cycles of a coloring whose parity condition holds.
inline std::vector<BrightCycle> bright_cycles(const MultiGraph& g, const SemiColoring& sc) {
  std::vector<BrightCycle> out;
  std::vector<char> visited(g.num_edges(), 0);
  for (Vertex v = 0; v < g.num_vertices(); ++v) {
    for (Dart start : g.darts_at(v)) {
      const EdgeId e0 = edge_of(start);
      if (visited[e0] || !sc.color_of[e0].is_bright()) continue;
      const SemiColor pair = sc.color_of[e0];
      BrightCycle cycle{pair.first(), pair.second(), {}};
      Dart d = start;
      for (;;) {
        visited[edge_of(d)] = 1;
        cycle.darts.push_back(d);
        const Vertex w = g.head(d);
        Dart next = -1;
        for (Dart x : g.darts_at(w))
          if (x != mate(d) && sc.color_of[edge_of(x)] == pair) next = x;
        ensure(next >= 0, "bright_cycles: parity condition fails");
        if (next == start) break;
        ensure(!visited[edge_of(next)], "bright_cycles: class is not a union of cycles");
        d = next;
      }
      out.push_back(std::move(cycle));
    }
  }
  return out;
}

inline SemiColoringReport validate_semi_coloring(const MultiGraph& g, const SemiColoring& sc) {
  require(static_cast<int>(sc.color_of.size()) == g.num_edges(), "semi-coloring: size mismatch");
  require(sc.delta >= g.max_degree(), "semi-coloring: delta smaller than the maximum degree");
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    const SemiColor& c = sc.color_of[e];
    require(c.first() >= 1 && c.first() <= sc.delta && c.second() <= sc.delta,
            "semi-coloring: color out of range on edge " + std::to_string(e));
  }
  SemiColoringReport r;
  bool parity_ok = true;
  for (Vertex v = 0; v < g.num_vertices(); ++v) {
    std::vector<int> weight2(sc.delta + 1, 0);
    std::map<std::pair<int, int>, int> pair_count;
    for (Dart d : g.darts_at(v)) {
      const SemiColor& c = sc.color_of[edge_of(d)];
      if (c.is_solid()) {
        weight2[c.first()] += 2;
      } else {
        weight2[c.first()] += 1;
        weight2[c.second()] += 1;
        ++pair_count[{c.first(), c.second()}];
      }
    }
    for (int i = 1; i <= sc.delta; ++i)
      if (weight2[i] > 2) r.violations.push_back({v, SemiViolation::Kind::weight, i, 0});
    for (const auto& [pair, count] : pair_count) {
      if (count != 2) {
        r.violations.push_back({v, SemiViolation::Kind::parity, pair.first, pair.second});
        parity_ok = false;
      }
    }
  }
  r.valid = r.violations.empty();
  if (parity_ok) {
    r.cycles = bright_cycles(g, sc);
    // Each vertex of a bright class lies on exactly one cycle of that class.
    std::map<std::pair<int, int>, std::vector<int>> hits;
    bool disjoint = true;
    for (const auto& cyc : r.cycles) {
      auto& h = hits[{cyc.i, cyc.j}];
      if (h.empty()) h.assign(g.num_vertices(), 0);
      for (Dart d : cyc.darts)
        if (++h[g.dart_vertex(d)] > 1) disjoint = false;
    }
    r.cycles_vertex_disjoint = disjoint;
  }
  return r;
}

namespace detail {

inline constexpr int kBlue = 1;
inline constexpr int kRed = 2;
inline constexpr int kGreen = 3;

// Bridgeless, every vertex of degree 3 except possibly `skip`. Matching of
// the graph without `skip` goes solid blue, everything else bright blue.
inline std::vector<SemiColor> color_by_matching(const MultiGraph& g, Vertex skip) {
  std::vector<EdgeId> kept;
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    const auto [u, v] = g.endpoints(e);
    if (u != skip && v != skip) kept.push_back(e);
  }
  const Subgraph rest = edge_subgraph(g, kept, all_vertices(g));
  const auto m = max_matching(rest.graph);
  const int needed = (g.num_vertices() - (skip >= 0 ? 1 : 0)) / 2;
  ensure(static_cast<int>(m.size()) == needed,
         "semi_color_subcubic: bridgeless component lacks the expected perfect matching");
  std::vector<SemiColor> colors(g.num_edges(), SemiColor::bright(kRed, kGreen));
  for (EdgeId e : m) colors[rest.to_parent_edge[e]] = SemiColor::solid(kBlue);
  return colors;
}

// Semi-colors a connected bridgeless graph whose degrees lie in {0, 2, 3}.
inline std::vector<SemiColor> color_bridgeless(const MultiGraph& g) {
  const int n = g.num_vertices();
  if (g.num_edges() == 0) return {};
  std::vector<Vertex> deg2;
  for (Vertex v = 0; v < n; ++v) {
    ensure(g.degree(v) == 2 || g.degree(v) == 3, "semi_color_subcubic: bridgeless piece with degree not in {2,3}");
    if (g.degree(v) == 2) deg2.push_back(v);
  }
  if (deg2.empty()) return color_by_matching(g, -1);
  if (deg2.size() == 1) return color_by_matching(g, deg2.front());

  // Two copies of g with corresponding degree-2 vertices joined. The result is
  // cubic, and bridgeless because any connector lies on the cycle formed by
  // the two copies of a path between two degree-2 vertices.
  std::vector<Edge> doubled = g.edges();
  for (const Edge& e : g.edges()) doubled.push_back({e.u + n, e.v + n});
  for (Vertex v : deg2) doubled.push_back({v, v + n});
  const MultiGraph big(2 * n, doubled);
  ensure(structural_predicates(big).bridges.empty(), "semi_color_subcubic: doubled graph has a bridge");
  std::vector<SemiColor> big_colors = color_by_matching(big, -1);
  std::vector<SemiColor> colors(big_colors.begin(), big_colors.begin() + g.num_edges());

  // A degree-2 vertex whose connector was bright now ends a bright path.
  // Recoloring that path red/green fixes both of its ends.
  auto bright_darts = [&](Vertex v) {
    std::vector<Dart> out;
    for (Dart d : g.darts_at(v))
      if (colors[edge_of(d)].is_bright()) out.push_back(d);
    return out;
  };
  auto count_bad = [&] {
    int bad = 0;
    for (Vertex v : deg2) bad += bright_darts(v).size() == 1;
    return bad;
  };
  int bad = count_bad();
  int iterations = 0;
  for (Vertex v : deg2) {
    auto start = bright_darts(v);
    if (start.size() != 1) continue;
    ensure(++iterations <= g.num_edges(), "semi_color_subcubic: repair loop exceeded |E| iterations");
    Dart d = start.front();
    int c = kRed;
    for (;;) {
      colors[edge_of(d)] = SemiColor::solid(c);
      c = c == kRed ? kGreen : kRed;
      const auto more = bright_darts(g.head(d));
      if (more.empty()) break;
      ensure(more.size() == 1, "semi_color_subcubic: bright path branches");
      d = more.front();
    }
    const int now = count_bad();
    ensure(now < bad, "semi_color_subcubic: path repair did not reduce violating vertices");
    bad = now;
  }
  ensure(bad == 0, "semi_color_subcubic: violating degree-2 vertices remain");
  return colors;
}

inline SemiColor rename(const SemiColor& c, const std::array<int, 4>& map) {
  return c.is_solid() ? SemiColor::solid(map[c.first()]) : SemiColor::bright(map[c.first()], map[c.second()]);
}

}  // namespace detail

// Semi-coloring with palette {1, 2, 3} of any graph with maximum degree <= 3.
// Bridges are removed, each 2-edge-connected piece is colored on its own, and
// the bridges are added back one at a time, renaming colors on one side so
// that both endpoints share a free color.
inline SemiColoring semi_color_subcubic(const MultiGraph& g) {
  require(g.max_degree() <= 3, "semi_color_subcubic: maximum degree exceeds 3");
  const int n = g.num_vertices();
  const Structure s = structural_predicates(g);
  std::vector<char> is_bridge(g.num_edges(), 0);
  for (EdgeId e : s.bridges) is_bridge[e] = 1;

  SemiColoring sc;
  sc.delta = 3;
  sc.color_of.assign(g.num_edges(), SemiColor::solid(1));

  const Subgraph core = remove_edges(g, s.bridges);
  const Structure pieces = structural_predicates(core.graph);
  std::vector<std::vector<Vertex>> members(pieces.num_components);
  for (Vertex v = 0; v < n; ++v) members[pieces.component[v]].push_back(v);
  std::vector<std::vector<EdgeId>> piece_edges(pieces.num_components);
  for (EdgeId e = 0; e < core.graph.num_edges(); ++e)
    piece_edges[pieces.component[core.graph.endpoints(e).u]].push_back(e);

  // Edges of each merged piece in parent ids, for renaming.
  std::vector<std::vector<EdgeId>> owned(pieces.num_components);
  for (int p = 0; p < pieces.num_components; ++p) {
    const Subgraph sub = edge_subgraph(core.graph, piece_edges[p], members[p]);
    const auto colors = detail::color_bridgeless(sub.graph);
    for (EdgeId e = 0; e < sub.graph.num_edges(); ++e) {
      const EdgeId parent = core.to_parent_edge[sub.to_parent_edge[e]];
      sc.color_of[parent] = colors[e];
      owned[p].push_back(parent);
    }
  }

  std::vector<int> root(pieces.num_components);
  std::iota(root.begin(), root.end(), 0);
  auto find = [&](int x) {
    while (root[x] != x) x = root[x] = root[root[x]];
    return x;
  };
  std::vector<char> colored(g.num_edges(), 0);
  for (EdgeId e = 0; e < g.num_edges(); ++e) colored[e] = !is_bridge[e];

  auto free_colors = [&](Vertex v) {
    std::array<int, 4> weight2{};
    for (Dart d : g.darts_at(v)) {
      if (!colored[edge_of(d)]) continue;
      const SemiColor& c = sc.color_of[edge_of(d)];
      weight2[c.first()] += c.is_solid() ? 2 : 1;
      if (c.is_bright()) weight2[c.second()] += 1;
    }
    std::vector<int> out;
    for (int c = 1; c <= 3; ++c)
      if (weight2[c] == 0) out.push_back(c);
    return out;
  };

  for (EdgeId b : s.bridges) {
    const auto [u, v] = g.endpoints(b);
    const int pu = find(pieces.component[u]);
    const int pv = find(pieces.component[v]);
    ensure(pu != pv, "semi_color_subcubic: bridge inside a merged piece");
    const auto fu = free_colors(u);
    const auto fv = free_colors(v);
    ensure(!fu.empty() && !fv.empty(), "semi_color_subcubic: bridge endpoint has no free color");
    int chosen = -1;
    for (int c : fu)
      if (std::find(fv.begin(), fv.end(), c) != fv.end()) {
        chosen = c;
        break;
      }
    if (chosen < 0) {
      std::array<int, 4> swap{0, 1, 2, 3};
      std::swap(swap[fu.front()], swap[fv.front()]);
      for (EdgeId e : owned[pv]) sc.color_of[e] = detail::rename(sc.color_of[e], swap);
      chosen = fu.front();
    }
    sc.color_of[b] = SemiColor::solid(chosen);
    colored[b] = 1;
    const int keep = owned[pu].size() >= owned[pv].size() ? pu : pv;
    const int drop = keep == pu ? pv : pu;
    owned[keep].insert(owned[keep].end(), owned[drop].begin(), owned[drop].end());
    owned[keep].push_back(b);
    owned[drop].clear();
    root[drop] = keep;
  }
  return sc;
}

// Semi-colorings of the easy families: class-1 graphs (from a supplied
// Delta-edge-coloring), 2k-regular graphs (factor i becomes bright
// {i, k+i}), and (2k+1)-regular graphs with a perfect matching (matching solid
// 2k+1, the rest as in the even case).
inline SemiColoring semi_color_family(const MultiGraph& g, const std::optional<EdgeColoring>& coloring = std::nullopt,
                                      const std::optional<std::vector<EdgeId>>& matching = std::nullopt) {
  const int delta = g.max_degree();
  SemiColoring sc;
  sc.delta = delta;
  if (coloring) {
    require(is_proper(g, *coloring) && coloring->num_colors <= delta,
            "semi_color_family: supplied coloring is not a proper Delta-edge-coloring");
    for (int c : coloring->color_of) sc.color_of.push_back(SemiColor::solid(c + 1));
    return sc;
  }
  const auto reg = g.regular_degree();
  require(reg.has_value() && *reg > 0, "semi_color_family: graph is in no supported family");

  auto color_even = [&](const MultiGraph& even, std::span<const EdgeId> to_parent, int k) {
    const TwoFactorization f = two_factorization(even);
    for (int i = 0; i < k; ++i)
      for (Vertex v = 0; v < even.num_vertices(); ++v)
        sc.color_of[to_parent[edge_of(f.out_dart[i][v])]] = SemiColor::bright(i + 1, k + i + 1);
  };

  sc.color_of.assign(g.num_edges(), SemiColor::solid(1));
  if (*reg % 2 == 0) {
    std::vector<EdgeId> ids(g.num_edges());
    std::iota(ids.begin(), ids.end(), 0);
    color_even(g, ids, *reg / 2);
    return sc;
  }
  const std::vector<EdgeId> m = matching ? *matching : max_matching(g);
  require(is_perfect_matching(g, m), "semi_color_family: odd-regular graph without a perfect matching");
  const int k = *reg / 2;
  for (EdgeId e : m) sc.color_of[e] = SemiColor::solid(2 * k + 1);
  if (k > 0) {
    const Subgraph rest = remove_edges(g, m);
    color_even(rest.graph, rest.to_parent_edge, k);
  }
  return sc;
}

// 4-edge-coloring of a loopless cubic graph: semi-color, then recolor each
// bright {i, j} cycle alternately i, j, giving the last edge of an odd cycle
// the fourth color. Colors in the result are 0-based (solid i -> i - 1,
// fourth color -> 3).
inline EdgeColoring vizing4_cubic(const MultiGraph& g) {
  require(g.regular_degree() == 3, "vizing4_cubic: graph is not cubic");
  require(!g.has_loop(), "vizing4_cubic: loops admit no proper edge coloring");
  const SemiColoring sc = semi_color_subcubic(g);
  EdgeColoring out;
  out.num_colors = 4;
  out.color_of.assign(g.num_edges(), -1);
  for (EdgeId e = 0; e < g.num_edges(); ++e)
    if (sc.color_of[e].is_solid()) out.color_of[e] = sc.color_of[e].first() - 1;
  for (const auto& cyc : bright_cycles(g, sc)) {
    const std::size_t len = cyc.darts.size();
    for (std::size_t t = 0; t < len; ++t)
      out.color_of[edge_of(cyc.darts[t])] = (t % 2 == 0 ? cyc.i : cyc.j) - 1;
    if (len % 2 == 1) out.color_of[edge_of(cyc.darts[len - 1])] = 3;
  }
  return out;
}

// The (2k+1)-regular classifier gadget. Vertex 0 is the main pivot, vertices
// 1..2k+1 are the secondary pivots (secondary pivot i heads cluster i), and
// every edge at the main pivot is a bridge.
struct Gadget {
  MultiGraph graph;
  Vertex main_pivot = 0;
  std::vector<Vertex> secondary_pivots;
  int k = 0;
  SemiColoring coloring;
};

inline int gadget_vertex_count(int k) { return (2 * k + 1) * (k * (2 * k + 2) + 1) + 1; }

inline Gadget build_gadget(int k) {
  require(k >= 1, "build_gadget: k must be positive");
  const int width = 2 * k + 2;   // vertices per K_{2k+2} copy
  const int clusters = 2 * k + 1;
  const int n = gadget_vertex_count(k);
  Gadget gadget;
  gadget.k = k;
  for (int i = 1; i <= clusters; ++i) gadget.secondary_pivots.push_back(i);

  std::vector<Edge> edges;
  std::vector<std::vector<EdgeId>> cluster_edges(clusters + 1);
  std::vector<std::vector<EdgeId>> cluster_matching(clusters + 1);
  auto add = [&](Vertex u, Vertex v, int cluster, bool matched) {
    const EdgeId id = static_cast<EdgeId>(edges.size());
    edges.push_back({u, v});
    cluster_edges[cluster].push_back(id);
    if (matched) cluster_matching[cluster].push_back(id);
  };
  for (int i = 1; i <= clusters; ++i) {
    add(0, i, i, true);
    for (int t = 0; t < k; ++t) {
      const Vertex base = clusters + 1 + ((i - 1) * k + t) * width;
      // Lexicographic perfect matching avoiding the removed edge a0-a1:
      // a0-a2, a1-a3, then a4-a5, a6-a7, ...
      auto matched = [](int a, int b) {
        if (a == 0 && b == 2) return true;
        if (a == 1 && b == 3) return true;
        return a >= 4 && a % 2 == 0 && b == a + 1;
      };
      for (int a = 0; a < width; ++a)
        for (int b = a + 1; b < width; ++b)
          if (!(a == 0 && b == 1)) add(base + a, base + b, i, matched(a, b));
      add(i, base, i, false);
      add(i, base + 1, i, false);
    }
  }
  gadget.graph = MultiGraph(n, edges);

  SemiColoring& sc = gadget.coloring;
  sc.delta = clusters;
  sc.color_of.assign(edges.size(), SemiColor::solid(1));
  for (int i = 1; i <= clusters; ++i) {
    for (EdgeId e : cluster_matching[i]) sc.color_of[e] = SemiColor::solid(i);
    std::vector<EdgeId> residual;
    for (EdgeId e : cluster_edges[i])
      if (std::find(cluster_matching[i].begin(), cluster_matching[i].end(), e) == cluster_matching[i].end())
        residual.push_back(e);
    std::vector<Vertex> verts{i};
    for (int t = 0; t < k; ++t)
      for (int a = 0; a < width; ++a) verts.push_back(clusters + 1 + ((i - 1) * k + t) * width + a);
    const Subgraph sub = edge_subgraph(gadget.graph, residual, verts);
    const TwoFactorization f = two_factorization(sub.graph);
    std::vector<int> rest;
    for (int c = 1; c <= clusters; ++c)
      if (c != i) rest.push_back(c);
    for (int j = 0; j < k; ++j)
      for (Vertex v = 0; v < sub.graph.num_vertices(); ++v)
        sc.color_of[sub.to_parent_edge[edge_of(f.out_dart[j][v])]] = SemiColor::bright(rest[2 * j], rest[2 * j + 1]);
  }
  return gadget;
}

// Structural facts the classifier relies on.
struct GadgetCheck {
  bool regular = false;
  bool vertex_count = false;
  bool pivot_edges_are_bridges = false;
  bool pivot_on_no_cycle = false;
  bool coloring_valid = false;
  bool ok() const { return regular && vertex_count && pivot_edges_are_bridges && pivot_on_no_cycle && coloring_valid; }
};

inline GadgetCheck check_gadget(const Gadget& gadget) {
  GadgetCheck c;
  const MultiGraph& g = gadget.graph;
  c.regular = g.regular_degree() == 2 * gadget.k + 1;
  c.vertex_count = g.num_vertices() == gadget_vertex_count(gadget.k);
  const Structure s = structural_predicates(g);
  c.pivot_edges_are_bridges = true;
  for (Dart d : g.darts_at(gadget.main_pivot))
    if (!std::binary_search(s.bridges.begin(), s.bridges.end(), edge_of(d))) c.pivot_edges_are_bridges = false;
  // A simple cycle through the main pivot would connect two of its
  // neighbors (or one neighbor twice) in the graph without the pivot.
  std::vector<EdgeId> away;
  for (Dart d : g.darts_at(gadget.main_pivot)) away.push_back(edge_of(d));
  const Subgraph rest = remove_edges(g, away);
  const Structure rs = structural_predicates(rest.graph);
  std::vector<Vertex> nbrs = neighbors(g, gadget.main_pivot);
  c.pivot_on_no_cycle = std::adjacent_find(nbrs.begin(), nbrs.end()) == nbrs.end();
  for (std::size_t a = 0; a < nbrs.size(); ++a)
    for (std::size_t b = a + 1; b < nbrs.size(); ++b)
      if (rs.component[nbrs[a]] == rs.component[nbrs[b]]) c.pivot_on_no_cycle = false;
  c.coloring_valid = validate_semi_coloring(g, gadget.coloring).valid;
  return c;
}

}  // namespace tightprod
