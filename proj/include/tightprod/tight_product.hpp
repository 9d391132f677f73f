#pragma once

// Covering maps and tight products.
//
// A covering map is checked at dart resolution: the dart map must commute
// with incidence and with the edge involution, and must restrict to a
// bijection from the darts at v onto the darts at vertex_map[v]. This is the
// neighbor-multiset condition made exact for loops and parallel edges.
//
// The vertex (v, u) of a product of g1 and g2 is v * |V(g2)| + u.

#include <algorithm>
#include <functional>
#include <numeric>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tightprod/factorization.hpp"
#include "tightprod/graph.hpp"
#include "tightprod/semi_coloring.hpp"

namespace tightprod {

struct CoveringMap {
  MultiGraph source;
  MultiGraph target;
  std::vector<Vertex> vertex_map;
  std::vector<Dart> dart_map;
};

struct CoveringReport {
  bool valid = false;
  std::string failure;               // empty when valid
  std::optional<Dart> bad_dart;      // first violating source dart, if any
  std::optional<Vertex> bad_vertex;  // first violating source vertex, if any
  std::vector<int> fiber_sizes;
  bool fibers_equal = false;
  std::optional<int> covering_number;  // set when the target is connected
};

inline CoveringReport verify_covering(const CoveringMap& cm) {
  const MultiGraph& s = cm.source;
  const MultiGraph& t = cm.target;
  require(static_cast<int>(cm.vertex_map.size()) == s.num_vertices(), "verify_covering: vertex map size mismatch");
  require(static_cast<int>(cm.dart_map.size()) == s.num_darts(), "verify_covering: dart map size mismatch");
  CoveringReport r;
  auto fail = [&](std::string why, std::optional<Dart> d, std::optional<Vertex> v) {
    r.valid = false;
    r.failure = std::move(why);
    r.bad_dart = d;
    r.bad_vertex = v;
    return r;
  };
  for (Vertex v = 0; v < s.num_vertices(); ++v)
    if (cm.vertex_map[v] < 0 || cm.vertex_map[v] >= t.num_vertices())
      return fail("vertex image out of range", std::nullopt, v);
  for (Dart x = 0; x < s.num_darts(); ++x) {
    const Dart y = cm.dart_map[x];
    if (y < 0 || y >= t.num_darts()) return fail("dart image out of range", x, s.dart_vertex(x));
    if (t.dart_vertex(y) != cm.vertex_map[s.dart_vertex(x)])
      return fail("dart image is not incident to the image vertex", x, s.dart_vertex(x));
    if (cm.dart_map[mate(x)] != mate(y)) return fail("dart map does not commute with the involution", x, s.dart_vertex(x));
  }
  std::vector<int> hit(t.num_darts(), -1);
  for (Vertex v = 0; v < s.num_vertices(); ++v) {
    if (s.degree(v) != t.degree(cm.vertex_map[v]))
      return fail("degree of vertex differs from degree of its image", std::nullopt, v);
    for (Dart x : s.darts_at(v)) {
      if (hit[cm.dart_map[x]] == v) return fail("two darts at a vertex map to the same dart", x, v);
      hit[cm.dart_map[x]] = v;
    }
  }
  r.fiber_sizes.assign(t.num_vertices(), 0);
  for (Vertex v : cm.vertex_map) ++r.fiber_sizes[v];
  r.fibers_equal = std::adjacent_find(r.fiber_sizes.begin(), r.fiber_sizes.end(), std::not_equal_to<>()) ==
                   r.fiber_sizes.end();
  if (structural_predicates(t).connected) {
    if (!r.fibers_equal) return fail("fibers over a connected target differ in size", std::nullopt, std::nullopt);
    r.covering_number = t.num_vertices() > 0 ? r.fiber_sizes.front() : 0;
  }
  r.valid = true;
  return r;
}

// The neighbor-multiset form of the covering condition, checked directly from
// a vertex map.
inline bool is_covering_vertex_map(const MultiGraph& source, const MultiGraph& target,
                                   const std::vector<Vertex>& vertex_map) {
  if (static_cast<int>(vertex_map.size()) != source.num_vertices()) return false;
  for (Vertex v = 0; v < source.num_vertices(); ++v) {
    const Vertex x = vertex_map[v];
    if (x < 0 || x >= target.num_vertices()) return false;
    std::vector<Vertex> image;
    for (Vertex w : neighbors(source, v)) image.push_back(vertex_map[w]);
    std::sort(image.begin(), image.end());
    if (image != neighbors(target, x)) return false;
  }
  return true;
}

// Builds a dart map for a vertex map satisfying the neighbor-multiset
// condition, or returns nullopt. Edges between fibers over distinct x, y form
// an m-regular bipartite graph (m = multiplicity of xy) and are split into m
// matchings, one per parallel target edge. Edges inside the fiber over x form
// a 2L-regular graph (L = loops at x) and are 2-factorized, one oriented
// factor per target loop.
inline std::optional<CoveringMap> infer_covering(const MultiGraph& source, const MultiGraph& target,
                                                 std::vector<Vertex> vertex_map) {
  if (!is_covering_vertex_map(source, target, vertex_map)) return std::nullopt;
  CoveringMap cm{source, target, std::move(vertex_map), std::vector<Dart>(source.num_darts(), -1)};
  const auto& phi = cm.vertex_map;

  std::map<std::pair<Vertex, Vertex>, std::vector<EdgeId>> source_groups, target_groups;
  for (EdgeId e = 0; e < source.num_edges(); ++e) {
    const auto [u, v] = source.endpoints(e);
    source_groups[{std::min(phi[u], phi[v]), std::max(phi[u], phi[v])}].push_back(e);
  }
  for (EdgeId e = 0; e < target.num_edges(); ++e) {
    const auto [u, v] = target.endpoints(e);
    target_groups[{std::min(u, v), std::max(u, v)}].push_back(e);
  }

  for (const auto& [key, edges] : source_groups) {
    const auto& targets = target_groups[key];
    const auto [x, y] = key;
    std::vector<Vertex> verts;
    for (EdgeId e : edges) {
      verts.push_back(source.endpoints(e).u);
      verts.push_back(source.endpoints(e).v);
    }
    std::sort(verts.begin(), verts.end());
    verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
    const Subgraph local = edge_subgraph(source, edges, verts);

    if (x != y) {
      std::vector<int> side(verts.size());
      for (std::size_t i = 0; i < verts.size(); ++i) side[i] = phi[verts[i]] == x ? 0 : 1;
      const auto matchings = regular_bipartite_one_factorization(local.graph, side);
      ensure(matchings.size() == targets.size(), "infer_covering: matching count differs from multiplicity");
      for (std::size_t j = 0; j < matchings.size(); ++j) {
        const EdgeId te = targets[j];
        const Dart tx = target.dart_vertex(2 * te) == x ? 2 * te : 2 * te + 1;
        for (EdgeId le : matchings[j]) {
          const EdgeId se = local.to_parent_edge[le];
          const Dart sx = phi[source.dart_vertex(2 * se)] == x ? 2 * se : 2 * se + 1;
          cm.dart_map[sx] = tx;
          cm.dart_map[mate(sx)] = mate(tx);
        }
      }
    } else {
      const TwoFactorization f = two_factorization(local.graph);
      ensure(f.factors.size() == targets.size(), "infer_covering: factor count differs from loop count");
      for (std::size_t j = 0; j < f.factors.size(); ++j) {
        for (Dart od : f.out_dart[j]) {
          const Dart sd = 2 * local.to_parent_edge[edge_of(od)] + (od & 1);
          cm.dart_map[sd] = 2 * targets[j];
          cm.dart_map[mate(sd)] = 2 * targets[j] + 1;
        }
      }
    }
  }
  return cm;
}

inline CoveringMap identity_covering(const MultiGraph& g) {
  std::vector<Dart> darts(g.num_darts());
  for (Dart d = 0; d < g.num_darts(); ++d) darts[d] = d;
  return {g, g, all_vertices(g), std::move(darts)};
}

// Projection of standard_two_lift(g) onto g.
inline CoveringMap two_lift_projection(const MultiGraph& g) {
  const MultiGraph lift = standard_two_lift(g);
  std::vector<Vertex> vmap(lift.num_vertices());
  for (Vertex v = 0; v < lift.num_vertices(); ++v) vmap[v] = v % g.num_vertices();
  std::vector<Dart> dmap(lift.num_darts());
  for (Dart x = 0; x < lift.num_darts(); ++x) dmap[x] = 2 * edge_of(edge_of(x)) + (x & 1);
  return {lift, g, std::move(vmap), std::move(dmap)};
}

inline bool is_neighborly(const MultiGraph& g, const Permutation& sigma) {
  if (sigma.size() != g.num_vertices()) return false;
  for (Vertex v = 0; v < g.num_vertices(); ++v)
    if (multiplicity(g, v, sigma(v)) == 0) return false;
  return true;
}

// A permutation s with s(v) adjacent to v for every v. Found as a perfect
// matching of the standard 2-lift, read back as an oriented cycle cover, then
// oriented canonically.
inline Permutation neighborly_permutation(const MultiGraph& g) {
  const int n = g.num_vertices();
  require(g.regular_degree().has_value() && (n == 0 || *g.regular_degree() > 0),
          "neighborly_permutation: graph must be regular of positive degree");
  const MultiGraph lift = standard_two_lift(g);
  std::vector<int> side(2 * n, 0);
  std::fill(side.begin() + n, side.end(), 1);
  std::vector<char> allowed(lift.num_edges(), 1);
  const auto match = bipartite_perfect_matching(lift, side, allowed);
  ensure(match.has_value(), "neighborly_permutation: regular 2-lift without perfect matching");
  std::vector<Vertex> images(n);
  std::vector<Dart> out(n);
  for (Vertex v = 0; v < n; ++v) {
    const EdgeId le = (*match)[v];
    const EdgeId e = edge_of(le);
    const auto [a, b] = lift.endpoints(le);
    images[v] = (a == v ? b : a) - n;
    out[v] = (le % 2 == 0) ? 2 * e : 2 * e + 1;
  }
  Permutation sigma(std::move(images));
  canonicalize_cycles(sigma, out);
  return sigma;
}

// sigma[d] for every dart d of g1: the bijection from the fiber of the tail of
// d to the fiber of its head, as a permutation of V(g2).
struct NeighborlyFamily {
  MultiGraph g1;
  MultiGraph g2;
  std::vector<Permutation> sigma;
};

struct FamilyCheck {
  enum class Failure { none, shape, neighborly, inverse_symmetry, local_bijection };
  Failure failure = Failure::none;
  std::string detail;
  bool ok() const { return failure == Failure::none; }
};

inline const char* to_string(FamilyCheck::Failure f) {
  switch (f) {
    case FamilyCheck::Failure::none: return "none";
    case FamilyCheck::Failure::shape: return "shape";
    case FamilyCheck::Failure::neighborly: return "neighborly";
    case FamilyCheck::Failure::inverse_symmetry: return "inverse symmetry";
    case FamilyCheck::Failure::local_bijection: return "local bijection";
  }
  return "?";
}

inline FamilyCheck check_family(const NeighborlyFamily& nf) {
  using F = FamilyCheck::Failure;
  const int n2 = nf.g2.num_vertices();
  if (static_cast<int>(nf.sigma.size()) != nf.g1.num_darts()) return {F::shape, "one permutation per dart of g1 expected"};
  for (Dart d = 0; d < nf.g1.num_darts(); ++d)
    if (nf.sigma[d].size() != n2) return {F::shape, "permutation size differs from |V(g2)| at dart " + std::to_string(d)};
  for (Dart d = 0; d < nf.g1.num_darts(); ++d)
    if (!is_neighborly(nf.g2, nf.sigma[d])) return {F::neighborly, "dart " + std::to_string(d)};
  for (Dart d = 0; d < nf.g1.num_darts(); ++d)
    if (compose(nf.sigma[mate(d)], nf.sigma[d]) != Permutation::identity(n2))
      return {F::inverse_symmetry, "edge " + std::to_string(edge_of(d))};
  for (Vertex v1 = 0; v1 < nf.g1.num_vertices(); ++v1) {
    for (Vertex u1 = 0; u1 < n2; ++u1) {
      std::vector<Vertex> image;
      for (Dart d : nf.g1.darts_at(v1)) image.push_back(nf.sigma[d](u1));
      std::sort(image.begin(), image.end());
      if (image != neighbors(nf.g2, u1))
        return {F::local_bijection, "g1 vertex " + std::to_string(v1) + ", g2 vertex " + std::to_string(u1)};
    }
  }
  return {};
}

struct TightProduct {
  CoveringMap proj1;  // h -> g1
  CoveringMap proj2;  // h -> g2
  const MultiGraph& h() const { return proj1.source; }
  const MultiGraph& g1() const { return proj1.target; }
  const MultiGraph& g2() const { return proj2.target; }
};

struct ProductCheck {
  CoveringReport first;
  CoveringReport second;
  bool row_major = false;
  bool ok() const { return first.valid && second.valid && row_major; }
};

inline ProductCheck verify_product(const TightProduct& tp) {
  ProductCheck c;
  c.first = verify_covering(tp.proj1);
  c.second = verify_covering(tp.proj2);
  const int n1 = tp.g1().num_vertices(), n2 = tp.g2().num_vertices();
  c.row_major = tp.h().num_vertices() == n1 * n2 && tp.proj2.source.num_vertices() == n1 * n2;
  for (Vertex x = 0; c.row_major && x < n1 * n2; ++x)
    c.row_major = tp.proj1.vertex_map[x] == x / n2 && tp.proj2.vertex_map[x] == x % n2;
  return c;
}

// The unique product whose fiber bijections are nf.sigma. Product edge
// e * |V(g2)| + u joins (v1, u) and (v2, sigma[2e](u)) for g1 edge e = v1 v2.
inline TightProduct assemble_product(const NeighborlyFamily& nf) {
  const FamilyCheck check = check_family(nf);
  if (!check.ok())
    throw InputError(std::string("assemble_product: family violates the ") + to_string(check.failure) +
                     " condition (" + check.detail + ")");
  const int n1 = nf.g1.num_vertices(), n2 = nf.g2.num_vertices();
  std::vector<Edge> edges;
  std::vector<Dart> dmap1;
  edges.reserve(static_cast<std::size_t>(nf.g1.num_edges()) * n2);
  for (EdgeId e = 0; e < nf.g1.num_edges(); ++e) {
    const auto [v1, v2] = nf.g1.endpoints(e);
    for (Vertex u = 0; u < n2; ++u) {
      edges.push_back({v1 * n2 + u, v2 * n2 + nf.sigma[2 * e](u)});
      dmap1.push_back(2 * e);
      dmap1.push_back(2 * e + 1);
    }
  }
  MultiGraph h(n1 * n2, edges);
  std::vector<Vertex> vmap1(n1 * n2), vmap2(n1 * n2);
  for (Vertex x = 0; x < n1 * n2; ++x) {
    vmap1[x] = x / n2;
    vmap2[x] = x % n2;
  }
  auto proj2 = infer_covering(h, nf.g2, std::move(vmap2));
  ensure(proj2.has_value(), "assemble_product: second projection is not a covering");
  TightProduct tp{CoveringMap{h, nf.g1, std::move(vmap1), std::move(dmap1)}, std::move(*proj2)};
  ensure(verify_product(tp).ok(), "assemble_product: constructed product failed verification");
  return tp;
}

inline NeighborlyFamily family_from_product(const TightProduct& tp) {
  require(verify_product(tp).ok(), "family_from_product: input is not a valid tight product");
  const MultiGraph& h = tp.h();
  const int n2 = tp.g2().num_vertices();
  std::vector<std::vector<Vertex>> images(tp.g1().num_darts(), std::vector<Vertex>(n2, -1));
  for (Dart x = 0; x < h.num_darts(); ++x)
    images[tp.proj1.dart_map[x]][tp.proj2.vertex_map[h.dart_vertex(x)]] = tp.proj2.vertex_map[h.head(x)];
  NeighborlyFamily nf{tp.g1(), tp.g2(), {}};
  for (auto& im : images) nf.sigma.emplace_back(std::move(im));
  return nf;
}

// The same product seen as a product of g2 and g1.
inline TightProduct swap_factors(const TightProduct& tp) {
  const int n1 = tp.g1().num_vertices(), n2 = tp.g2().num_vertices();
  auto relabel = [&](Vertex x) { return (x % n2) * n1 + x / n2; };
  std::vector<Edge> edges;
  for (const Edge& e : tp.h().edges()) edges.push_back({relabel(e.u), relabel(e.v)});
  MultiGraph h(n1 * n2, edges);
  std::vector<Vertex> vmap1(n1 * n2), vmap2(n1 * n2);
  for (Vertex x = 0; x < n1 * n2; ++x) {
    vmap1[x] = x / n1;
    vmap2[x] = x % n1;
  }
  return {CoveringMap{h, tp.g2(), std::move(vmap1), tp.proj2.dart_map},
          CoveringMap{h, tp.g1(), std::move(vmap2), tp.proj1.dart_map}};
}

namespace detail {

inline void require_same_regularity(const MultiGraph& g1, const MultiGraph& g2, const char* who) {
  const auto d1 = g1.regular_degree(), d2 = g2.regular_degree();
  require(d1.has_value() && d2.has_value(), std::string(who) + ": both graphs must be regular");
  require(*d1 == *d2, std::string(who) + ": regularities differ (" + std::to_string(*d1) + " vs " +
                          std::to_string(*d2) + "); a tight product needs equal degrees");
}

// Assigns factor i of f1 (on g1) the permutation of factor i of g2.
inline void assign_factors(std::vector<Permutation>& sigma, const TwoFactorization& f1,
                           std::span<const EdgeId> to_parent, const std::vector<Permutation>& perms2) {
  for (std::size_t i = 0; i < f1.factors.size(); ++i) {
    const Permutation inv = perms2[i].inverse();
    for (Dart od : f1.out_dart[i]) {
      const Dart d = 2 * to_parent[edge_of(od)] + (od & 1);
      sigma[d] = perms2[i];
      sigma[mate(d)] = inv;
    }
  }
}

}  // namespace detail

// Both graphs 2d-regular: H = G((s_1, p_1), ..., (s_d, p_d)) from
// 2-factorizations of each factor.
inline TightProduct product_even_regular(const MultiGraph& g1, const MultiGraph& g2) {
  detail::require_same_regularity(g1, g2, "product_even_regular");
  require(*g1.regular_degree() % 2 == 0, "product_even_regular: degree is odd");
  const TwoFactorization f1 = two_factorization(g1);
  const TwoFactorization f2 = two_factorization(g2);
  NeighborlyFamily nf{g1, g2, std::vector<Permutation>(g1.num_darts())};
  std::vector<EdgeId> ids(g1.num_edges());
  std::iota(ids.begin(), ids.end(), 0);
  detail::assign_factors(nf.sigma, f1, ids, f2.factors);
  return assemble_product(nf);
}

inline Permutation matching_involution(const MultiGraph& g, std::span<const EdgeId> matching) {
  std::vector<Vertex> images(g.num_vertices(), -1);
  for (EdgeId e : matching) {
    const auto [u, v] = g.endpoints(e);
    images[u] = v;
    images[v] = u;
  }
  return Permutation(std::move(images));
}

// Both graphs (2d+1)-regular with perfect matchings m1, m2: the matchings pair
// up as one involutive generator, the remainders as in the even case.
inline TightProduct product_odd_matching(const MultiGraph& g1, const MultiGraph& g2,
                                         const std::vector<EdgeId>& m1, const std::vector<EdgeId>& m2) {
  detail::require_same_regularity(g1, g2, "product_odd_matching");
  require(*g1.regular_degree() % 2 == 1, "product_odd_matching: degree is even");
  require(is_perfect_matching(g1, m1), "product_odd_matching: m1 is not a perfect matching of g1");
  require(is_perfect_matching(g2, m2), "product_odd_matching: m2 is not a perfect matching of g2");
  const Permutation pairing2 = matching_involution(g2, m2);
  NeighborlyFamily nf{g1, g2, std::vector<Permutation>(g1.num_darts())};
  for (EdgeId e : m1) nf.sigma[2 * e] = nf.sigma[2 * e + 1] = pairing2;
  const Subgraph r1 = remove_edges(g1, m1);
  const Subgraph r2 = remove_edges(g2, m2);
  detail::assign_factors(nf.sigma, two_factorization(r1.graph), r1.to_parent_edge,
                         two_factorization(r2.graph).factors);
  return assemble_product(nf);
}

// Oriented cycle cover of F_i u F_j (colors 0-based), each cycle starting at
// its minimum vertex along the smaller dart.
inline Permutation two_color_cycles(const MultiGraph& g, const EdgeColoring& c, int i, int j) {
  const int n = g.num_vertices();
  std::vector<Vertex> images(n, -1);
  auto in_pair = [&](Dart d) { const int col = c.color_of[edge_of(d)]; return col == i || col == j; };
  for (Vertex start = 0; start < n; ++start) {
    if (images[start] >= 0) continue;
    Dart d = -1;
    for (Dart x : g.darts_at(start))
      if (in_pair(x)) {
        d = x;
        break;
      }
    ensure(d >= 0, "two_color_cycles: vertex misses a color class");
    for (;;) {
      const Vertex v = g.dart_vertex(d);
      images[v] = g.head(d);
      const Vertex w = g.head(d);
      if (images[w] >= 0) break;
      Dart next = -1;
      for (Dart x : g.darts_at(w))
        if (x != mate(d) && in_pair(x)) next = x;
      d = next;
    }
  }
  return Permutation(std::move(images));
}

// g1 semi-colored, g2 with a proper edge coloring using deg colors (a
// 1-factorization). Solid i edges get the involution of F_i; bright {i, j}
// cycles of g1 get the oriented F_i u F_j cycle cover, inverted against the
// cycle orientation.
inline TightProduct product_via_semicoloring(const MultiGraph& g1, const SemiColoring& sc, const MultiGraph& g2,
                                             const EdgeColoring& factorization) {
  detail::require_same_regularity(g1, g2, "product_via_semicoloring");
  const int deg = *g1.regular_degree();
  require(sc.delta == deg, "product_via_semicoloring: semi-coloring palette differs from the degree");
  require(validate_semi_coloring(g1, sc).valid, "product_via_semicoloring: invalid semi-coloring of g1");
  require(is_proper(g2, factorization) && factorization.num_colors == deg,
          "product_via_semicoloring: g2 coloring is not a 1-factorization");
  const auto classes = color_classes(factorization);
  std::vector<Permutation> involution;
  for (const auto& cls : classes) involution.push_back(matching_involution(g2, cls));

  NeighborlyFamily nf{g1, g2, std::vector<Permutation>(g1.num_darts())};
  for (EdgeId e = 0; e < g1.num_edges(); ++e) {
    const SemiColor& col = sc.color_of[e];
    if (col.is_solid()) nf.sigma[2 * e] = nf.sigma[2 * e + 1] = involution[col.first() - 1];
  }
  std::map<std::pair<int, int>, std::pair<Permutation, Permutation>> pair_perm;
  for (const BrightCycle& cyc : bright_cycles(g1, sc)) {
    auto it = pair_perm.find({cyc.i, cyc.j});
    if (it == pair_perm.end()) {
      Permutation p = two_color_cycles(g2, factorization, cyc.i - 1, cyc.j - 1);
      Permutation inv = p.inverse();
      it = pair_perm.emplace(std::pair{cyc.i, cyc.j}, std::pair{std::move(p), std::move(inv)}).first;
    }
    for (Dart d : cyc.darts) {
      nf.sigma[d] = it->second.first;
      nf.sigma[mate(d)] = it->second.second;
    }
  }
  return assemble_product(nf);
}

// Reads the edge coloring c(v1 v2) = sigma_{v1 v2}(main pivot) off a product
// of g (first factor) with the gadget. Colors are 0-based (secondary pivot i
// -> color i - 1). Throws InputError if the extracted map is not a proper
// coloring.
inline EdgeColoring extract_gadget_coloring(const TightProduct& tp, const Gadget& gadget) {
  const NeighborlyFamily nf = family_from_product(tp);
  require(nf.g2.num_vertices() == gadget.graph.num_vertices(), "extract_gadget_coloring: second factor is not the gadget");
  EdgeColoring c;
  c.num_colors = 2 * gadget.k + 1;
  for (EdgeId e = 0; e < nf.g1.num_edges(); ++e) {
    const Vertex forward = nf.sigma[2 * e](gadget.main_pivot);
    const Vertex backward = nf.sigma[2 * e + 1](gadget.main_pivot);
    require(forward == backward, "extract_gadget_coloring: color of edge " + std::to_string(e) + " is not well defined");
    const auto it = std::find(gadget.secondary_pivots.begin(), gadget.secondary_pivots.end(), forward);
    require(it != gadget.secondary_pivots.end(), "extract_gadget_coloring: pivot image is not a secondary pivot");
    c.color_of.push_back(static_cast<int>(it - gadget.secondary_pivots.begin()));
  }
  require(is_proper(nf.g1, c), "extract_gadget_coloring: extracted coloring is not proper");
  return c;
}

enum class Verdict { class1, class2, undecided };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::class1: return "class-1";
    case Verdict::class2: return "class-2";
    case Verdict::undecided: return "undecided";
  }
  return "?";
}

struct Classification {
  Verdict verdict = Verdict::undecided;
  std::optional<EdgeColoring> coloring;   // input coloring, supplied or found
  std::optional<TightProduct> product;    // g x gadget
  std::optional<EdgeColoring> extracted;  // read back from the product
  std::uint64_t search_nodes = 0;
};

// Class-1 iff a tight product with the gadget exists. A coloring (supplied or
// found by exact search) yields the product; the product yields a coloring
// again. Without a coloring the exact search decides class-2 or gives up.
inline Classification classify_class1_via_gadget(const MultiGraph& g, int k,
                                                  std::optional<EdgeColoring> coloring = std::nullopt,
                                                  std::uint64_t node_cap = 50'000'000) {
  require(k >= 1, "classify: k must be positive");
  require(g.regular_degree() == 2 * k + 1, "classify: graph is not (2k+1)-regular");
  Classification out;
  if (!coloring) {
    const ColoringSearch search = exact_edge_chromatic(g, 2 * k + 1, node_cap);
    out.search_nodes = search.nodes;
    if (search.status == SearchStatus::absent) {
      out.verdict = Verdict::class2;
      return out;
    }
    if (search.status == SearchStatus::undecided) return out;
    coloring = search.coloring;
  }
  require(is_proper(g, *coloring) && coloring->num_colors == 2 * k + 1, "classify: supplied coloring is not proper");
  const Gadget gadget = build_gadget(k);
  const TightProduct forward = product_via_semicoloring(gadget.graph, gadget.coloring, g, *coloring);
  out.product = swap_factors(forward);
  out.extracted = extract_gadget_coloring(*out.product, gadget);
  out.coloring = coloring;
  out.verdict = Verdict::class1;
  return out;
}

// For a bridge u1 u2 of g2, the g1 edges whose fiber bijection sends u1 to u2
// form a perfect matching of g1.
inline std::vector<EdgeId> bridge_matching_witness(const TightProduct& tp, EdgeId bridge) {
  const Structure s = structural_predicates(tp.g2());
  require(std::binary_search(s.bridges.begin(), s.bridges.end(), bridge),
          "bridge_matching_witness: edge " + std::to_string(bridge) + " is not a bridge of g2");
  const auto [u1, u2] = tp.g2().endpoints(bridge);
  const NeighborlyFamily nf = family_from_product(tp);
  std::vector<EdgeId> m;
  for (EdgeId e = 0; e < nf.g1.num_edges(); ++e) {
    const bool forward = nf.sigma[2 * e](u1) == u2;
    const bool backward = nf.sigma[2 * e + 1](u1) == u2;
    ensure(forward == backward, "bridge_matching_witness: matching is not well defined");
    if (forward) m.push_back(e);
  }
  ensure(is_perfect_matching(nf.g1, m), "bridge_matching_witness: extracted edges are not a perfect matching");
  return m;
}

struct BruteForceCaps {
  int max_g2_vertices = 6;
  int max_g1_edges = 10;
  std::uint64_t node_cap = 50'000'000;
};

struct BruteForceResult {
  SearchStatus status = SearchStatus::undecided;
  std::optional<TightProduct> product;
  std::uint64_t nodes = 0;
  std::string certificate;
};

// Exact decision by backtracking: each edge of g1 gets a neighborly
// permutation of g2 (its reverse dart the inverse), pruning as soon as some
// fiber sees a neighbor of g2 more often than its multiplicity.
inline BruteForceResult brute_force_tight_product(const MultiGraph& g1, const MultiGraph& g2,
                                                  const BruteForceCaps& caps = {}) {
  BruteForceResult out;
  const auto d1 = g1.regular_degree(), d2 = g2.regular_degree();
  if (!d1 || !d2 || *d1 != *d2) {
    out.status = SearchStatus::absent;
    out.certificate = "graphs are not regular of the same degree";
    return out;
  }
  if (g2.num_vertices() > caps.max_g2_vertices || g1.num_edges() > caps.max_g1_edges) {
    out.certificate = "instance exceeds brute-force caps";
    return out;
  }
  const int n1 = g1.num_vertices(), n2 = g2.num_vertices();
  std::vector<Permutation> candidates, inverses;
  {
    std::vector<Vertex> p(n2);
    std::iota(p.begin(), p.end(), 0);
    do {
      Permutation s(p);
      if (is_neighborly(g2, s)) {
        inverses.push_back(s.inverse());
        candidates.push_back(std::move(s));
      }
    } while (std::next_permutation(p.begin(), p.end()));
  }
  std::vector<int> mult(n2 * n2, 0);
  for (Vertex u = 0; u < n2; ++u)
    for (Vertex w = 0; w < n2; ++w) mult[u * n2 + w] = multiplicity(g2, u, w);

  // Edges in BFS order so that vertices close early.
  std::vector<EdgeId> order;
  {
    std::vector<char> seen_v(n1, 0), seen_e(g1.num_edges(), 0);
    for (Vertex r = 0; r < n1; ++r) {
      if (seen_v[r]) continue;
      std::vector<Vertex> queue{r};
      seen_v[r] = 1;
      for (std::size_t q = 0; q < queue.size(); ++q) {
        for (Dart d : g1.darts_at(queue[q])) {
          if (!seen_e[edge_of(d)]) {
            seen_e[edge_of(d)] = 1;
            order.push_back(edge_of(d));
          }
          if (!seen_v[g1.head(d)]) {
            seen_v[g1.head(d)] = 1;
            queue.push_back(g1.head(d));
          }
        }
      }
    }
  }

  std::vector<int> count(static_cast<std::size_t>(n1) * n2 * n2, 0);
  std::vector<int> choice(g1.num_edges(), -1);
  bool aborted = false;
  auto apply = [&](Vertex v, const Permutation& s, int delta) {
    bool ok = true;
    for (Vertex u = 0; u < n2; ++u) {
      int& c = count[(static_cast<std::size_t>(v) * n2 + u) * n2 + s(u)];
      c += delta;
      if (c > mult[u * n2 + s(u)]) ok = false;
    }
    return ok;
  };
  std::function<bool(std::size_t)> search = [&](std::size_t depth) -> bool {
    if (depth == order.size()) return true;
    if (++out.nodes > caps.node_cap) {
      aborted = true;
      return false;
    }
    const EdgeId e = order[depth];
    const auto [v1, v2] = g1.endpoints(e);
    for (std::size_t c = 0; c < candidates.size(); ++c) {
      const bool ok1 = apply(v1, candidates[c], +1);
      const bool ok2 = apply(v2, inverses[c], +1);
      if (ok1 && ok2) {
        choice[e] = static_cast<int>(c);
        if (search(depth + 1)) return true;
      }
      apply(v1, candidates[c], -1);
      apply(v2, inverses[c], -1);
      if (aborted) return false;
    }
    return false;
  };

  if (search(0)) {
    NeighborlyFamily nf{g1, g2, std::vector<Permutation>(g1.num_darts())};
    for (EdgeId e = 0; e < g1.num_edges(); ++e) {
      nf.sigma[2 * e] = candidates[choice[e]];
      nf.sigma[2 * e + 1] = inverses[choice[e]];
    }
    out.product = assemble_product(nf);
    out.status = SearchStatus::found;
  } else if (aborted) {
    out.certificate = "node cap reached";
  } else {
    out.status = SearchStatus::absent;
    out.certificate = "exhausted " + std::to_string(out.nodes) + " search nodes over " +
                      std::to_string(candidates.size()) + " neighborly permutations";
  }
  return out;
}

}  // namespace tightprod
