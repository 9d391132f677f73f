#include <gtest/gtest.h>

#include "oracles.hpp"
#include "tightprod/factorization.hpp"
#include "tightprod/generators.hpp"

using namespace tightprod;

namespace {

void expect_balanced(const MultiGraph& g, const Orientation& o) {
  for (Vertex v = 0; v < g.num_vertices(); ++v) {
    int out = 0;
    for (Dart d : g.darts_at(v)) out += o.outgoing[d];
    EXPECT_EQ(2 * out, g.degree(v)) << "vertex " << v;
  }
  for (EdgeId e = 0; e < g.num_edges(); ++e) EXPECT_NE(o.outgoing[2 * e], o.outgoing[2 * e + 1]);
}

void expect_reassembles(const MultiGraph& g) {
  const TwoFactorization f = two_factorization(g);
  ASSERT_EQ(static_cast<int>(f.factors.size()), *g.regular_degree() / 2);
  const MultiGraph back = from_permutations(to_permutation_graph(f, g.num_vertices()));
  EXPECT_EQ(adjacency_matrix(back), adjacency_matrix(g));
  // Every edge is used by exactly one (factor, vertex) out-dart.
  std::vector<int> used(g.num_edges(), 0);
  for (std::size_t i = 0; i < f.factors.size(); ++i)
    for (Vertex v = 0; v < g.num_vertices(); ++v) {
      const Dart d = f.out_dart[i][v];
      EXPECT_EQ(g.dart_vertex(d), v);
      EXPECT_EQ(g.head(d), f.factors[i](v));
      ++used[edge_of(d)];
    }
  for (int u : used) EXPECT_EQ(u, 1);
}

}  // namespace

TEST(EulerianOrientation, Examples) {
  expect_balanced(gen::cycle(5), eulerian_orientation(gen::cycle(5)));
  const MultiGraph loop(1, std::vector<Edge>{{0, 0}});
  expect_balanced(loop, eulerian_orientation(loop));
  expect_balanced(gen::complete(5), eulerian_orientation(gen::complete(5)));
  EXPECT_THROW(eulerian_orientation(gen::complete(4)), InputError);
}

TEST(EulerianOrientation, RandomEvenGraphs) {
  Rng rng(21);
  for (int t = 0; t < 100; ++t) {
    const int n = 1 + static_cast<int>(rng.below(12));
    const MultiGraph g = gen::random_regular(n, 2 * (1 + static_cast<int>(rng.below(4))), rng, false);
    expect_balanced(g, eulerian_orientation(g));
  }
}

TEST(TwoFactorization, Examples) {
  const TwoFactorization c6 = two_factorization(gen::cycle(6));
  ASSERT_EQ(c6.factors.size(), 1u);
  Vertex v = 0;
  for (int i = 0; i < 6; ++i) v = c6.factors[0](v);
  EXPECT_EQ(v, 0);
  EXPECT_NE(c6.factors[0](0), 0);
  expect_reassembles(gen::complete(5));
  const MultiGraph two_loops(1, std::vector<Edge>{{0, 0}, {0, 0}});
  const TwoFactorization f = two_factorization(two_loops);
  ASSERT_EQ(f.factors.size(), 2u);
  EXPECT_TRUE(f.factors[0].is_identity());
  EXPECT_TRUE(f.factors[1].is_identity());
}

TEST(TwoFactorization, RejectsOddOrIrregular) {
  EXPECT_THROW(two_factorization(gen::complete(4)), InputError);
  EXPECT_THROW(two_factorization(gen::path(3)), InputError);
}

TEST(TwoFactorization, ReassemblyOnRandomMultigraphs) {
  Rng rng(23);
  for (int t = 0; t < 200; ++t) {
    const int n = 1 + static_cast<int>(rng.below(12));
    const int d = 1 + static_cast<int>(rng.below(4));
    const bool loops = n == 1 || rng.below(2) == 0;
    expect_reassembles(gen::random_regular(n, 2 * d, rng, !loops));
  }
  expect_reassembles(gen::disjoint_union(gen::cycle(3), gen::cycle(4)));
}

TEST(TwoFactorization, CyclesAreCanonical) {
  Rng rng(29);
  for (int t = 0; t < 50; ++t) {
    const MultiGraph g = gen::random_regular(2 + static_cast<int>(rng.below(10)), 4, rng);
    const TwoFactorization f = two_factorization(g);
    for (std::size_t i = 0; i < f.factors.size(); ++i) {
      const Permutation& p = f.factors[i];
      const Permutation inv = p.inverse();
      std::vector<char> seen(g.num_vertices(), 0);
      for (Vertex s = 0; s < g.num_vertices(); ++s) {
        if (seen[s]) continue;
        for (Vertex v = s; !seen[v]; v = p(v)) seen[v] = 1;
        EXPECT_LE(f.out_dart[i][s], mate(f.out_dart[i][inv(s)]));
      }
    }
  }
}

TEST(BipartiteOneFactorization, Examples) {
  auto check = [](const MultiGraph& g, const std::vector<int>& side, std::size_t k) {
    const auto ms = regular_bipartite_one_factorization(g, side);
    ASSERT_EQ(ms.size(), k);
    std::vector<int> used(g.num_edges(), 0);
    for (const auto& m : ms) {
      EXPECT_TRUE(is_perfect_matching(g, m));
      for (EdgeId e : m) ++used[e];
    }
    for (int u : used) EXPECT_EQ(u, 1);
  };
  check(gen::cycle(6), {0, 1, 0, 1, 0, 1}, 2);
  check(gen::complete_bipartite(3, 3), {0, 0, 0, 1, 1, 1}, 3);
  check(MultiGraph(2, std::vector<Edge>{{0, 1}, {0, 1}}), {0, 1}, 2);
  EXPECT_THROW(regular_bipartite_one_factorization(gen::cycle(3), std::vector<int>{0, 1, 0}), InputError);
}

TEST(MaxMatching, Examples) {
  const auto pm = max_matching(gen::petersen());
  EXPECT_EQ(pm.size(), 5u);
  EXPECT_TRUE(is_perfect_matching(gen::petersen(), pm));
  EXPECT_EQ(max_matching(gen::complete(4)).size(), 2u);
  EXPECT_EQ(max_matching(gen::complete_bipartite(1, 3)).size(), 1u);
  EXPECT_TRUE(max_matching(MultiGraph(1, std::vector<Edge>{{0, 0}})).empty());
}

TEST(MaxMatching, AgreesWithExhaustiveOracle) {
  Rng rng(31);
  for (int t = 0; t < 100; ++t) {
    const int n = 1 + static_cast<int>(rng.below(10));
    const MultiGraph g = gen::random_bounded_degree(n, 1 + static_cast<int>(rng.below(5)), 3 * n, rng, true, true);
    const auto m = max_matching(g);
    EXPECT_TRUE(is_matching(g, m));
    EXPECT_EQ(static_cast<int>(m.size()), oracle::max_matching_size(g));
  }
  for (int t = 0; t < 20; ++t) {
    const MultiGraph g = gen::random_regular(16, 3, rng);
    EXPECT_EQ(static_cast<int>(max_matching(g).size()), oracle::max_matching_size(g));
  }
}

TEST(MaxMatching, BridgelessCubicGraphsHavePerfectMatchings) {
  Rng rng(37);
  int checked = 0;
  while (checked < 100) {
    const MultiGraph g = gen::random_regular(2 * (1 + static_cast<int>(rng.below(12))), 3, rng);
    if (!structural_predicates(g).bridges.empty()) continue;
    EXPECT_TRUE(is_perfect_matching(g, max_matching(g)));
    ++checked;
  }
}

TEST(EdgeColoring, IsProperRejectsConflictsAndLoops) {
  const MultiGraph tri = gen::cycle(3);
  EXPECT_TRUE(is_proper(tri, {{0, 1, 2}, 3}));
  EXPECT_FALSE(is_proper(tri, {{0, 0, 1}, 3}));
  EXPECT_FALSE(is_proper(MultiGraph(1, std::vector<Edge>{{0, 0}}), {{0}, 1}));
}

TEST(ExactEdgeChromatic, Examples) {
  const ColoringSearch k4 = exact_edge_chromatic(gen::complete(4), 3);
  ASSERT_EQ(k4.status, SearchStatus::found);
  EXPECT_TRUE(is_proper(gen::complete(4), *k4.coloring));
  EXPECT_LE(k4.coloring->num_colors, 3);

  EXPECT_EQ(exact_edge_chromatic(gen::petersen(), 3).status, SearchStatus::absent);
  const ColoringSearch p4 = exact_edge_chromatic(gen::petersen(), 4);
  ASSERT_EQ(p4.status, SearchStatus::found);
  EXPECT_TRUE(is_proper(gen::petersen(), *p4.coloring));
}

TEST(ExactEdgeChromatic, NodeCapGivesUndecided) {
  EXPECT_EQ(exact_edge_chromatic(gen::petersen(), 3, 5).status, SearchStatus::undecided);
}

TEST(ExactEdgeChromatic, AgreesWithPlainBacktracking) {
  Rng rng(41);
  for (int t = 0; t < 60; ++t) {
    const int n = 2 + static_cast<int>(rng.below(7));
    const MultiGraph g = gen::random_bounded_degree(n, 3, 2 * n, rng, false, t % 2 == 0);
    const int delta = g.max_degree();
    for (int budget = std::max(0, delta - 1); budget <= delta; ++budget) {
      const ColoringSearch s = exact_edge_chromatic(g, budget);
      ASSERT_NE(s.status, SearchStatus::undecided);
      EXPECT_EQ(s.status == SearchStatus::found, oracle::edge_colorable(g, budget));
      if (s.coloring) {
        EXPECT_TRUE(is_proper(g, *s.coloring));
      }
    }
  }
}

TEST(ExactEdgeChromatic, VizingDichotomyResolves) {
  Rng rng(43);
  for (int t = 0; t < 60; ++t) {
    const int n = 2 + static_cast<int>(rng.below(12));
    const MultiGraph g = gen::random_bounded_degree(n, 3 + static_cast<int>(rng.below(2)), 2 * n, rng, false, false);
    if (g.num_edges() > 30) continue;
    const ColoringSearch a = exact_edge_chromatic(g, g.max_degree());
    const ColoringSearch b = exact_edge_chromatic(g, g.max_degree() + 1);
    EXPECT_NE(a.status, SearchStatus::undecided);
    EXPECT_EQ(b.status, SearchStatus::found);
  }
}
