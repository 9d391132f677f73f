#include <gtest/gtest.h>

#include <Eigen/Dense>

#include "corpus.hpp"
#include "oracles.hpp"
#include "tightprod/generators.hpp"
#include "tightprod/spectral.hpp"
#include "tightprod/tight_product.hpp"

using namespace tightprod;

namespace {

void expect_product(const TightProduct& tp, int vertices) {
  const ProductCheck c = verify_product(tp);
  EXPECT_TRUE(c.first.valid) << c.first.failure;
  EXPECT_TRUE(c.second.valid) << c.second.failure;
  EXPECT_TRUE(c.row_major);
  EXPECT_EQ(tp.h().num_vertices(), vertices);
  EXPECT_EQ(tp.h().regular_degree(), tp.g1().regular_degree());
}

NeighborlyFamily constant_family(const MultiGraph& g1, const MultiGraph& g2, const Permutation& s) {
  NeighborlyFamily nf{g1, g2, {}};
  const Permutation inv = s.inverse();
  for (EdgeId e = 0; e < g1.num_edges(); ++e) {
    nf.sigma.push_back(s);
    nf.sigma.push_back(inv);
  }
  return nf;
}

std::pair<MultiGraph, EdgeColoring> three_colored(const MultiGraph& g) {
  const ColoringSearch s = exact_edge_chromatic(g, 3);
  if (!s.coloring) throw std::logic_error("graph is not 3-edge-colorable");
  return {g, *s.coloring};
}

// Some proper 2-coloring of each component, as 0/1 per vertex.
std::vector<int> bipartition(const MultiGraph& g) {
  const Structure s = structural_predicates(g);
  if (!s.bipartite) throw std::logic_error("not bipartite");
  return s.side;
}

}  // namespace

TEST(VerifyCovering, IdentityAndTwoLift) {
  const CoveringReport id = verify_covering(identity_covering(gen::petersen()));
  EXPECT_TRUE(id.valid);
  EXPECT_EQ(id.covering_number, 1);
  const CoveringReport lift = verify_covering(two_lift_projection(gen::petersen()));
  EXPECT_TRUE(lift.valid);
  EXPECT_EQ(lift.covering_number, 2);
}

TEST(VerifyCovering, HexagonOntoTriangleWithBadMapFails) {
  const MultiGraph c6 = gen::cycle(6), c3 = gen::cycle(3);
  // The correct wrap-around is a covering.
  auto good = infer_covering(c6, c3, {0, 1, 2, 0, 1, 2});
  ASSERT_TRUE(good.has_value());
  EXPECT_TRUE(verify_covering(*good).valid);
  EXPECT_EQ(verify_covering(*good).covering_number, 2);
  // Vertex 1 maps to 0 as well, so 0 -> 1 becomes a non-edge image.
  EXPECT_FALSE(is_covering_vertex_map(c6, c3, {0, 0, 2, 0, 1, 2}));
  EXPECT_FALSE(infer_covering(c6, c3, {0, 0, 2, 0, 1, 2}).has_value());
  CoveringMap bad = *good;
  bad.vertex_map[1] = 0;
  const CoveringReport r = verify_covering(bad);
  EXPECT_FALSE(r.valid);
  ASSERT_TRUE(r.bad_dart.has_value());
  EXPECT_TRUE(c6.dart_vertex(*r.bad_dart) == 1 || c6.head(*r.bad_dart) == 1);
}

TEST(VerifyCovering, SizeMismatchIsAnInputError) {
  CoveringMap cm = identity_covering(gen::cycle(3));
  cm.dart_map.pop_back();
  EXPECT_THROW(verify_covering(cm), InputError);
}

TEST(VerifyCovering, DartMapMustCommuteWithInvolution) {
  const MultiGraph dbl(2, std::vector<Edge>{{0, 1}, {0, 1}});
  CoveringMap cm = identity_covering(dbl);
  std::swap(cm.dart_map[0], cm.dart_map[2]);  // darts at vertex 0 exchanged, mates left alone
  EXPECT_TRUE(is_covering_vertex_map(dbl, dbl, cm.vertex_map));
  EXPECT_FALSE(verify_covering(cm).valid);
}

TEST(VerifyCovering, LoopsAndMultiEdgesInferred) {
  // A double edge covers a single loop twice over.
  const MultiGraph loop(1, std::vector<Edge>{{0, 0}});
  const MultiGraph dbl(2, std::vector<Edge>{{0, 1}, {0, 1}});
  auto cm = infer_covering(dbl, loop, {0, 0});
  ASSERT_TRUE(cm.has_value());
  EXPECT_TRUE(verify_covering(*cm).valid);
  auto self = infer_covering(loop, loop, {0});
  ASSERT_TRUE(self.has_value());
  EXPECT_TRUE(verify_covering(*self).valid);
}

TEST(VerifyCovering, RandomLiftsAreInferredBackFromVertexMaps) {
  Rng rng(61);
  for (int t = 0; t < 50; ++t) {
    const MultiGraph base = gen::random_bounded_degree(1 + static_cast<int>(rng.below(6)), 4, 12, rng, true, true);
    const CoveringMap lift = random_lift(base, 1 + static_cast<int>(rng.below(5)), rng.next());
    const auto again = infer_covering(lift.source, base, lift.vertex_map);
    ASSERT_TRUE(again.has_value());
    EXPECT_TRUE(verify_covering(*again).valid);
  }
}

TEST(NeighborlyPermutation, Examples) {
  const Permutation t = neighborly_permutation(gen::cycle(3));
  EXPECT_TRUE(is_neighborly(gen::cycle(3), t));
  EXPECT_FALSE(t.has_fixed_point());
  EXPECT_NE(t(t(0)), 0);  // a 3-cycle rotation

  const Permutation k2 = neighborly_permutation(gen::complete(2));
  EXPECT_EQ(k2(0), 1);
  EXPECT_EQ(k2(1), 0);

  EXPECT_TRUE(is_neighborly(gen::petersen(), neighborly_permutation(gen::petersen())));
  EXPECT_THROW(neighborly_permutation(gen::path(3)), InputError);
}

TEST(NeighborlyPermutation, RandomRegularMultigraphs) {
  Rng rng(67);
  for (int t = 0; t < 100; ++t) {
    const int degree = 1 + static_cast<int>(rng.below(6));
    const int n = degree % 2 ? 2 * (1 + static_cast<int>(rng.below(8))) : 1 + static_cast<int>(rng.below(15));
    const MultiGraph g = gen::random_regular(n, degree, rng, degree % 2 == 1 || n == 1 ? degree % 2 == 1 : false);
    EXPECT_TRUE(is_neighborly(g, neighborly_permutation(g)));
  }
}

TEST(AssembleProduct, K2TimesK2SwapIsTwoEdges) {
  const MultiGraph k2 = gen::complete(2);
  const TightProduct tp = assemble_product(constant_family(k2, k2, Permutation({1, 0})));
  expect_product(tp, 4);
  EXPECT_EQ(tp.h().num_edges(), 2);
  EXPECT_EQ(structural_predicates(tp.h()).num_components, 2);
}

TEST(AssembleProduct, TriangleRotations) {
  const MultiGraph c3 = gen::cycle(3);
  const TightProduct tp = assemble_product(constant_family(c3, c3, Permutation({1, 2, 0})));
  expect_product(tp, 9);
  EXPECT_EQ(tp.h().regular_degree(), 2);
}

TEST(AssembleProduct, RejectsEachConditionByName) {
  const MultiGraph c3 = gen::cycle(3);
  NeighborlyFamily nf = constant_family(c3, c3, Permutation({1, 2, 0}));
  nf.sigma[1] = Permutation({1, 2, 0});  // not the inverse of sigma[0]
  EXPECT_EQ(check_family(nf).failure, FamilyCheck::Failure::inverse_symmetry);
  try {
    assemble_product(nf);
    FAIL() << "expected rejection";
  } catch (const InputError& e) {
    EXPECT_NE(std::string(e.what()).find("inverse symmetry"), std::string::npos);
  }

  NeighborlyFamily fixed = constant_family(c3, c3, Permutation::identity(3));
  EXPECT_EQ(check_family(fixed).failure, FamilyCheck::Failure::neighborly);

  // Reversing edge 0 keeps inverse symmetry but vertex 0 then sees s^-1 on
  // both darts.
  NeighborlyFamily clash = constant_family(c3, c3, Permutation({1, 2, 0}));
  std::swap(clash.sigma[0], clash.sigma[1]);
  EXPECT_EQ(check_family(clash).failure, FamilyCheck::Failure::local_bijection);

  NeighborlyFamily shape = constant_family(c3, c3, Permutation({1, 2, 0}));
  shape.sigma.pop_back();
  EXPECT_EQ(check_family(shape).failure, FamilyCheck::Failure::shape);
}

TEST(FamilyRoundTrip, ExamplesAndCorpus) {
  const MultiGraph k2 = gen::complete(2), c3 = gen::cycle(3);
  for (const TightProduct& tp : {assemble_product(constant_family(k2, k2, Permutation({1, 0}))),
                                 assemble_product(constant_family(c3, c3, Permutation({1, 2, 0}))),
                                 product_even_regular(gen::cycle(5), gen::cycle(7))}) {
    const NeighborlyFamily nf = family_from_product(tp);
    EXPECT_TRUE(check_family(nf).ok());
    EXPECT_EQ(adjacency_matrix(assemble_product(nf).h()), adjacency_matrix(tp.h()));
  }
  for (const auto& c : corpus::products(11)) {
    const NeighborlyFamily nf = family_from_product(c.product);
    ASSERT_TRUE(check_family(nf).ok()) << c.name;
    EXPECT_EQ(adjacency_matrix(assemble_product(nf).h()), adjacency_matrix(c.product.h())) << c.name;
  }
}

TEST(ProductEvenRegular, Examples) {
  const TightProduct a = product_even_regular(gen::cycle(3), gen::cycle(4));
  expect_product(a, 12);
  EXPECT_EQ(a.h().regular_degree(), 2);

  expect_product(product_even_regular(gen::complete(5), gen::complete(5)), 25);

  const TightProduct c = product_even_regular(gen::cycle(4), gen::cycle(6));
  expect_product(c, 24);
  EXPECT_GE(structural_predicates(c.h()).num_components, 2);

  EXPECT_THROW(product_even_regular(gen::cycle(3), gen::complete(5)), InputError);
  EXPECT_THROW(product_even_regular(gen::complete(4), gen::complete(4)), InputError);
}

TEST(ProductOddMatching, Examples) {
  auto run = [](const MultiGraph& a, const MultiGraph& b) {
    return product_odd_matching(a, b, max_matching(a), max_matching(b));
  };
  expect_product(run(gen::complete(4), gen::complete(4)), 16);
  expect_product(run(gen::complete(4), gen::complete_bipartite(3, 3)), 24);
  expect_product(run(gen::petersen(), gen::petersen()), 100);
  const MultiGraph k4 = gen::complete(4);
  EXPECT_THROW(product_odd_matching(k4, k4, {0}, max_matching(k4)), InputError);
}

TEST(ProductViaSemicoloring, Examples) {
  const auto [k4, c4] = three_colored(gen::complete(4));
  const TightProduct pk = product_via_semicoloring(gen::petersen(), semi_color_subcubic(gen::petersen()), k4, c4);
  expect_product(pk, 40);

  const auto [k33, c33] = three_colored(gen::complete_bipartite(3, 3));
  expect_product(product_via_semicoloring(k33, semi_color_subcubic(k33), k33, c33), 36);

  const Gadget g3 = build_gadget(1);
  expect_product(product_via_semicoloring(g3.graph, g3.coloring, k4, c4), 64);

  EXPECT_THROW(product_via_semicoloring(k4, semi_color_subcubic(k4), gen::petersen(), c4), InputError);
}

TEST(Classifier, RoundTripsOnClassOneGraphs) {
  for (const MultiGraph& g : {gen::complete(4), gen::complete_bipartite(3, 3), gen::prism(3)}) {
    const Classification c = classify_class1_via_gadget(g, 1);
    ASSERT_EQ(c.verdict, Verdict::class1);
    ASSERT_TRUE(c.product && c.extracted);
    EXPECT_TRUE(verify_product(*c.product).ok());
    EXPECT_EQ(c.product->g1().num_vertices(), g.num_vertices());
    EXPECT_EQ(c.product->g2().num_vertices(), 16);
    EXPECT_TRUE(is_proper(g, *c.extracted));
    EXPECT_LE(c.extracted->num_colors, 3);
  }
}

TEST(Classifier, PetersenIsClassTwo) {
  const Classification c = classify_class1_via_gadget(gen::petersen(), 1);
  EXPECT_EQ(c.verdict, Verdict::class2);
  EXPECT_FALSE(c.product.has_value());
  EXPECT_GT(c.search_nodes, 0u);
}

TEST(Classifier, NodeCapGivesUndecidedAndWrongDegreeThrows) {
  EXPECT_EQ(classify_class1_via_gadget(gen::petersen(), 1, std::nullopt, 3).verdict, Verdict::undecided);
  EXPECT_THROW(classify_class1_via_gadget(gen::complete(4), 2), InputError);
}

TEST(Classifier, KFiveRegularRoundTrip) {
  const MultiGraph k6 = gen::complete(6);
  const Classification c = classify_class1_via_gadget(k6, 2);
  ASSERT_EQ(c.verdict, Verdict::class1);
  EXPECT_TRUE(is_proper(k6, *c.extracted));
  EXPECT_EQ(c.product->g2().num_vertices(), 66);
}

TEST(Classifier, ExtractionFromAnIndependentProduct) {
  // The gadget has no perfect matching (each pivot side is odd), so the
  // independent product uses a generic semi-coloring of the gadget instead of
  // its built-in one.
  const Gadget g3 = build_gadget(1);
  EXPECT_FALSE(is_perfect_matching(g3.graph, max_matching(g3.graph)));
  for (const MultiGraph& g : {gen::complete(4), gen::prism(4), gen::hypercube(3)}) {
    const auto [gg, c] = three_colored(g);
    const TightProduct tp = swap_factors(product_via_semicoloring(g3.graph, semi_color_subcubic(g3.graph), gg, c));
    EXPECT_TRUE(is_proper(g, extract_gadget_coloring(tp, g3)));
  }
}

TEST(BridgeWitness, Examples) {
  const MultiGraph k4 = gen::complete(4);
  const Gadget g3 = build_gadget(1);
  const Classification c = classify_class1_via_gadget(k4, 1);
  const TightProduct& with_gadget = *c.product;  // K4 x gadget
  const Structure s = structural_predicates(g3.graph);
  int checked = 0;
  for (EdgeId b : s.bridges) {
    const auto m = bridge_matching_witness(with_gadget, b);
    EXPECT_TRUE(is_perfect_matching(k4, m));
    ++checked;
  }
  EXPECT_EQ(checked, static_cast<int>(s.bridges.size()));
  EXPECT_GE(checked, 3);

  const MultiGraph bt = gen::bridged_triangles();
  const TightProduct tb = product_odd_matching(k4, bt, max_matching(k4), max_matching(bt));
  EXPECT_TRUE(is_perfect_matching(k4, bridge_matching_witness(tb, 8)));
  EXPECT_THROW(bridge_matching_witness(tb, 0), InputError);
}

TEST(BruteForce, Examples) {
  const BruteForceResult a = brute_force_tight_product(gen::cycle(3), gen::cycle(3));
  ASSERT_EQ(a.status, SearchStatus::found);
  EXPECT_TRUE(verify_product(*a.product).ok());

  const BruteForceResult b = brute_force_tight_product(gen::complete(2), gen::cycle(3));
  EXPECT_EQ(b.status, SearchStatus::absent);
  EXPECT_FALSE(b.certificate.empty());

  const BruteForceResult c = brute_force_tight_product(gen::complete(4), gen::complete(4));
  ASSERT_EQ(c.status, SearchStatus::found);
  EXPECT_TRUE(verify_product(*c.product).ok());

  BruteForceCaps tiny;
  tiny.max_g2_vertices = 2;
  EXPECT_EQ(brute_force_tight_product(gen::cycle(3), gen::cycle(3), tiny).status, SearchStatus::undecided);
}

TEST(BruteForce, BridgeObstructionGivesAbsence) {
  // Three loop-bearing leaves around a center: cubic, no perfect matching. A
  // second factor with a bridge would force one.
  const MultiGraph claw(4, std::vector<Edge>{{1, 1}, {2, 2}, {3, 3}, {0, 1}, {0, 2}, {0, 3}});
  EXPECT_FALSE(is_perfect_matching(claw, max_matching(claw)));
  const BruteForceResult r = brute_force_tight_product(claw, gen::bridged_triangles());
  EXPECT_EQ(r.status, SearchStatus::absent);
  EXPECT_EQ(brute_force_tight_product(gen::complete(4), gen::bridged_triangles()).status, SearchStatus::found);
}

TEST(BruteForce, AgreesWithConstructiveRoutes) {
  Rng rng(71);
  int compared = 0;
  for (int t = 0; t < 40; ++t) {
    const int degree = 2 + static_cast<int>(rng.below(2));
    const int n1 = degree == 3 ? 2 * (1 + static_cast<int>(rng.below(3))) : 1 + static_cast<int>(rng.below(5));
    const int n2 = degree == 3 ? 2 * (1 + static_cast<int>(rng.below(3))) : 1 + static_cast<int>(rng.below(6));
    const MultiGraph g1 = gen::random_regular(n1, degree, rng, false);
    const MultiGraph g2 = gen::random_regular(n2, degree, rng, false);
    if (g1.num_edges() > 10) continue;
    bool constructive = false;
    if (degree % 2 == 0) {
      constructive = true;
    } else {
      const auto m1 = max_matching(g1), m2 = max_matching(g2);
      constructive = is_perfect_matching(g1, m1) && is_perfect_matching(g2, m2);
    }
    if (!constructive) continue;
    const BruteForceResult r = brute_force_tight_product(g1, g2);
    EXPECT_EQ(r.status, SearchStatus::found) << "t=" << t;
    if (r.product) {
      EXPECT_TRUE(verify_product(*r.product).ok());
    }
    ++compared;
  }
  EXPECT_GE(compared, 20);
}

TEST(BruteForce, AgreesWithExhaustiveFamilyEnumerationOnTinyPairs) {
  // Independent route: enumerate every assignment of permutations of V(g2)
  // to the edges of g1 (no pruning) and ask check_family.
  auto exhaustive = [](const MultiGraph& g1, const MultiGraph& g2) {
    const int n2 = g2.num_vertices();
    std::vector<std::vector<Vertex>> all;
    std::vector<Vertex> p(n2);
    std::iota(p.begin(), p.end(), 0);
    do all.push_back(p);
    while (std::next_permutation(p.begin(), p.end()));
    const int m = g1.num_edges();
    std::vector<std::size_t> idx(m, 0);
    for (;;) {
      NeighborlyFamily nf{g1, g2, {}};
      for (int e = 0; e < m; ++e) {
        Permutation s(all[idx[e]]);
        nf.sigma.push_back(s);
        nf.sigma.push_back(s.inverse());
      }
      if (check_family(nf).ok()) return true;
      int e = 0;
      while (e < m && ++idx[e] == all.size()) idx[e++] = 0;
      if (e == m) return false;
    }
  };
  const std::vector<MultiGraph> small{
      gen::complete(2), MultiGraph(2, std::vector<Edge>{{0, 1}, {0, 1}}), MultiGraph(1, std::vector<Edge>{{0, 0}}),
      gen::cycle(3), gen::cycle(4), gen::complete(4), MultiGraph(2, std::vector<Edge>{{0, 0}, {0, 1}, {1, 1}}),
      MultiGraph(2, std::vector<Edge>{{0, 1}, {0, 1}, {0, 1}}), MultiGraph(2, std::vector<Edge>{{0, 0}, {1, 1}}),
      MultiGraph(4, std::vector<Edge>{{0, 1}, {0, 1}, {0, 2}, {1, 3}, {2, 3}, {2, 3}})};
  int pairs = 0;
  for (const MultiGraph& a : small)
    for (const MultiGraph& b : small) {
      if (a.regular_degree() != b.regular_degree() || b.num_vertices() > 4) continue;
      double assignments = 1;
      for (int e = 0; e < a.num_edges(); ++e) assignments *= std::tgamma(b.num_vertices() + 1);
      if (assignments > 2e5) continue;
      const BruteForceResult r = brute_force_tight_product(a, b);
      ASSERT_NE(r.status, SearchStatus::undecided);
      EXPECT_EQ(r.status == SearchStatus::found, exhaustive(a, b));
      ++pairs;
    }
  EXPECT_GE(pairs, 15);
}

// Properties over the shared 300-case corpus.
class ProductCorpus : public ::testing::Test {
 protected:
  static const std::vector<corpus::ProductCase>& cases() {
    static const std::vector<corpus::ProductCase> c = corpus::products();
    return c;
  }
};

TEST_F(ProductCorpus, EveryProjectionIsACovering) {
  ASSERT_EQ(cases().size(), 300u);
  for (const auto& c : cases()) {
    const ProductCheck r = verify_product(c.product);
    EXPECT_TRUE(r.ok()) << c.name << ": " << r.first.failure << " / " << r.second.failure;
  }
}

TEST_F(ProductCorpus, FactorSpectraAreContained) {
  for (const auto& c : cases()) {
    const auto sh = adjacency_spectrum(c.product.h());
    const double tol = 1e-8 * std::max(1.0, static_cast<double>(*c.product.h().regular_degree()));
    EXPECT_TRUE(multiset_contains(sh, adjacency_spectrum(c.product.g1()), tol)) << c.name;
    EXPECT_TRUE(multiset_contains(sh, adjacency_spectrum(c.product.g2()), tol)) << c.name;
  }
}

TEST_F(ProductCorpus, BipartiteAndDisconnectionPropagate) {
  for (const auto& c : cases()) {
    const Structure h = structural_predicates(c.product.h());
    const Structure a = structural_predicates(c.product.g1());
    const Structure b = structural_predicates(c.product.g2());
    EXPECT_TRUE(!(a.bipartite || b.bipartite) || h.bipartite) << c.name;
    EXPECT_TRUE((a.connected && b.connected) || !h.connected) << c.name;
    EXPECT_TRUE(!(a.bipartite && b.bipartite) || !h.connected) << c.name;
  }
}

TEST_F(ProductCorpus, BothBipartiteSeparationHasNoCrossingEdges) {
  int checked = 0;
  for (const auto& c : cases()) {
    if (!structural_predicates(c.product.g1()).bipartite || !structural_predicates(c.product.g2()).bipartite) continue;
    const auto s1 = bipartition(c.product.g1());
    const auto s2 = bipartition(c.product.g2());
    const int n2 = c.product.g2().num_vertices();
    auto cls = [&](Vertex x) { return s1[x / n2] ^ s2[x % n2]; };
    for (const Edge& e : c.product.h().edges()) EXPECT_EQ(cls(e.u), cls(e.v)) << c.name;
    ++checked;
  }
  // Two fixed both-bipartite products, whatever the corpus contains.
  const TightProduct tp = product_even_regular(gen::cycle(4), gen::cycle(6));
  const auto s1 = bipartition(tp.g1()), s2 = bipartition(tp.g2());
  for (const Edge& e : tp.h().edges()) EXPECT_EQ(s1[e.u / 6] ^ s2[e.u % 6], s1[e.v / 6] ^ s2[e.v % 6]);
  const TightProduct k33 = product_odd_matching(gen::complete_bipartite(3, 3), gen::hypercube(3),
                                                max_matching(gen::complete_bipartite(3, 3)),
                                                max_matching(gen::hypercube(3)));
  const auto t1 = bipartition(k33.g1()), t2 = bipartition(k33.g2());
  for (const Edge& e : k33.h().edges()) EXPECT_EQ(t1[e.u / 8] ^ t2[e.u % 8], t1[e.v / 8] ^ t2[e.v % 8]);
  EXPECT_FALSE(structural_predicates(k33.h()).connected);
  RecordProperty("corpus_both_bipartite", checked);
}

TEST_F(ProductCorpus, OldEigenfunctionsLift) {
  int done = 0;
  for (std::size_t i = 0; i < cases().size() && done < 20; i += 15, ++done) {
    const TightProduct& tp = cases()[i].product;
    const Eigen::MatrixXd a1 = adjacency_matrix(tp.g1()).cast<double>();
    const Eigen::MatrixXd ah = adjacency_matrix(tp.h()).cast<double>();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a1);
    for (int k = 0; k < a1.rows(); ++k) {
      const Eigen::VectorXd f = es.eigenvectors().col(k);
      Eigen::VectorXd lifted(ah.rows());
      for (int x = 0; x < ah.rows(); ++x) lifted[x] = f[tp.proj1.vertex_map[x]];
      EXPECT_LT((ah * lifted - es.eigenvalues()[k] * lifted).cwiseAbs().maxCoeff(), 1e-8) << cases()[i].name;
    }
  }
  EXPECT_EQ(done, 20);
}

TEST_F(ProductCorpus, SwapIsAnInvolutionUpToEquality) {
  for (std::size_t i = 0; i < cases().size(); i += 7) {
    const TightProduct& tp = cases()[i].product;
    const TightProduct back = swap_factors(swap_factors(tp));
    EXPECT_EQ(back.h().edges(), tp.h().edges());
    EXPECT_TRUE(verify_product(swap_factors(tp)).ok());
  }
}
