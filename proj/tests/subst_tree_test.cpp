#include <gtest/gtest.h>

#include <random>

#include "fixtures.hpp"
#include "twwchi/delayed_tree.hpp"
#include "twwchi/oracles.hpp"
#include "twwchi/subst_color.hpp"
#include "twwchi/subst_tree.hpp"

namespace twwchi {
namespace {

using namespace twwchi::testing;

BaseColorer exact_base() {
  return graph_colorer([](const OrderedGraph& g) { return exact_chromatic_number(g).coloring; });
}

// Root edge (a, b); a has two non-adjacent leaf children, b is a leaf.
SubstTree two_level_tree() {
  SubstTree t;
  const int a1 = t.add_leaf(), a2 = t.add_leaf();
  const int a = t.add_internal({a1, a2}, edgeless_graph(2));
  const int b = t.add_leaf();
  t.set_root(t.add_internal({a, b}, complete_graph(2)));
  return t;
}

TEST(Realize, Examples) {
  EXPECT_EQ(realize_subst(star_tree(complete_graph(4))), complete_graph(4));
  // Leaves a1, a2, b: b sees both, a1 a2 non-adjacent.
  EXPECT_EQ(realize_subst(two_level_tree()).edges(), (std::vector<Edge>{{0, 2}, {1, 2}}));
  EXPECT_EQ(realize_subst(single_vertex_tree()), edgeless_graph(1));
}

TEST(Realize, Construction) {
  SubstTree t;
  const int a = t.add_leaf();
  EXPECT_THROW(t.add_internal({a}, edgeless_graph(2)), std::invalid_argument);
  EXPECT_THROW(t.add_internal({a, 7}, edgeless_graph(2)), std::invalid_argument);
  const int b = t.add_leaf();
  t.add_internal({a, b}, edgeless_graph(2));
  EXPECT_THROW(t.set_root(a), std::invalid_argument);
  EXPECT_THROW(t.leaves(), std::logic_error);
}

TEST(Independent, Examples) {
  EXPECT_TRUE(is_independent(random_subst_tree(12, 0.0, false, 1)));
  EXPECT_TRUE(is_independent(two_level_tree()));
  SubstTree t;
  const int a = t.add_internal({t.add_leaf(), t.add_leaf()}, edgeless_graph(2));
  const int b = t.add_internal({t.add_leaf(), t.add_leaf()}, edgeless_graph(2));
  t.set_root(t.add_internal({a, b}, complete_graph(2)));
  EXPECT_FALSE(is_independent(t));
  for (std::uint64_t s = 0; s < 50; ++s) EXPECT_TRUE(is_independent(random_subst_tree(15, 0.7, true, s)));
}

TEST(Depth, Conventions) {
  EXPECT_EQ(depth_info(star_tree(complete_graph(5))).tree_depth, 0);
  EXPECT_EQ(clique_witness(star_tree(complete_graph(5))).size(), 1u);
  EXPECT_EQ(depth_info(two_level_tree()).tree_depth, 1);
  EXPECT_EQ(clique_witness(two_level_tree()), (std::vector<Vertex>{0, 2}));
  EXPECT_EQ(depth_info(single_vertex_tree()).tree_depth, 0);
  // Root over an edgeless graph: depth 0 and clique number 1.
  EXPECT_EQ(depth_info(star_tree(edgeless_graph(2))).tree_depth, 0);
}

TEST(Depth, CliqueWitnessOnRandomTrees) {
  std::mt19937_64 rng(6);
  for (int trial = 0; trial < 300; ++trial) {
    auto t = random_subst_tree(1 + rng() % 20, 0.5, false, rng());
    const auto info = depth_info(t);
    auto w = clique_witness(t);
    EXPECT_EQ(w.size(), static_cast<std::size_t>(info.tree_depth) + 1);
    EXPECT_TRUE(is_clique(realize_subst(t), w));
    EXPECT_GE(omega_dp(t)[t.root()], w.size());
  }
}

TEST(Omega, AgreesWithOracle) {
  std::mt19937_64 rng(7);
  auto star = star_tree(complete_graph(6));
  EXPECT_EQ(omega_dp(star)[star.root()], 6u);
  auto flat = random_subst_tree(10, 0.0, false, 3);
  for (auto w : omega_dp(flat)) EXPECT_EQ(w, 1u);
  for (int trial = 0; trial < 300; ++trial) {
    auto t = random_subst_tree(1 + rng() % 14, 0.5, false, rng());
    EXPECT_EQ(omega_dp(t)[t.root()], clique_number(realize_subst(t)));
  }
  auto [dt, ng] = build_delayed_tree(fix_c5());
  auto odd = delayed_to_subst_tree(dt, restrict_parity(dt, ng, Parity::Odd), Parity::Odd);
  EXPECT_EQ(omega_dp(odd)[odd.root()], 2u);
}

TEST(Restrict, MatchesInducedSubgraph) {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 100; ++trial) {
    auto t = random_subst_tree(2 + rng() % 12, 0.5, false, rng());
    std::vector<int> keep;
    std::vector<Vertex> vs;
    for (std::size_t i = 0; i < t.leaf_count(); ++i)
      if (rng() % 2) {
        keep.push_back(t.leaves()[i]);
        vs.push_back(i);
      }
    if (keep.empty()) continue;
    EXPECT_EQ(realize_subst(restrict_to_leaves(t, keep)), induced_subgraph(realize_subst(t), vs));
  }
}

TEST(Generators, CotreeRealizesRandomCograph) {
  for (std::uint64_t s = 0; s < 100; ++s) {
    const std::size_t n = 1 + s % 30;
    EXPECT_EQ(realize_subst(random_cotree(n, s)), random_cograph(n, s));
  }
}

TEST(ModularDecomposition, RealizesInputUpToLeafOrder) {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 200; ++trial) {
    auto g = trial % 2 ? random_cograph(1 + rng() % 15, rng()) : gnp_graph(1 + rng() % 12, 0.4, rng());
    auto t = modular_decomposition(g);
    EXPECT_EQ(realize_subst(t), apply_order(g, leaf_vertices(t)));
    for (int x : t.preorder()) {
      if (t.is_leaf(x)) continue;
      const auto& q = t.graph(x);
      const bool degenerate = q.edge_count() == 0 || q.edge_count() == q.size() * (q.size() - 1) / 2;
      if (!degenerate) {
        EXPECT_TRUE(is_prime(q));
      }
    }
  }
  // A cograph has no prime node.
  auto t = modular_decomposition(random_cograph(20, 4));
  for (int x : t.preorder())
    if (!t.is_leaf(x)) {
      EXPECT_TRUE(t.graph(x).edge_count() == 0 ||
                  t.graph(x).edge_count() == t.graph(x).size() * (t.graph(x).size() - 1) / 2);
    }
}

TEST(ColorIndependent, Examples) {
  auto star = star_tree(complete_graph(3));
  std::vector<Coloring> pal(star.size());
  pal[star.root()] = Coloring({0, 1, 2});
  EXPECT_EQ(color_independent(star, pal).palette_size, 3);

  auto flat = random_subst_tree(10, 0.0, false, 2);
  std::vector<Coloring> zero(flat.size());
  for (int x : flat.preorder())
    if (!flat.is_leaf(x)) zero[x] = Coloring(std::vector<int>(flat.children(x).size(), 0));
  EXPECT_EQ(color_independent(flat, zero).palette_size, 1);

  pal[star.root()] = Coloring({0, 0, 1});
  EXPECT_THROW(color_independent(star, pal), std::invalid_argument);
}

TEST(ColorIndependent, ProperWithinBound) {
  std::mt19937_64 rng(10);
  for (int trial = 0; trial < 300; ++trial) {
    auto t = random_subst_tree(1 + rng() % 20, 0.6, true, rng());
    std::vector<Coloring> pal(t.size());
    int max_pal = 1;
    for (int x : t.preorder())
      if (!t.is_leaf(x)) {
        pal[x] = exact_chromatic_number(t.graph(x)).coloring;
        max_pal = std::max(max_pal, pal[x].palette_size);
      }
    auto c = color_independent(t, pal);
    EXPECT_TRUE(verify_coloring(realize_subst(t), c));
    EXPECT_LE(c.palette_size, (depth_info(t).tree_depth + 1) * max_pal);
  }
}

TEST(ColorSubstitution, CographsWithinBudget) {
  auto base = exact_base();
  for (std::uint64_t s = 0; s < 100; ++s) {
    auto t = random_cotree(1 + s % 30, s);
    auto r = color_substitution(t, base, 1);
    EXPECT_TRUE(verify_coloring(realize_subst(t), r.coloring));
    EXPECT_EQ(r.omega, clique_number(realize_subst(t)));
    EXPECT_LE(static_cast<std::uint64_t>(r.coloring.palette_size), r.budget);
  }
}

TEST(ColorSubstitution, RandomTreesProper) {
  auto base = exact_base();
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    auto t = random_subst_tree(1 + rng() % 25, 0.1 * (rng() % 10), false, rng());
    auto r = color_substitution(t, base, 1);
    EXPECT_TRUE(verify_coloring(realize_subst(t), r.coloring));
    EXPECT_GE(static_cast<std::size_t>(r.coloring.palette_size), r.omega);
  }
}

TEST(ColorSubstitution, DepthZeroReusesColors) {
  // Root over two internal nodes, all isolated; each child is a K3.
  SubstTree t;
  auto k3 = [&] { return t.add_internal({t.add_leaf(), t.add_leaf(), t.add_leaf()}, complete_graph(3)); };
  const int a = k3(), b = k3();
  t.set_root(t.add_internal({a, b}, edgeless_graph(2)));
  EXPECT_EQ(color_substitution(t, exact_base(), 1).coloring.palette_size, 3);
}

TEST(ColorSubstitution, C5OddEvenProduct) {
  auto [dt, ng] = build_delayed_tree(fix_c5());
  Coloring sides[2];
  for (auto p : {Parity::Odd, Parity::Even}) {
    auto st = delayed_to_subst_tree(dt, restrict_parity(dt, ng, p), p);
    sides[static_cast<int>(p)] = color_substitution(st, exact_base(), 1).coloring;
  }
  auto c = product_coloring(sides[0], sides[1]);
  EXPECT_TRUE(verify_coloring(fix_c5(), c));
  EXPECT_LE(c.palette_size, 4);
}

TEST(ColorSubstitution, RejectsImproperBase) {
  auto bad = graph_colorer([](const OrderedGraph& g) { return Coloring(std::vector<int>(g.size(), 0)); });
  EXPECT_THROW(color_substitution(star_tree(complete_graph(3)), bad, 1), std::invalid_argument);
}

}  // namespace
}  // namespace twwchi
