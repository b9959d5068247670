#include <gtest/gtest.h>

#include <sstream>

#include "fixtures.hpp"
#include "twwchi/graph.hpp"

namespace twwchi {
namespace {

using namespace twwchi::testing;
using Vs = std::vector<Vertex>;

TEST(InducedSubgraph, C5RestrictedToABCIsPath) {
  auto h = induced_subgraph(fix_c5(), Vs{A, B, C});
  EXPECT_EQ(h.size(), 3u);
  EXPECT_EQ(h.edges(), (std::vector<Edge>{{0, 1}, {0, 2}}));
}

TEST(InducedSubgraph, AllVerticesIsIdentity) {
  auto g = gnp_graph(9, 0.4, 3);
  EXPECT_EQ(induced_subgraph(g, all_vertices(9)), g);
}

TEST(InducedSubgraph, ShiftTransversalIsPath) {
  auto h = induced_subgraph(fix_s52(), Vs{shift_index(1, 2), shift_index(2, 3), shift_index(3, 4),
                                        shift_index(4, 5)});
  EXPECT_EQ(h, path_graph(4));
}

TEST(InducedSubgraph, RejectsBadSubsets) {
  auto g = fix_c5();
  EXPECT_THROW(induced_subgraph(g, Vs{0, 7}), std::out_of_range);
  EXPECT_THROW(induced_subgraph(g, Vs{1, 1}), std::invalid_argument);
  EXPECT_THROW(induced_subgraph(g, Vs{2, 1}), std::invalid_argument);
}

TEST(InducedSubgraph, Idempotent) {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 50; ++t) {
    auto g = gnp_graph(10, 0.5, rng());
    std::vector<Vertex> vs;
    for (Vertex v = 0; v < 10; ++v)
      if (rng() & 1) vs.push_back(v);
    auto h = induced_subgraph(g, vs);
    EXPECT_EQ(induced_subgraph(h, all_vertices(h.size())), h);
  }
}

TEST(Module, Examples) {
  auto c5 = fix_c5();
  EXPECT_TRUE(is_module(c5, std::vector<Vertex>{A, B, C, D, E}));
  EXPECT_FALSE(is_module(c5, std::vector<Vertex>{A, B, C}));
  auto k4 = complete_graph(4);
  for (Vertex u = 0; u < 4; ++u)
    for (Vertex v = u + 1; v < 4; ++v) EXPECT_TRUE(is_module(k4, std::vector<Vertex>{u, v}));
}

TEST(ModuleWrt, Examples) {
  auto s = fix_s52();
  EXPECT_TRUE(is_module_wrt(s, Vs{shift_index(1, 2)}, Vs{shift_index(1, 3), shift_index(2, 3)}));
  EXPECT_TRUE(is_module_wrt(s, {shift_index(1, 3), shift_index(2, 3)},
                            {shift_index(1, 4), shift_index(2, 4), shift_index(3, 4)}));
  EXPECT_TRUE(is_module_wrt(fix_c5(), Vs{B}, Vs{D, E}));
  EXPECT_THROW(is_module_wrt(fix_c5(), Vs{A, B}, Vs{B, C}), std::invalid_argument);
}

TEST(ModuleWrt, AgreesWithModuleOnSingletons) {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 200; ++t) {
    auto g = gnp_graph(8, 0.5, rng());
    std::vector<Vertex> xs, rest;
    for (Vertex v = 0; v < 8; ++v) (rng() % 3 == 0 ? xs : rest).push_back(v);
    if (xs.empty()) continue;
    bool all = true;
    for (auto y : rest) all = all && is_module_wrt(g, xs, Vs{y});
    EXPECT_EQ(is_module(g, xs), all);
  }
}

TEST(EdgeUnionCover, Basics) {
  auto k3 = complete_graph(3);
  EXPECT_TRUE(edge_union_cover(k3, {k3}));
  EXPECT_FALSE(edge_union_cover(k3, {edgeless_graph(3), edgeless_graph(3)}));
  EXPECT_THROW(edge_union_cover(k3, {edgeless_graph(4)}), std::invalid_argument);
}

TEST(ProductColoring, ConstantTimesConstant) {
  auto c = product_coloring(Coloring({0, 0, 0}), Coloring({5, 5, 5}));
  EXPECT_EQ(c.palette_size, 1);
}

TEST(ProductColoring, PaletteBound) {
  auto c = product_coloring(Coloring({0, 1, 0, 1, 0, 1}), Coloring({0, 1, 2, 0, 1, 2}));
  EXPECT_LE(c.palette_size, 6);
  EXPECT_THROW(product_coloring(Coloring({0}), Coloring({0, 1})), std::invalid_argument);
}

TEST(ProductColoring, ProperOnEdgeUnion) {
  std::mt19937_64 rng(17);
  for (int t = 0; t < 300; ++t) {
    const std::size_t n = 2 + rng() % 12;
    auto g = gnp_graph(n, 0.5, rng());
    OrderedGraph g1(n), g2(n);
    for (auto [u, v] : g.edges()) ((rng() & 1) ? g1 : g2).add_edge(u, v);
    auto c1 = random_proper_coloring(g1, rng);
    auto c2 = random_proper_coloring(g2, rng);
    auto c = product_coloring(c1, c2);
    EXPECT_TRUE(verify_coloring(g, c));
    EXPECT_LE(c.palette_size, c1.palette_size * c2.palette_size);
  }
}

TEST(Generate, Shift2Counts) {
  auto s = generate("shift2", {.n = 5});
  EXPECT_EQ(s.size(), 10u);
  EXPECT_EQ(s.edge_count(), 10u);
}

TEST(Generate, CycleFiveIsFixture) { EXPECT_EQ(generate("cycle", {.n = 5}), fix_c5()); }

TEST(Generate, Shift2TriangleFree) {
  for (std::size_t n = 1; n <= 8; ++n) {
    auto s = shift2_graph(n);
    for (Vertex a = 0; a < s.size(); ++a)
      for (Vertex b = a + 1; b < s.size(); ++b)
        for (Vertex c = b + 1; c < s.size(); ++c)
          EXPECT_FALSE(s.adjacent(a, b) && s.adjacent(b, c) && s.adjacent(a, c));
  }
}

TEST(Generate, Errors) {
  EXPECT_THROW(generate("petersen", {.n = 10}), std::invalid_argument);
  EXPECT_THROW(generate("gnp", {.n = 4, .p = 1.5}), std::invalid_argument);
  EXPECT_THROW(generate("path", {.n = 0}), std::invalid_argument);
}

TEST(Generate, Deterministic) {
  EXPECT_EQ(gnp_graph(20, 0.3, 42), gnp_graph(20, 0.3, 42));
  EXPECT_EQ(random_cograph(20, 42), random_cograph(20, 42));
  EXPECT_EQ(complete_graph(3).edge_count(), 3u);
}

TEST(TextFormat, RoundTrip) {
  auto g = gnp_graph(12, 0.4, 9);
  std::istringstream in("# comment\n" + to_text(g));
  EXPECT_EQ(read_graph(in), g);
}

TEST(TextFormat, RejectsMalformed) {
  for (const char* bad : {"3 1\n2 1\n", "3 2\n0 1\n", "2 1\n0 5\n", "x y\n", "", "3 1\n0 1 2\n"}) {
    std::istringstream in(bad);
    EXPECT_THROW(read_graph(in), ParseError) << bad;
  }
}

TEST(IntervalPartition, Basics) {
  auto p = IntervalPartition::from_cuts(10, {3, 5});
  EXPECT_EQ(p.part_count(), 3u);
  EXPECT_EQ(p.part(1), (Interval{3, 5}));
  EXPECT_EQ(p.part_of(4), 1u);
  EXPECT_TRUE(IntervalPartition::singletons(10).refines(p));
  EXPECT_FALSE(p.refines(IntervalPartition::from_cuts(10, {4})));
  EXPECT_THROW(IntervalPartition({0, 2, 2}), std::invalid_argument);
}

}  // namespace
}  // namespace twwchi
