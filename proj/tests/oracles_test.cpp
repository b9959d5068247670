#include <gtest/gtest.h>

#include <random>

#include "fixtures.hpp"
#include "twwchi/oracles.hpp"

namespace twwchi {
namespace {

using namespace twwchi::testing;

std::size_t brute_clique(const OrderedGraph& g) {
  const std::size_t n = g.size();
  std::size_t best = 0;
  for (std::uint64_t s = 0; s < (std::uint64_t{1} << n); ++s) {
    std::vector<Vertex> vs;
    for (Vertex v = 0; v < n; ++v)
      if (s >> v & 1U) vs.push_back(v);
    if (vs.size() > best && is_clique(g, vs)) best = vs.size();
  }
  return best;
}

// Smallest k admitting a proper k-coloring, by trying every assignment.
std::size_t brute_chromatic(const OrderedGraph& g) {
  const std::size_t n = g.size();
  if (n == 0) return 0;
  for (std::size_t k = 1;; ++k) {
    std::vector<int> c(n, 0);
    while (true) {
      if (verify_coloring(g, Coloring(c))) return k;
      std::size_t i = 0;
      while (i < n && c[i] == static_cast<int>(k) - 1) c[i++] = 0;
      if (i == n) break;
      ++c[i];
    }
  }
}

TEST(Clique, AgreesWithBruteForce) {
  std::mt19937_64 rng(1);
  for (int t = 0; t < 200; ++t) {
    auto g = gnp_graph(1 + rng() % 11, 0.5, rng());
    auto r = max_clique(g);
    EXPECT_EQ(r.size, brute_clique(g));
    EXPECT_EQ(r.clique.size(), r.size);
    EXPECT_TRUE(is_clique(g, r.clique));
  }
}

TEST(Clique, Fixtures) {
  EXPECT_EQ(clique_number(fix_c5()), 2u);
  EXPECT_EQ(clique_number(fix_s52()), 2u);
  EXPECT_EQ(clique_number(complete_graph(6)), 6u);
  EXPECT_EQ(clique_number(edgeless_graph(3)), 1u);
  EXPECT_THROW(exact_clique_number(edgeless_graph(50)), SizeLimitExceeded);
}

TEST(Chromatic, AgreesWithBruteForce) {
  std::mt19937_64 rng(2);
  for (int t = 0; t < 100; ++t) {
    auto g = gnp_graph(1 + rng() % 7, 0.5, rng());
    auto r = exact_chromatic_number(g);
    EXPECT_EQ(r.chi, brute_chromatic(g));
    EXPECT_TRUE(verify_coloring(g, r.coloring));
    EXPECT_EQ(static_cast<std::size_t>(r.coloring.palette_size), r.chi);
  }
}

TEST(Chromatic, Fixtures) {
  EXPECT_EQ(exact_chromatic_number(fix_c5()).chi, 3u);
  EXPECT_EQ(exact_chromatic_number(fix_s52()).chi, 3u);
  EXPECT_EQ(exact_chromatic_number(shift2_graph(4)).chi, 2u);
  EXPECT_THROW(exact_chromatic_number(edgeless_graph(30)), SizeLimitExceeded);
}

TEST(Heuristics, ProperAndBounded) {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 200; ++t) {
    auto g = gnp_graph(1 + rng() % 40, 0.3, rng());
    auto ds = dsatur_coloring(g);
    auto dg = degeneracy_coloring(g);
    EXPECT_TRUE(verify_coloring(g, ds));
    EXPECT_TRUE(verify_coloring(g, dg));
    EXPECT_LE(static_cast<std::size_t>(dg.palette_size), degeneracy(g) + 1);
    EXPECT_GE(static_cast<std::size_t>(ds.palette_size), clique_number(g));
  }
}

TEST(Structure, P4AndPrime) {
  EXPECT_FALSE(is_p4_free(path_graph(4)));
  EXPECT_FALSE(is_p4_free(fix_c5()));
  EXPECT_TRUE(is_p4_free(complete_graph(5)));
  EXPECT_TRUE(is_p4_free(random_cograph(25, 7)));
  EXPECT_TRUE(is_prime(path_graph(4)));
  EXPECT_TRUE(is_prime(fix_c5()));
  EXPECT_FALSE(is_prime(complete_graph(3)));
  EXPECT_FALSE(is_prime(path_graph(3)));
}

TEST(Enumeration, Counts) {
  auto e = GraphEnumerator::exhaustive(4);
  EXPECT_EQ(e.total(), 64u);
  std::size_t seen = 0, edges = 0;
  while (auto g = e.next()) {
    ++seen;
    edges += g->edge_count();
  }
  EXPECT_EQ(seen, 64u);
  EXPECT_EQ(edges, 6u * 32u);
  EXPECT_THROW(GraphEnumerator::exhaustive(8), SizeLimitExceeded);

  auto a = GraphEnumerator::sample(10, 5, 3), b = GraphEnumerator::sample(10, 5, 3);
  for (int i = 0; i < 3; ++i) EXPECT_EQ(*a.next(), *b.next());
  EXPECT_FALSE(a.next().has_value());
}

TEST(MinParameters, SmallGraphs) {
  EXPECT_EQ(min_mixed_free(edgeless_graph(1)).d, 1u);
  EXPECT_EQ(min_amf(edgeless_graph(1)).d, 2u);
  // A cograph ordered along its cotree has no 2-almost mixed minor.
  EXPECT_EQ(min_amf(complete_graph(5)).d, 2u);
  EXPECT_EQ(min_amf(edgeless_graph(5)).d, 2u);
  EXPECT_THROW(min_amf(edgeless_graph(9)), SizeLimitExceeded);
}

TEST(MinParameters, OrderingWitnessesTheValue) {
  std::mt19937_64 rng(9);
  for (int t = 0; t < 30; ++t) {
    auto g = gnp_graph(2 + rng() % 4, 0.5, rng());
    auto amf = min_amf(g);
    auto m = adjacency_matrix(apply_order(g, amf.ordering));
    EXPECT_FALSE(find_almost_mixed_minor(m, amf.d).has_value());
    if (amf.d > 2) {
      EXPECT_TRUE(find_almost_mixed_minor(m, amf.d - 1).has_value());
    }
    auto mf = min_mixed_free(g);
    EXPECT_FALSE(find_mixed_minor(adjacency_matrix(apply_order(g, mf.ordering)), mf.d).has_value());
  }
}

}  // namespace
}  // namespace twwchi
