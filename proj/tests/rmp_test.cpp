#include <gtest/gtest.h>

#include <random>
#include <set>

#include "fixtures.hpp"
#include "twwchi/oracles.hpp"
#include "twwchi/rmp.hpp"

namespace twwchi {
namespace {

using namespace twwchi::testing;
using Chosen = std::vector<std::pair<std::size_t, std::vector<Vertex>>>;

RMPartition s52_parts() { return RMPartition::from_intervals(shift2_parts(5)); }

// Straight from the definition: stable parts, earlier part a module with
// respect to every later part.
bool naive_rmp(const OrderedGraph& g, const RMPartition& p) {
  for (std::size_t i = 0; i < p.size(); ++i)
    for (auto u : p.parts[i])
      for (auto v : p.parts[i])
        if (g.adjacent(u, v)) return false;
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = i + 1; j < p.size(); ++j)
      for (auto y : p.parts[j])
        for (auto x1 : p.parts[i])
          for (auto x2 : p.parts[i])
            if (g.adjacent(y, x1) != g.adjacent(y, x2)) return false;
  return true;
}

bool naive_zone_mixed(const OrderedGraph& g, Interval r, Interval c) {
  bool rows_const = true, cols_const = true;
  for (auto i = r.lo; i < r.hi; ++i)
    for (auto j = c.lo; j < c.hi; ++j) {
      if (g.adjacent(i, j) != g.adjacent(i, c.lo)) rows_const = false;
      if (g.adjacent(i, j) != g.adjacent(r.lo, j)) cols_const = false;
    }
  return !rows_const && !cols_const;
}

// Every choice of d-1 cut positions among the k-1 part boundaries.
bool naive_pair_amf(const OrderedGraph& g, const RMPartition& p, std::size_t d) {
  const auto pb = p.intervals().bounds();
  const std::size_t k = p.size();
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << (k - 1)); ++mask) {
    if (static_cast<std::size_t>(__builtin_popcountll(mask)) != d - 1) continue;
    std::vector<std::size_t> b{0};
    for (std::size_t i = 1; i < k; ++i)
      if (mask >> (i - 1) & 1U) b.push_back(pb[i]);
    b.push_back(pb[k]);
    bool all_mixed = true;
    for (std::size_t i = 0; i < d && all_mixed; ++i)
      for (std::size_t j = 0; j < d && all_mixed; ++j)
        if (i != j) all_mixed = naive_zone_mixed(g, {b[i], b[i + 1]}, {b[j], b[j + 1]});
    if (all_mixed) return false;
  }
  return true;
}

TEST(Rmp, Validate) {
  EXPECT_TRUE(validate_rmp(fix_s52(), s52_parts()).ok);
  EXPECT_TRUE(validate_rmp(fix_c5(), RMPartition::singletons(5)).ok);
  auto k2 = validate_rmp(complete_graph(2), RMPartition::parse("0-1"));
  EXPECT_FALSE(k2.ok);
  EXPECT_EQ(k2.i, 0);
  EXPECT_EQ(k2.j, 0);
  EXPECT_TRUE(validate_rmp(path_graph(3), RMPartition::parse("0-0,1-1,2-2")).ok);
  // {0, 1} is not stable in a path.
  EXPECT_FALSE(validate_rmp(path_graph(3), RMPartition::parse("0-1,2-2")).ok);
  // 2 sees 1 but not 0.
  auto g = OrderedGraph::from_edges(3, {{1, 2}});
  auto r = validate_rmp(g, RMPartition::parse("0-1,2-2"));
  EXPECT_FALSE(r.ok);
  EXPECT_EQ(r.i, 0);
  EXPECT_EQ(r.j, 1);
  EXPECT_EQ(r.witness, 2u);
}

TEST(Rmp, ValidateMatchesDefinition) {
  std::mt19937_64 rng(20);
  for (int trial = 0; trial < 2000; ++trial) {
    const std::size_t n = 1 + rng() % 7;
    auto g = gnp_graph(n, 0.3, rng());
    auto [h, p] = random_rmp_instance(n, 0.5, rng());
    EXPECT_EQ(validate_rmp(g, p).ok, naive_rmp(g, p));
    EXPECT_TRUE(validate_rmp(h, p).ok);
  }
}

TEST(Rmp, ValidateRejectsNonPartitions) {
  RMPartition p;
  p.parts = {{0, 1}, {1, 2}};
  EXPECT_THROW(validate_rmp(edgeless_graph(3), p), std::invalid_argument);
  p.parts = {{0}, {1}};
  EXPECT_THROW(validate_rmp(edgeless_graph(3), p), std::invalid_argument);
  p.parts = {{0, 2}, {1}};
  EXPECT_FALSE(validate_rmp(edgeless_graph(3), p).ok);
  p.ordered = false;
  EXPECT_TRUE(validate_rmp(edgeless_graph(3), p).ok);
}

TEST(Rmp, Quotient) {
  EXPECT_EQ(quotient(fix_s52(), s52_parts()), complete_graph(4));
  EXPECT_EQ(quotient(fix_c5(), RMPartition::singletons(5)), fix_c5());
  EXPECT_EQ(quotient(edgeless_graph(4), RMPartition::parse("0-1,2-3")), edgeless_graph(2));
  EXPECT_THROW(quotient(complete_graph(2), RMPartition::parse("0-1")), std::invalid_argument);
}

TEST(Rmp, ShiftTransversals) {
  const auto g = fix_s52();
  const auto p = s52_parts();
  Chosen path{{0, {shift_index(1, 2)}}, {1, {shift_index(2, 3)}}, {2, {shift_index(3, 4)}}, {3, {shift_index(4, 5)}}};
  EXPECT_EQ(transversal_minor(g, p, path), path_graph(4));

  // One vertex per part: always a forest.
  std::size_t transversals = 0;
  for (auto a : p.parts[0])
    for (auto b : p.parts[1])
      for (auto c : p.parts[2])
        for (auto d : p.parts[3]) {
          EXPECT_TRUE(is_forest(induced_subgraph(g, std::vector<Vertex>{a, b, c, d})));
          ++transversals;
        }
  EXPECT_EQ(transversals, 24u);

  std::set<std::vector<Edge>> seen;
  for_each_transversal_minor(g, p, {0, 1, 2, 3}, [&](const OrderedGraph& m, const Chosen&) { seen.insert(m.edges()); });
  EXPECT_EQ(seen.size(), 64u);
}

TEST(Rmp, TransversalErrors) {
  const auto g = fix_s52();
  const auto p = s52_parts();
  EXPECT_THROW(transversal_minor(g, p, Chosen{{1, {}}}), std::invalid_argument);
  EXPECT_THROW(transversal_minor(g, p, Chosen{{1, {0}}}), std::invalid_argument);
  EXPECT_THROW(transversal_minor(g, p, Chosen{{2, {3}}, {1, {1}}}), std::invalid_argument);
  EXPECT_THROW(transversal_minor(g, p, Chosen{{1, {1}}, {1, {2}}}), std::invalid_argument);
}

TEST(Rmp, QuotientIsFullTransversalMinor) {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 300; ++trial) {
    auto [g, p] = random_rmp_instance(1 + rng() % 12, 0.5, rng());
    Chosen all;
    for (std::size_t i = 0; i < p.size(); ++i) all.emplace_back(i, p.parts[i]);
    const auto q = quotient(g, p);
    EXPECT_EQ(q, transversal_minor(g, p, all));
    for (std::size_t i = 0; i < p.size(); ++i)
      for (std::size_t j = i + 1; j < p.size(); ++j) {
        bool any = false;
        for (auto u : p.parts[i])
          for (auto v : p.parts[j]) any = any || g.adjacent(u, v);
        EXPECT_EQ(q.adjacent(i, j), any);
      }
  }
}

TEST(Rmp, LiftColoring) {
  const auto g = fix_s52();
  const auto p = s52_parts();
  auto lifted = lift_quotient_coloring(g, p, Coloring({0, 1, 2, 3}));
  EXPECT_TRUE(verify_coloring(g, lifted));
  EXPECT_EQ(lifted.palette_size, 4);
  EXPECT_THROW(lift_quotient_coloring(g, p, Coloring({0, 0, 1, 2})), std::invalid_argument);
  EXPECT_EQ(lift_quotient_coloring(fix_c5(), RMPartition::singletons(5), Coloring({0, 1, 1, 0, 2})).colors,
            (std::vector<int>{0, 1, 1, 0, 2}));

  std::mt19937_64 rng(22);
  for (int trial = 0; trial < 10000; ++trial) {
    auto [h, q] = random_rmp_instance(1 + rng() % 12, 0.5, rng());
    auto qc = random_proper_coloring(quotient(h, q), rng);
    auto c = lift_quotient_coloring(h, q, qc);
    ASSERT_TRUE(verify_coloring(h, c));
    EXPECT_EQ(c.palette_size, qc.palette_size);
  }
}

TEST(Phi, Values) {
  EXPECT_EQ(phi_h(1, 5), 1u);
  EXPECT_EQ(phi_h(5, 1), 1u);
  EXPECT_EQ(phi_h(2, 2), 3u);
  EXPECT_EQ(phi_h(3, 2), 7u);
  EXPECT_EQ(phi_h(2, 3), 5u);  // phi(1,3) (phi(2,2) + 1) + 1
  EXPECT_EQ(phi_amf(1, 1), 0u);
  EXPECT_EQ(phi_amf(7, 1), 0u);
  EXPECT_EQ(phi_amf(1, 4), 1u);
  EXPECT_EQ(phi_amf(2, 2), 2u);
  EXPECT_EQ(phi_amf(3, 2), 3u);
  EXPECT_EQ(phi_h(40, 40), std::numeric_limits<std::uint64_t>::max());
  EXPECT_THROW(phi_h(0, 1), std::invalid_argument);
  EXPECT_THROW(phi_amf(1, 0), std::invalid_argument);
}

// Table of phi_amf filled by hand from the recurrence, rows w = 1..4,
// columns d = 1..4.
TEST(Phi, AmfTable) {
  const std::uint64_t table[4][4] = {{0, 1, 1, 1}, {0, 2, 4, 6}, {0, 3, 8, 15}, {0, 4, 13, 29}};
  for (std::uint64_t w = 1; w <= 4; ++w)
    for (std::uint64_t d = 1; d <= 4; ++d) EXPECT_EQ(phi_amf(w, d), table[w - 1][d - 1]) << w << "," << d;
  // phi - 1 <= C(w+d-2, d-1) does not hold at (3, 3): 7 > 6.
  EXPECT_GT(phi_amf(3, 3) - 1, binomial(4, 2));
}

TEST(Phi, BinomialBoundAndMonotone) {
  for (std::uint64_t w = 1; w <= 10; ++w)
    for (std::uint64_t d = 1; d <= 10; ++d) {
      EXPECT_LE(phi_amf(w, d) + 1, 2 * binomial(w + d - 2, d - 1));
      std::uint64_t power = 1;
      for (std::uint64_t i = 0; i < d; ++i) power *= w;
      EXPECT_LE(phi_amf(w, d), power);
    }
  for (std::uint64_t a = 1; a <= 12; ++a)
    for (std::uint64_t b = 1; b <= 12; ++b) {
      if (a < 12) {
        EXPECT_LE(phi_h(a, b), phi_h(a + 1, b));
        EXPECT_LE(phi_amf(a, b), phi_amf(a + 1, b));
      }
      if (b < 12) {
        EXPECT_LE(phi_h(a, b), phi_h(a, b + 1));
        EXPECT_LE(phi_amf(a, b), phi_amf(a, b + 1));
      }
    }
  EXPECT_EQ(binomial(10, 3), 120u);
  EXPECT_EQ(binomial(3, 5), 0u);
}

TEST(PairAmf, Basics) {
  const auto g = fix_s52();
  const auto p = s52_parts();
  auto r1 = is_pair_amf(g, p, 1);
  EXPECT_FALSE(r1.amf);
  auto r5 = is_pair_amf(g, p, 5);
  EXPECT_TRUE(r5.amf);
  EXPECT_TRUE(r5.vacuous);
  EXPECT_EQ(is_pair_amf(g, p, 4).amf, naive_pair_amf(g, p, 4));
  EXPECT_EQ(is_pair_amf(g, p, 2).amf, naive_pair_amf(g, p, 2));
  RMPartition unordered = p;
  unordered.ordered = false;
  EXPECT_THROW(is_pair_amf(g, unordered, 2), std::invalid_argument);
}

TEST(PairAmf, MatchesCoarseningScan) {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 1500; ++trial) {
    auto [g, p] = random_rmp_instance(1 + rng() % 10, 0.5, rng());
    for (std::size_t d = 1; d <= 4; ++d) {
      auto r = is_pair_amf(g, p, d);
      if (p.size() < d) {
        EXPECT_TRUE(r.vacuous);
        EXPECT_TRUE(r.amf);
      } else {
        ASSERT_EQ(r.amf, naive_pair_amf(g, p, d));
      }
    }
  }
}

TEST(AmfQuotient, BoundOnRandomInstances) {
  EXPECT_EQ(check_amf_quotient_bound(edgeless_graph(3), RMPartition::singletons(3), 2).omega_quotient, 1u);
  std::mt19937_64 rng(24);
  int checked = 0;
  for (int trial = 0; trial < 3000; ++trial) {
    auto [g, p] = random_rmp_instance(1 + rng() % 10, 0.6, rng());
    const std::size_t d = 1 + rng() % 3;
    if (!is_pair_amf(g, p, d).amf) {
      EXPECT_THROW(check_amf_quotient_bound(g, p, d), std::invalid_argument);
      continue;
    }
    auto r = check_amf_quotient_bound(g, p, d);
    EXPECT_TRUE(r.bound_holds);
    EXPECT_EQ(r.omega_g, exact_clique_number(g).size);
    ++checked;
  }
  EXPECT_GE(checked, 500);
}

TEST(Literal, RoundTrip) {
  auto p = RMPartition::parse("0-0,1-2,3-5,6-9");
  EXPECT_EQ(p.size(), 4u);
  EXPECT_EQ(to_string(p), "0-0,1-2,3-5,6-9");
  EXPECT_EQ(quotient(fix_s52(), p), complete_graph(4));
  EXPECT_THROW(RMPartition::parse("0-1,3-4"), ParseError);
}

}  // namespace
}  // namespace twwchi
