#pragma once

// Shared fixtures for the test suites.
//
// fix_c5: the labelled 5-cycle A..E = 0..4 with edges AB, AC, BE, CD, DE.
// fix_s52: the shift graph S_{5,2} with parts V_2..V_5 consecutive.

#include <cstdint>
#include <random>
#include <vector>

#include "twwchi/graph.hpp"

namespace twwchi::testing {

enum C5 : Vertex { A = 0, B = 1, C = 2, D = 3, E = 4 };

inline OrderedGraph fix_c5() {
  return OrderedGraph::from_edges(5, {{A, B}, {A, C}, {B, E}, {C, D}, {D, E}});
}

inline OrderedGraph fix_s52() { return shift2_graph(5); }

/// Index of shift-graph vertex (i, j) in the (j, i)-lexicographic order.
inline Vertex shift_index(int i, int j) {
  return static_cast<Vertex>((j - 1) * (j - 2) / 2 + (i - 1));
}

inline std::vector<Edge> sorted_edges(std::vector<Edge> es) {
  for (auto& [u, v] : es)
    if (u > v) std::swap(u, v);
  std::sort(es.begin(), es.end());
  return es;
}

inline Coloring random_proper_coloring(const OrderedGraph& g, std::mt19937_64& rng) {
  // Greedy over a random vertex order.
  std::vector<Vertex> order = all_vertices(g.size());
  std::shuffle(order.begin(), order.end(), rng);
  std::vector<int> c(g.size(), -1);
  for (auto v : order) {
    int x = 0;
    bool clash = true;
    while (clash) {
      clash = false;
      for (Vertex w = 0; w < g.size(); ++w)
        if (g.adjacent(v, w) && c[w] == x) {
          clash = true;
          ++x;
          break;
        }
    }
    c[v] = x;
  }
  return Coloring(c);
}

}  // namespace twwchi::testing
