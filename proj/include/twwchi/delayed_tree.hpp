#pragma once

// Delayed decomposition trees of ordered graphs.
//
// Level 0 is the whole vertex interval. Every part of a level is refined by
// its local modules: a part that is a module of G is cut in two halves, any
// other part is cut into maximal runs of vertices with the same
// neighbourhood outside the part. Once all parts are singletons the
// singleton level is repeated once, so every leaf hangs below a one-child
// copy of itself. Node x carries a graph g(x) on its grandchildren, with an
// edge between cousins whose intervals are fully joined in G.

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "twwchi/graph.hpp"
#include "twwchi/subst_tree.hpp"

namespace twwchi {

enum class SplitRule { Midpoint, FirstVertex };

inline const char* to_string(SplitRule r) { return r == SplitRule::Midpoint ? "midpoint" : "first"; }

struct DelayedNode {
  Interval interval;
  int depth = 0;
  int parent = -1;
  std::vector<int> children;
};

struct DelayedTree {
  std::size_t n = 0;
  SplitRule rule = SplitRule::Midpoint;
  std::vector<DelayedNode> nodes;      // node 0 is the root
  std::vector<std::vector<int>> levels;  // node ids per depth, left to right

  int depth() const { return static_cast<int>(levels.size()) - 1; }
  bool is_leaf(int x) const { return nodes[x].children.empty(); }

  std::vector<int> grandchildren(int x) const {
    std::vector<int> out;
    for (int c : nodes[x].children)
      out.insert(out.end(), nodes[c].children.begin(), nodes[c].children.end());
    return out;
  }

  IntervalPartition level_partition(int d) const {
    std::vector<std::size_t> bounds{0};
    for (int x : levels[d]) bounds.push_back(nodes[x].interval.hi);
    return IntervalPartition(bounds);
  }

  /// Leaf node holding vertex v.
  int leaf_of(Vertex v) const { return levels.back()[v]; }
};

/// g(x) for every node, on grandchildren(x) in order.
using NodeGraphs = std::vector<OrderedGraph>;

namespace detail {
inline std::vector<Interval> intervals_from_bounds(const std::vector<std::size_t>& b) {
  std::vector<Interval> out;
  for (std::size_t k = 0; k + 1 < b.size(); ++k) out.push_back({b[k], b[k + 1]});
  return out;
}
}  // namespace detail

/// Cuts i into its local modules, left to right.
inline std::vector<Interval> local_module_partition(const OrderedGraph& g, Interval i,
                                                SplitRule rule = SplitRule::Midpoint) {
  if (i.size() == 0) throw std::invalid_argument("empty interval");
  if (i.hi > g.size()) throw std::out_of_range("interval exceeds the graph");
  if (i.size() == 1) return {i};
  const Bitset inside = interval_bitset(g.size(), i);
  if (is_module(g, inside)) {
    const std::size_t mid = rule == SplitRule::Midpoint ? (i.lo + i.hi - 1) / 2 + 1 : i.lo + 1;
    return {{i.lo, mid}, {mid, i.hi}};
  }
  std::vector<std::size_t> bounds{i.lo};
  Bitset prev = g.neighbors(i.lo) - inside;
  for (auto v = i.lo + 1; v < i.hi; ++v) {
    Bitset cur = g.neighbors(v) - inside;
    if (cur != prev) bounds.push_back(v);
    prev = std::move(cur);
  }
  bounds.push_back(i.hi);
  return detail::intervals_from_bounds(bounds);
}

namespace detail {
inline void require_cousin_module(const OrderedGraph& g, Interval a, Interval b) {
  if (!is_module_wrt(g, interval_vertices(a), interval_vertices(b)))
    throw VerificationFailure("cousin interval is not a module with respect to another cousin");
}
}  // namespace detail

/// Node graphs of a delayed tree. With `verify`, every cousin pair is checked
/// to be a module pair and all cross pairs are tested, not just one.
inline NodeGraphs delayed_node_graphs(const OrderedGraph& g, const DelayedTree& t, bool verify = false) {
  NodeGraphs ng;
  ng.reserve(t.nodes.size());
  for (std::size_t x = 0; x < t.nodes.size(); ++x) {
    const auto gc = t.grandchildren(static_cast<int>(x));
    OrderedGraph h(gc.size());
    for (std::size_t a = 0; a < gc.size(); ++a)
      for (std::size_t b = a + 1; b < gc.size(); ++b) {
        const auto& ya = t.nodes[gc[a]];
        const auto& yb = t.nodes[gc[b]];
        if (ya.parent == yb.parent) continue;
        if (verify) {
          detail::require_cousin_module(g, ya.interval, yb.interval);
          detail::require_cousin_module(g, yb.interval, ya.interval);
        }
        if (g.adjacent(ya.interval.lo, yb.interval.lo)) h.add_edge(a, b);
      }
    ng.push_back(std::move(h));
  }
  return ng;
}

inline DelayedTree build_delayed_skeleton(const OrderedGraph& g, SplitRule rule = SplitRule::Midpoint) {
  if (g.size() == 0) throw std::invalid_argument("graph must have a vertex");
  DelayedTree t;
  t.n = g.size();
  t.rule = rule;
  t.nodes.push_back({{0, g.size()}, 0, -1, {}});
  t.levels.push_back({0});
  bool repeated = false;
  while (!repeated) {
    const auto& cur = t.levels.back();
    const bool singletons = cur.size() == g.size();
    std::vector<int> next;
    for (int x : cur) {
      const Interval iv = t.nodes[x].interval;
      const auto parts = singletons ? std::vector<Interval>{iv} : local_module_partition(g, iv, rule);
      for (const auto& part : parts) {
        const int id = static_cast<int>(t.nodes.size());
        t.nodes.push_back({part, static_cast<int>(t.levels.size()), x, {}});
        t.nodes[x].children.push_back(id);
        next.push_back(id);
      }
    }
    repeated = singletons;
    t.levels.push_back(std::move(next));
  }
  return t;
}

inline std::pair<DelayedTree, NodeGraphs> build_delayed_tree(const OrderedGraph& g,
                                                             SplitRule rule = SplitRule::Midpoint,
                                                             bool verify = false) {
  DelayedTree t = build_delayed_skeleton(g, rule);
  NodeGraphs ng = delayed_node_graphs(g, t, verify);
  return {std::move(t), std::move(ng)};
}

namespace detail {
inline void check_node_graphs(const DelayedTree& t, const NodeGraphs& ng) {
  if (ng.size() != t.nodes.size()) throw std::invalid_argument("one node graph per node expected");
  for (std::size_t x = 0; x < t.nodes.size(); ++x) {
    const auto& nd = t.nodes[x];
    if (nd.children.empty()) {
      if (nd.parent == -1 || t.nodes[nd.parent].children.size() != 1)
        throw std::invalid_argument("malformed delayed tree: leaf parent has several children");
    }
    if (ng[x].size() != t.grandchildren(static_cast<int>(x)).size())
      throw std::invalid_argument("node graph size differs from grandchild count");
  }
}
}  // namespace detail

/// Joins the leaves below cousins y, z of the node x whenever yz is an edge
/// of g(x). Edges of g(x) between siblings never take effect.
inline OrderedGraph realize_delayed(const DelayedTree& t, const NodeGraphs& ng) {
  detail::check_node_graphs(t, ng);
  OrderedGraph g(t.n);
  for (std::size_t x = 0; x < t.nodes.size(); ++x) {
    const auto gc = t.grandchildren(static_cast<int>(x));
    for (auto [a, b] : ng[x].edges()) {
      const auto& ya = t.nodes[gc[a]];
      const auto& yb = t.nodes[gc[b]];
      if (ya.parent == yb.parent) continue;
      for (auto u = ya.interval.lo; u < ya.interval.hi; ++u)
        for (auto v = yb.interval.lo; v < yb.interval.hi; ++v) g.add_edge(u, v);
    }
  }
  return g;
}

enum class Parity { Even = 0, Odd = 1 };

inline const char* to_string(Parity p) { return p == Parity::Odd ? "odd" : "even"; }

/// Keeps g(x) on nodes of the given depth parity, edgeless elsewhere.
inline NodeGraphs restrict_parity(const DelayedTree& t, const NodeGraphs& ng, Parity p) {
  detail::check_node_graphs(t, ng);
  NodeGraphs out;
  for (std::size_t x = 0; x < t.nodes.size(); ++x)
    out.push_back(t.nodes[x].depth % 2 == static_cast<int>(p) ? ng[x] : OrderedGraph(ng[x].size()));
  return out;
}

/// (g_o, g_e): node graphs of odd-depth and even-depth nodes.
inline std::pair<NodeGraphs, NodeGraphs> odd_even_split(const DelayedTree& t, const NodeGraphs& ng) {
  return {restrict_parity(t, ng, Parity::Odd), restrict_parity(t, ng, Parity::Even)};
}

/// Substitution tree realizing realize_delayed(t, ng) when ng only has edges
/// at nodes of parity p. Kept nodes are those of parity p; each hangs below
/// its grandparent (below a synthetic edgeless root for depth-1 nodes when
/// p is odd). Nodes without grandchildren become leaves. `source` holds the
/// delayed-tree node id, -1 for the synthetic root.
inline SubstTree delayed_to_subst_tree(const DelayedTree& t, const NodeGraphs& ng, Parity p) {
  detail::check_node_graphs(t, ng);
  for (std::size_t x = 0; x < t.nodes.size(); ++x)
    if (t.nodes[x].depth % 2 != static_cast<int>(p) && ng[x].edge_count() > 0)
      throw std::invalid_argument("node graphs have edges at a node of the other parity");

  SubstTree st;
  std::vector<int> image(t.nodes.size(), -1);
  // Deepest levels first so children exist before their parents.
  for (int d = t.depth(); d >= 0; --d) {
    if (d % 2 != static_cast<int>(p)) continue;
    for (int x : t.levels[d]) {
      const auto gc = t.grandchildren(x);
      if (gc.empty()) {
        image[x] = st.add_leaf(x);
        continue;
      }
      std::vector<int> kids;
      for (int y : gc) kids.push_back(image[y]);
      OrderedGraph h = ng[x];
      for (auto [a, b] : ng[x].edges())
        if (t.nodes[gc[a]].parent == t.nodes[gc[b]].parent) h.remove_edge(a, b);
      image[x] = st.add_internal(std::move(kids), std::move(h), x);
    }
  }
  if (p == Parity::Even) {
    st.set_root(image[0]);
  } else {
    std::vector<int> kids;
    for (int y : t.levels[1]) kids.push_back(image[y]);
    const auto k = kids.size();
    st.set_root(st.add_internal(std::move(kids), OrderedGraph(k), -1));
  }
  return st;
}

}  // namespace twwchi
