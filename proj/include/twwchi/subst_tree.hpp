#pragma once

// Substitution trees: rooted trees whose internal nodes carry a graph on
// their ordered children. The realization has the leaves as vertices (in
// left-to-right order) and joins two leaves when the children of their
// closest common ancestor above them are adjacent in that ancestor's graph.

#include <cstdint>
#include <optional>
#include <random>
#include <set>
#include <stdexcept>
#include <vector>

#include "twwchi/graph.hpp"

namespace twwchi {

struct SubstNode {
  int parent = -1;
  std::vector<int> children;
  OrderedGraph graph;  // on children; empty for leaves
  int source = -1;     // node id in the tree this one was derived from
};

class SubstTree {
 public:
  int add_leaf(int source = -1) {
    nodes_.push_back(SubstNode{});
    nodes_.back().source = source;
    root_ = -1;
    return static_cast<int>(nodes_.size()) - 1;
  }

  /// Children must already exist and have no parent yet.
  int add_internal(std::vector<int> children, OrderedGraph graph, int source = -1) {
    if (children.empty()) throw std::invalid_argument("internal node needs children");
    if (graph.size() != children.size())
      throw std::invalid_argument("node graph size differs from child count");
    const int id = static_cast<int>(nodes_.size());
    for (int c : children) {
      if (c < 0 || c >= id) throw std::invalid_argument("unknown child node");
      if (nodes_[c].parent != -1) throw std::invalid_argument("child already has a parent");
    }
    if (std::set<int>(children.begin(), children.end()).size() != children.size())
      throw std::invalid_argument("repeated child node");
    for (int c : children) nodes_[c].parent = id;
    nodes_.push_back(SubstNode{-1, std::move(children), std::move(graph), source});
    root_ = -1;
    return id;
  }

  /// Fixes the root; every node must lie below it. Adding nodes afterwards
  /// unsets the root again.
  void set_root(int r) {
    if (r < 0 || r >= size() || nodes_[r].parent != -1) throw std::invalid_argument("bad root");
    root_ = r;
    index();
    if (static_cast<int>(preorder_.size()) != size())
      throw std::invalid_argument("substitution tree has nodes outside the root's subtree");
  }

  int size() const { return static_cast<int>(nodes_.size()); }
  int root() const { return root_; }
  const SubstNode& node(int x) const { return nodes_[x]; }
  bool is_leaf(int x) const { return nodes_[x].children.empty(); }
  int parent(int x) const { return nodes_[x].parent; }
  const std::vector<int>& children(int x) const { return nodes_[x].children; }
  const OrderedGraph& graph(int x) const { return nodes_[x].graph; }

  int position_in_parent(int x) const {
    check_rooted();
    return position_[x];
  }

  /// Leaves in left-to-right order; the realization's vertex i is leaves()[i].
  const std::vector<int>& leaves() const {
    check_rooted();
    return leaves_;
  }

  std::size_t leaf_count() const { return leaves().size(); }

  /// Realization index of the first leaf below x; the leaves below x are
  /// consecutive.
  std::size_t first_leaf(int x) const {
    check_rooted();
    return first_leaf_[x];
  }

  std::size_t leaf_span(int x) const {
    check_rooted();
    return leaf_span_[x];
  }

  std::size_t vertex_of(int leaf) const {
    if (!is_leaf(leaf)) throw std::invalid_argument("node is not a leaf");
    return first_leaf(leaf);
  }

  /// Nodes in preorder from the root.
  const std::vector<int>& preorder() const {
    check_rooted();
    return preorder_;
  }

 private:
  void check_rooted() const {
    if (root_ < 0) throw std::logic_error("substitution tree has no root");
  }

  void index() {
    const auto n = nodes_.size();
    preorder_.clear();
    leaves_.clear();
    position_.assign(n, -1);
    first_leaf_.assign(n, 0);
    leaf_span_.assign(n, 0);
    std::vector<int> stack{root_};
    while (!stack.empty()) {
      int x = stack.back();
      stack.pop_back();
      preorder_.push_back(x);
      const auto& ch = nodes_[x].children;
      for (std::size_t i = 0; i < ch.size(); ++i) position_[ch[i]] = static_cast<int>(i);
      for (auto it = ch.rbegin(); it != ch.rend(); ++it) stack.push_back(*it);
    }
    for (int x : preorder_)
      if (nodes_[x].children.empty()) {
        first_leaf_[x] = leaves_.size();
        leaf_span_[x] = 1;
        leaves_.push_back(x);
      }
    for (auto it = preorder_.rbegin(); it != preorder_.rend(); ++it) {
      const auto& ch = nodes_[*it].children;
      if (ch.empty()) continue;
      first_leaf_[*it] = first_leaf_[ch.front()];
      for (int c : ch) leaf_span_[*it] += leaf_span_[c];
    }
  }

  std::vector<SubstNode> nodes_;
  int root_ = -1;
  std::vector<int> preorder_, leaves_, position_;
  std::vector<std::size_t> first_leaf_, leaf_span_;
};

inline SubstTree single_vertex_tree() {
  SubstTree t;
  t.set_root(t.add_leaf());
  return t;
}

/// Root over `graph.size()` leaves with `graph` as node graph.
inline SubstTree star_tree(const OrderedGraph& graph) {
  SubstTree t;
  std::vector<int> ch;
  for (std::size_t i = 0; i < graph.size(); ++i) ch.push_back(t.add_leaf());
  t.set_root(t.add_internal(std::move(ch), graph));
  return t;
}

inline OrderedGraph realize_subst(const SubstTree& t) {
  OrderedGraph g(t.leaf_count());
  for (int z : t.preorder()) {
    if (t.is_leaf(z)) continue;
    const auto& ch = t.children(z);
    for (auto [a, b] : t.graph(z).edges()) {
      const auto lo_a = t.first_leaf(ch[a]), lo_b = t.first_leaf(ch[b]);
      for (auto u = lo_a; u < lo_a + t.leaf_span(ch[a]); ++u)
        for (auto v = lo_b; v < lo_b + t.leaf_span(ch[b]); ++v) g.add_edge(u, v);
    }
  }
  return g;
}

/// No two internal siblings are adjacent in their parent's graph.
inline bool is_independent(const SubstTree& t) {
  for (int z : t.preorder()) {
    if (t.is_leaf(z)) continue;
    const auto& ch = t.children(z);
    for (auto [a, b] : t.graph(z).edges())
      if (!t.is_leaf(ch[a]) && !t.is_leaf(ch[b])) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Depth

/// A non-root node is isolated when it has no neighbour in its parent's
/// graph. The root has no parent and never adds to the depth of the nodes
/// below it; this is the one place that convention lives.
inline bool counts_toward_depth(const SubstTree& t, int x) {
  if (x == t.root()) return false;
  return t.graph(t.parent(x)).degree(static_cast<Vertex>(t.position_in_parent(x))) > 0;
}

struct DepthInfo {
  std::vector<bool> isolated;  // per node; false for the root
  std::vector<int> depth;      // non-isolated strict ancestors, root excluded
  int tree_depth = 0;          // maximum leaf depth
};

inline DepthInfo depth_info(const SubstTree& t) {
  DepthInfo info;
  info.isolated.assign(t.size(), false);
  info.depth.assign(t.size(), 0);
  for (int x : t.preorder()) {
    if (x != t.root()) {
      info.isolated[x] = !counts_toward_depth(t, x);
      const int p = t.parent(x);
      info.depth[x] = info.depth[p] + (counts_toward_depth(t, p) ? 1 : 0);
    }
    if (t.is_leaf(x)) info.tree_depth = std::max(info.tree_depth, info.depth[x]);
  }
  return info;
}

// ---------------------------------------------------------------------------
// Clique numbers

namespace detail {
// Branch and bound for a maximum-weight clique; node graphs are small.
class WeightedClique {
 public:
  WeightedClique(const OrderedGraph& g, const std::vector<std::size_t>& w) : g_(g), w_(w) {}

  std::pair<std::size_t, std::vector<Vertex>> run() {
    Bitset all(g_.size());
    all.set();
    std::vector<Vertex> cur;
    expand(cur, 0, all);
    return {best_, best_set_};
  }

 private:
  void expand(std::vector<Vertex>& cur, std::size_t weight, Bitset cand) {
    if (weight > best_) {
      best_ = weight;
      best_set_ = cur;
    }
    while (cand.any()) {
      std::size_t bound = weight;
      for (auto v = cand.find_first(); v != Bitset::npos; v = cand.find_next(v)) bound += w_[v];
      if (bound <= best_) return;
      const auto v = cand.find_first();
      cand.reset(v);
      cur.push_back(v);
      expand(cur, weight + w_[v], cand & g_.neighbors(v));
      cur.pop_back();
    }
  }

  const OrderedGraph& g_;
  const std::vector<std::size_t>& w_;
  std::size_t best_ = 0;
  std::vector<Vertex> best_set_;
};
}  // namespace detail

inline std::pair<std::size_t, std::vector<Vertex>> max_weight_clique(
    const OrderedGraph& g, const std::vector<std::size_t>& weights) {
  if (weights.size() != g.size()) throw std::invalid_argument("one weight per vertex expected");
  if (g.size() == 0) return {0, {}};
  return detail::WeightedClique(g, weights).run();
}

/// Clique number of the realization below every node, bottom-up.
inline std::vector<std::size_t> omega_dp(const SubstTree& t) {
  std::vector<std::size_t> omega(t.size(), 1);
  const auto& pre = t.preorder();
  for (auto it = pre.rbegin(); it != pre.rend(); ++it) {
    if (t.is_leaf(*it)) continue;
    std::vector<std::size_t> w;
    for (int c : t.children(*it)) w.push_back(omega[c]);
    omega[*it] = max_weight_clique(t.graph(*it), w).first;
  }
  return omega;
}

/// depth + 1 leaves forming a clique of the realization: a deepest leaf
/// plus, for each non-isolated ancestor, a leaf below one of its neighbours.
inline std::vector<Vertex> clique_witness(const SubstTree& t) {
  const auto info = depth_info(t);
  int deepest = t.leaves().front();
  for (int x : t.leaves())
    if (info.depth[x] > info.depth[deepest]) deepest = x;
  std::vector<Vertex> out{t.vertex_of(deepest)};
  for (int y = t.parent(deepest); y != -1 && y != t.root(); y = t.parent(y)) {
    if (!counts_toward_depth(t, y)) continue;
    const int z = t.parent(y);
    const auto& nb = t.graph(z).neighbors(static_cast<Vertex>(t.position_in_parent(y)));
    const int w = t.children(z)[nb.find_first()];
    out.push_back(t.first_leaf(w));
  }
  std::sort(out.begin(), out.end());
  if (out.size() != static_cast<std::size_t>(info.tree_depth) + 1)
    throw VerificationFailure("clique witness has the wrong size");
  const auto g = realize_subst(t);
  for (std::size_t i = 0; i < out.size(); ++i)
    for (std::size_t j = i + 1; j < out.size(); ++j)
      if (!g.adjacent(out[i], out[j])) throw VerificationFailure("clique witness is not a clique");
  return out;
}

// ---------------------------------------------------------------------------
// Restriction

/// The subtree spanned by the given leaves, node graphs induced on the kept
/// children. Each node's `source` records its id in t.
inline SubstTree restrict_to_leaves(const SubstTree& t, const std::vector<int>& keep) {
  std::vector<bool> wanted(t.size(), false);
  for (int x : keep) {
    if (x < 0 || x >= t.size() || !t.is_leaf(x)) throw std::invalid_argument("not a leaf");
    wanted[x] = true;
  }
  if (keep.empty()) throw std::invalid_argument("cannot restrict to no leaves");
  SubstTree out;
  std::vector<int> image(t.size(), -1);
  const auto& pre = t.preorder();
  for (auto it = pre.rbegin(); it != pre.rend(); ++it) {
    const int x = *it;
    if (t.is_leaf(x)) {
      if (wanted[x]) image[x] = out.add_leaf(x);
      continue;
    }
    std::vector<int> kids;
    std::vector<Vertex> pos;
    const auto& ch = t.children(x);
    for (std::size_t i = 0; i < ch.size(); ++i)
      if (image[ch[i]] != -1) {
        kids.push_back(image[ch[i]]);
        pos.push_back(i);
      }
    if (!kids.empty()) image[x] = out.add_internal(kids, induced_subgraph(t.graph(x), pos), x);
  }
  out.set_root(image[t.root()]);
  return out;
}

// ---------------------------------------------------------------------------
// Generators

/// Random tree with `leaves` leaves; every internal node has 2..4 children
/// and a G(m, p) node graph. With `independent`, edges between internal
/// siblings are removed.
inline SubstTree random_subst_tree(std::size_t leaves, double p, bool independent,
                                   std::uint64_t seed) {
  if (leaves == 0) throw std::invalid_argument("need at least one leaf");
  std::mt19937_64 rng(seed);
  SubstTree t;
  auto grow = [&](auto& self, std::size_t m) -> int {
    if (m == 1) return t.add_leaf();
    const std::size_t k = 2 + uniform_below(rng, std::min<std::size_t>(m, 4) - 1);
    // Random composition of m into k positive parts.
    std::vector<std::size_t> sizes(k, 1);
    for (std::size_t r = m - k; r > 0; --r) ++sizes[uniform_below(rng, k)];
    std::vector<int> ch;
    for (auto s : sizes) ch.push_back(self(self, s));
    OrderedGraph g(k);
    for (Vertex a = 0; a < k; ++a)
      for (Vertex b = a + 1; b < k; ++b) {
        const bool edge = bernoulli(rng, p);
        if (edge && !(independent && !t.is_leaf(ch[a]) && !t.is_leaf(ch[b]))) g.add_edge(a, b);
      }
    return t.add_internal(std::move(ch), std::move(g));
  };
  t.set_root(grow(grow, leaves));
  return t;
}

/// The binary cotree behind random_cograph(n, seed), drawn identically.
inline SubstTree random_cotree(std::size_t n, std::uint64_t seed) {
  if (n == 0) throw std::invalid_argument("need at least one vertex");
  std::mt19937_64 rng(seed);
  SubstTree t;
  auto grow = [&](auto& self, std::size_t m) -> int {
    if (m <= 1) return t.add_leaf();
    const std::size_t left = 1 + uniform_below(rng, m - 1);
    const bool join = (rng() & 1) != 0;
    const int a = self(self, left);
    const int b = self(self, m - left);
    return t.add_internal({a, b}, join ? complete_graph(2) : edgeless_graph(2));
  };
  t.set_root(grow(grow, n));
  return t;
}

// ---------------------------------------------------------------------------
// Modular decomposition

enum class ModuleKind { Parallel, Series, Prime };

namespace detail {
inline ModuleKind module_kind(const SubstTree& t, int x) {
  const auto& g = t.graph(x);
  if (g.edge_count() == 0) return ModuleKind::Parallel;
  if (g.edge_count() == g.size() * (g.size() - 1) / 2) return ModuleKind::Series;
  return ModuleKind::Prime;
}

// Maximal strong modules below the module `vs` (sorted vertices of g).
inline std::vector<std::vector<Vertex>> maximal_submodules(const OrderedGraph& g,
                                                           const std::vector<Vertex>& vs) {
  const auto h = induced_subgraph(g, vs);
  auto components = connected_components(h);
  if (components.size() == 1) components = connected_components(h.complement());
  if (components.size() > 1) {
    for (auto& c : components)
      for (auto& v : c) v = vs[v];
    return components;
  }
  // Prime: the maximal proper modules containing each vertex partition vs.
  const std::size_t m = vs.size();
  std::vector<int> part(m, -1);
  std::vector<std::vector<Vertex>> out;
  for (Vertex u = 0; u < m; ++u) {
    if (part[u] != -1) continue;
    Bitset best(m);
    best.set(u);
    for (Vertex v = 0; v < m; ++v) {
      if (v == u) continue;
      Bitset seed = best;
      seed.set(v);
      auto closure = module_closure(h, seed);
      if (closure.count() < m) best = closure;
    }
    std::vector<Vertex> block;
    for (auto v = best.find_first(); v != Bitset::npos; v = best.find_next(v)) {
      part[v] = static_cast<int>(out.size());
      block.push_back(vs[v]);
    }
    out.push_back(std::move(block));
  }
  return out;
}
}  // namespace detail

/// Modular decomposition tree: parallel, series and prime nodes with the
/// quotient on the maximal strong submodules as node graph. Children are
/// ordered by their first vertex; the leaf order may differ from the
/// vertex order of g, so `source` on each leaf holds its vertex.
inline SubstTree modular_decomposition(const OrderedGraph& g) {
  if (g.size() == 0) throw std::invalid_argument("empty graph");
  SubstTree t;
  auto build = [&](auto& self, const std::vector<Vertex>& vs) -> int {
    if (vs.size() == 1) return t.add_leaf(static_cast<int>(vs[0]));
    auto parts = detail::maximal_submodules(g, vs);
    std::sort(parts.begin(), parts.end());
    std::vector<int> ch;
    for (const auto& p : parts) ch.push_back(self(self, p));
    OrderedGraph q(parts.size());
    for (Vertex a = 0; a < parts.size(); ++a)
      for (Vertex b = a + 1; b < parts.size(); ++b)
        if (g.adjacent(parts[a][0], parts[b][0])) q.add_edge(a, b);
    return t.add_internal(std::move(ch), std::move(q));
  };
  t.set_root(build(build, all_vertices(g.size())));
  return t;
}

/// Vertex of g at each realization index of a modular decomposition.
inline std::vector<Vertex> leaf_vertices(const SubstTree& t) {
  std::vector<Vertex> out;
  for (int x : t.leaves()) out.push_back(static_cast<Vertex>(t.node(x).source));
  return out;
}

}  // namespace twwchi
