#pragma once

// Coloring realizations of substitution trees: the (depth, local color)
// scheme for independent trees, and the recursive heavy-subtree scheme for
// arbitrary trees over a polynomially colorable base class.

#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <stdexcept>
#include <vector>

#include "twwchi/graph.hpp"
#include "twwchi/subst_tree.hpp"

namespace twwchi {

/// Colors node graph g(node) restricted to the children at `positions`
/// (strictly increasing). Must return a proper coloring of that graph.
using BaseColorer =
    std::function<Coloring(const SubstTree& t, int node, const std::vector<Vertex>& positions)>;

/// Wraps a plain graph colorer.
inline BaseColorer graph_colorer(std::function<Coloring(const OrderedGraph&)> fn) {
  return [fn = std::move(fn)](const SubstTree& t, int node, const std::vector<Vertex>& pos) {
    return fn(induced_subgraph(t.graph(node), pos));
  };
}

/// Uses precomputed colorings of every full node graph, indexed by node id,
/// and restricts them.
inline BaseColorer palette_colorer(std::vector<Coloring> palettes) {
  return [p = std::move(palettes)](const SubstTree&, int node, const std::vector<Vertex>& pos) {
    std::vector<int> c;
    for (auto i : pos) c.push_back(p.at(static_cast<std::size_t>(node)).colors.at(i));
    return Coloring(std::move(c));
  };
}

inline std::uint64_t saturating_pow(std::uint64_t base, unsigned exp) {
  std::uint64_t r = 1;
  for (unsigned i = 0; i < exp; ++i) {
    if (base != 0 && r > std::numeric_limits<std::uint64_t>::max() / base)
      return std::numeric_limits<std::uint64_t>::max();
    r *= base;
  }
  return r;
}

namespace detail {
// Dense index of the pair (a, b) among all pairs seen so far.
class PairPalette {
 public:
  int operator()(int a, int b) { return idx_.try_emplace({a, b}, static_cast<int>(idx_.size())).first->second; }
  int size() const { return static_cast<int>(idx_.size()); }

 private:
  std::map<std::pair<int, int>, int> idx_;
};
}  // namespace detail

/// Leaf v gets (depth(v), palette of its parent at v). Requires an
/// independent tree; palettes[x] must properly color graph(x) for every
/// internal x.
inline Coloring color_independent(const SubstTree& t, const std::vector<Coloring>& palettes) {
  if (!is_independent(t)) throw std::invalid_argument("tree is not independent");
  if (palettes.size() != static_cast<std::size_t>(t.size()))
    throw std::invalid_argument("one palette per node expected");
  for (int x : t.preorder())
    if (!t.is_leaf(x) && !verify_coloring(t.graph(x), palettes[x]))
      throw std::invalid_argument("improper palette for a node graph");
  if (t.is_leaf(t.root())) return Coloring({0});

  const auto info = depth_info(t);
  detail::PairPalette pairs;
  std::vector<int> c(t.leaf_count());
  for (int v : t.leaves())
    c[t.vertex_of(v)] = pairs(info.depth[v], palettes[t.parent(v)].colors[t.position_in_parent(v)]);
  Coloring out(std::move(c));
  require_proper(realize_subst(t), out, "color_independent");
  return out;
}

struct SubstColoring {
  Coloring coloring;
  std::size_t omega = 0;
  std::uint64_t budget = 0;  // omega^(2k+3), saturating
};

namespace detail {

class SubstitutionColorer {
 public:
  SubstitutionColorer(const SubstTree& t, BaseColorer base)
      : t_(t), base_(std::move(base)), omega_(omega_dp(t)), below_(t.size(), 0) {
    const auto& pre = t.preorder();
    for (auto it = pre.rbegin(); it != pre.rend(); ++it)
      for (int c : t.children(*it))
        below_[*it] = std::max(below_[*it], below_[c] + (!t.is_leaf(c) && counts_toward_depth(t, c)));
  }

  Coloring run() {
    std::vector<int> colors(t_.leaf_count(), -1);
    Part p = solve(t_.root(), all_positions(t_.root()));
    for (std::size_t i = 0; i < p.verts.size(); ++i) colors[p.verts[i]] = p.colors[i];
    return Coloring(std::move(colors));
  }

 private:
  struct Part {
    std::vector<std::size_t> verts;
    std::vector<int> colors;
    int palette = 0;

    void add(std::size_t v, int c) {
      verts.push_back(v);
      colors.push_back(c);
      palette = std::max(palette, c + 1);
    }
  };

  std::vector<Vertex> all_positions(int x) const { return all_vertices(t_.children(x).size()); }

  Coloring base(int x, const std::vector<Vertex>& pos) const {
    Coloring c = densify(base_(t_, x, pos));
    if (!verify_coloring(induced_subgraph(t_.graph(x), pos), c))
      throw std::invalid_argument("base colorer returned an improper coloring");
    return c;
  }

  // Clique number of the instance (z restricted to children at pos).
  std::size_t instance_omega(int z, const std::vector<Vertex>& pos) const {
    std::vector<std::size_t> w;
    for (auto i : pos) w.push_back(omega_[t_.children(z)[i]]);
    return max_weight_clique(induced_subgraph(t_.graph(z), pos), w).first;
  }

  int instance_depth(int z, const std::vector<Vertex>& pos) const {
    const auto h = induced_subgraph(t_.graph(z), pos);
    int d = 0;
    for (std::size_t i = 0; i < pos.size(); ++i) {
      const int c = t_.children(z)[pos[i]];
      d = std::max(d, below_[c] + (!t_.is_leaf(c) && h.degree(i) > 0));
    }
    return d;
  }

  Part solve(int z, std::vector<Vertex> pos) const {
    while (pos.size() == 1 && !t_.is_leaf(t_.children(z)[pos[0]])) {
      z = t_.children(z)[pos[0]];
      pos = all_positions(z);
    }
    if (pos.size() == 1) {
      Part p;
      p.add(t_.vertex_of(t_.children(z)[pos[0]]), 0);
      return p;
    }
    const int d = instance_depth(z, pos);
    if (d == 0) return depth_zero(z, pos);

    auto comps = connected_components(induced_subgraph(t_.graph(z), pos));
    if (comps.size() > 1) {
      // Components are independent; their colors are shared.
      Part out;
      for (auto& comp : comps) {
        for (auto& i : comp) i = pos[i];
        Part p = solve(z, comp);
        for (std::size_t i = 0; i < p.verts.size(); ++i) out.add(p.verts[i], p.colors[i]);
      }
      return out;
    }
    return d == 1 ? depth_one(z, pos) : deep(z, pos);
  }

  Part solve_node(int x) const {
    if (t_.is_leaf(x)) {
      Part p;
      p.add(t_.vertex_of(x), 0);
      return p;
    }
    return solve(x, all_positions(x));
  }

  // Every edge lies between leaf children of one node.
  Part depth_zero(int z, const std::vector<Vertex>& pos) const {
    Part out;
    std::vector<std::pair<int, std::vector<Vertex>>> todo{{z, pos}};
    while (!todo.empty()) {
      auto [y, ps] = todo.back();
      todo.pop_back();
      std::vector<Vertex> leaf_pos;
      for (auto i : ps) {
        const int c = t_.children(y)[i];
        if (t_.is_leaf(c))
          leaf_pos.push_back(i);
        else
          todo.push_back({c, all_positions(c)});
      }
      if (leaf_pos.empty()) continue;
      const Coloring col = base(y, leaf_pos);
      for (std::size_t i = 0; i < leaf_pos.size(); ++i)
        out.add(t_.vertex_of(t_.children(y)[leaf_pos[i]]), col.colors[i]);
    }
    return out;
  }

  // Light children (omega_c^2 <= omega) and heavy ones get disjoint
  // palettes; each side is the product of the node coloring and the
  // colorings of the substituted graphs.
  Part depth_one(int z, const std::vector<Vertex>& pos) const {
    const std::size_t omega = instance_omega(z, pos);
    if (omega < 2) throw VerificationFailure("depth-one instance with clique number < 2");
    std::vector<Vertex> light, heavy;
    for (auto i : pos) {
      const std::size_t w = omega_[t_.children(z)[i]];
      (w * w <= omega ? light : heavy).push_back(i);
    }
    Part out;
    int offset = 0;
    for (const auto* side : {&light, &heavy}) {
      if (side->empty()) continue;
      const Coloring b = base(z, *side);
      PairPalette pairs;
      for (std::size_t i = 0; i < side->size(); ++i) {
        Part sub = solve_node(t_.children(z)[(*side)[i]]);
        for (std::size_t j = 0; j < sub.verts.size(); ++j)
          out.add(sub.verts[j], offset + pairs(b.colors[i], sub.colors[j]));
      }
      offset += pairs.size();
    }
    return out;
  }

  // Heavy nodes X (2 omega_x > omega) with their children form an
  // independent tree. Its leaves are bucketed by omega_i * 2^j <= omega <
  // omega_i * 2^(j+1); each bucket gets its own palette.
  Part deep(int z, const std::vector<Vertex>& pos) const {
    const std::size_t omega = instance_omega(z, pos);
    std::vector<bool> heavy(t_.size(), false);
    heavy[z] = true;
    std::map<int, std::vector<int>> buckets;
    std::vector<std::pair<int, std::vector<Vertex>>> todo{{z, pos}};
    while (!todo.empty()) {
      auto [x, ps] = todo.back();
      todo.pop_back();
      for (auto i : ps) {
        const int c = t_.children(x)[i];
        if (2 * omega_[c] > omega) {
          if (t_.is_leaf(c)) throw VerificationFailure("heavy leaf in a deep instance");
          heavy[c] = true;
          todo.push_back({c, all_positions(c)});
        } else {
          int j = 1;
          while ((omega_[c] << (j + 1)) <= omega) ++j;
          buckets[j].push_back(c);
        }
      }
    }

    Part out;
    int offset = 0;
    for (const auto& [j, members] : buckets) {
      std::vector<bool> in_bucket(t_.size(), false);
      for (int y : members) in_bucket[y] = true;

      // Restrict the heavy tree to the bucket's leaves.
      SubstTree tj;
      std::vector<Coloring> palettes;
      auto build = [&](auto& self, int x, const std::vector<Vertex>& ps) -> int {
        if (in_bucket[x]) {
          palettes.emplace_back();
          return tj.add_leaf(x);
        }
        if (!heavy[x]) return -1;
        std::vector<int> kids;
        std::vector<Vertex> kept;
        for (auto i : ps) {
          const int c = t_.children(x)[i];
          const int id = self(self, c, t_.is_leaf(c) ? std::vector<Vertex>{} : all_positions(c));
          if (id == -1) continue;
          kids.push_back(id);
          kept.push_back(i);
        }
        if (kids.empty()) return -1;
        palettes.push_back(base(x, kept));
        return tj.add_internal(kids, induced_subgraph(t_.graph(x), kept), x);
      };
      tj.set_root(build(build, z, pos));
      const Coloring h = color_independent(tj, palettes);

      PairPalette pairs;
      for (int leaf : tj.leaves()) {
        const int hc = h.colors[tj.vertex_of(leaf)];
        Part sub = solve_node(tj.node(leaf).source);
        for (std::size_t i = 0; i < sub.verts.size(); ++i)
          out.add(sub.verts[i], offset + pairs(hc, sub.colors[i]));
      }
      offset += pairs.size();
    }
    return out;
  }

  const SubstTree& t_;
  BaseColorer base_;
  std::vector<std::size_t> omega_;
  std::vector<int> below_;  // deepest count of non-isolated strict descendants above a leaf
};

}  // namespace detail

/// Colors the realization of t. `base` must properly color every
/// (restricted) node graph; k is the exponent of the base class bound
/// chi <= omega^k and only enters the reported budget.
inline SubstColoring color_substitution(const SubstTree& t, const BaseColorer& base, unsigned k) {
  SubstColoring out;
  out.omega = omega_dp(t)[t.root()];
  out.budget = saturating_pow(out.omega, 2 * k + 3);
  if (t.is_leaf(t.root())) {
    out.coloring = Coloring({0});
    return out;
  }
  out.coloring = detail::SubstitutionColorer(t, base).run();
  require_proper(realize_subst(t), out.coloring, "color_substitution");
  return out;
}

}  // namespace twwchi
