#pragma once

// Coloring graphs given with a d-almost-mixed-free vertex order.
//
// d = 2: the graph is a cograph and is colored with exactly omega colors.
// d >= 3: the interior v_2..v_{n-1} is split by adjacency to v_1 and v_n
// into four classes, each a module of itself plus the two endpoints. Each
// class gets a delayed decomposition tree, and every node graph g(x) is
// colored through its local-module frame:
//
//   mixed-pair graph R on the local modules, colored greedily; per class of R
//   the stripped graph splits into a forward and a backward part (product);
//   each part splits into right, left and the neglected first module
//   (disjoint palettes); a right or left piece is a right module partition
//   whose quotient is colored recursively with d - 1 and lifted.
//
// The node colorings feed the odd and even substitution trees of the delayed
// tree, and the two substitution colorings are multiplied.

#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "twwchi/delayed_tree.hpp"
#include "twwchi/graph.hpp"
#include "twwchi/matrix.hpp"
#include "twwchi/oracles.hpp"
#include "twwchi/rmp.hpp"
#include "twwchi/subst_color.hpp"
#include "twwchi/subst_tree.hpp"

namespace twwchi {

// ---------------------------------------------------------------------------
// Cographs

/// Exactly omega(g) colors: series nodes add palettes, parallel nodes reuse.
inline Coloring color_cograph(const OrderedGraph& g) {
  if (g.size() == 0) return Coloring{};
  if (!is_p4_free(g)) throw std::invalid_argument("graph is not a cograph");
  const auto t = modular_decomposition(g);
  std::vector<int> out(g.size(), 0);
  // Returns the palette size used below x, writing colors from `base`.
  auto rec = [&](auto& self, int x, int base) -> int {
    if (t.is_leaf(x)) {
      out[static_cast<Vertex>(t.node(x).source)] = base;
      return 1;
    }
    const bool series = t.graph(x).edge_count() > 0;
    int used = 0;
    for (int c : t.children(x)) {
      const int k = self(self, c, series ? base + used : base);
      used = series ? used + k : std::max(used, k);
    }
    return used;
  };
  rec(rec, t.root(), 0);
  Coloring c(std::move(out));
  require_proper(g, c, "color_cograph");
  return c;
}

// ---------------------------------------------------------------------------
// Endpoint classes

/// Interior vertices v_2..v_{n-1} by (adjacent to v_1, adjacent to v_n);
/// index 2a + b holds the class V'_ab.
inline std::array<std::vector<Vertex>, 4> split_by_endpoints(const OrderedGraph& g) {
  if (g.size() < 2) throw std::invalid_argument("endpoint split needs two vertices");
  const Vertex first = 0, last = g.size() - 1;
  std::array<std::vector<Vertex>, 4> out;
  for (Vertex v = 1; v < last; ++v)
    out[2 * static_cast<std::size_t>(g.adjacent(first, v)) + static_cast<std::size_t>(g.adjacent(last, v))]
        .push_back(v);
  return out;
}

// ---------------------------------------------------------------------------
// Local-module frames

enum class ModuleTag { Neglected, Left, Right };
enum class Orientation { Forward, Backward };
enum class Side { Right, Left };

inline const char* to_string(ModuleTag t) {
  return t == ModuleTag::Neglected ? "neglected" : t == ModuleTag::Left ? "left" : "right";
}

struct LocalModuleFrame {
  Interval interval;                // I, in the host graph
  bool module_split = false;        // I is a module of the host: cut into halves
  std::vector<Interval> modules;    // local modules, host coordinates
  OrderedGraph h;                   // stripped graph on the units of I
  std::vector<Interval> units;      // local module i as an interval of h
  OrderedGraph r;                   // mixed pairs of local modules
  Coloring r_classes;               // greedy coloring of r
  std::vector<ModuleTag> tags;          // order of I
  std::vector<ModuleTag> reverse_tags;  // order of I reversed

  std::size_t module_count() const { return modules.size(); }

  std::vector<std::vector<std::size_t>> classes() const {
    std::vector<std::vector<std::size_t>> out(static_cast<std::size_t>(r_classes.max_color() + 1));
    for (std::size_t i = 0; i < r_classes.size(); ++i) out[static_cast<std::size_t>(r_classes.colors[i])].push_back(i);
    return out;
  }

  std::size_t module_of_unit(Vertex u) const {
    for (std::size_t i = 0; i < units.size(); ++i)
      if (units[i].contains(u)) return i;
    throw std::out_of_range("unit outside every module");
  }
};

/// G[I] without the edges inside local modules; vertices of I are the units.
inline LocalModuleFrame strip_local_module_edges(const OrderedGraph& g, Interval i,
                                                 SplitRule rule = SplitRule::Midpoint) {
  LocalModuleFrame f;
  f.interval = i;
  f.modules = local_module_partition(g, i, rule);
  f.module_split = i.size() > 1 && is_module(g, interval_bitset(g.size(), i));
  f.h = induced_subgraph(g, i);
  for (const auto& m : f.modules) {
    f.units.push_back({m.lo - i.lo, m.hi - i.lo});
    for (auto u = m.lo; u < m.hi; ++u)
      for (auto v = u + 1; v < m.hi; ++v) f.h.remove_edge(u - i.lo, v - i.lo);
  }
  return f;
}

/// Frame of delayed-tree node x: g(x) is the stripped graph with each local
/// submodule contracted, so the units are the grandchildren of x.
inline LocalModuleFrame frame_from_node(const OrderedGraph& g, const DelayedTree& t, const NodeGraphs& ng, int x) {
  LocalModuleFrame f;
  const auto& nd = t.nodes.at(static_cast<std::size_t>(x));
  f.interval = nd.interval;
  f.module_split = nd.interval.size() > 1 && is_module(g, interval_bitset(g.size(), nd.interval));
  f.h = ng.at(static_cast<std::size_t>(x));
  std::size_t at = 0;
  for (int c : nd.children) {
    f.modules.push_back(t.nodes[c].interval);
    const auto k = t.nodes[c].children.size();
    f.units.push_back({at, at + k});
    at += k;
  }
  return f;
}

/// R: an edge ij whenever the zone between modules i and j of h is mixed.
/// Classes come from a degeneracy-order greedy coloring of R.
inline std::pair<OrderedGraph, Coloring> mixed_pair_graph(const LocalModuleFrame& f) {
  const auto m = adjacency_matrix(f.h);
  const std::size_t k = f.units.size();
  OrderedGraph r(k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j)
      if (zone_mixed(m, f.units[i], f.units[j])) r.add_edge(i, j);
  auto classes = degeneracy_coloring(r);
  return {std::move(r), std::move(classes)};
}

/// Left/right tags of the local modules of f in host g. Forward: module i > 0
/// is left when a vertex before I treats the last vertex of module i-1 and
/// the first vertex of module i differently, right otherwise; module 0 is
/// neglected. Reversed: the same with the order of the host reversed, so
/// the last module is neglected. A right module must have a distinguisher on
/// the other side; its absence throws.
inline std::vector<ModuleTag> classify_left_right(const OrderedGraph& g, const LocalModuleFrame& f,
                                                  bool reversed = false) {
  const std::size_t k = f.modules.size();
  std::vector<ModuleTag> tags(k, ModuleTag::Neglected);
  if (f.module_split) return tags;
  const Interval i = f.interval;
  auto distinguished = [&](Vertex a, Vertex b, Vertex lo, Vertex hi) {
    for (auto v = lo; v < hi; ++v)
      if (g.adjacent(v, a) != g.adjacent(v, b)) return true;
    return false;
  };
  for (std::size_t m = 0; m < k; ++m) {
    if (!reversed && m == 0) continue;
    if (reversed && m + 1 == k) continue;
    // Boundary pair: last vertex before the module and first vertex of it,
    // in the traversal order.
    const Vertex a = reversed ? f.modules[m + 1].lo : f.modules[m].lo - 1;
    const Vertex b = reversed ? f.modules[m].hi - 1 : f.modules[m].lo;
    const bool near = reversed ? distinguished(a, b, i.hi, g.size()) : distinguished(a, b, 0, i.lo);
    const bool far = reversed ? distinguished(a, b, 0, i.lo) : distinguished(a, b, i.hi, g.size());
    if (!near && !far) throw VerificationFailure("adjacent local modules are not distinguished outside the interval");
    tags[m] = near ? ModuleTag::Left : ModuleTag::Right;
  }
  return tags;
}

/// Frame with the mixed-pair classes and both tag orders filled in.
inline LocalModuleFrame complete_frame(const OrderedGraph& host, LocalModuleFrame f) {
  std::tie(f.r, f.r_classes) = mixed_pair_graph(f);
  f.tags = classify_left_right(host, f, false);
  f.reverse_tags = classify_left_right(host, f, true);
  return f;
}

/// Forward and backward parts of h restricted to a class: the edges between
/// modules i < j go to the forward graph when module i is a module with
/// respect to module j, to the backward graph when j is a module with respect
/// to i, to both when both hold. Graphs live on all units of h.
inline std::pair<OrderedGraph, OrderedGraph> arrow_split(const LocalModuleFrame& f,
                                                         const std::vector<std::size_t>& cls) {
  const auto m = adjacency_matrix(f.h);
  OrderedGraph fwd(f.h.size()), bwd(f.h.size());
  for (std::size_t a = 0; a < cls.size(); ++a)
    for (std::size_t b = a + 1; b < cls.size(); ++b) {
      const auto i = std::min(cls[a], cls[b]), j = std::max(cls[a], cls[b]);
      const Interval ui = f.units.at(i), uj = f.units.at(j);
      const auto kind = classify_zone(m, ui, uj);
      if (kind == ZoneKind::Mixed) throw std::invalid_argument("class contains a mixed pair");
      // Rows of the zone are units of module i: constant columns mean module
      // i is a module with respect to module j.
      const bool forward = kind == ZoneKind::Vertical || kind == ZoneKind::Constant;
      const bool backward = kind == ZoneKind::Horizontal || kind == ZoneKind::Constant;
      for (auto u = ui.lo; u < ui.hi; ++u)
        for (auto v = uj.lo; v < uj.hi; ++v)
          if (f.h.adjacent(u, v)) {
            if (forward) fwd.add_edge(u, v);
            if (backward) bwd.add_edge(u, v);
          }
    }
  return {std::move(fwd), std::move(bwd)};
}

struct RmpPiece {
  OrderedGraph graph;
  RMPartition partition;
  std::vector<Vertex> units;         // unit of h for every piece vertex
  std::vector<std::size_t> modules;  // local module of every part
};

/// Induced restriction of an arrow graph to the class modules tagged `side`
/// (in the tag order of the orientation). Backward pieces list modules and
/// units in reverse so that the parts form a right module partition.
inline RmpPiece build_rmp_piece(const LocalModuleFrame& f, const std::vector<std::size_t>& cls,
                                const OrderedGraph& arrows, Orientation o, Side side) {
  const auto& tags = o == Orientation::Forward ? f.tags : f.reverse_tags;
  const ModuleTag want = side == Side::Right ? ModuleTag::Right : ModuleTag::Left;
  std::vector<std::size_t> mods;
  for (auto i : cls)
    if (tags.at(i) == want) mods.push_back(i);
  std::sort(mods.begin(), mods.end());
  if (o == Orientation::Backward) std::reverse(mods.begin(), mods.end());
  RmpPiece p;
  std::vector<std::size_t> sizes;
  for (auto i : mods) {
    const Interval u = f.units.at(i);
    std::vector<Vertex> vs = interval_vertices(u);
    if (o == Orientation::Backward) std::reverse(vs.begin(), vs.end());
    p.units.insert(p.units.end(), vs.begin(), vs.end());
    sizes.push_back(u.size());
    p.modules.push_back(i);
  }
  p.graph = apply_order(arrows, p.units);
  p.partition = RMPartition::from_intervals(IntervalPartition::from_sizes(sizes));
  if (!p.units.empty() && !validate_rmp(p.graph, p.partition).ok)
    throw VerificationFailure("piece is not a right module partition");
  return p;
}

// ---------------------------------------------------------------------------
// Claim checks on pieces

struct ClaimReport {
  bool vacuous = false;      // nothing to check at this d
  bool sampled = false;      // transversal minors were sampled, not enumerated
  std::size_t checked = 0;
  std::size_t failures = 0;
  bool holds() const { return failures == 0; }
};

/// Every transversal minor of the piece, under the inherited order, has no
/// (d-1)-almost mixed minor. Exhaustive when the piece has at most
/// `exhaustive_vertices` vertices, otherwise `samples` random choices plus
/// the full quotient.
inline ClaimReport check_reduction_claim(const RmpPiece& piece, std::size_t d, std::uint64_t seed = 0,
                                         std::size_t exhaustive_vertices = 14, std::size_t samples = 2000) {
  ClaimReport rep;
  if (d < 3 || piece.units.empty()) {
    rep.vacuous = true;
    return rep;
  }
  const auto& p = piece.partition;
  auto check = [&](const OrderedGraph& m) {
    ++rep.checked;
    if (find_almost_mixed_minor(adjacency_matrix(m), d - 1)) ++rep.failures;
  };
  using Chosen = std::vector<std::pair<std::size_t, std::vector<Vertex>>>;
  if (piece.units.size() <= exhaustive_vertices) {
    // Each part is either skipped or contributes a nonempty subset.
    Chosen chosen;
    auto rec = [&](auto& self, std::size_t i) -> void {
      if (i == p.size()) {
        if (!chosen.empty()) check(transversal_minor(piece.graph, p, chosen));
        return;
      }
      self(self, i + 1);
      const auto& part = p.parts[i];
      for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << part.size()); ++mask) {
        std::vector<Vertex> ws;
        for (std::size_t b = 0; b < part.size(); ++b)
          if (mask >> b & 1U) ws.push_back(part[b]);
        chosen.emplace_back(i, std::move(ws));
        self(self, i + 1);
        chosen.pop_back();
      }
    };
    rec(rec, 0);
    return rep;
  }
  rep.sampled = true;
  check(quotient(piece.graph, p));
  std::mt19937_64 rng(seed);
  for (std::size_t s = 0; s < samples; ++s) {
    Chosen chosen;
    for (std::size_t i = 0; i < p.size(); ++i) {
      if (bernoulli(rng, 0.5)) continue;
      std::vector<Vertex> ws;
      for (auto v : p.parts[i])
        if (bernoulli(rng, 0.5)) ws.push_back(v);
      if (ws.empty()) ws.push_back(p.parts[i][uniform_below(rng, p.parts[i].size())]);
      chosen.emplace_back(i, std::move(ws));
    }
    if (!chosen.empty()) check(transversal_minor(piece.graph, p, chosen));
  }
  return rep;
}

/// The piece with its partition is pair 2d-almost mixed free.
inline ClaimReport check_2d_claim(const RmpPiece& piece, std::size_t d) {
  ClaimReport rep;
  if (piece.units.empty()) {
    rep.vacuous = true;
    return rep;
  }
  const auto r = is_pair_amf(piece.graph, piece.partition, 2 * d);
  rep.vacuous = r.vacuous;
  rep.checked = 1;
  rep.failures = r.amf ? 0 : 1;
  return rep;
}

// ---------------------------------------------------------------------------
// The recursive coloring

struct AmfInstance {
  OrderedGraph graph;
  std::size_t d = 2;
  bool certified = false;  // exhaustively checked to have no d-almost mixed minor
};

/// Checks the order of g for a d-almost mixed minor and returns a certified
/// instance; throws if one exists.
inline AmfInstance certify_amf(const OrderedGraph& g, std::size_t d, std::size_t limit = 40) {
  require_size(g.size(), limit, "certify_amf");
  if (d < 2) throw std::invalid_argument("d must be >= 2");
  if (find_almost_mixed_minor(adjacency_matrix(g), d))
    throw std::invalid_argument("vertex order has a " + std::to_string(d) + "-almost mixed minor");
  return {g, d, true};
}

namespace detail {
// Ways a cut (prefix P, suffix S) of an ordered graph avoids a mixed zone:
// every P-vertex is uniform on S (rows), or every S-vertex is uniform on P
// (cols); the 0/1 variants also fix the common value.
enum CutKind : unsigned { Rows = 1, Rows0 = 2, Rows1 = 4, Cols = 8, Cols0 = 16, Cols1 = 32 };

// Vertices [lo, lo + n) of g; every cut inside must have a kind in `allowed`.
inline void grow_amf2_cograph(OrderedGraph& g, std::mt19937_64& rng, Vertex lo, std::size_t n, unsigned allowed) {
  if (n <= 1) return;
  const std::size_t k = 1 + uniform_below(rng, n - 1);
  std::vector<std::pair<unsigned, unsigned>> options;  // (left, right) requirements, index = join
  bool feasible[2];
  for (int join = 0; join < 2; ++join) {
    const unsigned rv = join ? Rows1 : Rows0, cv = join ? Cols1 : Cols0;
    // A cut inside the left side keeps value `join` towards the right side.
    const unsigned left = ((allowed & (Rows | rv)) ? rv : 0U) | (allowed & Cols) | (allowed & cv);
    const unsigned right = (allowed & Rows) | (allowed & rv) | ((allowed & (Cols | cv)) ? cv : 0U);
    const bool boundary = (allowed & (Rows | rv | Cols | cv)) != 0;
    feasible[join] = boundary && (k == 1 || left != 0) && (n - k == 1 || right != 0);
    options.emplace_back(left, right);
  }
  if (!feasible[0] && !feasible[1]) throw std::logic_error("no feasible split");
  const int join = feasible[0] && feasible[1] ? static_cast<int>(rng() & 1) : (feasible[1] ? 1 : 0);
  if (join)
    for (Vertex u = lo; u < lo + k; ++u)
      for (Vertex v = lo + k; v < lo + n; ++v) g.add_edge(u, v);
  grow_amf2_cograph(g, rng, lo, k, options[join].first);
  grow_amf2_cograph(g, rng, lo + k, n - k, options[join].second);
}
}  // namespace detail

/// Random cograph on n vertices whose vertex order is 2-almost mixed free.
inline OrderedGraph random_amf2_cograph(std::size_t n, std::uint64_t seed) {
  if (n == 0) throw std::invalid_argument("need at least one vertex");
  std::mt19937_64 rng(seed);
  OrderedGraph g(n);
  detail::grow_amf2_cograph(g, rng, 0, n, detail::Rows | detail::Cols);
  return g;
}

struct AmfOptions {
  bool strict = false;        // require a certificate; no fallback colorings
  bool check_claims = false;  // run the claim checks on every piece
  SplitRule rule = SplitRule::Midpoint;
  std::uint64_t seed = 0;     // claim sampling
  std::size_t claim_vertex_cap = 14;
};

struct AmfLevel {
  std::size_t d = 0;
  int node = 0;  // delayed-tree node
  std::size_t k_local_modules = 0;
  std::size_t mixed_pair_classes = 0;
  int palette = 0;
};

struct AmfAccounting {
  std::vector<AmfLevel> levels;
  int total_palette = 0;
  std::size_t omega = 0;
  bool proper = false;
  std::size_t fallbacks = 0;     // cograph base cases that were not cographs
  std::size_t endpoint_classes = 0;
  std::size_t pieces = 0;
  ClaimReport reduction;         // aggregated over all pieces
  ClaimReport pair_2d;
  double palette_exponent = 0;   // log(total_palette) / log(omega), omega >= 2
};

struct AmfColoring {
  Coloring coloring;
  AmfAccounting accounting;
};

namespace detail {

inline void merge_report(ClaimReport& into, const ClaimReport& r) {
  into.checked += r.checked;
  into.failures += r.failures;
  into.sampled = into.sampled || r.sampled;
}

// Writes c (on `targets`) with colors shifted by `offset`; returns the next
// free offset.
inline int place(std::vector<int>& out, const std::vector<Vertex>& targets, const Coloring& c, int offset) {
  const auto dense = densify(c);
  for (std::size_t i = 0; i < targets.size(); ++i) out[targets[i]] = offset + dense.colors[i];
  return offset + dense.palette_size;
}

class AmfColorer {
 public:
  AmfColorer(const AmfOptions& opts, AmfAccounting& acc) : opts_(opts), acc_(acc) {}

  Coloring color(const OrderedGraph& g, std::size_t d) {
    if (g.size() == 0) return Coloring{};
    if (d == 2) return base_case(g);
    if (g.size() == 1) return Coloring({0});
    std::vector<int> out(g.size(), 0);
    out[0] = 0;
    out[g.size() - 1] = 1;
    int offset = 2;
    for (const auto& cls : split_by_endpoints(g)) {
      if (cls.empty()) continue;
      ++acc_.endpoint_classes;
      offset = place(out, cls, color_interior(induced_subgraph(g, cls), d), offset);
    }
    Coloring c(std::move(out));
    require_proper(g, c, "color_amf");
    return c;
  }

 private:
  Coloring base_case(const OrderedGraph& g) {
    if (is_p4_free(g)) return color_cograph(g);
    if (opts_.strict) throw VerificationFailure("cograph base case received a graph with an induced P4");
    ++acc_.fallbacks;
    return dsatur_coloring(g);
  }

  // Colors a graph that is the interior of its endpoint class.
  Coloring color_interior(const OrderedGraph& g, std::size_t d) {
    if (g.size() == 1) return Coloring({0});
    auto [t, ng] = build_delayed_tree(g, opts_.rule);
    std::vector<Coloring> node_colors(t.nodes.size());
    for (std::size_t x = 0; x < t.nodes.size(); ++x) node_colors[x] = color_node(g, t, ng, static_cast<int>(x), d);
    Coloring sides[2];
    for (auto p : {Parity::Odd, Parity::Even}) {
      const auto st = delayed_to_subst_tree(t, restrict_parity(t, ng, p), p);
      std::vector<Coloring> pal(static_cast<std::size_t>(st.size()));
      for (int y = 0; y < st.size(); ++y) {
        if (st.is_leaf(y)) continue;
        const int src = st.node(y).source;
        pal[y] = src >= 0 ? node_colors[src] : Coloring(std::vector<int>(st.children(y).size(), 0));
      }
      sides[static_cast<int>(p)] = color_substitution(st, palette_colorer(std::move(pal)), static_cast<unsigned>(d)).coloring;
    }
    Coloring c = product_coloring(sides[0], sides[1]);
    require_proper(g, c, "color_amf interior");
    return c;
  }

  Coloring color_node(const OrderedGraph& g, const DelayedTree& t, const NodeGraphs& ng, int x, std::size_t d) {
    const auto& h = ng[x];
    if (h.edge_count() == 0) return Coloring(std::vector<int>(h.size(), 0));
    auto f = frame_from_node(g, t, ng, x);
    std::vector<int> out(h.size(), 0);
    AmfLevel level{d, x, f.module_count(), 1, 0};
    if (f.module_split) {
      // Two halves, stable in h: h is bipartite.
      for (Vertex u = 0; u < h.size(); ++u) out[u] = static_cast<int>(f.module_of_unit(u));
    } else {
      f = complete_frame(g, std::move(f));
      const auto classes = f.classes();
      level.mixed_pair_classes = classes.size();
      int offset = 0;
      for (const auto& cls : classes) {
        std::vector<Vertex> targets;
        for (auto i : cls)
          for (auto u = f.units[i].lo; u < f.units[i].hi; ++u) targets.push_back(u);
        std::sort(targets.begin(), targets.end());
        auto [fwd, bwd] = arrow_split(f, cls);
        const auto cf = color_orientation(f, cls, fwd, Orientation::Forward, d);
        const auto cb = color_orientation(f, cls, bwd, Orientation::Backward, d);
        std::vector<int> a, b;
        for (auto u : targets) {
          a.push_back(cf[u]);
          b.push_back(cb[u]);
        }
        offset = place(out, targets, product_coloring(Coloring(a), Coloring(b)), offset);
      }
    }
    Coloring c(std::move(out));
    require_proper(h, c, "color_amf node graph");
    level.palette = c.palette_size;
    acc_.levels.push_back(level);
    return c;
  }

  // Colors (on all units of h; other entries are left at 0) the class units
  // in one orientation: right piece, left piece, neglected module.
  std::vector<int> color_orientation(const LocalModuleFrame& f, const std::vector<std::size_t>& cls,
                                     const OrderedGraph& arrows, Orientation o, std::size_t d) {
    std::vector<int> out(f.h.size(), 0);
    int offset = 0;
    for (auto side : {Side::Right, Side::Left}) {
      const auto piece = build_rmp_piece(f, cls, arrows, o, side);
      if (piece.units.empty()) continue;
      ++acc_.pieces;
      if (opts_.check_claims) {
        merge_report(acc_.reduction,
                     check_reduction_claim(piece, d, opts_.seed + acc_.pieces, opts_.claim_vertex_cap));
        merge_report(acc_.pair_2d, check_2d_claim(piece, d));
      }
      const auto q = quotient(piece.graph, piece.partition);
      const auto qc = color(q, d - 1);
      const auto lifted = lift_quotient_coloring(piece.graph, piece.partition, qc);
      offset = place(out, piece.units, lifted, offset);
    }
    const auto& tags = o == Orientation::Forward ? f.tags : f.reverse_tags;
    for (auto i : cls)
      if (tags[i] == ModuleTag::Neglected) {
        for (auto u = f.units[i].lo; u < f.units[i].hi; ++u) out[u] = offset;
        ++offset;
      }
    return out;
  }

  const AmfOptions& opts_;
  AmfAccounting& acc_;
};

}  // namespace detail

/// Proper coloring of a graph given with a d-almost-mixed-free order, plus
/// per-node accounting. The result is always checked to be proper.
inline AmfColoring color_amf(const AmfInstance& inst, const AmfOptions& opts = {}) {
  if (inst.d < 2) throw std::invalid_argument("d must be >= 2");
  if (opts.strict && !inst.certified) throw std::invalid_argument("strict mode needs a certified instance");
  AmfColoring out;
  detail::AmfColorer colorer(opts, out.accounting);
  out.coloring = colorer.color(inst.graph, inst.d);
  require_proper(inst.graph, out.coloring, "color_amf");
  auto& acc = out.accounting;
  acc.proper = true;
  acc.total_palette = out.coloring.palette_size;
  acc.omega = inst.graph.size() == 0 ? 0 : clique_number(inst.graph);
  if (acc.omega >= 2) acc.palette_exponent = std::log(static_cast<double>(acc.total_palette)) / std::log(static_cast<double>(acc.omega));
  return out;
}

inline AmfColoring color_amf(const OrderedGraph& g, std::size_t d, const AmfOptions& opts = {}) {
  return color_amf(AmfInstance{g, d, false}, opts);
}

}  // namespace twwchi
