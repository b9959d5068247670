#pragma once

// Mixed extensions: the subgraph keeping only edges across mixed zones of an
// interval partition, the greedy partition into intervals that each hold a
// maximum clique, and the recursive coloring built on them.

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "twwchi/graph.hpp"
#include "twwchi/matrix.hpp"
#include "twwchi/oracles.hpp"

namespace twwchi {

/// Edges of g joining two distinct parts whose zone is mixed.
inline OrderedGraph mixed_subgraph(const OrderedGraph& g, const IntervalPartition& p) {
  if (p.universe() != g.size()) throw std::invalid_argument("partition does not cover the graph");
  const auto m = adjacency_matrix(g);
  OrderedGraph out(g.size());
  for (std::size_t s = 0; s < p.part_count(); ++s)
    for (std::size_t t = s + 1; t < p.part_count(); ++t) {
      const Interval a = p.part(s), b = p.part(t);
      if (!zone_mixed(m, a, b)) continue;
      for (auto u = a.lo; u < a.hi; ++u)
        for (auto v = b.lo; v < b.hi; ++v)
          if (g.adjacent(u, v)) out.add_edge(u, v);
    }
  return out;
}

namespace detail {
// Whether adding v to the vertices [lo, v) creates a clique of size w.
inline bool closes_clique(const OrderedGraph& g, std::size_t lo, Vertex v, std::size_t w) {
  if (w <= 1) return true;
  std::vector<Vertex> nb;
  for (auto u = lo; u < v; ++u)
    if (g.adjacent(u, v)) nb.push_back(u);
  return nb.size() + 1 >= w && clique_number(induced_subgraph(g, nb)) + 1 >= w;
}
}  // namespace detail

/// Cuts the order into the shortest successive intervals containing a
/// clique of size omega(g); the last part takes whatever remains.
inline IntervalPartition greedy_omega_intervals(const OrderedGraph& g) {
  if (g.size() == 0) throw std::invalid_argument("graph must have a vertex");
  const std::size_t w = clique_number(g);
  std::vector<std::size_t> bounds{0};
  std::size_t lo = 0;
  for (Vertex v = 0; v < g.size(); ++v)
    if (detail::closes_clique(g, lo, v, w)) {
      bounds.push_back(v + 1);
      lo = v + 1;
    }
  if (bounds.back() != g.size()) bounds.push_back(g.size());
  return IntervalPartition(bounds);
}

/// Edges between parts s < t that both hold an omega-clique (every part but
/// possibly the last) lie in mixed zones. Returns the first offending pair.
inline std::optional<std::pair<std::size_t, std::size_t>> check_greedy_certificate(const OrderedGraph& g,
                                                                                    const IntervalPartition& p) {
  const auto m = adjacency_matrix(g);
  const std::size_t w = clique_number(g);
  std::size_t full = p.part_count();
  if (full > 0 && clique_number(induced_subgraph(g, p.part(full - 1))) < w) --full;
  for (std::size_t s = 0; s < full; ++s)
    for (std::size_t t = s + 1; t < full; ++t) {
      const Interval a = p.part(s), b = p.part(t);
      bool any = false;
      for (auto u = a.lo; u < a.hi && !any; ++u) any = (g.neighbors(u) & interval_bitset(g.size(), b)).any();
      if (any && !zone_mixed(m, a, b)) return std::pair{s, t};
    }
  return std::nullopt;
}

using InnerColorer = std::function<Coloring(const OrderedGraph&)>;

struct MixedExtLevel {
  std::size_t omega = 0;
  std::size_t n = 0;
  std::size_t parts = 0;
  int inside_palette = 0;  // inside the full parts
  int inner_palette = 0;   // f: the mixed subgraph across full parts
  int final_palette = 0;   // last part when it has no omega-clique
  int palette = 0;
  int c = 0;               // largest palette of a recursive call
};

struct MixedExtColoring {
  Coloring coloring;
  std::vector<MixedExtLevel> levels;  // one per recursive call, innermost first
  bool bound_holds = true;            // palette <= (c+1) f + c + 1 at every level
  std::size_t memo_hits = 0;
};

namespace detail {

class MixedExtColorer {
 public:
  MixedExtColorer(const InnerColorer& inner, MixedExtColoring& out) : inner_(inner), out_(out) {}

  Coloring color(const OrderedGraph& g) {
    if (g.size() == 0) return Coloring{};
    const auto key = g.edges();
    if (auto it = memo_.find({g.size(), key}); it != memo_.end()) {
      ++out_.memo_hits;
      return it->second;
    }
    Coloring c = compute(g);
    memo_.emplace(std::pair{g.size(), key}, c);
    return c;
  }

 private:
  Coloring compute(const OrderedGraph& g) {
    const std::size_t w = clique_number(g);
    if (w <= 1) return Coloring(std::vector<int>(g.size(), 0));
    const auto p = greedy_omega_intervals(g);
    if (auto bad = check_greedy_certificate(g, p))
      throw VerificationFailure("edge between full parts outside a mixed zone");

    MixedExtLevel level{w, g.size(), p.part_count(), 0, 0, 0, 0, 0};
    std::size_t full = p.part_count();
    const bool short_last = clique_number(induced_subgraph(g, p.part(full - 1))) < w;
    if (short_last) --full;
    const std::size_t cut = full == 0 ? 0 : p.part(full - 1).hi;

    std::vector<int> out(g.size(), 0);
    int c = 0, offset = 0;
    if (full > 0) {
      // Inside: each part minus its last vertex has a smaller clique number;
      // the last vertex takes one extra color.
      std::vector<int> inside(cut, 0);
      for (std::size_t j = 0; j < full; ++j) {
        const Interval part = p.part(j);
        const auto sub = color(induced_subgraph(g, Interval{part.lo, part.hi - 1}));
        c = std::max(c, sub.palette_size);
        const auto dense = densify(sub);
        for (std::size_t i = 0; i < dense.size(); ++i) inside[part.lo + i] = dense.colors[i];
        inside[part.hi - 1] = dense.palette_size;
      }
      std::vector<std::size_t> bounds(p.bounds().begin(), p.bounds().begin() + static_cast<long>(full) + 1);
      const auto head = induced_subgraph(g, Interval{0, cut});
      const auto mix = mixed_subgraph(head, IntervalPartition(bounds));
      const auto across = inner_(mix);
      if (!verify_coloring(mix, across)) throw std::invalid_argument("inner coloring is not proper");
      const auto prod = product_coloring(Coloring(inside), across);
      require_proper(head, prod, "color_mixed_extension");
      level.inside_palette = Coloring(inside).palette_size;
      level.inner_palette = across.palette_size;
      std::copy(prod.colors.begin(), prod.colors.end(), out.begin());
      offset = prod.palette_size;
    }
    if (short_last) {
      const auto last = color(induced_subgraph(g, p.part(p.part_count() - 1)));
      c = std::max(c, last.palette_size);
      const auto dense = densify(last);
      for (std::size_t i = 0; i < dense.size(); ++i) out[cut + i] = offset + dense.colors[i];
      level.final_palette = dense.palette_size;
    }
    Coloring res(std::move(out));
    require_proper(g, res, "color_mixed_extension");
    level.c = c;
    level.palette = res.palette_size;
    const long f = level.inner_palette;
    if (static_cast<long>(level.palette) > (c + 1) * f + c + 1) out_.bound_holds = false;
    out_.levels.push_back(level);
    return res;
  }

  const InnerColorer& inner_;
  MixedExtColoring& out_;
  std::map<std::pair<std::size_t, std::vector<Edge>>, Coloring> memo_;
};

}  // namespace detail

/// Recursion on the clique number along greedy_omega_intervals: the full
/// parts are colored inside (recursively, plus one color) times the inner
/// coloring of their mixed subgraph; a last part without an omega-clique is
/// colored recursively with its own palette.
inline MixedExtColoring color_mixed_extension(const OrderedGraph& g, const InnerColorer& inner) {
  MixedExtColoring out;
  detail::MixedExtColorer colorer(inner, out);
  out.coloring = colorer.color(g);
  require_proper(g, out.coloring, "color_mixed_extension");
  return out;
}

}  // namespace twwchi
