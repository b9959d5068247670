#pragma once

// Exact brute-force ground truth at desk scale. Nothing in here is used by
// the constructive coloring algorithms except max_clique, which supplies
// clique numbers for accounting.

#include <algorithm>
#include <bit>
#include <limits>
#include <cstdint>
#include <numeric>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "twwchi/graph.hpp"
#include "twwchi/matrix.hpp"

namespace twwchi {

struct SizeLimitExceeded : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

inline void require_size(std::size_t n, std::size_t limit, const char* what) {
  if (n > limit)
    throw SizeLimitExceeded(std::string(what) + ": n = " + std::to_string(n) + " exceeds limit " +
                            std::to_string(limit));
}

// ---------------------------------------------------------------------------
// Maximum clique: branch and bound with a greedy coloring bound (MCQ).

struct CliqueResult {
  std::size_t size = 0;
  std::vector<Vertex> clique;
};

namespace detail {
class CliqueSearch {
 public:
  explicit CliqueSearch(const OrderedGraph& g) : g_(g) {}

  CliqueResult run() {
    Bitset all(g_.size());
    all.set();
    std::vector<Vertex> current;
    expand(current, all);
    std::sort(best_.begin(), best_.end());
    return {best_.size(), best_};
  }

 private:
  void expand(std::vector<Vertex>& current, Bitset candidates) {
    std::vector<Vertex> order;
    std::vector<std::size_t> bound;
    color_sort(candidates, order, bound);
    for (std::size_t i = order.size(); i-- > 0;) {
      if (current.size() + bound[i] <= best_.size()) return;
      const Vertex v = order[i];
      current.push_back(v);
      Bitset next = candidates & g_.neighbors(v);
      if (next.none()) {
        if (current.size() > best_.size()) best_ = current;
      } else {
        expand(current, next);
      }
      current.pop_back();
      candidates.reset(v);
    }
  }

  // Greedy sequential coloring of the candidates; bound[i] is the color
  // class (1-based) of order[i], nondecreasing along order.
  void color_sort(const Bitset& candidates, std::vector<Vertex>& order,
                  std::vector<std::size_t>& bound) const {
    Bitset left = candidates;
    std::size_t color = 0;
    while (left.any()) {
      ++color;
      Bitset q = left;
      while (q.any()) {
        auto v = q.find_first();
        q.reset(v);
        q -= g_.neighbors(v);
        left.reset(v);
        order.push_back(v);
        bound.push_back(color);
      }
    }
  }

  const OrderedGraph& g_;
  std::vector<Vertex> best_;
};
}  // namespace detail

/// Exact maximum clique without a size cap.
inline CliqueResult max_clique(const OrderedGraph& g) {
  if (g.size() == 0) return {};
  return detail::CliqueSearch(g).run();
}

inline std::size_t clique_number(const OrderedGraph& g) { return max_clique(g).size; }

inline CliqueResult exact_clique_number(const OrderedGraph& g, std::size_t limit = 40) {
  require_size(g.size(), limit, "exact_clique_number");
  return max_clique(g);
}

inline bool is_clique(const OrderedGraph& g, const std::vector<Vertex>& vs) {
  for (std::size_t i = 0; i < vs.size(); ++i)
    for (std::size_t j = i + 1; j < vs.size(); ++j)
      if (vs[i] == vs[j] || !g.adjacent(vs[i], vs[j])) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Colorings

/// DSATUR greedy coloring.
inline Coloring dsatur_coloring(const OrderedGraph& g) {
  const std::size_t n = g.size();
  std::vector<int> color(n, -1);
  std::vector<std::vector<bool>> seen(n);
  std::vector<std::size_t> sat(n, 0);
  for (std::size_t step = 0; step < n; ++step) {
    std::size_t pick = n;
    for (Vertex v = 0; v < n; ++v) {
      if (color[v] >= 0) continue;
      if (pick == n || sat[v] > sat[pick] || (sat[v] == sat[pick] && g.degree(v) > g.degree(pick)))
        pick = v;
    }
    int c = 0;
    while (static_cast<std::size_t>(c) < seen[pick].size() && seen[pick][c]) ++c;
    color[pick] = c;
    const auto& nb = g.neighbors(pick);
    for (auto w = nb.find_first(); w != Bitset::npos; w = nb.find_next(w)) {
      if (seen[w].size() <= static_cast<std::size_t>(c)) seen[w].resize(c + 1, false);
      if (!seen[w][c]) {
        seen[w][c] = true;
        ++sat[w];
      }
    }
  }
  return Coloring(std::move(color));
}

/// Smallest-last (degeneracy) order greedy coloring; uses at most
/// degeneracy + 1 colors.
inline Coloring degeneracy_coloring(const OrderedGraph& g) {
  const std::size_t n = g.size();
  std::vector<std::size_t> deg(n);
  std::vector<bool> removed(n, false);
  std::vector<Vertex> order;
  for (Vertex v = 0; v < n; ++v) deg[v] = g.degree(v);
  for (std::size_t step = 0; step < n; ++step) {
    Vertex pick = n;
    for (Vertex v = 0; v < n; ++v)
      if (!removed[v] && (pick == n || deg[v] < deg[pick])) pick = v;
    removed[pick] = true;
    order.push_back(pick);
    const auto& nb = g.neighbors(pick);
    for (auto w = nb.find_first(); w != Bitset::npos; w = nb.find_next(w))
      if (!removed[w]) --deg[w];
  }
  std::vector<int> color(n, -1);
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    std::vector<bool> used;
    const auto& nb = g.neighbors(*it);
    for (auto w = nb.find_first(); w != Bitset::npos; w = nb.find_next(w))
      if (color[w] >= 0) {
        if (used.size() <= static_cast<std::size_t>(color[w])) used.resize(color[w] + 1, false);
        used[color[w]] = true;
      }
    int c = 0;
    while (static_cast<std::size_t>(c) < used.size() && used[c]) ++c;
    color[*it] = c;
  }
  return Coloring(std::move(color));
}

inline std::size_t degeneracy(const OrderedGraph& g) {
  const std::size_t n = g.size();
  std::vector<std::size_t> deg(n);
  std::vector<bool> removed(n, false);
  std::size_t best = 0;
  for (Vertex v = 0; v < n; ++v) deg[v] = g.degree(v);
  for (std::size_t step = 0; step < n; ++step) {
    Vertex pick = n;
    for (Vertex v = 0; v < n; ++v)
      if (!removed[v] && (pick == n || deg[v] < deg[pick])) pick = v;
    best = std::max(best, deg[pick]);
    removed[pick] = true;
    const auto& nb = g.neighbors(pick);
    for (auto w = nb.find_first(); w != Bitset::npos; w = nb.find_next(w))
      if (!removed[w]) --deg[w];
  }
  return best;
}

struct ChromaticResult {
  int chi = 0;
  Coloring coloring;
};

namespace detail {
// DSATUR-ordered branch and bound. Neighbor colors are tracked in 64-bit
// masks, which caps n at 64.
class ChromaticSearch {
 public:
  ChromaticSearch(const OrderedGraph& g, int lower, Coloring upper)
      : g_(g), lower_(lower), best_k_(upper.palette_size), best_(densify(upper).colors),
        color_(g.size(), -1), mask_(g.size(), 0) {}

  ChromaticResult run() {
    if (best_k_ > lower_) search(0, 0);
    return {best_k_, Coloring(best_)};
  }

 private:
  bool search(std::size_t colored, int used) {
    if (colored == g_.size()) {
      best_k_ = used;
      best_ = color_;
      return best_k_ <= lower_;
    }
    Vertex pick = g_.size();
    int pick_sat = -1;
    for (Vertex v = 0; v < g_.size(); ++v) {
      if (color_[v] >= 0) continue;
      int sat = std::popcount(mask_[v]);
      if (sat > pick_sat || (sat == pick_sat && g_.degree(v) > g_.degree(pick))) {
        pick = v;
        pick_sat = sat;
      }
    }
    for (int c = 0; c <= used && c + 1 < best_k_; ++c) {
      if (mask_[pick] >> c & 1U) continue;
      std::vector<Vertex> touched;
      color_[pick] = c;
      const auto& nb = g_.neighbors(pick);
      for (auto w = nb.find_first(); w != Bitset::npos; w = nb.find_next(w))
        if (!(mask_[w] >> c & 1U)) {
          mask_[w] |= std::uint64_t{1} << c;
          touched.push_back(w);
        }
      bool done = search(colored + 1, std::max(used, c + 1));
      for (auto w : touched) mask_[w] &= ~(std::uint64_t{1} << c);
      color_[pick] = -1;
      if (done) return true;
    }
    return false;
  }

  const OrderedGraph& g_;
  int lower_;
  int best_k_;
  std::vector<int> best_;
  std::vector<int> color_;
  std::vector<std::uint64_t> mask_;
};
}  // namespace detail

inline ChromaticResult exact_chromatic_number(const OrderedGraph& g, std::size_t limit = 25) {
  require_size(g.size(), std::min<std::size_t>(limit, 64), "exact_chromatic_number");
  if (g.size() == 0) return {0, Coloring{}};
  const int lower = static_cast<int>(max_clique(g).size);
  auto res = detail::ChromaticSearch(g, lower, dsatur_coloring(g)).run();
  require_proper(g, res.coloring, "exact_chromatic_number");
  return res;
}

/// Exact coloring for small graphs, DSATUR beyond `exact_limit` vertices.
inline Coloring best_effort_coloring(const OrderedGraph& g, std::size_t exact_limit = 25) {
  if (g.size() <= exact_limit) return exact_chromatic_number(g, exact_limit).coloring;
  return dsatur_coloring(g);
}

// ---------------------------------------------------------------------------
// Structure

/// Brute-force search for an induced P4 (a-b-c-d path, no chords).
inline std::optional<std::vector<Vertex>> find_induced_p4(const OrderedGraph& g) {
  const std::size_t n = g.size();
  for (Vertex b = 0; b < n; ++b)
    for (Vertex c = 0; c < n; ++c) {
      if (b == c || !g.adjacent(b, c)) continue;
      for (Vertex a = 0; a < n; ++a) {
        if (a == c || !g.adjacent(a, b) || g.adjacent(a, c)) continue;
        for (Vertex d = 0; d < n; ++d) {
          if (d == b || d == a || !g.adjacent(c, d) || g.adjacent(b, d) || g.adjacent(a, d)) continue;
          return std::vector<Vertex>{a, b, c, d};
        }
      }
    }
  return std::nullopt;
}

inline bool is_p4_free(const OrderedGraph& g) { return !find_induced_p4(g).has_value(); }

/// True iff g has no module of size k with 1 < k < n.
inline bool is_prime(const OrderedGraph& g) {
  const std::size_t n = g.size();
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v) {
      Bitset seed(n);
      seed.set(u);
      seed.set(v);
      if (module_closure(g, seed).count() < n) return false;
    }
  return true;
}

// ---------------------------------------------------------------------------
// Enumeration

inline std::size_t pair_count(std::size_t n) { return n * (n - 1) / 2; }

/// Graph whose edge set is given by bit i of `mask` for the i-th pair (u, v),
/// u < v, in lexicographic order.
inline OrderedGraph graph_from_mask(std::size_t n, std::uint64_t mask) {
  OrderedGraph g(n);
  std::size_t bit = 0;
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v, ++bit)
      if (mask >> bit & 1U) g.add_edge(u, v);
  return g;
}

/// Deterministic stream of graphs on n vertices: all 2^C(n,2) labelled
/// graphs (exhaustive, n <= 7) or `count` G(n, 1/2) samples from `seed`.
class GraphEnumerator {
 public:
  static GraphEnumerator exhaustive(std::size_t n) {
    require_size(n, 7, "exhaustive enumeration");
    GraphEnumerator e(n);
    e.total_ = std::uint64_t{1} << pair_count(n);
    return e;
  }

  static GraphEnumerator sample(std::size_t n, std::uint64_t seed, std::uint64_t count) {
    GraphEnumerator e(n);
    e.sampled_ = true;
    e.rng_.seed(seed);
    e.total_ = count;
    return e;
  }

  std::uint64_t total() const { return total_; }

  std::optional<OrderedGraph> next() {
    if (index_ >= total_) return std::nullopt;
    if (!sampled_) return graph_from_mask(n_, index_++);
    ++index_;
    return gnp_graph(n_, 0.5, rng_());
  }

 private:
  explicit GraphEnumerator(std::size_t n) : n_(n) {}

  std::size_t n_;
  bool sampled_ = false;
  std::mt19937_64 rng_;
  std::uint64_t total_ = 0;
  std::uint64_t index_ = 0;
};

// ---------------------------------------------------------------------------
// Minimal (almost-)mixed-free parameters over all vertex orderings.

struct MinParameter {
  std::size_t d = 0;
  std::vector<Vertex> ordering;
};

namespace detail {
template <class HasMinor>
MinParameter min_over_orderings(const OrderedGraph& g, std::size_t d_start, HasMinor has_minor) {
  const std::size_t n = g.size();
  std::vector<Vertex> perm = all_vertices(n);
  MinParameter best{std::numeric_limits<std::size_t>::max(), {}};
  do {
    // An ordering and its reverse have the same minors (rows and columns
    // both reversed), so only one of each pair is examined.
    if (n >= 2 && perm.front() > perm.back()) continue;
    const TriMatrix m = adjacency_matrix(apply_order(g, perm));
    std::size_t d = d_start;
    while (d < best.d && has_minor(m, d)) ++d;
    if (d < best.d) best = {d, perm};
    if (best.d == d_start) break;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}
}  // namespace detail

/// Smallest d >= 2 such that some ordering of g is d-almost mixed free.
inline MinParameter min_amf(const OrderedGraph& g, std::size_t limit = 8) {
  require_size(g.size(), limit, "min_amf");
  return detail::min_over_orderings(g, 2, [](const TriMatrix& m, std::size_t d) {
    return find_almost_mixed_minor(m, d).has_value();
  });
}

/// Smallest d >= 1 such that some ordering of g is d-mixed free.
inline MinParameter min_mixed_free(const OrderedGraph& g, std::size_t limit = 8) {
  require_size(g.size(), limit, "min_mixed_free");
  return detail::min_over_orderings(g, 1, [](const TriMatrix& m, std::size_t d) {
    return find_mixed_minor(m, d).has_value();
  });
}

}  // namespace twwchi
