#pragma once

// Ordered graphs, intervals, interval partitions and colorings.
//
// Every graph in this library carries a fixed linear order on its vertices:
// the index order 0 < 1 < ... < n-1. Reordering is always an explicit
// operation (apply_order) that returns a new graph.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <istream>
#include <map>
#include <numeric>
#include <ostream>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <boost/dynamic_bitset.hpp>

namespace twwchi {

using Bitset = boost::dynamic_bitset<std::uint64_t>;
using Vertex = std::size_t;
using Edge = std::pair<Vertex, Vertex>;

/// Raised when input text cannot be parsed (graph files, literals).
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Raised when a result fails machine verification. Always a bug.
struct VerificationFailure : std::logic_error {
  using std::logic_error::logic_error;
};

class OrderedGraph {
 public:
  OrderedGraph() = default;
  explicit OrderedGraph(std::size_t n) : rows_(n, Bitset(n)) {}

  static OrderedGraph from_edges(std::size_t n, const std::vector<Edge>& edges) {
    OrderedGraph g(n);
    for (auto [u, v] : edges) g.add_edge(u, v);
    return g;
  }

  std::size_t size() const { return rows_.size(); }

  void add_edge(Vertex u, Vertex v) {
    check_pair(u, v);
    rows_[u].set(v);
    rows_[v].set(u);
  }

  void remove_edge(Vertex u, Vertex v) {
    check_pair(u, v);
    rows_[u].reset(v);
    rows_[v].reset(u);
  }

  bool adjacent(Vertex u, Vertex v) const { return rows_[u].test(v); }

  const Bitset& neighbors(Vertex v) const { return rows_[v]; }

  std::size_t degree(Vertex v) const { return rows_[v].count(); }

  std::size_t edge_count() const {
    std::size_t m = 0;
    for (const auto& r : rows_) m += r.count();
    return m / 2;
  }

  /// Edges as (u, v) with u < v, sorted lexicographically.
  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    for (Vertex u = 0; u < size(); ++u)
      for (auto v = rows_[u].find_next(u); v != Bitset::npos; v = rows_[u].find_next(v))
        out.emplace_back(u, v);
    return out;
  }

  OrderedGraph complement() const {
    OrderedGraph c(size());
    for (Vertex u = 0; u < size(); ++u) {
      c.rows_[u] = ~rows_[u];
      c.rows_[u].reset(u);
    }
    return c;
  }

  friend bool operator==(const OrderedGraph& a, const OrderedGraph& b) {
    return a.rows_ == b.rows_;
  }

 private:
  void check_pair(Vertex u, Vertex v) const {
    if (u >= size() || v >= size())
      throw std::out_of_range("vertex index out of range");
    if (u == v) throw std::invalid_argument("self-loops are not allowed");
  }

  std::vector<Bitset> rows_;
};

/// Half-open range [lo, hi) of consecutive vertices.
struct Interval {
  std::size_t lo = 0;
  std::size_t hi = 0;

  std::size_t size() const { return hi - lo; }
  bool contains(std::size_t v) const { return lo <= v && v < hi; }
  friend bool operator==(const Interval&, const Interval&) = default;
};

/// Partition of {0..n-1} into consecutive nonempty parts.
class IntervalPartition {
 public:
  IntervalPartition() = default;

  /// `bounds` is 0 = b_0 < b_1 < ... < b_k = n; part i is [b_i, b_{i+1}).
  explicit IntervalPartition(std::vector<std::size_t> bounds) : bounds_(std::move(bounds)) {
    if (bounds_.empty() || bounds_.front() != 0)
      throw std::invalid_argument("interval partition must start at 0");
    for (std::size_t i = 1; i < bounds_.size(); ++i)
      if (bounds_[i] <= bounds_[i - 1])
        throw std::invalid_argument("interval partition bounds must increase strictly");
    if (bounds_.size() == 1 && bounds_[0] != 0)
      throw std::invalid_argument("bad interval partition");
  }

  /// Builds the partition of {0..n-1} cut before each index in `cuts`.
  static IntervalPartition from_cuts(std::size_t n, const std::vector<std::size_t>& cuts) {
    std::vector<std::size_t> b{0};
    for (auto c : cuts) {
      if (c == 0 || c >= n) throw std::invalid_argument("cut out of range");
      b.push_back(c);
    }
    if (n > 0) b.push_back(n);
    return IntervalPartition(std::move(b));
  }

  static IntervalPartition from_sizes(const std::vector<std::size_t>& sizes) {
    std::vector<std::size_t> b{0};
    for (auto s : sizes) {
      if (s == 0) throw std::invalid_argument("empty part");
      b.push_back(b.back() + s);
    }
    return IntervalPartition(std::move(b));
  }

  static IntervalPartition whole(std::size_t n) { return from_cuts(n, {}); }

  static IntervalPartition singletons(std::size_t n) {
    std::vector<std::size_t> b(n + 1);
    std::iota(b.begin(), b.end(), std::size_t{0});
    return IntervalPartition(std::move(b));
  }

  std::size_t universe() const { return bounds_.empty() ? 0 : bounds_.back(); }
  std::size_t part_count() const { return bounds_.empty() ? 0 : bounds_.size() - 1; }
  Interval part(std::size_t i) const { return {bounds_.at(i), bounds_.at(i + 1)}; }
  const std::vector<std::size_t>& bounds() const { return bounds_; }

  std::vector<std::size_t> cuts() const {
    if (bounds_.size() <= 2) return {};
    return {bounds_.begin() + 1, bounds_.end() - 1};
  }

  std::size_t part_of(std::size_t v) const {
    auto it = std::upper_bound(bounds_.begin(), bounds_.end(), v);
    return static_cast<std::size_t>(it - bounds_.begin()) - 1;
  }

  /// True iff every cut of `coarser` is a cut of this partition.
  bool refines(const IntervalPartition& coarser) const {
    auto mine = cuts();
    for (auto c : coarser.cuts())
      if (!std::binary_search(mine.begin(), mine.end(), c)) return false;
    return universe() == coarser.universe();
  }

  friend bool operator==(const IntervalPartition&, const IntervalPartition&) = default;

 private:
  std::vector<std::size_t> bounds_;
};

/// Vertex coloring; palette_size is the number of distinct colors used.
struct Coloring {
  std::vector<int> colors;
  int palette_size = 0;

  Coloring() = default;
  explicit Coloring(std::vector<int> c) : colors(std::move(c)) {
    std::vector<int> s = colors;
    std::sort(s.begin(), s.end());
    palette_size = static_cast<int>(std::unique(s.begin(), s.end()) - s.begin());
  }

  std::size_t size() const { return colors.size(); }
  int max_color() const {
    return colors.empty() ? -1 : *std::max_element(colors.begin(), colors.end());
  }
};

inline bool verify_coloring(const OrderedGraph& g, const Coloring& c) {
  if (c.size() != g.size()) return false;
  for (auto [u, v] : g.edges())
    if (c.colors[u] == c.colors[v]) return false;
  return std::all_of(c.colors.begin(), c.colors.end(), [](int x) { return x >= 0; });
}

inline void require_proper(const OrderedGraph& g, const Coloring& c, const char* where) {
  if (!verify_coloring(g, c))
    throw VerificationFailure(std::string("improper coloring produced by ") + where);
}

/// Renumbers colors to 0..palette-1 in order of first appearance.
inline Coloring densify(const Coloring& c) {
  std::map<int, int> idx;
  std::vector<int> out(c.size());
  for (std::size_t v = 0; v < c.size(); ++v) {
    auto [it, fresh] = idx.try_emplace(c.colors[v], static_cast<int>(idx.size()));
    out[v] = it->second;
  }
  return Coloring(std::move(out));
}

/// Coloring v -> (c1[v], c2[v]), re-indexed densely.
inline Coloring product_coloring(const Coloring& c1, const Coloring& c2) {
  if (c1.size() != c2.size()) throw std::invalid_argument("coloring length mismatch");
  std::map<std::pair<int, int>, int> idx;
  for (std::size_t v = 0; v < c1.size(); ++v) idx.emplace(std::pair{c1.colors[v], c2.colors[v]}, 0);
  int next = 0;
  for (auto& [k, val] : idx) val = next++;
  std::vector<int> out(c1.size());
  for (std::size_t v = 0; v < c1.size(); ++v) out[v] = idx.at({c1.colors[v], c2.colors[v]});
  return Coloring(std::move(out));
}

/// Graph whose vertex i is vertex order[i] of g. `order` must be a set of
/// distinct valid indices (any order, not necessarily all of g).
inline OrderedGraph apply_order(const OrderedGraph& g, const std::vector<Vertex>& order) {
  std::vector<bool> seen(g.size(), false);
  for (auto v : order) {
    if (v >= g.size()) throw std::out_of_range("vertex index out of range");
    if (seen[v]) throw std::invalid_argument("duplicated vertex index");
    seen[v] = true;
  }
  OrderedGraph h(order.size());
  for (std::size_t a = 0; a < order.size(); ++a)
    for (std::size_t b = a + 1; b < order.size(); ++b)
      if (g.adjacent(order[a], order[b])) h.add_edge(a, b);
  return h;
}

inline OrderedGraph induced_subgraph(const OrderedGraph& g, const std::vector<Vertex>& vs) {
  for (std::size_t i = 1; i < vs.size(); ++i) {
    if (vs[i] == vs[i - 1]) throw std::invalid_argument("duplicated vertex index");
    if (vs[i] < vs[i - 1]) throw std::invalid_argument("vertex subset must be increasing");
  }
  return apply_order(g, vs);
}

inline OrderedGraph induced_subgraph(const OrderedGraph& g, Interval i) {
  std::vector<Vertex> vs(i.size());
  std::iota(vs.begin(), vs.end(), i.lo);
  return induced_subgraph(g, vs);
}

inline std::vector<Vertex> all_vertices(std::size_t n) {
  std::vector<Vertex> vs(n);
  std::iota(vs.begin(), vs.end(), Vertex{0});
  return vs;
}

inline std::vector<Vertex> interval_vertices(Interval i) {
  std::vector<Vertex> vs(i.size());
  std::iota(vs.begin(), vs.end(), i.lo);
  return vs;
}

inline Bitset to_bitset(std::size_t n, const std::vector<Vertex>& xs) {
  Bitset b(n);
  for (auto x : xs) {
    if (x >= n) throw std::out_of_range("vertex index out of range");
    b.set(x);
  }
  return b;
}

inline Bitset interval_bitset(std::size_t n, Interval i) {
  Bitset b(n);
  for (auto v = i.lo; v < i.hi; ++v) b.set(v);
  return b;
}

/// True iff every vertex outside xs sees all or none of xs.
inline bool is_module(const OrderedGraph& g, const Bitset& xs) {
  if (xs.none()) throw std::invalid_argument("module candidate must be nonempty");
  for (Vertex y = 0; y < g.size(); ++y) {
    if (xs.test(y)) continue;
    auto seen = (g.neighbors(y) & xs).count();
    if (seen != 0 && seen != xs.count()) return false;
  }
  return true;
}

inline bool is_module(const OrderedGraph& g, const std::vector<Vertex>& xs) {
  return is_module(g, to_bitset(g.size(), xs));
}

/// True iff xs is a module of g[xs ∪ ys].
inline bool is_module_wrt(const OrderedGraph& g, const Bitset& xs, const Bitset& ys) {
  if (xs.none() || ys.none()) throw std::invalid_argument("sets must be nonempty");
  if (xs.intersects(ys)) throw std::invalid_argument("sets must be disjoint");
  const auto total = xs.count();
  for (auto y = ys.find_first(); y != Bitset::npos; y = ys.find_next(y)) {
    auto seen = (g.neighbors(y) & xs).count();
    if (seen != 0 && seen != total) return false;
  }
  return true;
}

inline bool is_module_wrt(const OrderedGraph& g, const std::vector<Vertex>& xs,
                          const std::vector<Vertex>& ys) {
  return is_module_wrt(g, to_bitset(g.size(), xs), to_bitset(g.size(), ys));
}

/// Smallest module of g containing `seed`: repeatedly absorbs splitters.
inline Bitset module_closure(const OrderedGraph& g, Bitset seed) {
  bool grew = true;
  while (grew) {
    grew = false;
    const auto total = seed.count();
    for (Vertex y = 0; y < g.size(); ++y) {
      if (seed.test(y)) continue;
      auto seen = (g.neighbors(y) & seed).count();
      if (seen != 0 && seen != total) {
        seed.set(y);
        grew = true;
        break;
      }
    }
  }
  return seed;
}

inline bool edge_union_cover(const OrderedGraph& g, const std::vector<OrderedGraph>& parts) {
  OrderedGraph u(g.size());
  for (const auto& p : parts) {
    if (p.size() != g.size()) throw std::invalid_argument("vertex count mismatch");
    for (auto [a, b] : p.edges()) u.add_edge(a, b);
  }
  return u == g;
}

inline std::vector<std::vector<Vertex>> connected_components(const OrderedGraph& g) {
  std::vector<int> comp(g.size(), -1);
  std::vector<std::vector<Vertex>> out;
  for (Vertex s = 0; s < g.size(); ++s) {
    if (comp[s] >= 0) continue;
    std::vector<Vertex> stack{s}, members;
    comp[s] = static_cast<int>(out.size());
    while (!stack.empty()) {
      auto v = stack.back();
      stack.pop_back();
      members.push_back(v);
      const auto& nb = g.neighbors(v);
      for (auto w = nb.find_first(); w != Bitset::npos; w = nb.find_next(w))
        if (comp[w] < 0) {
          comp[w] = comp[s];
          stack.push_back(w);
        }
    }
    std::sort(members.begin(), members.end());
    out.push_back(std::move(members));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Generators

/// Deterministic helpers on top of mt19937_64 raw output; the standard
/// distributions are implementation-defined and would break reproducibility.
inline std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound) {
  return bound == 0 ? 0 : rng() % bound;
}

inline bool bernoulli(std::mt19937_64& rng, double p) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53 < p;
}

inline OrderedGraph edgeless_graph(std::size_t n) { return OrderedGraph(n); }

inline OrderedGraph complete_graph(std::size_t n) { return OrderedGraph(n).complement(); }

inline OrderedGraph path_graph(std::size_t n) {
  OrderedGraph g(n);
  for (Vertex v = 0; v + 1 < n; ++v) g.add_edge(v, v + 1);
  return g;
}

/// The cycle traversing 0, 1, n-1, n-2, ..., 2. For n = 5 this is the
/// labelled C5 with edges {01, 02, 14, 23, 34}.
inline OrderedGraph cycle_graph(std::size_t n) {
  if (n < 3) throw std::invalid_argument("cycle needs n >= 3");
  std::vector<Vertex> tour{0, 1};
  for (Vertex v = n - 1; v >= 2; --v) tour.push_back(v);
  OrderedGraph g(n);
  for (std::size_t i = 0; i < n; ++i) g.add_edge(tour[i], tour[(i + 1) % n]);
  return g;
}

/// Vertex labels (i, j), 1 <= i < j <= n, of the shift graph in vertex order:
/// lexicographic by (j, i), so that each V_j = {(i, j)} is an interval.
inline std::vector<std::pair<int, int>> shift2_labels(std::size_t n) {
  std::vector<std::pair<int, int>> out;
  for (int j = 2; j <= static_cast<int>(n); ++j)
    for (int i = 1; i < j; ++i) out.emplace_back(i, j);
  return out;
}

inline OrderedGraph shift2_graph(std::size_t n) {
  auto labels = shift2_labels(n);
  OrderedGraph g(labels.size());
  for (std::size_t a = 0; a < labels.size(); ++a)
    for (std::size_t b = a + 1; b < labels.size(); ++b) {
      auto [i1, j1] = labels[a];
      auto [i2, j2] = labels[b];
      if (j1 == i2 || j2 == i1) g.add_edge(a, b);
    }
  return g;
}

/// The parts V_2, ..., V_n of the shift graph.
inline IntervalPartition shift2_parts(std::size_t n) {
  std::vector<std::size_t> sizes;
  for (std::size_t j = 2; j <= n; ++j) sizes.push_back(j - 1);
  return IntervalPartition::from_sizes(sizes);
}

inline OrderedGraph gnp_graph(std::size_t n, double p, std::uint64_t seed) {
  if (p < 0.0 || p > 1.0) throw std::invalid_argument("p must lie in [0, 1]");
  std::mt19937_64 rng(seed);
  OrderedGraph g(n);
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v)
      if (bernoulli(rng, p)) g.add_edge(u, v);
  return g;
}

namespace detail {
// Random binary cotree over [lo, lo + n), drawn in preorder.
inline void grow_cograph(OrderedGraph& g, std::mt19937_64& rng, Vertex lo, std::size_t n) {
  if (n <= 1) return;
  const std::size_t left = 1 + uniform_below(rng, n - 1);
  const bool join = (rng() & 1) != 0;
  if (join)
    for (Vertex u = lo; u < lo + left; ++u)
      for (Vertex v = lo + left; v < lo + n; ++v) g.add_edge(u, v);
  grow_cograph(g, rng, lo, left);
  grow_cograph(g, rng, lo + left, n - left);
}
}  // namespace detail

/// Random cograph, vertices in cotree leaf order.
inline OrderedGraph random_cograph(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  OrderedGraph g(n);
  detail::grow_cograph(g, rng, 0, n);
  return g;
}

struct GeneratorParams {
  std::size_t n = 0;
  double p = 0.5;
  std::uint64_t seed = 0;
};

inline OrderedGraph generate(const std::string& family, const GeneratorParams& params) {
  if (params.n < 1) throw std::invalid_argument("n must be >= 1");
  if (family == "shift2") return shift2_graph(params.n);
  if (family == "cycle") return cycle_graph(params.n);
  if (family == "path") return path_graph(params.n);
  if (family == "complete") return complete_graph(params.n);
  if (family == "edgeless") return edgeless_graph(params.n);
  if (family == "gnp") return gnp_graph(params.n, params.p, params.seed);
  if (family == "random_cograph") return random_cograph(params.n, params.seed);
  throw std::invalid_argument("unknown graph family: " + family);
}

// ---------------------------------------------------------------------------
// Text format: "N M" then M lines "u v" (u < v); '#' lines are comments.

inline OrderedGraph read_graph(std::istream& in) {
  std::string line;
  bool have_header = false;
  std::size_t n = 0, m = 0, seen = 0;
  OrderedGraph g;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream ls(line);
    long long a = -1, b = -1;
    std::string extra;
    if (!(ls >> a >> b) || (ls >> extra))
      throw ParseError("malformed line: '" + line + "'");
    if (!have_header) {
      if (a < 0 || b < 0) throw ParseError("negative header values");
      n = static_cast<std::size_t>(a);
      m = static_cast<std::size_t>(b);
      g = OrderedGraph(n);
      have_header = true;
      continue;
    }
    if (a < 0 || b < 0 || a >= b || static_cast<std::size_t>(b) >= n)
      throw ParseError("edge must satisfy 0 <= u < v < N: '" + line + "'");
    if (g.adjacent(a, b)) throw ParseError("duplicate edge: '" + line + "'");
    g.add_edge(static_cast<Vertex>(a), static_cast<Vertex>(b));
    ++seen;
  }
  if (!have_header) throw ParseError("missing 'N M' header");
  if (seen != m) throw ParseError("edge count does not match header");
  return g;
}

inline void write_graph(std::ostream& out, const OrderedGraph& g) {
  auto es = g.edges();
  out << g.size() << ' ' << es.size() << '\n';
  for (auto [u, v] : es) out << u << ' ' << v << '\n';
}

inline std::string to_text(const OrderedGraph& g) {
  std::ostringstream os;
  write_graph(os, g);
  return os.str();
}

}  // namespace twwchi
