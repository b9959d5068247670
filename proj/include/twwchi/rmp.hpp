#pragma once

// Right module partitions: partitions into stable sets V_1, ..., V_k where
// V_i is a module with respect to V_j whenever i < j. Quotients, transversal
// minors, coloring lifts, the two clique-growth recurrences, and the pair
// almost-mixed-freeness test with its quotient clique bound.

#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "twwchi/graph.hpp"
#include "twwchi/matrix.hpp"
#include "twwchi/oracles.hpp"

namespace twwchi {

struct RMPartition {
  std::vector<std::vector<Vertex>> parts;  // each sorted
  bool ordered = true;                     // parts are consecutive intervals

  std::size_t size() const { return parts.size(); }

  static RMPartition from_intervals(const IntervalPartition& p) {
    RMPartition r;
    for (std::size_t i = 0; i < p.part_count(); ++i) r.parts.push_back(interval_vertices(p.part(i)));
    return r;
  }

  static RMPartition singletons(std::size_t n) {
    return from_intervals(IntervalPartition::singletons(n));
  }

  /// Literal `0-0,1-2,3-5` with inclusive ranges.
  static RMPartition parse(const std::string& literal) {
    return from_intervals(detail::parse_ranges(literal));
  }

  /// Interval form of an ordered partition.
  IntervalPartition intervals() const {
    std::vector<std::size_t> bounds{0};
    for (const auto& part : parts) {
      if (part.empty() || part.front() != bounds.back() || part.back() + 1 != bounds.back() + part.size())
        throw std::invalid_argument("partition parts are not consecutive intervals");
      bounds.push_back(part.back() + 1);
    }
    return IntervalPartition(bounds);
  }
};

inline std::string to_string(const RMPartition& p) {
  return detail::ranges_to_string(p.intervals());
}

struct RmpCheck {
  bool ok = true;
  int i = -1, j = -1;  // violating parts; i == j for a non-stable part
  Vertex witness = 0;  // vertex of part j (or of part i when i == j)
  std::string reason;
};

namespace detail {
inline void require_partition(const OrderedGraph& g, const RMPartition& p) {
  std::vector<bool> seen(g.size(), false);
  std::size_t count = 0;
  for (const auto& part : p.parts) {
    if (part.empty()) throw std::invalid_argument("partition has an empty part");
    for (std::size_t a = 0; a < part.size(); ++a) {
      const auto v = part[a];
      if (v >= g.size()) throw std::out_of_range("partition vertex out of range");
      if (seen[v]) throw std::invalid_argument("partition parts overlap");
      if (a > 0 && part[a - 1] >= v) throw std::invalid_argument("partition parts must be sorted");
      seen[v] = true;
      ++count;
    }
  }
  if (count != g.size()) throw std::invalid_argument("partition does not cover every vertex");
}
}  // namespace detail

/// Stability of each part and the module condition for every i < j; in
/// ordered mode the parts must also be consecutive intervals.
inline RmpCheck validate_rmp(const OrderedGraph& g, const RMPartition& p) {
  detail::require_partition(g, p);
  if (p.ordered) {
    try {
      (void)p.intervals();
    } catch (const std::invalid_argument&) {
      return {false, -1, -1, 0, "parts are not consecutive intervals"};
    }
  }
  const std::size_t n = g.size();
  std::vector<Bitset> sets;
  for (const auto& part : p.parts) sets.push_back(to_bitset(n, part));
  for (std::size_t i = 0; i < p.size(); ++i)
    for (auto v : p.parts[i])
      if ((g.neighbors(v) & sets[i]).any())
        return {false, static_cast<int>(i), static_cast<int>(i), v, "part is not stable"};
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = i + 1; j < p.size(); ++j)
      for (auto y : p.parts[j]) {
        const auto seen = (g.neighbors(y) & sets[i]).count();
        if (seen != 0 && seen != p.parts[i].size())
          return {false, static_cast<int>(i), static_cast<int>(j), y,
                  "earlier part is not a module with respect to a later part"};
      }
  return {};
}

inline void require_rmp(const OrderedGraph& g, const RMPartition& p) {
  auto check = validate_rmp(g, p);
  if (!check.ok)
    throw std::invalid_argument("not a right module partition: " + check.reason + " (parts " +
                                std::to_string(check.i) + ", " + std::to_string(check.j) + ")");
}

/// Graph on the chosen subsets W_1, ..., W_l (in part order), with an edge
/// whenever some edge joins the two subsets.
inline OrderedGraph transversal_minor(const OrderedGraph& g, const RMPartition& p,
                                      const std::vector<std::pair<std::size_t, std::vector<Vertex>>>& chosen) {
  detail::require_partition(g, p);
  std::vector<Bitset> sets;
  for (std::size_t a = 0; a < chosen.size(); ++a) {
    const auto& [idx, ws] = chosen[a];
    if (idx >= p.size()) throw std::out_of_range("part index out of range");
    if (a > 0 && chosen[a - 1].first >= idx) throw std::invalid_argument("part indices must increase");
    if (ws.empty()) throw std::invalid_argument("chosen subset is empty");
    const auto& part = p.parts[idx];
    for (auto w : ws)
      if (!std::binary_search(part.begin(), part.end(), w))
        throw std::invalid_argument("chosen vertex lies outside its part");
    sets.push_back(to_bitset(g.size(), ws));
  }
  OrderedGraph m(chosen.size());
  for (std::size_t a = 0; a < chosen.size(); ++a) {
    Bitset reach(g.size());
    for (auto w : chosen[a].second) reach |= g.neighbors(w);
    for (std::size_t b = a + 1; b < chosen.size(); ++b)
      if ((reach & sets[b]).any()) m.add_edge(a, b);
  }
  return m;
}

inline OrderedGraph quotient(const OrderedGraph& g, const RMPartition& p) {
  require_rmp(g, p);
  std::vector<std::pair<std::size_t, std::vector<Vertex>>> all;
  for (std::size_t i = 0; i < p.size(); ++i) all.emplace_back(i, p.parts[i]);
  return transversal_minor(g, p, all);
}

/// Calls fn on every transversal minor that takes a nonempty subset of each
/// of the listed parts. Parts must have at most 20 vertices.
inline void for_each_transversal_minor(
    const OrderedGraph& g, const RMPartition& p, const std::vector<std::size_t>& part_ids,
    const std::function<void(const OrderedGraph&, const std::vector<std::pair<std::size_t, std::vector<Vertex>>>&)>& fn) {
  std::vector<std::pair<std::size_t, std::vector<Vertex>>> chosen(part_ids.size());
  for (std::size_t a = 0; a < part_ids.size(); ++a) {
    require_size(p.parts.at(part_ids[a]).size(), 20, "transversal enumeration");
    chosen[a].first = part_ids[a];
  }
  auto rec = [&](auto& self, std::size_t a) -> void {
    if (a == part_ids.size()) {
      fn(transversal_minor(g, p, chosen), chosen);
      return;
    }
    const auto& part = p.parts[part_ids[a]];
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << part.size()); ++mask) {
      chosen[a].second.clear();
      for (std::size_t b = 0; b < part.size(); ++b)
        if (mask >> b & 1U) chosen[a].second.push_back(part[b]);
      self(self, a + 1);
    }
  };
  rec(rec, 0);
}

/// Every vertex takes the color of its part.
inline Coloring lift_quotient_coloring(const OrderedGraph& g, const RMPartition& p, const Coloring& qc) {
  const auto q = quotient(g, p);
  if (!verify_coloring(q, qc)) throw std::invalid_argument("quotient coloring is not proper");
  std::vector<int> c(g.size());
  for (std::size_t i = 0; i < p.size(); ++i)
    for (auto v : p.parts[i]) c[v] = qc.colors[i];
  Coloring out(std::move(c));
  require_proper(g, out, "lift_quotient_coloring");
  return out;
}

inline bool is_forest(const OrderedGraph& g) {
  return g.edge_count() + connected_components(g).size() == g.size();
}

/// Random graph with a valid ordered RMP: random interval parts, and every
/// vertex of a later part either sees all of an earlier part or none of it.
inline std::pair<OrderedGraph, RMPartition> random_rmp_instance(std::size_t n, double p, std::uint64_t seed) {
  if (n == 0) throw std::invalid_argument("graph must have a vertex");
  std::mt19937_64 rng(seed);
  std::vector<std::size_t> bounds{0};
  for (std::size_t v = 1; v < n; ++v)
    if (bernoulli(rng, 0.5)) bounds.push_back(v);
  bounds.push_back(n);
  const auto rp = RMPartition::from_intervals(IntervalPartition(bounds));
  OrderedGraph g(n);
  for (std::size_t j = 1; j < rp.size(); ++j)
    for (auto y : rp.parts[j])
      for (std::size_t i = 0; i < j; ++i)
        if (bernoulli(rng, p))
          for (auto x : rp.parts[i]) g.add_edge(x, y);
  return {std::move(g), rp};
}

// ---------------------------------------------------------------------------
// Recurrences. Both saturate at UINT64_MAX.

namespace detail {
inline std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) {
  return a > std::numeric_limits<std::uint64_t>::max() - b ? std::numeric_limits<std::uint64_t>::max() : a + b;
}

inline std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a) return std::numeric_limits<std::uint64_t>::max();
  return a * b;
}
}  // namespace detail

/// phi(x, 1) = phi(1, y) = 1; phi(w, h) = phi(w-1, h) (phi(w, h-1) + 1) + 1.
inline std::uint64_t phi_h(std::uint64_t w, std::uint64_t h) {
  if (w < 1 || h < 1) throw std::invalid_argument("phi_h needs w, h >= 1");
  std::vector<std::vector<std::uint64_t>> t(w + 1, std::vector<std::uint64_t>(h + 1, 1));
  for (std::uint64_t a = 2; a <= w; ++a)
    for (std::uint64_t b = 2; b <= h; ++b)
      t[a][b] = detail::sat_add(detail::sat_mul(t[a - 1][b], detail::sat_add(t[a][b - 1], 1)), 1);
  return t[w][h];
}

inline std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  std::vector<std::uint64_t> row(k + 1, 0);
  row[0] = 1;
  for (std::uint64_t i = 1; i <= n; ++i)
    for (std::uint64_t j = std::min(i, k); j >= 1; --j) row[j] = detail::sat_add(row[j], row[j - 1]);
  return row[k];
}

/// phi(w, 1) = 0; phi(1, d) = 1 for d >= 2; phi(w, d) = phi(w-1, d) +
/// phi(w, d-1) + 1. Since phi + 1 follows Pascal's rule with boundary
/// values 1 and 2, phi + 1 <= 2 C(w+d-2, d-1); this is checked. The sharper
/// phi - 1 <= C(w+d-2, d-1) fails from (3, 3) on, where phi = 8.
inline std::uint64_t phi_amf(std::uint64_t w, std::uint64_t d) {
  if (w < 1 || d < 1) throw std::invalid_argument("phi_amf needs w, d >= 1");
  std::vector<std::vector<std::uint64_t>> t(w + 1, std::vector<std::uint64_t>(d + 1, 0));
  for (std::uint64_t b = 2; b <= d; ++b) t[1][b] = 1;
  for (std::uint64_t a = 2; a <= w; ++a)
    for (std::uint64_t b = 2; b <= d; ++b) t[a][b] = detail::sat_add(detail::sat_add(t[a - 1][b], t[a][b - 1]), 1);
  const auto v = t[w][d];
  const auto cap = binomial(w + d - 2, d - 1);
  if (v != std::numeric_limits<std::uint64_t>::max() && cap < std::numeric_limits<std::uint64_t>::max() / 2 &&
      v + 1 > 2 * cap)
    throw VerificationFailure("phi_amf exceeds its binomial bound");
  return v;
}

// ---------------------------------------------------------------------------
// Pair almost-mixed-freeness

struct PairAmf {
  bool amf = true;
  bool vacuous = false;                        // fewer parts than d: no coarsening exists
  std::optional<std::vector<std::size_t>> witness;  // group boundaries (part indices) of a d-almost mixed minor
};

/// Whether no coarsening of the ordered partition into d consecutive groups
/// has all off-diagonal zones mixed in the adjacency matrix.
inline PairAmf is_pair_amf(const OrderedGraph& g, const RMPartition& p, std::size_t d) {
  if (d < 1) throw std::invalid_argument("d must be >= 1");
  if (!p.ordered) throw std::invalid_argument("pair almost-mixed-freeness needs an ordered partition");
  detail::require_partition(g, p);
  const auto iv = p.intervals();
  const std::size_t k = p.size();
  PairAmf out;
  if (k < d) {
    out.vacuous = true;
    return out;
  }
  const TriMatrix m = adjacency_matrix(g);
  const auto& pb = iv.bounds();
  auto zone = [&](const std::vector<std::size_t>& b, std::size_t i) { return Interval{pb[b[i]], pb[b[i + 1]]}; };
  // Groups are b[i]..b[i+1]-1 in part indices; min group size 1.
  std::vector<std::size_t> b{0};
  auto accept = [&](const std::vector<std::size_t>& bs, std::size_t j) {
    for (std::size_t i = 0; i < j; ++i)
      if (!zone_mixed(m, zone(bs, i), zone(bs, j)) || !zone_mixed(m, zone(bs, j), zone(bs, i))) return false;
    return true;
  };
  detail::compose(k, d, 1, b, accept, [&](const std::vector<std::size_t>& bs) {
    out.amf = false;
    out.witness = bs;
    return true;
  });
  return out;
}

struct AmfQuotientReport {
  std::size_t omega_g = 0;
  std::size_t omega_quotient = 0;
  std::uint64_t phi = 0;    // phi_amf(omega_g, d)
  std::uint64_t power = 0;  // omega_g^d, saturating
  bool bound_holds = true;
};

/// omega(G/P) <= min(phi_amf(omega(G), d), omega(G)^d) for a pair almost
/// mixed free ordered RMP. With `strict`, a violation throws.
inline AmfQuotientReport check_amf_quotient_bound(const OrderedGraph& g, const RMPartition& p, std::size_t d,
                                                  bool strict = true) {
  require_rmp(g, p);
  if (!is_pair_amf(g, p, d).amf) throw std::invalid_argument("partition is not pair almost mixed free");
  AmfQuotientReport r;
  r.omega_g = g.size() == 0 ? 0 : clique_number(g);
  r.omega_quotient = g.size() == 0 ? 0 : clique_number(quotient(g, p));
  r.phi = phi_amf(std::max<std::size_t>(r.omega_g, 1), d);
  r.power = 1;
  for (std::size_t i = 0; i < d; ++i) r.power = detail::sat_mul(r.power, r.omega_g);
  r.bound_holds = r.omega_quotient <= r.phi && r.omega_quotient <= r.power;
  if (strict && !r.bound_holds) throw VerificationFailure("quotient clique bound violated");
  return r;
}

}  // namespace twwchi
