#pragma once

// Verification suites: each one checks a structural property of the library
// over exhaustive small inputs and seeded random samples, sharded over
// worker threads and merged in a fixed order.

#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "twwchi/amf_color.hpp"
#include "twwchi/delayed_tree.hpp"
#include "twwchi/graph.hpp"
#include "twwchi/matrix.hpp"
#include "twwchi/mixed_ext.hpp"
#include "twwchi/oracles.hpp"
#include "twwchi/parallel.hpp"
#include "twwchi/rmp.hpp"
#include "twwchi/subst_color.hpp"
#include "twwchi/subst_tree.hpp"

namespace twwchi {

struct SuiteOptions {
  std::size_t max_n = 0;    // 0: suite default
  std::size_t samples = 0;  // 0: suite default
  std::uint64_t seed = 0;
  unsigned jobs = 1;        // 0: one per core
};

struct SuiteResult {
  std::string suite;
  std::size_t max_n = 0;
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  std::size_t checked = 0;
  std::size_t failures = 0;
  std::string first_failure;
  std::vector<std::pair<std::string, std::string>> notes;
  bool passed() const { return failures == 0 && checked > 0; }
};

namespace detail {

struct Tally {
  std::size_t checked = 0;
  std::size_t failures = 0;
  std::string first;
  std::map<std::string, std::size_t> counters;

  void check(bool ok, const std::function<std::string()>& what) {
    ++checked;
    if (ok) return;
    if (failures++ == 0) first = what();
  }

  void merge(const Tally& o) {
    checked += o.checked;
    if (o.failures > 0 && failures == 0) first = o.first;
    failures += o.failures;
    for (const auto& [k, v] : o.counters) counters[k] += v;
  }
};

inline std::uint64_t item_seed(std::uint64_t seed, std::size_t i) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (i + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

inline TriMatrix matrix_from_code(std::size_t rows, std::size_t cols, std::uint64_t code, unsigned base) {
  TriMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) {
      m.set(i, j, static_cast<Tri>(code % base));
      code /= base;
    }
  return m;
}

inline TriMatrix random_matrix(std::size_t rows, std::size_t cols, bool stars, std::mt19937_64& rng) {
  TriMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) {
      const auto r = uniform_below(rng, stars ? 10 : 2);
      m.set(i, j, r == 9 ? Tri::Star : static_cast<Tri>(r % 2));
    }
  return m;
}

inline std::string graph_label(const OrderedGraph& g) {
  std::ostringstream out;
  out << "n=" << g.size() << " edges=";
  for (auto [u, v] : g.edges()) out << u << '-' << v << ' ';
  return out.str();
}

inline std::uint64_t ipow(std::uint64_t b, std::size_t e) {
  std::uint64_t r = 1;
  while (e-- > 0) r *= b;
  return r;
}

// Runs `items` work items in parallel and merges their tallies in order.
inline Tally run_items(std::size_t items, const SuiteOptions& o, const std::function<Tally(std::size_t)>& fn) {
  auto parts = parallel_map<Tally>(items, o.jobs, fn);
  Tally all;
  for (const auto& p : parts) all.merge(p);
  return all;
}

// All graphs on n <= max_n vertices, in chunks; fn sees each graph.
inline Tally exhaustive_graphs(std::size_t max_n, const SuiteOptions& o,
                               const std::function<void(const OrderedGraph&, Tally&)>& fn) {
  constexpr std::uint64_t chunk = 2048;
  std::vector<std::pair<std::size_t, std::uint64_t>> jobs;
  for (std::size_t n = 1; n <= max_n; ++n) {
    const std::uint64_t total = std::uint64_t{1} << pair_count(n);
    for (std::uint64_t s = 0; s < total; s += chunk) jobs.emplace_back(n, s);
  }
  return run_items(jobs.size(), o, [&](std::size_t i) {
    Tally t;
    const auto [n, start] = jobs[i];
    const std::uint64_t total = std::uint64_t{1} << pair_count(n);
    for (std::uint64_t mask = start; mask < std::min(total, start + chunk); ++mask) fn(graph_from_mask(n, mask), t);
    return t;
  });
}

inline OrderedGraph random_graph(std::mt19937_64& rng, std::size_t min_n, std::size_t max_n) {
  const std::size_t n = min_n + uniform_below(rng, max_n - min_n + 1);
  return gnp_graph(n, 0.1 * static_cast<double>(1 + uniform_below(rng, 9)), rng());
}

// --- suites ----------------------------------------------------------------

inline Tally suite_roundtrip(const SuiteOptions& o, std::size_t max_n, std::size_t samples) {
  auto check = [](const OrderedGraph& g, Tally& t) {
    for (auto rule : {SplitRule::Midpoint, SplitRule::FirstVertex}) {
      auto [tree, ng] = build_delayed_tree(g, rule);
      t.check(realize_delayed(tree, ng) == g, [&] { return "round trip failed on " + graph_label(g); });
    }
  };
  Tally all = exhaustive_graphs(std::min<std::size_t>(max_n, 6), o, check);
  all.merge(run_items(samples, o, [&](std::size_t i) {
    std::mt19937_64 rng(item_seed(o.seed, i));
    Tally t;
    check(random_graph(rng, 1, 30), t);
    return t;
  }));
  return all;
}

inline Tally suite_corner(const SuiteOptions& o, std::size_t max_n, std::size_t samples) {
  auto check = [](const TriMatrix& m, Tally& t) {
    const bool mixed = classify(m) == ZoneKind::Mixed;
    const auto k = find_corner(m);
    t.check(mixed == k.has_value() && (!k || is_corner(m, *k)), [&] { return "corner mismatch on\n" + m.dump(); });
  };
  std::vector<std::pair<std::size_t, std::size_t>> shapes;
  for (std::size_t r = 1; r <= std::min<std::size_t>(max_n, 3); ++r)
    for (std::size_t c = 1; c <= std::min<std::size_t>(max_n, 3); ++c) shapes.emplace_back(r, c);
  Tally all = run_items(shapes.size(), o, [&](std::size_t i) {
    Tally t;
    const auto [r, c] = shapes[i];
    for (std::uint64_t code = 0; code < ipow(3, r * c); ++code) check(matrix_from_code(r, c, code, 3), t);
    return t;
  });
  all.merge(run_items(samples, o, [&](std::size_t i) {
    std::mt19937_64 rng(item_seed(o.seed, i));
    Tally t;
    check(random_matrix(2 + uniform_below(rng, 6), 2 + uniform_below(rng, 6), true, rng), t);
    return t;
  }));
  return all;
}

inline std::vector<Division> two_by_two_divisions(std::size_t n) {
  std::vector<Division> out;
  for (std::size_t r = 1; r < n; ++r)
    for (std::size_t c = 1; c < n; ++c)
      out.push_back({IntervalPartition::from_cuts(n, {r}), IntervalPartition::from_cuts(n, {c})});
  return out;
}

// Exhaustive over *-free n x n matrices (n <= 4) with 2x2 divisions.
inline Tally suite_division_keeps_mixed(const SuiteOptions& o, std::size_t n, bool deletion) {
  n = std::min<std::size_t>(std::max<std::size_t>(n, 2), 4);
  const auto divisions = two_by_two_divisions(n);
  const std::uint64_t total = std::uint64_t{1} << (n * n);
  constexpr std::uint64_t chunk = 4096;
  return run_items(static_cast<std::size_t>((total + chunk - 1) / chunk), o, [&](std::size_t i) {
    Tally t;
    for (std::uint64_t code = i * chunk; code < std::min(total, (i + 1) * chunk); ++code) {
      const auto m = matrix_from_code(n, n, code, 2);
      const bool mixed = classify(m) == ZoneKind::Mixed;
      for (const auto& d : divisions) {
        if (!deletion) {
          t.check(classify(contract(m, d)) != ZoneKind::Mixed || mixed,
                  [&] { return "contraction mixed but source not on\n" + m.dump() + to_string(d); });
          continue;
        }
        if (count_mixed_zones(m, d) != 0) continue;
        for (const auto& del : {horizontal_deletion(m, d), vertical_deletion(m, d)})
          t.check(classify(del) != ZoneKind::Mixed || mixed,
                  [&] { return "deletion mixed but source not on\n" + m.dump() + to_string(d); });
      }
    }
    return t;
  });
}

inline Tally suite_fourcorner(const SuiteOptions& o, std::size_t samples) {
  auto check = [](const TriMatrix& m, const Division& d, Tally& t) {
    if (count_mixed_zones(m, d) != 4) return;
    const auto k = find_spanning_corner(m, d);
    const bool spans = d.rows.part_of(k.r1) != d.rows.part_of(k.r2) && d.cols.part_of(k.c1) != d.cols.part_of(k.c2);
    t.check(spans && is_corner(m, k), [&] { return "spanning corner failed on\n" + m.dump() + to_string(d); });
  };
  const Division d4{IntervalPartition::from_cuts(4, {2}), IntervalPartition::from_cuts(4, {2})};
  constexpr std::uint64_t chunk = 4096;
  Tally all = run_items(16, o, [&](std::size_t i) {
    Tally t;
    for (std::uint64_t code = i * chunk; code < (i + 1) * chunk; ++code) check(matrix_from_code(4, 4, code, 2), d4, t);
    return t;
  });
  all.merge(run_items(samples, o, [&](std::size_t i) {
    std::mt19937_64 rng(item_seed(o.seed, i));
    Tally t;
    const std::size_t r = 4 + uniform_below(rng, 4), c = 4 + uniform_below(rng, 4);
    const Division d{IntervalPartition::from_cuts(r, {2 + uniform_below(rng, r - 3)}),
                     IntervalPartition::from_cuts(c, {2 + uniform_below(rng, c - 3)})};
    check(random_matrix(r, c, true, rng), d, t);
    return t;
  }));
  return all;
}

inline Tally suite_oddeven(const SuiteOptions& o, std::size_t max_n, std::size_t samples) {
  auto check = [](const OrderedGraph& g, Tally& t) {
    auto [tree, ng] = build_delayed_tree(g);
    auto [go, ge] = odd_even_split(tree, ng);
    const auto Go = realize_delayed(tree, go), Ge = realize_delayed(tree, ge);
    t.check(edge_union_cover(g, {Go, Ge}) && Go.edge_count() + Ge.edge_count() == g.edge_count(),
            [&] { return "odd/even edges do not partition " + graph_label(g); });
    bool modules = true;
    for (const auto& nd : tree.nodes)
      modules = modules && is_module(nd.depth % 2 == 1 ? Go : Ge, interval_bitset(g.size(), nd.interval));
    t.check(modules, [&] { return "node interval is not a module of its side on " + graph_label(g); });
    for (auto p : {Parity::Odd, Parity::Even}) {
      const auto r = restrict_parity(tree, ng, p);
      t.check(realize_subst(delayed_to_subst_tree(tree, r, p)) == realize_delayed(tree, r),
              [&] { return std::string("substitution tree differs on the ") + to_string(p) + " side of " + graph_label(g); });
    }
  };
  Tally all = exhaustive_graphs(std::min<std::size_t>(max_n, 6), o, check);
  all.merge(run_items(samples, o, [&](std::size_t i) {
    std::mt19937_64 rng(item_seed(o.seed, i));
    Tally t;
    check(random_graph(rng, 1, 20), t);
    return t;
  }));
  return all;
}

inline Tally suite_depth(const SuiteOptions& o, std::size_t max_n, std::size_t samples) {
  return run_items(samples, o, [&](std::size_t i) {
    std::mt19937_64 rng(item_seed(o.seed, i));
    Tally t;
    const auto tree = random_subst_tree(1 + uniform_below(rng, max_n), 0.1 * static_cast<double>(uniform_below(rng, 10)), false, rng());
    const auto depth = static_cast<std::size_t>(depth_info(tree).tree_depth);
    const auto w = clique_witness(tree);
    t.check(w.size() == depth + 1 && is_clique(realize_subst(tree), w) && omega_dp(tree)[tree.root()] >= depth + 1,
            [&] { return "clique witness of size " + std::to_string(w.size()) + " at depth " + std::to_string(depth); });
    return t;
  });
}

inline Tally suite_inddec(const SuiteOptions& o, std::size_t max_n, std::size_t samples) {
  return run_items(samples, o, [&](std::size_t i) {
    std::mt19937_64 rng(item_seed(o.seed, i));
    Tally t;
    const auto tree = random_subst_tree(1 + uniform_below(rng, max_n), 0.1 * static_cast<double>(uniform_below(rng, 10)), true, rng());
    std::vector<Coloring> pal(static_cast<std::size_t>(tree.size()));
    int max_pal = 1;
    for (int x : tree.preorder())
      if (!tree.is_leaf(x)) {
        pal[x] = exact_chromatic_number(tree.graph(x)).coloring;
        max_pal = std::max(max_pal, pal[x].palette_size);
      }
    const auto c = color_independent(tree, pal);
    const int bound = (depth_info(tree).tree_depth + 1) * max_pal;
    t.check(verify_coloring(realize_subst(tree), c) && c.palette_size <= bound,
            [&] { return "palette " + std::to_string(c.palette_size) + " over bound " + std::to_string(bound); });
    return t;
  });
}

inline Tally suite_subst(const SuiteOptions& o, std::size_t max_n, std::size_t samples) {
  const auto base = graph_colorer([](const OrderedGraph& g) { return exact_chromatic_number(g).coloring; });
  return run_items(samples, o, [&](std::size_t i) {
    std::mt19937_64 rng(item_seed(o.seed, i));
    Tally t;
    const auto tree = random_cotree(1 + uniform_below(rng, max_n), rng());
    const auto r = color_substitution(tree, base, 1);
    const auto budget = saturating_pow(r.omega, 5);
    t.check(verify_coloring(realize_subst(tree), r.coloring) && static_cast<std::uint64_t>(r.coloring.palette_size) <= budget,
            [&] { return "palette " + std::to_string(r.coloring.palette_size) + " over omega^5 = " + std::to_string(budget); });
    return t;
  });
}

inline Tally suite_rmp(const SuiteOptions& o, std::size_t max_n, std::size_t samples) {
  Tally all;
  const auto s = shift2_graph(5);
  const auto p = RMPartition::from_intervals(shift2_parts(5));
  all.check(validate_rmp(s, p).ok, [] { return std::string("shift graph partition rejected"); });
  all.check(quotient(s, p) == complete_graph(4), [] { return std::string("shift graph quotient is not K4"); });
  std::set<std::vector<Edge>> seen;
  bool forests = true;
  for_each_transversal_minor(s, p, {0, 1, 2, 3}, [&](const OrderedGraph& m, const auto& chosen) {
    seen.insert(m.edges());
    bool single = true;
    std::vector<Vertex> vs;
    for (const auto& [idx, ws] : chosen) {
      single = single && ws.size() == 1;
      if (!ws.empty()) vs.push_back(ws[0]);
    }
    if (single) forests = forests && is_forest(induced_subgraph(s, vs));
  });
  all.check(forests, [] { return std::string("a one-vertex transversal is not a forest"); });
  all.check(seen.size() == 64, [&] { return std::to_string(seen.size()) + " of 64 transversal minors found"; });
  all.merge(run_items(samples, o, [&](std::size_t i) {
    std::mt19937_64 rng(item_seed(o.seed, i));
    Tally t;
    auto [g, q] = random_rmp_instance(1 + uniform_below(rng, max_n), 0.5, rng());
    std::vector<std::pair<std::size_t, std::vector<Vertex>>> full;
    for (std::size_t k = 0; k < q.size(); ++k) full.emplace_back(k, q.parts[k]);
    const auto quo = quotient(g, q);
    t.check(quo == transversal_minor(g, q, full), [&] { return "quotient differs from full transversal minor"; });
    const auto lifted = lift_quotient_coloring(g, q, dsatur_coloring(quo));
    t.check(verify_coloring(g, lifted), [&] { return "lifted coloring improper on " + graph_label(g); });
    return t;
  }));
  return all;
}

inline Tally suite_amfquotient(const SuiteOptions& o, std::size_t max_n, std::size_t samples) {
  return run_items(samples, o, [&](std::size_t i) {
    std::mt19937_64 rng(item_seed(o.seed, i));
    Tally t;
    auto [g, p] = random_rmp_instance(1 + uniform_below(rng, max_n), 0.3 + 0.1 * static_cast<double>(uniform_below(rng, 6)), rng());
    const std::size_t d = 1 + uniform_below(rng, 3);
    if (!is_pair_amf(g, p, d).amf) return t;
    ++t.counters["valid_instances"];
    const auto r = check_amf_quotient_bound(g, p, d, false);
    t.check(r.bound_holds, [&] {
      return "omega(quotient) = " + std::to_string(r.omega_quotient) + " exceeds bound on " + graph_label(g);
    });
    return t;
  });
}

// color_amf with claim checks on natural orders at their least free d.
inline Tally suite_claims(const SuiteOptions& o, std::size_t max_n, std::size_t samples, bool reduction) {
  return run_items(samples, o, [&](std::size_t i) {
    std::mt19937_64 rng(item_seed(o.seed, i));
    Tally t;
    const auto g = random_graph(rng, 3, max_n);
    std::size_t d = 2;
    while (find_almost_mixed_minor(adjacency_matrix(g), d)) ++d;
    AmfOptions opts;
    opts.check_claims = true;
    opts.seed = item_seed(o.seed, i);
    const auto r = color_amf(certify_amf(g, d), opts);
    const auto& rep = reduction ? r.accounting.reduction : r.accounting.pair_2d;
    ++t.counters["graphs"];
    t.counters["pieces"] += r.accounting.pieces;
    t.counters["fallbacks"] += r.accounting.fallbacks;
    if (rep.sampled) ++t.counters["sampled_graphs"];
    t.checked += rep.checked;
    if (rep.failures > 0 || r.accounting.fallbacks > 0 || !r.accounting.proper) {
      if (t.failures == 0)
        t.first = std::to_string(rep.failures) + " claim failures, " + std::to_string(r.accounting.fallbacks) +
                  " fallbacks at d = " + std::to_string(d) + " on " + graph_label(g);
      t.failures += std::max<std::size_t>(rep.failures, 1);
    }
    return t;
  });
}

inline Tally suite_mixedext(const SuiteOptions& o, std::size_t max_n, std::size_t samples) {
  return run_items(samples, o, [&](std::size_t i) {
    std::mt19937_64 rng(item_seed(o.seed, i));
    Tally t;
    const auto g = random_graph(rng, 1, max_n);
    const auto p = greedy_omega_intervals(g);
    t.check(!check_greedy_certificate(g, p), [&] { return "greedy certificate fails on " + graph_label(g); });
    const auto r = color_mixed_extension(g, [](const OrderedGraph& h) { return dsatur_coloring(h); });
    t.check(verify_coloring(g, r.coloring) && r.bound_holds, [&] { return "accounting fails on " + graph_label(g); });
    return t;
  });
}

inline Tally suite_minparams(const SuiteOptions& o, std::size_t max_n) {
  return exhaustive_graphs(std::min<std::size_t>(max_n, 6), o, [](const OrderedGraph& g, Tally& t) {
    const auto mf = min_mixed_free(g).d, amf = min_amf(g).d;
    t.check(mf <= amf && amf <= 2 * mf, [&] {
      return "min mixed free " + std::to_string(mf) + ", min amf " + std::to_string(amf) + " on " + graph_label(g);
    });
    if (amf == 2) {
      ++t.counters["two_amf_graphs"];
      t.check(is_p4_free(g), [&] { return "2-almost-mixed-free graph with an induced P4: " + graph_label(g); });
    }
  });
}

}  // namespace detail

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"roundtrip", "corner",  "contract",    "delete",    "fourcorner",
                                              "oddeven",   "depth",   "inddec",      "subst",     "rmp",
                                              "amfquotient", "reduction", "twodclaim", "mixedext", "minparams"};
  return names;
}

/// Default (max_n, samples) of a suite.
inline std::pair<std::size_t, std::size_t> suite_defaults(const std::string& name) {
  static const std::map<std::string, std::pair<std::size_t, std::size_t>> defaults{
      {"roundtrip", {6, 10000}}, {"corner", {3, 1000}},   {"contract", {4, 0}},      {"delete", {4, 0}},
      {"fourcorner", {4, 1000}}, {"oddeven", {6, 1000}},  {"depth", {20, 1000}},     {"inddec", {20, 1000}},
      {"subst", {30, 200}},     {"rmp", {12, 1000}},     {"amfquotient", {10, 2000}}, {"reduction", {12, 200}},
      {"twodclaim", {12, 200}}, {"mixedext", {20, 10000}}, {"minparams", {5, 0}}};
  auto it = defaults.find(name);
  if (it == defaults.end()) throw std::invalid_argument("unknown suite: " + name);
  return it->second;
}

inline SuiteResult run_suite(const std::string& name, const SuiteOptions& opts) {
  const auto [dn, ds] = suite_defaults(name);
  const std::size_t n = opts.max_n ? opts.max_n : dn;
  const std::size_t s = opts.samples ? opts.samples : ds;
  detail::Tally t;
  if (name == "roundtrip") t = detail::suite_roundtrip(opts, n, s);
  else if (name == "corner") t = detail::suite_corner(opts, n, s);
  else if (name == "contract") t = detail::suite_division_keeps_mixed(opts, n, false);
  else if (name == "delete") t = detail::suite_division_keeps_mixed(opts, n, true);
  else if (name == "fourcorner") t = detail::suite_fourcorner(opts, s);
  else if (name == "oddeven") t = detail::suite_oddeven(opts, n, s);
  else if (name == "depth") t = detail::suite_depth(opts, n, s);
  else if (name == "inddec") t = detail::suite_inddec(opts, n, s);
  else if (name == "subst") t = detail::suite_subst(opts, n, s);
  else if (name == "rmp") t = detail::suite_rmp(opts, n, s);
  else if (name == "amfquotient") t = detail::suite_amfquotient(opts, n, s);
  else if (name == "reduction") t = detail::suite_claims(opts, n, s, true);
  else if (name == "twodclaim") t = detail::suite_claims(opts, n, s, false);
  else if (name == "mixedext") t = detail::suite_mixedext(opts, n, s);
  else if (name == "minparams") t = detail::suite_minparams(opts, n);
  SuiteResult r;
  r.suite = name;
  r.max_n = n;
  r.samples = s;
  r.seed = opts.seed;
  r.checked = t.checked;
  r.failures = t.failures;
  r.first_failure = t.first;
  for (const auto& [k, v] : t.counters) r.notes.emplace_back(k, std::to_string(v));
  return r;
}

}  // namespace twwchi
