#pragma once

// JSON reports. Keys keep insertion order and every document carries
// "schema": 1, so equal inputs give byte-identical output.

#include <string>
#include <vector>

#include "json.hpp"
#include "twwchi/amf_color.hpp"
#include "twwchi/delayed_tree.hpp"
#include "twwchi/graph.hpp"
#include "twwchi/mixed_ext.hpp"
#include "twwchi/rmp.hpp"
#include "twwchi/subst_tree.hpp"
#include "twwchi/verify.hpp"

namespace twwchi {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

inline Json json_document(const std::string& kind) {
  Json j;
  j["schema"] = kSchemaVersion;
  j["kind"] = kind;
  return j;
}

inline Json edges_json(const std::vector<Edge>& es) {
  Json a = Json::array();
  for (auto [u, v] : es) a.push_back({u, v});
  return a;
}

inline Json graph_json(const OrderedGraph& g) {
  Json j;
  j["n"] = g.size();
  j["edges"] = edges_json(g.edges());
  return j;
}

/// Nodes with their intervals; g_edges join grandchild node ids.
inline Json delayed_tree_json(const DelayedTree& t, const NodeGraphs& ng) {
  Json j = json_document("delayed_tree");
  j["n"] = t.n;
  j["rule"] = to_string(t.rule);
  j["depth"] = t.depth();
  Json nodes = Json::array();
  for (std::size_t x = 0; x < t.nodes.size(); ++x) {
    const auto& nd = t.nodes[x];
    const auto gc = t.grandchildren(static_cast<int>(x));
    Json e = Json::array();
    for (auto [a, b] : ng[x].edges()) e.push_back({gc[a], gc[b]});
    nodes.push_back({{"id", x},
                     {"depth", nd.depth},
                     {"lo", nd.interval.lo},
                     {"hi", nd.interval.hi},
                     {"parent", nd.parent},
                     {"children", nd.children},
                     {"g_edges", std::move(e)}});
  }
  j["nodes"] = std::move(nodes);
  return j;
}

/// Same layout as the delayed dump; g_edges join child node ids and lo/hi
/// span the leaves below the node.
inline Json subst_tree_json(const SubstTree& t) {
  Json j = json_document("subst_tree");
  j["n"] = t.leaf_count();
  j["root"] = t.root();
  Json nodes = Json::array();
  std::vector<int> depth(static_cast<std::size_t>(t.size()), 0);
  for (int x : t.preorder()) {
    if (t.parent(x) != -1) depth[x] = depth[t.parent(x)] + 1;
    const auto& ch = t.children(x);
    Json e = Json::array();
    for (auto [a, b] : t.graph(x).edges()) e.push_back({ch[a], ch[b]});
    const auto lo = t.first_leaf(x);
    Json node{{"id", x},
              {"depth", depth[x]},
              {"lo", lo},
              {"hi", lo + t.leaf_span(x)},
              {"parent", t.parent(x)},
              {"children", ch},
              {"g_edges", std::move(e)}};
    if (t.is_leaf(x)) node["vertex"] = t.vertex_of(x);
    nodes.push_back(std::move(node));
  }
  j["nodes"] = std::move(nodes);
  return j;
}

inline Json coloring_json(const OrderedGraph& g, const Coloring& c, const std::string& method) {
  Json j = json_document("coloring");
  j["method"] = method;
  j["n"] = g.size();
  j["omega"] = clique_number(g);
  j["palette"] = c.palette_size;
  j["proper"] = verify_coloring(g, c);
  j["colors"] = c.colors;
  return j;
}

inline Json claim_json(const ClaimReport& r) {
  return {{"vacuous", r.vacuous}, {"sampled", r.sampled}, {"checked", r.checked}, {"failures", r.failures}};
}

inline Json amf_accounting_json(const AmfAccounting& a) {
  Json levels = Json::array();
  for (const auto& lv : a.levels)
    levels.push_back({{"d", lv.d},
                      {"node", lv.node},
                      {"k_local_modules", lv.k_local_modules},
                      {"mixed_pair_classes", lv.mixed_pair_classes},
                      {"palette", lv.palette}});
  Json j;
  j["levels"] = std::move(levels);
  j["total_palette"] = a.total_palette;
  j["omega"] = a.omega;
  j["proper"] = a.proper;
  j["fallbacks"] = a.fallbacks;
  j["endpoint_classes"] = a.endpoint_classes;
  j["pieces"] = a.pieces;
  j["reduction"] = claim_json(a.reduction);
  j["pair_2d"] = claim_json(a.pair_2d);
  return j;
}

inline Json mixed_ext_json(const MixedExtColoring& r) {
  Json levels = Json::array();
  for (const auto& lv : r.levels)
    levels.push_back({{"omega", lv.omega},
                      {"n", lv.n},
                      {"parts", lv.parts},
                      {"inside_palette", lv.inside_palette},
                      {"inner_palette", lv.inner_palette},
                      {"final_palette", lv.final_palette},
                      {"palette", lv.palette},
                      {"c", lv.c}});
  Json j;
  j["levels"] = std::move(levels);
  j["bound_holds"] = r.bound_holds;
  j["memo_hits"] = r.memo_hits;
  return j;
}

inline Json quotient_report_json(const AmfQuotientReport& r) {
  return {{"omega_g", r.omega_g},
          {"omega_quotient", r.omega_quotient},
          {"phi", r.phi},
          {"power", r.power},
          {"bound_holds", r.bound_holds}};
}

inline Json suite_json(const SuiteResult& r) {
  Json j = json_document("verify");
  j["suite"] = r.suite;
  j["passed"] = r.passed();
  j["max_n"] = r.max_n;
  j["samples"] = r.samples;
  j["seed"] = r.seed;
  j["checked"] = r.checked;
  j["failures"] = r.failures;
  j["first_failure"] = r.first_failure;
  Json notes = Json::object();
  for (const auto& [k, v] : r.notes) notes[k] = v;
  j["notes"] = std::move(notes);
  return j;
}

}  // namespace twwchi
