// twwchi: generate ordered graphs, dump their decompositions, color them and
// run the verification suites.
//
// Exit codes: 0 success, 1 verification or contract failure, 2 usage or
// parse error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "twwchi/amf_color.hpp"
#include "twwchi/delayed_tree.hpp"
#include "twwchi/io.hpp"
#include "twwchi/mixed_ext.hpp"
#include "twwchi/oracles.hpp"
#include "twwchi/rmp.hpp"
#include "twwchi/subst_color.hpp"
#include "twwchi/verify.hpp"

namespace {

using namespace twwchi;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Failure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::uint64_t env_seed() {
  const char* s = std::getenv("TWWCHI_SEED");
  if (s == nullptr || *s == '\0') return 0;
  try {
    std::size_t used = 0;
    const auto v = std::stoull(s, &used);
    if (used != std::string(s).size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw UsageError(std::string("TWWCHI_SEED is not an unsigned integer: ") + s);
  }
}

OrderedGraph load_graph(const std::string& path) {
  if (path == "-") return read_graph(std::cin);
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open " + path);
  return read_graph(in);
}

void emit_text(const std::string& text, const std::string& out) {
  if (out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(out);
  if (!f) throw UsageError("cannot write " + out);
  f << text;
}

void emit_json(const Json& j) { std::cout << j.dump(2) << '\n'; }

std::size_t least_amf_d(const OrderedGraph& g) {
  const auto m = adjacency_matrix(g);
  std::size_t d = 2;
  while (find_almost_mixed_minor(m, d)) ++d;
  return d;
}

// --- gen ---------------------------------------------------------------------

struct GenArgs {
  std::string family;
  std::size_t n = 0;
  double p = 0.5;
  std::optional<std::uint64_t> seed;
  std::string out;
};

int cmd_gen(const GenArgs& a) {
  GeneratorParams params;
  params.n = a.n;
  params.p = a.p;
  params.seed = a.seed.value_or(env_seed());
  emit_text(to_text(generate(a.family, params)), a.out);
  return 0;
}

// --- decompose ---------------------------------------------------------------

struct DecomposeArgs {
  std::string file;
  std::string kind = "delayed";
  std::string rule = "midpoint";
  bool json = false;
};

void print_tree_tsv(const Json& doc) {
  std::cout << "id\tdepth\tlo\thi\tparent\tchildren\tg_edges\n";
  for (const auto& nd : doc["nodes"]) {
    std::cout << nd["id"] << '\t' << nd["depth"] << '\t' << nd["lo"] << '\t' << nd["hi"] << '\t' << nd["parent"]
              << '\t' << nd["children"].dump() << '\t' << nd["g_edges"].dump() << '\n';
  }
}

int cmd_decompose(const DecomposeArgs& a) {
  const auto g = load_graph(a.file);
  Json doc;
  if (a.kind == "delayed") {
    const auto rule = a.rule == "first" ? SplitRule::FirstVertex : SplitRule::Midpoint;
    auto [t, ng] = build_delayed_tree(g, rule, true);
    doc = delayed_tree_json(t, ng);
  } else {
    doc = subst_tree_json(modular_decomposition(g));
  }
  if (a.json)
    emit_json(doc);
  else
    print_tree_tsv(doc);
  return 0;
}

// --- color -------------------------------------------------------------------

struct ColorArgs {
  std::string file;
  std::string method = "exact";
  std::optional<std::size_t> d;
  std::string partition;
  bool check_claims = false;
  bool strict = false;
  std::optional<std::uint64_t> seed;
  bool json = false;
};

int cmd_color(const ColorArgs& a) {
  const auto g = load_graph(a.file);
  Coloring c;
  Json extra;
  if (a.method == "exact") {
    c = exact_chromatic_number(g).coloring;
  } else if (a.method == "cograph") {
    if (!is_p4_free(g)) throw Failure("graph has an induced P4");
    c = color_cograph(g);
  } else if (a.method == "amf") {
    AmfOptions opts;
    opts.strict = a.strict;
    opts.check_claims = a.check_claims;
    opts.seed = a.seed.value_or(env_seed());
    const std::size_t d = a.d.value_or(least_amf_d(g));
    const auto r = a.strict ? color_amf(certify_amf(g, d), opts) : color_amf(g, d, opts);
    c = r.coloring;
    extra["d"] = d;
    extra["accounting"] = amf_accounting_json(r.accounting);
  } else if (a.method == "quotient") {
    if (a.partition.empty()) throw UsageError("--partition is required for the quotient method");
    const auto p = RMPartition::parse(a.partition);
    if (const auto chk = validate_rmp(g, p); !chk.ok) throw Failure("not a rightward module partition: " + chk.reason);
    const auto q = quotient(g, p);
    c = lift_quotient_coloring(g, p, exact_chromatic_number(q).coloring);
    extra["partition"] = to_string(p);
    extra["quotient"] = graph_json(q);
  } else if (a.method == "subst") {
    const auto t = modular_decomposition(g);
    const auto k = static_cast<unsigned>(a.d.value_or(1));
    const auto r = color_substitution(
        t, graph_colorer([](const OrderedGraph& h) { return exact_chromatic_number(h).coloring; }), k);
    c = r.coloring;
    extra["k"] = k;
    extra["budget"] = r.budget;
  } else {
    const auto r = color_mixed_extension(g, [](const OrderedGraph& h) { return exact_chromatic_number(h).coloring; });
    c = r.coloring;
    extra["accounting"] = mixed_ext_json(r);
  }
  if (!verify_coloring(g, c)) throw Failure("coloring is not proper");
  auto doc = coloring_json(g, c, a.method);
  for (auto it = extra.begin(); it != extra.end(); ++it) doc[it.key()] = it.value();
  if (a.json) {
    emit_json(doc);
  } else {
    std::cout << "palette\t" << c.palette_size << "\nomega\t" << doc["omega"] << "\ncolors";
    for (int x : c.colors) std::cout << '\t' << x;
    std::cout << '\n';
  }
  return 0;
}

// --- verify ------------------------------------------------------------------

struct VerifyArgs {
  std::string suite = "all";
  std::size_t max_n = 0;
  std::size_t samples = 0;
  std::optional<std::uint64_t> seed;
  unsigned jobs = 1;
  bool json = false;
};

int cmd_verify(const VerifyArgs& a) {
  std::vector<std::string> names;
  if (a.suite == "all") {
    names = suite_names();
  } else {
    try {
      suite_defaults(a.suite);
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
    names = {a.suite};
  }
  SuiteOptions o;
  o.max_n = a.max_n;
  o.samples = a.samples;
  o.seed = a.seed.value_or(env_seed());
  o.jobs = a.jobs;
  bool ok = true;
  Json results = Json::array();
  for (const auto& name : names) {
    const auto r = run_suite(name, o);
    ok = ok && r.passed();
    if (a.json) {
      results.push_back(suite_json(r));
      continue;
    }
    std::cout << (r.passed() ? "PASS" : "FAIL") << '\t' << r.suite << "\tchecked=" << r.checked
              << "\tfailures=" << r.failures;
    for (const auto& [k, v] : r.notes) std::cout << '\t' << k << '=' << v;
    std::cout << '\n';
    if (!r.first_failure.empty()) std::cout << "  first failure: " << r.first_failure << '\n';
  }
  if (a.json) emit_json(results.size() == 1 ? results[0] : Json{{"schema", kSchemaVersion}, {"kind", "verify"}, {"suites", results}});
  return ok ? 0 : 1;
}

// --- quotient ----------------------------------------------------------------

struct QuotientArgs {
  std::string file;
  std::string partition;
  std::optional<std::size_t> d;
  std::string out;
  bool json = false;
};

int cmd_quotient(const QuotientArgs& a) {
  const auto g = load_graph(a.file);
  const auto p = RMPartition::parse(a.partition);
  if (const auto chk = validate_rmp(g, p); !chk.ok) {
    std::ostringstream msg;
    msg << "not a rightward module partition: " << chk.reason << " (parts " << chk.i << ", " << chk.j
        << ", vertex " << chk.witness << ")";
    throw Failure(msg.str());
  }
  const auto q = quotient(g, p);
  std::optional<AmfQuotientReport> report;
  if (a.d) {
    if (!is_pair_amf(g, p, *a.d).amf) throw Failure("pair is not " + std::to_string(*a.d) + "-almost mixed free");
    report = check_amf_quotient_bound(g, p, *a.d, false);
  }
  if (!a.json) {
    emit_text(to_text(q), a.out);
    if (report && !report->bound_holds) return 1;
    return 0;
  }
  if (!a.out.empty()) emit_text(to_text(q), a.out);
  Json doc = json_document("quotient");
  doc["partition"] = to_string(p);
  doc["quotient"] = graph_json(q);
  doc["omega_g"] = clique_number(g);
  doc["omega_quotient"] = clique_number(q);
  if (report) {
    doc["d"] = *a.d;
    doc["report"] = quotient_report_json(*report);
  }
  emit_json(doc);
  return report && !report->bound_holds ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Ordered-graph decompositions, colorings and verification suites"};
  app.require_subcommand(1);

  GenArgs gen;
  auto* g = app.add_subcommand("gen", "Write a graph in text format");
  g->add_option("family", gen.family, "Graph family")
      ->required()
      ->check(CLI::IsMember({"shift2", "cycle", "path", "complete", "edgeless", "gnp", "random_cograph"}));
  g->add_option("n", gen.n, "Size parameter")->required()->check(CLI::PositiveNumber);
  g->add_option("-p,--p", gen.p, "Edge probability for gnp")->check(CLI::Range(0.0, 1.0));
  g->add_option("--seed", gen.seed, "Random seed (default TWWCHI_SEED or 0)");
  g->add_option("-o,--out", gen.out, "Output file (default stdout)");

  DecomposeArgs dec;
  auto* d = app.add_subcommand("decompose", "Dump the delayed or substitution decomposition");
  d->add_option("file", dec.file, "Graph file, - for stdin")->required();
  d->add_option("--kind", dec.kind, "delayed or subst")->check(CLI::IsMember({"delayed", "subst"}));
  d->add_option("--rule", dec.rule, "Split rule for delayed trees")->check(CLI::IsMember({"midpoint", "first"}));
  d->add_flag("--json", dec.json, "JSON output");

  ColorArgs col;
  auto* c = app.add_subcommand("color", "Color a graph and report the palette");
  c->add_option("file", col.file, "Graph file, - for stdin")->required();
  c->add_option("--method", col.method, "Coloring method")
      ->check(CLI::IsMember({"exact", "cograph", "amf", "quotient", "subst", "mixedext"}));
  c->add_option("-d", col.d, "AMF parameter (amf) or base exponent k (subst)")->check(CLI::PositiveNumber);
  c->add_option("--partition", col.partition, "Partition literal for the quotient method, e.g. 0-0,1-2");
  c->add_flag("--check-claims", col.check_claims, "Check the piece claims during amf coloring");
  c->add_flag("--strict", col.strict, "Certify the order and fail instead of falling back");
  c->add_option("--seed", col.seed, "Random seed (default TWWCHI_SEED or 0)");
  c->add_flag("--json", col.json, "JSON output");

  VerifyArgs ver;
  auto* v = app.add_subcommand("verify", "Run verification suites");
  std::string suites = "all";
  for (const auto& s : suite_names()) suites += ", " + s;
  v->add_option("--suite", ver.suite, "Suite name or all (" + suites + ")");
  v->add_option("--max-n", ver.max_n, "Largest size (0: suite default)");
  v->add_option("--samples", ver.samples, "Random samples (0: suite default)");
  v->add_option("--seed", ver.seed, "Random seed (default TWWCHI_SEED or 0)");
  v->add_option("--jobs", ver.jobs, "Worker threads (0: one per core)");
  v->add_flag("--json", ver.json, "JSON output");

  QuotientArgs quo;
  auto* q = app.add_subcommand("quotient", "Contract the parts of a rightward module partition");
  q->add_option("file", quo.file, "Graph file, - for stdin")->required();
  q->add_option("partition", quo.partition, "Partition literal, e.g. 0-0,1-2,3-5")->required();
  q->add_option("-d", quo.d, "Also check the almost-mixed-free quotient bound")->check(CLI::PositiveNumber);
  q->add_option("-o,--out", quo.out, "Write the quotient graph here");
  q->add_flag("--json", quo.json, "JSON report");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    if (g->parsed()) return cmd_gen(gen);
    if (d->parsed()) return cmd_decompose(dec);
    if (c->parsed()) return cmd_color(col);
    if (v->parsed()) return cmd_verify(ver);
    if (q->parsed()) return cmd_quotient(quo);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return 2;
  } catch (const SizeLimitExceeded& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "failed: " << e.what() << '\n';
    return 1;
  }
  return 2;
}
