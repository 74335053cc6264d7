#include <cstdint>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "plumb/corpus.hpp"
#include "plumb/cycle.hpp"
#include "plumb/error.hpp"
#include "plumb/graph.hpp"
#include "plumb/invariants.hpp"
#include "plumb/lattice.hpp"
#include "plumb/latopt.hpp"
#include "plumb/natline.hpp"
#include "plumb/oracle.hpp"

namespace {

using json = nlohmann::ordered_json;
using namespace plumb;

json jnum(const Int& v) {
  static const Int lo = std::numeric_limits<long long>::min();
  static const Int hi = std::numeric_limits<long long>::max();
  if (v >= lo && v <= hi) return json(v.convert_to<long long>());
  return json(v.str());
}

// rational-valued fields are always strings ("p" or "p/q"), dense over ids
json jdense(const PlumbingGraph& g, const ChernClass& c) {
  json m = json::object();
  for (int id : g.ids()) m[std::to_string(id)] = to_string(c.get(id));
  return m;
}

json jdense(const PlumbingGraph& g, const IntCycle& c) {
  json m = json::object();
  for (int id : g.ids()) m[std::to_string(id)] = jnum(c.get(id));
  return m;
}

PlumbingGraph load_graph(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SyntaxError("cannot read graph file " + path, path);
  std::ostringstream text;
  text << in.rdbuf();
  return parse_graph(text.str(), path);
}

void emit(const json& doc) { std::cout << doc.dump() << "\n"; }

struct Options {
  std::string graph_path;
  std::string z_text;
  std::string chern_text;
  std::string engine = "exhaustive";
  unsigned long long budget = 10'000'000;
  int jobs = 1;
  int vertex = 0;
  bool witness = false;
  bool trace = false;
  bool debug_asserts = false;
  int tv_cap = 64;
  long long blowup_budget = -1;
  std::uint64_t seed = 1;
  long long count = 25;
  std::vector<std::string> graphs;

  LatOptions lat() const {
    LatOptions o;
    o.budget = budget;
    o.jobs = jobs;
    o.engine = engine == "descent" ? MinEngine::descent : MinEngine::exhaustive;
    return o;
  }

  natline::Config nat() const {
    natline::Config c;
    c.lat = lat();
    c.tv_cap = tv_cap;
    if (blowup_budget >= 0) c.blowup_budget = blowup_budget;
    c.debug_asserts = debug_asserts;
    c.collect_trace = trace;
    return c;
  }

  IntCycle z() const { return parse_int_cycle(z_text); }
  ChernClass chern() const { return parse_chern(chern_text); }
};

void add_graph_arg(CLI::App* cmd, Options& opt) {
  cmd->add_option("graph", opt.graph_path, "plumbing graph file")->required();
}

void add_engine_flags(CLI::App* cmd, Options& opt) {
  cmd->add_option("--engine", opt.engine, "minimization engine")
      ->check(CLI::IsMember({"exhaustive", "descent"}));
  cmd->add_option("--budget", opt.budget, "enumeration work budget")
      ->envname("PLUMB_BUDGET");
  cmd->add_option("--jobs", opt.jobs, "worker threads for enumeration");
}

int run_selftest(const Options& opt) {
  oracle::BatteryOptions bopt;
  bopt.engine = opt.nat();
  std::vector<PlumbingGraph> targets;
  if (!opt.graph_path.empty()) {
    targets.push_back(load_graph(opt.graph_path));
  } else {
    std::vector<std::string> names = opt.graphs.empty() ? corpus::names() : opt.graphs;
    for (const auto& name : names) targets.push_back(corpus::load(name));
  }
  json doc;
  doc["seed"] = opt.seed;
  doc["count"] = opt.count;
  json graphs = json::object();
  bool pass = true;
  for (const auto& g : targets) {
    auto report = oracle::run_battery(g, opt.seed, opt.count, bopt);
    json identities = json::array();
    for (const auto& ident : report.identities) {
      json j;
      j["name"] = ident.name;
      j["checked"] = ident.checked;
      j["failed"] = ident.failed;
      if (!ident.witnesses.empty()) j["witnesses"] = ident.witnesses;
      identities.push_back(j);
    }
    json entry;
    entry["pass"] = report.all_pass();
    entry["identities"] = identities;
    graphs[report.graph] = entry;
    pass = pass && report.all_pass();
  }
  doc["graphs"] = graphs;
  doc["pass"] = pass;
  emit(doc);
  return pass ? 0 : 1;
}

int dispatch(const std::string& cmd, const Options& opt) {
  if (cmd == "corpus") {
    json doc;
    doc["graphs"] = corpus::names();
    emit(doc);
    return 0;
  }
  if (cmd == "selftest") return run_selftest(opt);

  auto g = load_graph(opt.graph_path);

  if (cmd == "check") {
    json doc;
    doc["ok"] = true;
    doc["name"] = g.name();
    doc["vertices"] = g.vertex_count();
    doc["edges"] = static_cast<long long>(g.edges().size());
    emit(doc);
    return 0;
  }
  if (cmd == "chi") {
    Rat value = opt.chern_text.empty() ? chi(g, opt.z()) : chi(g, opt.chern());
    json doc;
    doc["value"] = to_string(value);
    emit(doc);
    return 0;
  }
  if (cmd == "zk") {
    json doc;
    doc["Z_K"] = jdense(g, canonical_cycle(g));
    emit(doc);
    return 0;
  }
  if (cmd == "dual") {
    json basis = json::object();
    for (int id : g.ids()) basis[std::to_string(id)] = jdense(g, dual_basis_element(g, id));
    json doc;
    doc["dual"] = basis;
    emit(doc);
    return 0;
  }
  if (cmd == "h1-struct") {
    Cache cache;
    json doc;
    doc["value"] = jnum(h1_struct(g, opt.z(), cache, opt.lat()));
    if (opt.witness) {
      const IntCycle z = opt.z();
      BoxSpec box;
      box.lower = IntCycle::ones(z.support());
      box.upper = z;
      auto min = min_box(g, box, opt.lat());
      doc["argmin"] = jdense(g, min.argmin);
      doc["engine"] = to_string(min.engine);
    }
    emit(doc);
    return 0;
  }
  if (cmd == "h1-gen") {
    json doc;
    if (opt.witness) {
      BoxSpec box;
      box.upper = opt.z();
      box.shift = opt.chern();
      auto min = min_box(g, box, opt.lat());
      doc["value"] = jnum(-min.value);
      doc["argmin"] = jdense(g, min.argmin);
      doc["engine"] = to_string(min.engine);
    } else {
      doc["value"] = jnum(h1_gen_bundle(g, opt.z(), opt.chern(), opt.lat()));
    }
    emit(doc);
    return 0;
  }
  if (cmd == "dim-im") {
    Cache cache;
    auto dim = dim_im_witness(g, opt.z(), opt.chern(), cache, opt.lat());
    json doc;
    doc["value"] = jnum(dim.value);
    if (opt.witness) doc["argmin"] = jdense(g, dim.argmin);
    emit(doc);
    return 0;
  }
  if (cmd == "vdim") {
    Cache cache;
    auto dim = vdim_witness(g, opt.z(), opt.chern(), opt.vertex, cache, opt.lat());
    json doc;
    doc["value"] = jnum(dim.value);
    if (opt.witness) doc["argmin"] = jdense(g, dim.argmin);
    emit(doc);
    return 0;
  }
  if (cmd == "pg") {
    json doc;
    doc["value"] = jnum(pg(g, opt.lat()));
    emit(doc);
    return 0;
  }
  if (cmd == "h1-nat") {
    natline::Engine engine(opt.nat());
    auto value = engine.compute(g, opt.z(), opt.chern());
    json doc;
    doc["h0"] = jnum(value.h0);
    doc["h1"] = jnum(value.h1);
    doc["chi_bundle"] = jnum(chi_bundle(g, opt.z(), opt.chern()));
    if (opt.trace) {
      json steps = json::array();
      for (const auto& rec : engine.trace()) {
        json j;
        j["key"] = rec.key;
        j["step"] = rec.step;
        if (!rec.choice.empty()) j["choice"] = rec.choice;
        j["h0"] = jnum(rec.h0);
        j["h1"] = jnum(rec.h1);
        if (rec.memo) j["memo"] = true;
        steps.push_back(j);
      }
      doc["steps"] = steps;
    }
    emit(doc);
    return 0;
  }
  throw SyntaxError("unknown subcommand " + cmd, cmd);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact cohomology invariants of negative-definite plumbing graphs"};
  app.require_subcommand(1);
  Options opt;

  auto* c_check = app.add_subcommand("check", "parse and validate a graph");
  add_graph_arg(c_check, opt);

  auto* c_chi = app.add_subcommand("chi", "Riemann-Roch chi of a cycle");
  add_graph_arg(c_chi, opt);
  c_chi->add_option("-Z", opt.z_text, "integer cycle id:coeff[,id:coeff...]");
  c_chi->add_option("--chern", opt.chern_text, "rational cycle id:p/q[,...]");

  auto* c_zk = app.add_subcommand("zk", "canonical cycle");
  add_graph_arg(c_zk, opt);

  auto* c_dual = app.add_subcommand("dual", "dual basis of the lattice");
  add_graph_arg(c_dual, opt);

  auto* c_h1s = app.add_subcommand("h1-struct", "h1 of the structure sheaf of Z");
  add_graph_arg(c_h1s, opt);
  c_h1s->add_option("-Z", opt.z_text, "effective integer cycle")->required();
  c_h1s->add_flag("-v,--witness", opt.witness, "include argmin witness");
  add_engine_flags(c_h1s, opt);

  auto* c_h1g = app.add_subcommand("h1-gen", "h1 of a generic line bundle on Z");
  add_graph_arg(c_h1g, opt);
  c_h1g->add_option("-Z", opt.z_text, "effective integer cycle")->required();
  c_h1g->add_option("--chern", opt.chern_text, "Chern class in the dual lattice")->required();
  c_h1g->add_flag("-v,--witness", opt.witness, "include argmin witness");
  add_engine_flags(c_h1g, opt);

  auto* c_dim = app.add_subcommand("dim-im", "dimension of the Abel map image summand");
  add_graph_arg(c_dim, opt);
  c_dim->add_option("-Z", opt.z_text, "effective integer cycle")->required();
  c_dim->add_option("--chern", opt.chern_text, "Chern class in the dual lattice")->required();
  c_dim->add_flag("-v,--witness", opt.witness, "include argmin witness");
  add_engine_flags(c_dim, opt);

  auto* c_vdim = app.add_subcommand("vdim", "stable image dimension along -E*_v");
  add_graph_arg(c_vdim, opt);
  c_vdim->add_option("-Z", opt.z_text, "effective integer cycle")->required();
  c_vdim->add_option("--chern", opt.chern_text, "Chern class in the dual lattice")->required();
  c_vdim->add_option("--vertex", opt.vertex, "vertex id of the E* direction")->required();
  c_vdim->add_flag("-v,--witness", opt.witness, "include argmin witness");
  add_engine_flags(c_vdim, opt);

  auto* c_pg = app.add_subcommand("pg", "geometric genus");
  add_graph_arg(c_pg, opt);
  add_engine_flags(c_pg, opt);

  auto* c_nat = app.add_subcommand("h1-nat", "h0/h1 of a restricted natural line bundle");
  add_graph_arg(c_nat, opt);
  c_nat->add_option("-Z", opt.z_text, "effective integer cycle")->required();
  c_nat->add_option("--chern", opt.chern_text, "Chern class in the dual lattice")->required();
  c_nat->add_flag("--trace", opt.trace, "include the recursion trace");
  c_nat->add_flag("--debug-asserts", opt.debug_asserts, "re-verify internal reductions");
  c_nat->add_option("--tv-cap", opt.tv_cap, "blowup chain cap for t values");
  c_nat->add_option("--budget-blowups", opt.blowup_budget, "edge blowup budget");
  add_engine_flags(c_nat, opt);

  auto* c_self = app.add_subcommand("selftest", "run the identity battery on bundled graphs");
  c_self->add_option("graph-file", opt.graph_path,
                     "plumbing graph file (default: every bundled graph)");
  c_self->add_option("--seed", opt.seed, "base seed");
  c_self->add_option("--count", opt.count, "trials per graph");
  c_self->add_option("--graph", opt.graphs, "restrict to named bundled graphs");
  c_self->add_flag("--json", "emit JSON (always on)");
  c_self->add_flag("--debug-asserts", opt.debug_asserts, "re-verify internal reductions");
  add_engine_flags(c_self, opt);

  auto* c_corpus = app.add_subcommand("corpus", "list bundled graphs");
  (void)c_corpus;

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    std::cerr << e.what() << "\n";
    return 2;
  }

  const std::string cmd = app.get_subcommands().front()->get_name();
  try {
    return dispatch(cmd, opt);
  } catch (const Error& e) {
    const std::string prefix = e.code() + ": ";
    std::string message = e.what();
    if (message.rfind(prefix, 0) == 0) message = message.substr(prefix.size());
    json doc;
    doc["code"] = e.code();
    doc["message"] = message;
    doc["witness"] = e.witness();
    emit(doc);
    const bool usage = e.code() == "SyntaxError" || e.code() == "IndexMismatch" ||
                       e.code() == "UnknownVertex" || e.code() == "DuplicateVertex" ||
                       e.code() == "NotAnEdge";
    return usage ? 2 : 1;
  } catch (const std::exception& e) {
    json doc;
    doc["code"] = "InternalError";
    doc["message"] = e.what();
    doc["witness"] = "";
    emit(doc);
    return 1;
  }
}
