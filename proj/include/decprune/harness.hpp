#pragma once

// Experiment harness: graph text I/O, deletion adversaries, per-deletion
// JSONL event logs, CSV summaries, and log verification by replay. All
// randomness flows from the experiment seed through one named generator.

#include <cmath>
#include <fstream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "decprune/generators.hpp"
#include "decprune/oracle.hpp"
#include "decprune/worstcase.hpp"

namespace decprune::harness {

using json = nlohmann::json;

// Graph text format: "n m" on the first line, then m lines "u v".
inline DecGraph read_graph_text(std::istream& in) {
  int n = 0;
  i64 m = 0;
  require(static_cast<bool>(in >> n >> m), err::kIo, "graph header must be 'n m'");
  require(n >= 0 && m >= 0, err::kIo, "negative graph header");
  std::vector<std::pair<VertexId, VertexId>> edges;
  edges.reserve(m);
  for (i64 i = 0; i < m; ++i) {
    VertexId u, v;
    require(static_cast<bool>(in >> u >> v), err::kIo,
            "expected " + std::to_string(m) + " edge lines");
    edges.push_back({u, v});
  }
  return DecGraph(edges, n);
}

inline void write_graph_text(std::ostream& out, const DecGraph& g) {
  out << g.n << " " << g.m0() << "\n";
  for (EdgeId e = 0; e < g.m0(); ++e) out << g.edges[e].u << " " << g.edges[e].v << "\n";
}

inline DecGraph load_graph(const std::string& path) {
  std::ifstream in(path);
  require(in.good(), err::kIo, "cannot open graph file " + path);
  return read_graph_text(in);
}

inline void save_graph(const std::string& path, const DecGraph& g) {
  std::ofstream out(path);
  require(out.good(), err::kIo, "cannot open output file " + path);
  write_graph_text(out, g);
}

// kind in {complete, hypercube, random_regular, barbell}; params as listed.
inline DecGraph generate_graph(const std::string& kind, const std::vector<i64>& params,
                               std::uint64_t seed) {
  auto want = [&](size_t k) {
    require(params.size() == k, err::kParamMismatch,
            kind + " takes " + std::to_string(k) + " parameter(s)");
  };
  if (kind == "complete") {
    want(1);
    return gen_complete((int)params[0]);
  }
  if (kind == "hypercube") {
    want(1);
    return gen_hypercube((int)params[0]);
  }
  if (kind == "random_regular") {
    want(2);
    return gen_random_regular((int)params[0], (int)params[1], seed);
  }
  if (kind == "barbell") {
    want(3);
    return gen_barbell((int)params[0], (int)params[1], (int)params[2]);
  }
  fail(err::kParamMismatch, "unknown generator " + kind);
}

struct Experiment {
  std::string graph_file;       // either a file...
  std::string generator;        // ...or a generator kind
  std::vector<i64> gen_params;
  Rat phi{1, 4};
  bool desk = true;
  std::string adversary = "random";  // random | boundary_targeted | vertex_drain
  std::uint64_t seed = 0;
  i64 max_deletions = 0;
  std::string pruner = "amortized";        // amortized | worstcase
  std::string checks = "cert_every_step";  // cert_every_step | oracle_small | none

  std::string graph_desc() const {
    if (!graph_file.empty()) return graph_file;
    std::string s = generator;
    for (i64 p : gen_params) s += ":" + std::to_string(p);
    return s;
  }

  DecGraph make_graph() const {
    if (!graph_file.empty()) return load_graph(graph_file);
    require(!generator.empty(), err::kParamMismatch, "experiment needs a graph or a generator");
    return generate_graph(generator, gen_params, seed);
  }
};

struct EventRecord {
  i64 t = 0;
  EdgeId deleted_edge = -1;
  int rebuild_level = -1;
  std::vector<VertexId> pruned;
  i64 op_count = 0;
  std::optional<bool> cert_ok;
  std::optional<Rat> conductance;
};

struct RunSummary {
  i64 deletions_run = 0;
  i64 max_recourse = 0, max_op_count = 0;
  double mean_recourse = 0, mean_op_count = 0;
  i64 recourse_budget = 0, op_budget = 0, per_edge_recourse_budget = 0;
  bool recourse_respected = true, op_respected = true;
  bool final_cert_ok = false;
  std::optional<Rat> final_conductance;
  std::string error;  // failing invariant name, empty on a clean run
};

struct RunResult {
  std::vector<EventRecord> events;
  RunSummary summary;
  std::string jsonl;  // header line plus one line per event
};

namespace detail {

inline EdgeId pick_edge(const DecGraph& g, const std::string& adversary, std::mt19937_64& rng) {
  if (adversary == "random") {
    std::vector<EdgeId> live;
    for (EdgeId e = 0; e < g.m0(); ++e)
      if (g.edge_alive(e)) live.push_back(e);
    if (live.empty()) return -1;
    return live[rng() % live.size()];
  }
  if (adversary == "boundary_targeted") {
    // Attack the thinnest spot: the live edge whose weaker endpoint has the
    // smallest remaining degree; lowest edge id breaks ties.
    EdgeId best = -1;
    i64 best_deg = 0;
    for (EdgeId e = 0; e < g.m0(); ++e) {
      if (!g.edge_alive(e)) continue;
      i64 w = std::min(g.cur_deg[g.edges[e].u], g.cur_deg[g.edges[e].v]);
      if (best < 0 || w < best_deg) {
        best = e;
        best_deg = w;
      }
    }
    return best;
  }
  if (adversary == "vertex_drain") {
    for (VertexId v = 0; v < g.n; ++v)
      for (EdgeId e : g.adj[v])
        if (g.edge_alive(e)) return e;
    return -1;
  }
  fail(err::kParamMismatch, "unknown adversary " + adversary);
}

// Conductance of the live remainder (deleted edges and pruned vertices
// excluded), against frozen degrees. Undefined below two live vertices.
inline std::optional<Rat> remainder_conductance(const DecGraph& live,
                                                const std::vector<char>& s0) {
  if (live.n > 20) return std::nullopt;
  DecGraph view = live;
  std::vector<VertexId> kill;
  for (VertexId v = 0; v < view.n; ++v)
    if (s0[v] && view.vertex_alive[v]) kill.push_back(v);
  view.remove_vertices(kill);
  auto rep = oracle::conductance_exact(view, oracle::VolumeMeasure::kInitialD);
  if (!rep.any_cut) return std::nullopt;
  return rep.conductance;
}

inline json experiment_json(const Experiment& exp, const DecGraph& g) {
  json j;
  j["graph"] = exp.graph_desc();
  j["n"] = g.n;
  j["m"] = g.m0();
  j["phi_num"] = exp.phi.num;
  j["phi_den"] = exp.phi.den;
  j["preset"] = exp.desk ? "desk" : "paper";
  j["adversary"] = exp.adversary;
  j["seed"] = exp.seed;
  j["max_deletions"] = exp.max_deletions;
  j["pruner"] = exp.pruner;
  j["checks"] = exp.checks;
  return j;
}

inline json event_json(const EventRecord& ev) {
  json j;
  j["t"] = ev.t;
  j["deleted_edge"] = ev.deleted_edge;
  j["rebuild_level"] = ev.rebuild_level;
  j["pruned"] = ev.pruned;
  j["op_count"] = ev.op_count;
  if (ev.cert_ok)
    j["cert_ok"] = *ev.cert_ok;
  else
    j["cert_ok"] = nullptr;
  if (ev.conductance) j["conductance"] = ev.conductance->str();
  return j;
}

inline std::unique_ptr<AmortizedPruner> make_pruner(const std::string& kind, const DecGraph& g,
                                                    const PruneConfig& cfg) {
  if (kind == "amortized") return std::make_unique<AmortizedPruner>(g, cfg);
  if (kind == "worstcase") return std::make_unique<WorstCasePruner>(g, cfg);
  fail(err::kParamMismatch, "unknown pruner " + kind);
}

}  // namespace detail

inline PruneConfig experiment_config(const Experiment& exp, const DecGraph& g) {
  PruneConfig cfg = make_config(g.n, g.m0(), exp.phi, exp.desk);
  // The configured budget is data; a larger requested run raises it so long
  // experiments on small presets are possible (documented in the README).
  if (exp.max_deletions > cfg.deletion_budget) cfg.deletion_budget = exp.max_deletions;
  if (exp.checks == "oracle_small") {
    require(g.n <= 20, err::kOracleLimit, "oracle_small checks need n <= 20");
    cfg.debug_oracle = true;
  }
  return cfg;
}

inline RunResult run(const Experiment& exp) {
  DecGraph g = exp.make_graph();
  PruneConfig cfg = experiment_config(exp, g);
  RunResult res;
  res.summary.recourse_budget = cfg.recourse_budget();
  res.summary.op_budget = cfg.op_budget();
  res.summary.per_edge_recourse_budget = cfg.recourse_per_edge;
  std::ostringstream log;
  log << detail::experiment_json(exp, g).dump() << "\n";

  std::mt19937_64 rng(exp.seed);
  bool check_cert = exp.checks == "cert_every_step" || exp.checks == "oracle_small";
  i64 recourse_sum = 0, op_sum = 0;
  try {
    auto p = detail::make_pruner(exp.pruner, g, cfg);
    for (i64 t = 1; t <= exp.max_deletions; ++t) {
      EdgeId e = detail::pick_edge(p->cert().graph(), exp.adversary, rng);
      if (e < 0) break;  // nothing left to delete
      PruneDelta d = p->process_deletion(e);
      EventRecord ev;
      ev.t = t;
      ev.deleted_edge = e;
      ev.rebuild_level = d.rebuild_level;
      ev.pruned = d.pruned;
      ev.op_count = d.op_count;
      if (check_cert) ev.cert_ok = p->cert_mut().checkpoint_ok();
      if (exp.checks == "oracle_small")
        ev.conductance = detail::remainder_conductance(p->cert().graph(), p->cert().s0_mask());
      res.summary.deletions_run = t;
      res.summary.max_recourse = std::max(res.summary.max_recourse, (i64)d.pruned.size());
      res.summary.max_op_count = std::max(res.summary.max_op_count, d.op_count);
      recourse_sum += (i64)d.pruned.size();
      op_sum += d.op_count;
      if ((i64)d.pruned.size() > res.summary.recourse_budget)
        res.summary.recourse_respected = false;
      if (d.op_count > res.summary.op_budget) res.summary.op_respected = false;
      if (ev.cert_ok && !*ev.cert_ok) res.summary.error = "checkpoint_certificate";
      log << detail::event_json(ev).dump() << "\n";
      res.events.push_back(std::move(ev));
      if (!res.summary.error.empty()) break;
    }
    res.summary.final_cert_ok = p->cert_mut().checkpoint_ok();
    if (g.n <= 20)
      res.summary.final_conductance =
          detail::remainder_conductance(p->cert().graph(), p->cert().s0_mask());
  } catch (const Error& e) {
    res.summary.error = e.kind();
  }
  if (res.summary.deletions_run > 0) {
    res.summary.mean_recourse = (double)recourse_sum / (double)res.summary.deletions_run;
    res.summary.mean_op_count = (double)op_sum / (double)res.summary.deletions_run;
  }
  res.jsonl = log.str();
  return res;
}

// Fixed column order; documented in the README.
inline std::string summary_csv_header() {
  return "graph,n,m,phi,preset,pruner,adversary,seed,checks,deletions_requested,deletions_run,"
         "max_recourse,mean_recourse,recourse_budget,recourse_respected,max_op_count,"
         "mean_op_count,op_budget,op_respected,per_edge_recourse_budget,final_cert_ok,"
         "final_conductance,error";
}

inline std::string summary_csv_row(const Experiment& exp, const DecGraph& g,
                                   const RunSummary& s) {
  std::ostringstream out;
  auto flag = [](bool b) { return b ? "respected" : "violated"; };
  out << exp.graph_desc() << "," << g.n << "," << g.m0() << "," << exp.phi.str() << ","
      << (exp.desk ? "desk" : "paper") << "," << exp.pruner << "," << exp.adversary << ","
      << exp.seed << "," << exp.checks << "," << exp.max_deletions << "," << s.deletions_run
      << "," << s.max_recourse << "," << s.mean_recourse << "," << s.recourse_budget << ","
      << flag(s.recourse_respected) << "," << s.max_op_count << "," << s.mean_op_count << ","
      << s.op_budget << "," << flag(s.op_respected) << "," << s.per_edge_recourse_budget << ","
      << (s.final_cert_ok ? "ok" : "violated") << ","
      << (s.final_conductance ? s.final_conductance->str() : "-") << ","
      << (s.error.empty() ? "-" : s.error);
  return out.str();
}

struct VerifyReport {
  std::vector<std::string> failures;
  bool ok() const { return failures.empty(); }
};

// Replays the logged deletion sequence through a fresh pruner and re-derives
// every per-event claim: S_0 monotone, per-event recourse budget, exact
// pruned sets and op counts, rebuild-gap discipline, and the composed
// certificate at sampled checkpoints.
inline VerifyReport verify(const std::string& jsonl, const DecGraph& g) {
  VerifyReport rep;
  std::istringstream in(jsonl);
  std::string line;
  require(static_cast<bool>(std::getline(in, line)), err::kIo, "empty log");
  json header = json::parse(line);
  Experiment exp;
  exp.phi = Rat(header.at("phi_num").get<i64>(), header.at("phi_den").get<i64>());
  exp.desk = header.at("preset").get<std::string>() == "desk";
  exp.pruner = header.at("pruner").get<std::string>();
  exp.max_deletions = header.at("max_deletions").get<i64>();
  require(header.at("n").get<int>() == g.n && header.at("m").get<i64>() == (i64)g.m0(),
          err::kIo, "log header does not match the graph file");
  PruneConfig cfg = make_config(g.n, g.m0(), exp.phi, exp.desk);
  if (exp.max_deletions > cfg.deletion_budget) cfg.deletion_budget = exp.max_deletions;

  std::vector<char> seen(g.n, 0);
  std::vector<i64> last_affect(cfg.k + 1, -1);
  auto p = detail::make_pruner(exp.pruner, g, cfg);
  i64 t = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    json ev = json::parse(line);
    ++t;
    if (ev.at("t").get<i64>() != t) rep.failures.push_back("event " + std::to_string(t) + ": bad index");
    EdgeId e = ev.at("deleted_edge").get<EdgeId>();
    PruneDelta d;
    try {
      d = p->process_deletion(e);
    } catch (const Error& err) {
      rep.failures.push_back("event " + std::to_string(t) + ": replay error " +
                             std::string(err.kind()));
      break;
    }
    std::vector<VertexId> pruned = ev.at("pruned").get<std::vector<VertexId>>();
    for (VertexId v : pruned) {
      if (v < 0 || v >= g.n || seen[v])
        rep.failures.push_back("event " + std::to_string(t) + ": pruned set not monotone");
      else
        seen[v] = 1;
    }
    if ((i64)pruned.size() > cfg.recourse_budget())
      rep.failures.push_back("event " + std::to_string(t) + ": recourse budget exceeded");
    if (pruned != d.pruned)
      rep.failures.push_back("event " + std::to_string(t) + ": pruned set mismatch on replay");
    if (ev.at("op_count").get<i64>() != d.op_count)
      rep.failures.push_back("event " + std::to_string(t) + ": op_count mismatch on replay");
    int lvl = ev.at("rebuild_level").get<int>();
    if (lvl != d.rebuild_level)
      rep.failures.push_back("event " + std::to_string(t) + ": rebuild level mismatch on replay");
    // Rebuild gap: a level is affected again only after 2^{k-i-1} deletions.
    if (lvl >= 1)
      for (int i = lvl; i < cfg.k; ++i) {
        if (last_affect[i] >= 0 && t - last_affect[i] < ((i64)1 << (cfg.k - i - 1)))
          rep.failures.push_back("event " + std::to_string(t) + ": rebuild gap violated at level " +
                                 std::to_string(i));
        last_affect[i] = t;
      }
    if (t % 5 == 0 && !p->cert_mut().checkpoint_ok())
      rep.failures.push_back("event " + std::to_string(t) + ": certificate checkpoint failed");
  }
  if (!p->cert_mut().checkpoint_ok()) rep.failures.push_back("final certificate check failed");
  return rep;
}

}  // namespace decprune::harness
