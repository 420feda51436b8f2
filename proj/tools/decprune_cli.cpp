// Command-line front end: generate benchmark graphs, run deletion
// experiments (JSONL event log + CSV summary), and verify logs by replay.

#include <filesystem>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"

#include "decprune/harness.hpp"

namespace fs = std::filesystem;
using namespace decprune;
namespace hn = decprune::harness;

namespace {

std::vector<i64> parse_params(const std::vector<std::string>& raw, size_t from) {
  std::vector<i64> out;
  for (size_t i = from; i < raw.size(); ++i) out.push_back(std::stoll(raw[i]));
  return out;
}

void write_file(const fs::path& p, const std::string& body) {
  std::ofstream out(p);
  require(out.good(), err::kIo, "cannot open " + p.string());
  out << body;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"decremental expander pruning experiments"};
  app.require_subcommand(1);

  // generate: emit a graph file in the text format ("n m" then edge lines).
  std::vector<std::string> gen_spec;
  std::string gen_out = "graph.txt";
  std::uint64_t gen_seed = 0;
  auto* gen = app.add_subcommand("generate", "write a benchmark graph to a file");
  gen->add_option("--generate", gen_spec,
                  "kind and parameters: complete N | hypercube DIM | "
                  "random_regular N DEG | barbell N1 N2 BRIDGES")
      ->required()
      ->expected(2, 4);
  gen->add_option("--seed", gen_seed, "seed for randomized generators");
  gen->add_option("--out", gen_out, "output graph file");

  // run: execute an experiment, write events.jsonl and summary.csv.
  hn::Experiment exp;
  std::vector<std::string> run_gen;
  std::string phi = "1/4";
  std::string preset = "desk", out_dir = ".";
  auto* run = app.add_subcommand("run", "run a deletion experiment");
  run->add_option("--graph", exp.graph_file, "input graph file");
  run->add_option("--generate", run_gen, "generator kind and parameters")->expected(2, 4);
  run->add_option("--phi", phi, "claimed expansion as NUM/DEN, e.g. 1/8");
  run->add_option("--preset", preset, "constant preset")
      ->check(CLI::IsMember({"paper", "desk"}));
  run->add_option("--adversary", exp.adversary, "deletion adversary")
      ->check(CLI::IsMember({"random", "boundary_targeted", "vertex_drain"}));
  run->add_option("--seed", exp.seed, "experiment seed; all randomness flows from it");
  run->add_option("--deletions", exp.max_deletions, "number of deletions")->required();
  run->add_option("--pruner", exp.pruner, "pruner variant")
      ->check(CLI::IsMember({"amortized", "worstcase"}));
  run->add_option("--checks", exp.checks, "per-event checking mode")
      ->check(CLI::IsMember({"cert_every_step", "oracle_small", "none"}));
  run->add_option("--out", out_dir, "output directory for events.jsonl and summary.csv");

  // verify: replay a log against its graph and re-check every claim.
  std::string ver_log, ver_graph;
  auto* ver = app.add_subcommand("verify", "re-check an event log by replay");
  ver->add_option("--log", ver_log, "events.jsonl from a run")->required();
  ver->add_option("--graph", ver_graph, "the graph file the run used")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed()) {
      DecGraph g = hn::generate_graph(gen_spec[0], parse_params(gen_spec, 1), gen_seed);
      hn::save_graph(gen_out, g);
      std::cout << "wrote " << gen_out << " (n=" << g.n << " m=" << g.m0() << ")\n";
      return 0;
    }
    if (run->parsed()) {
      if (!run_gen.empty()) {
        exp.generator = run_gen[0];
        exp.gen_params = parse_params(run_gen, 1);
      }
      require(!exp.graph_file.empty() || !exp.generator.empty(), err::kParamMismatch,
              "run needs --graph or --generate");
      auto slash = phi.find('/');
      require(slash != std::string::npos, err::kParamMismatch, "--phi must look like 1/8");
      exp.phi = Rat(std::stoll(phi.substr(0, slash)), std::stoll(phi.substr(slash + 1)));
      exp.desk = preset == "desk";
      DecGraph g = exp.make_graph();
      auto res = hn::run(exp);
      fs::create_directories(out_dir);
      write_file(fs::path(out_dir) / "events.jsonl", res.jsonl);
      write_file(fs::path(out_dir) / "summary.csv",
                 hn::summary_csv_header() + "\n" +
                     hn::summary_csv_row(exp, g, res.summary) + "\n");
      std::cout << hn::summary_csv_header() << "\n"
                << hn::summary_csv_row(exp, g, res.summary) << "\n";
      return res.summary.error.empty() ? 0 : 1;
    }
    if (ver->parsed()) {
      std::ifstream in(ver_log);
      require(in.good(), err::kIo, "cannot open " + ver_log);
      std::stringstream buf;
      buf << in.rdbuf();
      DecGraph g = hn::load_graph(ver_graph);
      auto rep = hn::verify(buf.str(), g);
      if (rep.ok()) {
        std::cout << "verified: log matches replay\n";
        return 0;
      }
      for (auto& f : rep.failures) std::cout << "FAIL " << f << "\n";
      return 1;
    }
  } catch (const Error& e) {
    std::cerr << "error [" << e.kind() << "] " << e.what() << "\n";
    return 2;
  }
  return 0;
}
