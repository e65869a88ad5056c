#include <iostream>

#include <CLI11.hpp>

#include "geoequiv/cli.hpp"

using namespace geoequiv::cli;

int main(int argc, char** argv) {
  CLI::App app{"Geometric-graph isomorphism, canonical forms and steerable algebra"};
  app.require_subcommand(1);

  IsoOptions iso;
  auto* c_iso = app.add_subcommand("iso", "Test two graph files for geometric isomorphism");
  c_iso->add_option("a", iso.a, "First graph file")->required();
  c_iso->add_option("b", iso.b, "Second graph file")->required();
  c_iso->add_option("--tol", iso.tol.rel, "Relative quantization tolerance");
  c_iso->add_option("--align", iso.tol.align, "Relative alignment tolerance");

  CanonOptions canon;
  auto* c_canon = app.add_subcommand("canon", "Print the canonical-form digest of a graph file");
  c_canon->add_option("file", canon.file, "Graph file")->required();
  c_canon->add_option("--mode", canon.mode, "general | fast")->check(CLI::IsMember({"general", "fast"}));
  c_canon->add_option("--coloring", canon.coloring, "auto | none | center | tensor (fast mode)")
      ->check(CLI::IsMember({"auto", "none", "center", "tensor"}));
  c_canon->add_option("--tol", canon.tol.rel, "Relative quantization tolerance");
  c_canon->add_flag("--verbose", canon.verbose, "Dump digest components");

  EquivarianceOptions eq;
  auto* c_eq = app.add_subcommand("equivariance", "Run random E(3) x S_N actions through every equivariant operation");
  c_eq->add_option("file", eq.file, "Graph file")->required();
  c_eq->add_option("--trials", eq.trials, "Number of random actions");
  c_eq->add_option("--seed", eq.seed, "Seed for the sampled actions");
  c_eq->add_option("--threshold", eq.threshold, "Maximum tolerated violation");
  c_eq->add_option("--inject-scale", eq.inject_scale, "Test mode: scale every action (detector check)")
      ->group("");

  BenchOptions bench;
  auto* c_bench = app.add_subcommand("bench", "Time general and fast canonical forms; CSV on stdout");
  c_bench->add_option("--sizes", bench.sizes, "Graph sizes")->required()->delimiter(',');
  c_bench->add_option("--reps", bench.reps, "Repetitions per size (>= 3, median reported)");
  c_bench->add_option("--mode", bench.mode, "general | fast | both");
  c_bench->add_option("--seed", bench.seed, "Seed for the random graphs");

  GenOptions gen;
  auto* c_gen = app.add_subcommand("gen", "Write corpus or tetrahedron graphs with a manifest");
  c_gen->add_option("--what", gen.what, "corpus | tetra")->check(CLI::IsMember({"corpus", "tetra"}));
  c_gen->add_option("--count", gen.count, "Number of corpora or tetrahedra");
  c_gen->add_option("--seed", gen.seed, "Seed");
  c_gen->add_option("--out", gen.out, "Output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kInputError;
  }

  if (*c_iso) return cmd_iso(iso, std::cout, std::cerr);
  if (*c_canon) return cmd_canon(canon, std::cout, std::cerr);
  if (*c_eq) return cmd_equivariance(eq, std::cout, std::cerr);
  if (*c_bench) return cmd_bench(bench, std::cout, std::cerr);
  if (*c_gen) return cmd_gen(gen, std::cout, std::cerr);
  return kInputError;
}
