#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "geoequiv/geometry.hpp"

namespace geoequiv::cli {

enum ExitCode : int { kOk = 0, kFalse = 1, kInputError = 2, kInapplicable = 3 };

struct IsoOptions {
  std::filesystem::path a, b;
  Tolerance tol;
};
int cmd_iso(const IsoOptions& opt, std::ostream& out, std::ostream& err);

struct CanonOptions {
  std::filesystem::path file;
  std::string mode = "general";    // general | fast
  std::string coloring = "auto";   // auto | none | center | tensor
  Tolerance tol;
  bool verbose = false;
};
int cmd_canon(const CanonOptions& opt, std::ostream& out, std::ostream& err);

struct EquivarianceOptions {
  std::filesystem::path file;
  int trials = 100;
  std::uint64_t seed = 1;
  double threshold = 1e-7;
  double inject_scale = 1.0;  // test mode: scales every sampled action
};

struct Violation {
  std::string operation;
  double max_violation = 0.0;
  int skipped = 0;  // trials where the operation was inapplicable
};
std::vector<Violation> equivariance_report(const GeometricGraph& G, const EquivarianceOptions& opt);
int cmd_equivariance(const EquivarianceOptions& opt, std::ostream& out, std::ostream& err);

struct BenchOptions {
  std::vector<int> sizes;
  int reps = 3;
  std::string mode = "both";  // general | fast | both
  std::uint64_t seed = 1;
};

struct BenchRecord {
  std::string algorithm;
  int n = 0;
  double seconds = 0.0;  // median
  int repetitions = 0;
};

/// Random fully connected graph with points uniform in [-1, 1]^3.
GeometricGraph bench_graph(int n, std::uint64_t seed);
std::vector<BenchRecord> run_bench(const BenchOptions& opt);
/// Least-squares slope of log(seconds) against log(N).
double loglog_slope(const std::vector<BenchRecord>& records);
int cmd_bench(const BenchOptions& opt, std::ostream& out, std::ostream& err);

struct GenOptions {
  std::string what = "corpus";  // corpus | tetra
  int count = 1;
  std::uint64_t seed = 1;
  std::filesystem::path out;
};
int cmd_gen(const GenOptions& opt, std::ostream& out, std::ostream& err);

}  // namespace geoequiv::cli
