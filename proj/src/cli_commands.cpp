#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <map>
#include <ostream>
#include <random>
#include <sstream>

#include <json.hpp>

#include "geoequiv/basis.hpp"
#include "geoequiv/canonical.hpp"
#include "geoequiv/cli.hpp"
#include "geoequiv/corpus.hpp"
#include "geoequiv/error.hpp"
#include "geoequiv/graph_io.hpp"
#include "geoequiv/isomorphism.hpp"
#include "geoequiv/steerable.hpp"

namespace geoequiv::cli {
namespace {

using nlohmann::json;

json vec_json(const Vec3& v) { return json::array({v[0], v[1], v[2]}); }

json mat_json(const Mat3& m) {
  json rows = json::array();
  for (int r = 0; r < 3; ++r) rows.push_back(json::array({m(r, 0), m(r, 1), m(r, 2)}));
  return rows;
}

ColoringChoice parse_coloring(const std::string& s) {
  if (s == "auto") return ColoringChoice::kAuto;
  if (s == "none") return ColoringChoice::kNone;
  if (s == "center") return ColoringChoice::kCenter;
  if (s == "tensor") return ColoringChoice::kTensor;
  throw InvalidArgument("unknown coloring '" + s + "' (auto, none, center, tensor)");
}

double rel_diff(const Eigen::VectorXd& a, const Eigen::VectorXd& b, double scale) {
  if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
  if (a.size() == 0) return 0.0;
  return (a - b).cwiseAbs().maxCoeff() / scale;
}

void write_text(const std::filesystem::path& p, const std::string& text) {
  std::ofstream f(p, std::ios::binary);
  if (!f) throw Error("cannot write " + p.string());
  f << text;
  if (!f) throw Error("write failed for " + p.string());
}

}  // namespace

// ---------------------------------------------------------------------------

int cmd_iso(const IsoOptions& opt, std::ostream& out, std::ostream& err) {
  try {
    const GeometricGraph a = io::read_graph(opt.a);
    const GeometricGraph b = io::read_graph(opt.b);
    const auto cert = geometric_graph_isomorphic(a, b, opt.tol);
    if (!cert) {
      out << "not isomorphic\n";
      return kFalse;
    }
    json j;
    j["isomorphic"] = true;
    j["permutation"] = cert->permutation.mapping();
    j["linear"] = mat_json(cert->transform.linear());
    j["translation"] = vec_json(cert->transform.translation());
    j["residual"] = cert->residual;
    out << j.dump(2) << "\n";
    return kOk;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
}

int cmd_canon(const CanonOptions& opt, std::ostream& out, std::ostream& err) {
  try {
    const GeometricGraph g = io::read_graph(opt.file);
    CanonicalOptions co;
    co.tol = opt.tol;
    co.coloring = parse_coloring(opt.coloring);
    CanonicalDigest d;
    if (opt.mode == "general") {
      d = general_canonical_form(g, co);
    } else if (opt.mode == "fast") {
      d = fast_canonical_form(g, co);
    } else {
      throw InvalidArgument("unknown mode '" + opt.mode + "' (general, fast)");
    }
    if (opt.verbose) {
      out << d.verbose();
    } else {
      out << d.hex() << "\n";
    }
    return kOk;
  } catch (const CoplanarVirtualNodes& e) {
    err << "error: " << e.what() << "\n";
    return kInapplicable;
  } catch (const DegenerateGraph& e) {
    err << "error: " << e.what() << "\n";
    return kInapplicable;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
}

// ---------------------------------------------------------------------------
// Equivariance harness

std::vector<Violation> equivariance_report(const GeometricGraph& G, const EquivarianceOptions& opt) {
  const std::size_t n = G.size();
  const double diam = std::max(G.diameter(), 1e-300);
  std::map<std::string, Violation> acc;
  auto record = [&](const std::string& op, double v) {
    Violation& r = acc[op];
    r.operation = op;
    r.max_violation = std::max(r.max_violation, v);
  };
  auto skip = [&](const std::string& op) {
    Violation& r = acc[op];
    r.operation = op;
    ++r.skipped;
  };

  // Reference quantities on G, computed once.
  auto digest_or_error = [](auto&& fn) -> std::string {
    try {
      return fn().hex();
    } catch (const DegenerateGraph&) {
      return "!degenerate";
    } catch (const CoplanarVirtualNodes&) {
      return "!coplanar";
    }
  };
  const std::string gen0 = digest_or_error([&] { return general_canonical_form(G); });
  const std::string fast0 = digest_or_error([&] { return fast_canonical_form(G); });

  const Vec3 c0 = G.centroid();
  const auto basis0 = common_basis_features(G, std::vector<int>{0, 1, 2, 3}, 2);
  const Coloring col0 = color_nodes(G, ColorMethod::kCenter);
  const ForwardResult fwd0 = egnn_cpl_forward(G, col0);
  std::vector<Vec3> xs0;
  for (const Node& nd : G.nodes()) xs0.push_back(nd.x - c0);
  const auto tensor0 = steerable::decompose_symmetric_tensor(xs0);
  const double m3_0 = corpus::chirality_moment3(G);
  std::vector<Eigen::MatrixXd> proj0;
  bool have_group = true;
  try {
    for (int l = 1; l <= 2; ++l) {
      const SubspaceBasis f = steerable_subspace(G, l);
      proj0.push_back(f.columns * f.columns.transpose());
    }
  } catch (const DegenerateGraph&) {
    have_group = false;
  }

  for (int t = 0; t < opt.trials; ++t) {
    const std::uint64_t s = opt.seed * 0x100000001b3ULL + static_cast<std::uint64_t>(t);
    const EuclideanTransform g = random_transform(s, true, true);
    const Permutation perm = Permutation::random(n, s ^ 0xa5a5a5a5ULL);
    GeometricGraph H = apply_transform(G, g, perm);
    if (opt.inject_scale != 1.0) H = H.with_positions(opt.inject_scale * H.positions());
    const Mat3& R = g.linear();
    const double detR = R.determinant();

    const std::string gen1 = digest_or_error([&] { return general_canonical_form(H); });
    if (gen0 == "!degenerate" && gen1 == gen0) {
      skip("general_canonical_form");
    } else {
      record("general_canonical_form", gen0 == gen1 ? 0.0 : 1.0);
    }
    const std::string fast1 = digest_or_error([&] { return fast_canonical_form(H); });
    if (fast0.front() == '!' && fast1 == fast0) {
      skip("fast_canonical_form");
    } else {
      record("fast_canonical_form", fast0 == fast1 ? 0.0 : 1.0);
    }

    // Spherical harmonics of node directions, l <= 6.
    const Vec3 c1 = H.centroid();
    double sh = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const Vec3 u0 = xs0[i];
      if (u0.norm() <= 1e-9 * diam) continue;
      const Vec3 u1 = H.nodes()[perm[i]].x - c1;
      for (int l = 1; l <= 6; ++l) {
        const Eigen::MatrixXd rho = steerable::o3_representation(l, (l % 2 == 0) ? 1 : -1, R);
        sh = std::max(sh, rel_diff(steerable::sph_harm_values(l, u1), rho * steerable::sph_harm_values(l, u0), 1.0));
      }
    }
    record("spherical_harmonics", sh);

    try {
      const auto basis1 = common_basis_features(H, std::vector<int>{0, 1, 2, 3}, 2);
      double v = 0.0;
      for (const auto& [key, f0] : basis0) {
        const Eigen::MatrixXd rho = steerable::o3_representation(f0.degree, f0.parity, R);
        const double scale = std::max(1.0, f0.values.norm());
        v = std::max(v, rel_diff(basis1.at(key).values, rho * f0.values, scale));
      }
      record("common_basis_features", v);
    } catch (const InvalidArgument&) {
      skip("common_basis_features");
    }

    if (have_group) {
      double v = 0.0;
      for (int l = 1; l <= 2; ++l) {
        const SubspaceBasis f = steerable_subspace(H, l);
        const Eigen::MatrixXd p1 = f.columns * f.columns.transpose();
        const Eigen::MatrixXd rho = steerable::o3_representation(l, (l % 2 == 0) ? 1 : -1, R);
        const Eigen::MatrixXd want = rho * proj0[l - 1] * rho.transpose();
        if (p1.rows() != want.rows()) {
          v = 1.0;
          continue;
        }
        v = std::max(v, (p1 - want).cwiseAbs().maxCoeff());
      }
      record("steerable_subspace", v);
    } else {
      skip("steerable_subspace");
    }

    {
      const ForwardResult fwd1 = egnn_cpl_forward(H, color_nodes(H, ColorMethod::kCenter));
      double v = (fwd1.readout - g.apply(fwd0.readout)).cwiseAbs().maxCoeff() / diam;
      for (std::size_t i = 0; i < n; ++i) {
        const Vec3 want = g.apply(fwd0.positions.row(i).transpose());
        v = std::max(v, (fwd1.positions.row(perm[i]).transpose() - want).cwiseAbs().maxCoeff() / diam);
        const double fs = std::max(1.0, fwd0.features[i].cwiseAbs().maxCoeff());
        v = std::max(v, rel_diff(fwd1.features[perm[i]], fwd0.features[i], fs));
      }
      record("egnn_cpl_forward", v);
    }

    {
      std::vector<Vec3> xs1;
      for (const Node& nd : H.nodes()) xs1.push_back(nd.x - c1);
      const auto tensor1 = steerable::decompose_symmetric_tensor(xs1);
      double v = 0.0;
      for (const auto& [l, f0] : tensor0) {
        const Eigen::MatrixXd rho = steerable::o3_representation(l, f0.parity, R);
        v = std::max(v, rel_diff(tensor1.at(l).values, rho * f0.values, std::max(1.0, diam * diam * n)));
      }
      record("symmetric_tensor", v);
    }

    {
      const double m3_1 = corpus::chirality_moment3(H);
      record("chirality_moment3", std::abs(m3_1 - detR * m3_0) / std::max(1.0, std::abs(m3_0)));
    }
  }

  std::vector<Violation> out;
  for (auto& [k, v] : acc) out.push_back(v);
  return out;
}

int cmd_equivariance(const EquivarianceOptions& opt, std::ostream& out, std::ostream& err) {
  try {
    if (opt.trials < 0) throw InvalidArgument("--trials must be non-negative");
    const GeometricGraph g = io::read_graph(opt.file);
    if (opt.trials == 0) {
      err << "warning: --trials 0, nothing to check\n";
      out << "trials: 0\nresult: pass (vacuous)\n";
      return kOk;
    }
    const auto report = equivariance_report(g, opt);
    bool ok = true;
    out << "trials: " << opt.trials << "\n";
    for (const Violation& v : report) {
      const bool bad = v.max_violation > opt.threshold;
      ok = ok && !bad;
      out << std::left << std::setw(24) << v.operation << " max_violation=" << std::scientific
          << std::setprecision(3) << v.max_violation << std::defaultfloat;
      if (v.skipped > 0) out << " skipped=" << v.skipped;
      out << (bad ? " FAIL" : " ok") << "\n";
    }
    out << "result: " << (ok ? "pass" : "fail") << "\n";
    return ok ? kOk : kFalse;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
}

// ---------------------------------------------------------------------------
// Benchmark

GeometricGraph bench_graph(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  Points p(n, 3);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < 3; ++k) p(i, k) = uni(rng);
  return GeometricGraph::fully_connected(p);
}

std::vector<BenchRecord> run_bench(const BenchOptions& opt) {
  if (opt.reps < 3) throw InvalidArgument("--reps must be at least 3");
  if (opt.mode != "general" && opt.mode != "fast" && opt.mode != "both") {
    throw InvalidArgument("unknown mode '" + opt.mode + "' (general, fast, both)");
  }
  std::vector<std::string> algs;
  if (opt.mode != "fast") algs.push_back("general");
  if (opt.mode != "general") algs.push_back("fast");
  for (int n : opt.sizes) {
    if (n < 4) throw InvalidArgument("bench sizes must be >= 4");
    if (opt.mode != "fast" && n > 16) throw InvalidArgument("general mode is limited to N <= 16");
    if (n > 1024) throw InvalidArgument("fast mode is limited to N <= 1024");
  }
  std::vector<BenchRecord> out;
  for (const std::string& alg : algs) {
    for (int n : opt.sizes) {
      const GeometricGraph g = bench_graph(n, opt.seed + static_cast<std::uint64_t>(n));
      std::vector<double> times;
      for (int r = 0; r < opt.reps; ++r) {
        const auto t0 = std::chrono::steady_clock::now();
        const CanonicalDigest d = alg == "general" ? general_canonical_form(g) : fast_canonical_form(g);
        const auto t1 = std::chrono::steady_clock::now();
        if (d.nodes != g.size()) throw Error("benchmark digest is inconsistent");
        times.push_back(std::chrono::duration<double>(t1 - t0).count());
      }
      std::sort(times.begin(), times.end());
      out.push_back({alg, n, times[times.size() / 2], opt.reps});
    }
  }
  return out;
}

double loglog_slope(const std::vector<BenchRecord>& rec) {
  if (rec.size() < 2) throw InvalidArgument("slope needs at least two sizes");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double m = static_cast<double>(rec.size());
  for (const BenchRecord& r : rec) {
    const double x = std::log(static_cast<double>(r.n)), y = std::log(std::max(r.seconds, 1e-12));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

int cmd_bench(const BenchOptions& opt, std::ostream& out, std::ostream& err) {
  std::vector<BenchRecord> rec;
  try {
    rec = run_bench(opt);
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
  out << "algorithm,N,seconds\n";
  for (const BenchRecord& r : rec) {
    out << r.algorithm << "," << r.n << "," << std::scientific << std::setprecision(6) << r.seconds
        << std::defaultfloat << "\n";
  }
  for (const std::string alg : {"general", "fast"}) {
    std::vector<BenchRecord> sub;
    for (const BenchRecord& r : rec)
      if (r.algorithm == alg) sub.push_back(r);
    if (sub.size() >= 2) err << "slope " << alg << ": " << std::fixed << std::setprecision(3) << loglog_slope(sub) << "\n";
  }
  return kOk;
}

// ---------------------------------------------------------------------------
// Generators

int cmd_gen(const GenOptions& opt, std::ostream& out, std::ostream& err) {
  try {
    if (opt.out.empty()) throw InvalidArgument("--out is required");
    if (opt.count < 1) throw InvalidArgument("--count must be positive");
    std::filesystem::create_directories(opt.out);
    json manifest;
    std::size_t files = 0;
    if (opt.what == "corpus") {
      manifest["pairs"] = json::array();
      manifest["graphs"] = json::array();
      for (int k = 0; k < opt.count; ++k) {
        const std::uint64_t seed = opt.seed + static_cast<std::uint64_t>(k);
        const std::string prefix = opt.count > 1 ? "c" + std::to_string(k) + "_" : "";
        for (const corpus::LabeledPair& p : corpus::corpus_pairs(seed)) {
          const std::string a = prefix + p.source + "_a.json", b = prefix + p.source + "_b.json";
          io::write_graph(opt.out / a, p.first);
          io::write_graph(opt.out / b, p.second);
          files += 2;
          manifest["pairs"].push_back({{"a", a}, {"b", b}, {"isomorphic", p.ground_truth_isomorphic}, {"source", p.source}});
        }
        const std::vector<std::pair<std::string, GeometricGraph>> singles = {
            {"square_cone", corpus::square_cone()},
            {"regular_tetrahedron", corpus::regular_tetrahedron()},
            {"unit_circle_m3", corpus::unit_circle_counterexample(seed, 3)}};
        for (const auto& [name, g] : singles) {
          const std::string f = prefix + name + ".json";
          io::write_graph(opt.out / f, g);
          ++files;
          manifest["graphs"].push_back({{"file", f}, {"source", name}});
        }
      }
    } else if (opt.what == "tetra") {
      manifest["samples"] = json::array();
      for (int k = 0; k < opt.count; ++k) {
        const corpus::TetrahedronSample s = corpus::random_tetrahedron(opt.seed * 1000003ULL + static_cast<std::uint64_t>(k));
        Points p(4, 3);
        for (int r = 0; r < 4; ++r) p.row(r) = s.vertices[r].transpose();
        std::ostringstream name;
        name << "tetra_" << std::setw(5) << std::setfill('0') << k << ".json";
        io::write_graph(opt.out / name.str(), GeometricGraph::fully_connected(p));
        ++files;
        manifest["samples"].push_back({{"file", name.str()},
                                       {"radius", s.radius},
                                       {"circumradius", corpus::circumradius(s.vertices)},
                                       {"monge", vec_json(s.monge)},
                                       {"twelve_point", vec_json(s.twelve_point)},
                                       {"incenter", vec_json(s.incenter)}});
      }
    } else {
      throw InvalidArgument("unknown --what '" + opt.what + "' (corpus, tetra)");
    }
    write_text(opt.out / "manifest.json", manifest.dump(2) + "\n");
    out << "wrote " << files << " graph files and manifest.json to " << opt.out.string() << "\n";
    return kOk;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
}

}  // namespace geoequiv::cli
