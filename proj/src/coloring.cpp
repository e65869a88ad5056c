#include "geoequiv/coloring.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "geoequiv/canonical.hpp"
#include "geoequiv/digest.hpp"
#include "geoequiv/error.hpp"
#include "geoequiv/steerable.hpp"

namespace geoequiv {
namespace {

struct Radial {
  Points xc;                 // x_i - x_c
  std::vector<double> r;     // |x_ic|
  double diam = 0.0;
  std::vector<bool> at_center;
};

Radial radial(const GeometricGraph& G) {
  Radial out;
  const Decentered d = decenter(G);
  out.xc = d.graph.positions();
  out.diam = G.diameter();
  const std::size_t n = G.size();
  out.r.resize(n);
  out.at_center.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    out.r[i] = out.xc.row(i).norm();
    out.at_center[i] = out.r[i] <= 1e-12 * std::max(out.diam, 1e-300);
  }
  return out;
}

double scaled(double dist, double diam) { return diam > 0.0 ? dist / diam : 0.0; }

Eigen::VectorXd append(const Eigen::VectorXd& a, const std::vector<double>& extra) {
  Eigen::VectorXd out(a.size() + static_cast<Eigen::Index>(extra.size()));
  out.head(a.size()) = a;
  for (std::size_t k = 0; k < extra.size(); ++k) out[a.size() + static_cast<Eigen::Index>(k)] = extra[k];
  return out;
}

double hash_to_unit(const Hash256& h) {
  std::uint64_t v = 0;
  for (int k = 0; k < 8; ++k) v = (v << 8) | h[k];
  return static_cast<double>(v >> 11) * 0x1.0p-53;
}

}  // namespace

std::string to_string(ColorMethod m) {
  switch (m) {
    case ColorMethod::kNone: return "none";
    case ColorMethod::kCenter: return "center";
    case ColorMethod::kTensor: return "tensor";
    case ColorMethod::kRefined: return "refined";
    case ColorMethod::kIndividualized: return "individualized";
  }
  return "unknown";
}

std::string Coloring::tag() const {
  if (method != ColorMethod::kTensor) return to_string(method);
  std::ostringstream os;
  os << "tensor(L=" << max_degree << ",order=" << order << ")";
  return os.str();
}

double color_sigma(double t) { return std::tanh(t); }

bool colors_distinct(const std::vector<Eigen::VectorXd>& colors, double tol) {
  for (std::size_t i = 0; i < colors.size(); ++i) {
    for (std::size_t j = i + 1; j < colors.size(); ++j) {
      const Eigen::VectorXd& a = colors[i];
      const Eigen::VectorXd& b = colors[j];
      if (a.size() != b.size()) continue;
      bool differ = false;
      for (Eigen::Index k = 0; k < a.size() && !differ; ++k) differ = std::abs(a[k] - b[k]) > tol;
      if (!differ) return false;
    }
  }
  return true;
}

std::vector<Eigen::VectorXd> global_steerable_features(const GeometricGraph& G, int L) {
  const Radial rad = radial(G);
  const std::size_t n = G.size();
  std::vector<Eigen::VectorXd> g(L + 1);
  for (int l = 0; l <= L; ++l) g[l] = Eigen::VectorXd::Zero(2 * l + 1);
  std::vector<Eigen::VectorXd> y;
  for (std::size_t i = 0; i < n; ++i) {
    const double w = color_sigma(scaled(rad.r[i], rad.diam));
    if (rad.at_center[i]) {
      g[0][0] += w * steerable::sph_harm_values(0, Vec3::UnitZ())[0];
      continue;
    }
    steerable::sph_harm_upto(L, rad.xc.row(i).transpose(), y);
    for (int l = 0; l <= L; ++l) g[l] += w * y[l];
  }
  if (n > 0) {
    for (auto& v : g) v /= static_cast<double>(n);
  }
  return g;
}

Coloring color_nodes(const GeometricGraph& G, ColorMethod method, int L, int order) {
  Coloring c;
  c.method = method;
  const std::size_t n = G.size();
  c.colors.reserve(n);
  if (method == ColorMethod::kNone) {
    for (const Node& nd : G.nodes()) c.colors.push_back(nd.h);
    c.distinct = colors_distinct(c.colors);
    return c;
  }
  if (method != ColorMethod::kCenter && method != ColorMethod::kTensor) {
    throw InvalidArgument("color_nodes supports none, center and tensor");
  }
  const Radial rad = radial(G);
  if (method == ColorMethod::kCenter) {
    for (std::size_t i = 0; i < n; ++i) {
      c.colors.push_back(append(G.nodes()[i].h, {color_sigma(scaled(rad.r[i], rad.diam))}));
    }
    c.distinct = colors_distinct(c.colors);
    return c;
  }

  if (L < 1 || L > steerable::kDefaultMaxDegree) throw InvalidArgument("tensor coloring needs 1 <= L <= 8");
  if (order != 2 && order != 3) throw InvalidArgument("tensor coloring order must be 2 or 3");
  c.max_degree = L;
  c.order = order;
  const std::vector<Eigen::VectorXd> g = global_steerable_features(G, L);

  // Degree-l partners contracted against Y^(l)(u_i).
  struct Partner {
    int l;
    Eigen::VectorXd v;
  };
  std::vector<Partner> partners;
  for (int l = 1; l <= L; ++l) partners.push_back({l, g[l]});
  if (order == 3) {
    for (int l1 = 1; l1 <= L; ++l1) {
      for (int l2 = l1; l2 <= L; ++l2) {
        for (int l = std::max(1, l2 - l1); l <= std::min(L, l1 + l2); ++l) {
          if ((l1 + l2 + l) % 2 != 0) continue;
          partners.push_back({l, steerable::cg_table(l1, l2, l).contract(g[l1], g[l2])});
        }
      }
    }
  }

  std::vector<Eigen::VectorXd> y;
  std::vector<double> extra;
  for (std::size_t i = 0; i < n; ++i) {
    extra.assign(1, color_sigma(scaled(rad.r[i], rad.diam)));
    if (rad.at_center[i]) {
      extra.resize(1 + partners.size(), 0.0);
    } else {
      steerable::sph_harm_upto(L, rad.xc.row(i).transpose(), y);
      for (const Partner& p : partners) extra.push_back(p.v.dot(y[p.l]));
    }
    c.colors.push_back(append(G.nodes()[i].h, extra));
  }
  c.distinct = colors_distinct(c.colors);
  return c;
}

Coloring refine_by_distances(const GeometricGraph& G, const Coloring& start, const Tolerance& tol) {
  const std::size_t n = G.size();
  Coloring out = start;
  out.method = ColorMethod::kRefined;
  if (n < 2) {
    out.distinct = true;
    return out;
  }
  const Points x = G.positions();
  const kernels::PointsSoA soa = to_soa(x);
  std::vector<double> d(n * n);
  kernels::active().pairwise_distances(soa.view(), d);
  const Quantum qz = quantum_for(*std::max_element(d.begin(), d.end()), tol.rel);

  std::vector<Hash256> label(n);
  for (std::size_t i = 0; i < n; ++i) {
    label[i] = HashBuilder().add(std::span<const std::int64_t>(quantize(start.colors[i], kColorTol))).finish();
  }
  auto count_classes = [](std::vector<Hash256> v) {
    std::sort(v.begin(), v.end());
    return static_cast<std::size_t>(std::unique(v.begin(), v.end()) - v.begin());
  };
  std::size_t classes = count_classes(label);
  std::vector<std::pair<Hash256, std::int64_t>> nb;
  for (std::size_t round = 0; round < n && classes < n; ++round) {
    std::vector<Hash256> next(n);
    for (std::size_t i = 0; i < n; ++i) {
      nb.clear();
      for (std::size_t j = 0; j < n; ++j) {
        if (j != i) nb.emplace_back(label[j], quantize(d[i * n + j], qz.step));
      }
      std::sort(nb.begin(), nb.end());
      HashBuilder hb;
      hb.add(label[i]);
      for (const auto& [h, q] : nb) hb.add(h).add(q);
      next[i] = hb.finish();
    }
    const std::size_t c2 = count_classes(next);
    label = std::move(next);
    if (c2 == classes) break;
    classes = c2;
  }
  for (std::size_t i = 0; i < n; ++i) out.colors[i] = append(start.colors[i], {hash_to_unit(label[i])});
  out.distinct = classes == n && colors_distinct(out.colors);
  return out;
}

const std::vector<LadderStep>& coloring_ladder() {
  static const std::vector<LadderStep> steps = {
      {ColorMethod::kCenter, 0, 0},    {ColorMethod::kTensor, 2, 2}, {ColorMethod::kTensor, 3, 2},
      {ColorMethod::kTensor, 4, 2},    {ColorMethod::kTensor, 3, 3}, {ColorMethod::kTensor, 4, 3},
  };
  return steps;
}

namespace {

// Coplanar graphs: identity plus the reflection through their plane.
SymmetryGroup planar_group(const GeometricGraph& G) {
  const Points xc = decenter(G).graph.positions();
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(Eigen::MatrixXd(xc), Eigen::ComputeFullV);
  const Vec3 normal = svd.matrixV().col(2);
  const Mat3 mirror = Mat3::Identity() - 2.0 * normal * normal.transpose();
  SymmetryGroup grp;
  grp.elements.push_back({EuclideanTransform(), Permutation::identity(G.size())});
  grp.elements.push_back({EuclideanTransform(mirror), Permutation::identity(G.size())});
  grp.closed = true;
  return grp;
}

}  // namespace

ColoringResult unique_coloring(const GeometricGraph& G, const Tolerance& tol) {
  Coloring best;
  for (const LadderStep& s : coloring_ladder()) {
    best = color_nodes(G, s.method, s.L, s.order);
    if (best.distinct) return best;
  }
  best = refine_by_distances(G, best, tol);
  if (best.distinct) return best;

  const Points x = G.positions();
  if (!find_noncoplanar_quadruple(x, tol.rel)) return SymmetricReport{planar_group(G), best};
  SymmetryGroup grp = symmetry_group(G, tol);
  if (!grp.trivial()) return SymmetricReport{std::move(grp), best};

  // Asymmetric but still tied: mark each node in turn and use the general
  // canonical digest of the marked graph as its color.
  Coloring ind = best;
  ind.method = ColorMethod::kIndividualized;
  const std::size_t n = G.size();
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Eigen::VectorXd> feats;
    feats.reserve(n);
    for (std::size_t j = 0; j < n; ++j) feats.push_back(append(G.nodes()[j].h, {j == i ? 1.0 : 0.0}));
    CanonicalOptions opt;
    opt.tol = tol;
    const CanonicalDigest dg = general_canonical_form(G.with_features(std::move(feats)), opt);
    ind.colors[i] = append(best.colors[i], {hash_to_unit(dg.combined)});
  }
  ind.distinct = colors_distinct(ind.colors);
  return ind;
}

}  // namespace geoequiv
