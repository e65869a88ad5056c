#include <cmath>
#include <random>
#include <sstream>

#include "geoequiv/coloring.hpp"
#include "geoequiv/error.hpp"

namespace geoequiv {

VirtualNodes generate_virtual_nodes(const GeometricGraph& G, const Coloring& coloring,
                                    std::uint64_t seed, int attempt) {
  const std::size_t n = G.size();
  if (n == 0) throw InvalidArgument("virtual nodes need at least one node");
  if (coloring.colors.size() != n) throw InvalidArgument("coloring does not match the graph");
  const Eigen::Index dim = coloring.colors[0].size();
  for (const auto& c : coloring.colors) {
    if (c.size() != dim) throw InvalidArgument("colors must share one width");
  }

  // Per-column max-abs scaling; near-constant-zero columns are dropped.
  Eigen::VectorXd inv_scale = Eigen::VectorXd::Zero(dim);
  for (Eigen::Index k = 0; k < dim; ++k) {
    double m = 0.0;
    for (const auto& c : coloring.colors) m = std::max(m, std::abs(c[k]));
    inv_scale[k] = m < 1e-6 ? 0.0 : 1.0 / m;
  }

  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(attempt), static_cast<std::uint32_t>(dim)};
  std::mt19937_64 rng(seq);
  std::normal_distribution<double> wdist(0.0, 2.0), bdist(0.0, 1.0);
  Eigen::MatrixXd W(4, dim);
  for (Eigen::Index r = 0; r < 4; ++r) {
    for (Eigen::Index k = 0; k < dim; ++k) W(r, k) = wdist(rng);
  }
  Eigen::Vector4d b;
  for (int r = 0; r < 4; ++r) b[r] = bdist(rng);

  const Vec3 xc = G.centroid();
  Eigen::Matrix<double, 4, 3> acc = Eigen::Matrix<double, 4, 3>::Zero();
  for (std::size_t i = 0; i < n; ++i) {
    const Eigen::VectorXd ct = coloring.colors[i].cwiseProduct(inv_scale);
    const Eigen::Vector4d phi = (W * ct + b).array().tanh().matrix();
    const Vec3 rel = G.nodes()[i].x - xc;
    acc += phi * rel.transpose();
  }
  VirtualNodes vn;
  for (int k = 0; k < 4; ++k) vn.Z.row(k) = xc.transpose() + acc.row(k) / static_cast<double>(n);
  Mat3 e;
  for (int k = 0; k < 3; ++k) e.col(k) = (vn.Z.row(k + 1) - vn.Z.row(0)).transpose();
  vn.noncoplanarity = std::abs(e.determinant());
  vn.attempt = attempt;
  return vn;
}

VirtualNodes separable_virtual_nodes(const GeometricGraph& G, const Coloring& coloring,
                                     std::uint64_t seed) {
  const double diam = G.diameter();
  const double threshold = kVirtualNodeVolumeRel * diam * diam * diam;
  double best = 0.0;
  for (int attempt = 0; attempt < kVirtualNodeAttempts; ++attempt) {
    VirtualNodes vn = generate_virtual_nodes(G, coloring, seed, attempt);
    if (vn.noncoplanarity > threshold && diam > 0.0) return vn;
    best = std::max(best, vn.noncoplanarity);
  }
  std::ostringstream os;
  os << "virtual nodes are coplanar under " << coloring.tag() << " coloring (|det| = " << best
     << " after " << kVirtualNodeAttempts << " attempts); use the general canonical form";
  throw CoplanarVirtualNodes(os.str(), best);
}

}  // namespace geoequiv
