#include <algorithm>
#include <cmath>

#include "geoequiv/kernels.hpp"

namespace geoequiv::kernels {
namespace {

inline double dist(double dx, double dy, double dz) {
  return std::sqrt((dx * dx + dy * dy) + dz * dz);
}

void distances_to_refs_scalar(PointsView pts, const Ref4& refs, std::span<double> out) {
  const std::size_t n = pts.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < 4; ++k) {
      out[i * 4 + k] = dist(pts.x[i] - refs[k][0], pts.y[i] - refs[k][1], pts.z[i] - refs[k][2]);
    }
  }
}

void pairwise_distances_scalar(PointsView pts, std::span<double> out) {
  const std::size_t n = pts.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      out[i * n + j] = dist(pts.x[j] - pts.x[i], pts.y[j] - pts.y[i], pts.z[j] - pts.z[i]);
    }
  }
}

double max_pairwise_distance_scalar(PointsView pts) {
  const std::size_t n = pts.size();
  double best = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      best = std::max(best, dist(pts.x[j] - pts.x[i], pts.y[j] - pts.y[i], pts.z[j] - pts.z[i]));
    }
  }
  return best;
}

}  // namespace

const KernelTable& scalar_table() {
  static const KernelTable table{Isa::kScalar, "scalar", &distances_to_refs_scalar,
                                 &pairwise_distances_scalar, &max_pairwise_distance_scalar};
  return table;
}

}  // namespace geoequiv::kernels
