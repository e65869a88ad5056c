// NEON (AArch64) variants; two doubles per lane group.

#include <arm_neon.h>

#include <algorithm>
#include <cmath>

#include "geoequiv/kernels.hpp"

namespace geoequiv::kernels {
namespace {

inline float64x2_t dist2(float64x2_t dx, float64x2_t dy, float64x2_t dz) {
  const float64x2_t s = vaddq_f64(vaddq_f64(vmulq_f64(dx, dx), vmulq_f64(dy, dy)), vmulq_f64(dz, dz));
  return vsqrtq_f64(s);
}

inline double dist1(double dx, double dy, double dz) {
  return std::sqrt((dx * dx + dy * dy) + dz * dz);
}

void distances_to_refs_neon(PointsView pts, const Ref4& refs, std::span<double> out) {
  const std::size_t n = pts.size();
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const float64x2_t px = vld1q_f64(pts.x.data() + i);
    const float64x2_t py = vld1q_f64(pts.y.data() + i);
    const float64x2_t pz = vld1q_f64(pts.z.data() + i);
    for (std::size_t k = 0; k < 4; ++k) {
      const float64x2_t d = dist2(vsubq_f64(px, vdupq_n_f64(refs[k][0])),
                                  vsubq_f64(py, vdupq_n_f64(refs[k][1])),
                                  vsubq_f64(pz, vdupq_n_f64(refs[k][2])));
      out[i * 4 + k] = vgetq_lane_f64(d, 0);
      out[(i + 1) * 4 + k] = vgetq_lane_f64(d, 1);
    }
  }
  for (; i < n; ++i) {
    for (std::size_t k = 0; k < 4; ++k) {
      out[i * 4 + k] = dist1(pts.x[i] - refs[k][0], pts.y[i] - refs[k][1], pts.z[i] - refs[k][2]);
    }
  }
}

void pairwise_distances_neon(PointsView pts, std::span<double> out) {
  const std::size_t n = pts.size();
  for (std::size_t i = 0; i < n; ++i) {
    const float64x2_t xi = vdupq_n_f64(pts.x[i]);
    const float64x2_t yi = vdupq_n_f64(pts.y[i]);
    const float64x2_t zi = vdupq_n_f64(pts.z[i]);
    double* row = out.data() + i * n;
    std::size_t j = 0;
    for (; j + 2 <= n; j += 2) {
      vst1q_f64(row + j, dist2(vsubq_f64(vld1q_f64(pts.x.data() + j), xi),
                               vsubq_f64(vld1q_f64(pts.y.data() + j), yi),
                               vsubq_f64(vld1q_f64(pts.z.data() + j), zi)));
    }
    for (; j < n; ++j) {
      row[j] = dist1(pts.x[j] - pts.x[i], pts.y[j] - pts.y[i], pts.z[j] - pts.z[i]);
    }
  }
}

double max_pairwise_distance_neon(PointsView pts) {
  const std::size_t n = pts.size();
  double best = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const float64x2_t xi = vdupq_n_f64(pts.x[i]);
    const float64x2_t yi = vdupq_n_f64(pts.y[i]);
    const float64x2_t zi = vdupq_n_f64(pts.z[i]);
    float64x2_t acc = vdupq_n_f64(0.0);
    std::size_t j = i + 1;
    for (; j + 2 <= n; j += 2) {
      acc = vmaxq_f64(acc, dist2(vsubq_f64(vld1q_f64(pts.x.data() + j), xi),
                                 vsubq_f64(vld1q_f64(pts.y.data() + j), yi),
                                 vsubq_f64(vld1q_f64(pts.z.data() + j), zi)));
    }
    best = std::max({best, vgetq_lane_f64(acc, 0), vgetq_lane_f64(acc, 1)});
    for (; j < n; ++j) {
      best = std::max(best, dist1(pts.x[j] - pts.x[i], pts.y[j] - pts.y[i], pts.z[j] - pts.z[i]));
    }
  }
  return best;
}

}  // namespace

const KernelTable& neon_table() {
  static const KernelTable table{Isa::kNeon, "neon", &distances_to_refs_neon,
                                 &pairwise_distances_neon, &max_pairwise_distance_neon};
  return table;
}

}  // namespace geoequiv::kernels
