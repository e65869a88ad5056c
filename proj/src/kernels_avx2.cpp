// AVX2 variants. Compiled with -mavx2 only (no -mfma) so mul/add stay
// separate and results match the scalar kernels bit for bit.

#include <immintrin.h>

#include <algorithm>
#include <cmath>

#include "geoequiv/kernels.hpp"

namespace geoequiv::kernels {
namespace {

inline __m256d dist4(__m256d dx, __m256d dy, __m256d dz) {
  const __m256d s = _mm256_add_pd(_mm256_add_pd(_mm256_mul_pd(dx, dx), _mm256_mul_pd(dy, dy)),
                                  _mm256_mul_pd(dz, dz));
  return _mm256_sqrt_pd(s);
}

inline double dist1(double dx, double dy, double dz) {
  return std::sqrt((dx * dx + dy * dy) + dz * dz);
}

void distances_to_refs_avx2(PointsView pts, const Ref4& refs, std::span<double> out) {
  const std::size_t n = pts.size();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d px = _mm256_loadu_pd(pts.x.data() + i);
    const __m256d py = _mm256_loadu_pd(pts.y.data() + i);
    const __m256d pz = _mm256_loadu_pd(pts.z.data() + i);
    __m256d d[4];
    for (int k = 0; k < 4; ++k) {
      d[k] = dist4(_mm256_sub_pd(px, _mm256_set1_pd(refs[k][0])),
                   _mm256_sub_pd(py, _mm256_set1_pd(refs[k][1])),
                   _mm256_sub_pd(pz, _mm256_set1_pd(refs[k][2])));
    }
    // 4x4 transpose: rows are refs, we want rows per point.
    const __m256d t0 = _mm256_unpacklo_pd(d[0], d[1]);
    const __m256d t1 = _mm256_unpackhi_pd(d[0], d[1]);
    const __m256d t2 = _mm256_unpacklo_pd(d[2], d[3]);
    const __m256d t3 = _mm256_unpackhi_pd(d[2], d[3]);
    _mm256_storeu_pd(out.data() + (i + 0) * 4, _mm256_permute2f128_pd(t0, t2, 0x20));
    _mm256_storeu_pd(out.data() + (i + 1) * 4, _mm256_permute2f128_pd(t1, t3, 0x20));
    _mm256_storeu_pd(out.data() + (i + 2) * 4, _mm256_permute2f128_pd(t0, t2, 0x31));
    _mm256_storeu_pd(out.data() + (i + 3) * 4, _mm256_permute2f128_pd(t1, t3, 0x31));
  }
  for (; i < n; ++i) {
    for (std::size_t k = 0; k < 4; ++k) {
      out[i * 4 + k] = dist1(pts.x[i] - refs[k][0], pts.y[i] - refs[k][1], pts.z[i] - refs[k][2]);
    }
  }
}

void pairwise_distances_avx2(PointsView pts, std::span<double> out) {
  const std::size_t n = pts.size();
  for (std::size_t i = 0; i < n; ++i) {
    const __m256d xi = _mm256_set1_pd(pts.x[i]);
    const __m256d yi = _mm256_set1_pd(pts.y[i]);
    const __m256d zi = _mm256_set1_pd(pts.z[i]);
    double* row = out.data() + i * n;
    std::size_t j = 0;
    for (; j + 4 <= n; j += 4) {
      const __m256d d = dist4(_mm256_sub_pd(_mm256_loadu_pd(pts.x.data() + j), xi),
                              _mm256_sub_pd(_mm256_loadu_pd(pts.y.data() + j), yi),
                              _mm256_sub_pd(_mm256_loadu_pd(pts.z.data() + j), zi));
      _mm256_storeu_pd(row + j, d);
    }
    for (; j < n; ++j) {
      row[j] = dist1(pts.x[j] - pts.x[i], pts.y[j] - pts.y[i], pts.z[j] - pts.z[i]);
    }
  }
}

double max_pairwise_distance_avx2(PointsView pts) {
  const std::size_t n = pts.size();
  double best = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const __m256d xi = _mm256_set1_pd(pts.x[i]);
    const __m256d yi = _mm256_set1_pd(pts.y[i]);
    const __m256d zi = _mm256_set1_pd(pts.z[i]);
    __m256d acc = _mm256_setzero_pd();
    std::size_t j = i + 1;
    for (; j + 4 <= n; j += 4) {
      const __m256d d = dist4(_mm256_sub_pd(_mm256_loadu_pd(pts.x.data() + j), xi),
                              _mm256_sub_pd(_mm256_loadu_pd(pts.y.data() + j), yi),
                              _mm256_sub_pd(_mm256_loadu_pd(pts.z.data() + j), zi));
      acc = _mm256_max_pd(acc, d);
    }
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, acc);
    best = std::max({best, lanes[0], lanes[1], lanes[2], lanes[3]});
    for (; j < n; ++j) {
      best = std::max(best, dist1(pts.x[j] - pts.x[i], pts.y[j] - pts.y[i], pts.z[j] - pts.z[i]));
    }
  }
  return best;
}

}  // namespace

const KernelTable& avx2_table() {
  static const KernelTable table{Isa::kAvx2, "avx2", &distances_to_refs_avx2,
                                 &pairwise_distances_avx2, &max_pairwise_distance_avx2};
  return table;
}

}  // namespace geoequiv::kernels
