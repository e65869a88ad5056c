#pragma once

// Data-parallel distance kernels. Every kernel has a scalar reference
// implementation plus optional AVX2 / NEON variants; the variant is chosen
// once at runtime. All variants evaluate the same expression
//   sqrt((dx*dx + dy*dy) + dz*dz)
// without fused multiply-add, so their outputs are bitwise identical.

#include <array>
#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

namespace geoequiv::kernels {

/// Structure-of-arrays view of N points.
struct PointsView {
  std::span<const double> x;
  std::span<const double> y;
  std::span<const double> z;
  std::size_t size() const noexcept { return x.size(); }
};

/// Owning SoA buffer.
struct PointsSoA {
  std::vector<double> x, y, z;

  PointsSoA() = default;
  explicit PointsSoA(std::size_t n) : x(n), y(n), z(n) {}
  PointsView view() const noexcept { return {x, y, z}; }
  std::size_t size() const noexcept { return x.size(); }
};

using Ref4 = std::array<std::array<double, 3>, 4>;

enum class Isa { kScalar, kAvx2, kNeon };

struct KernelTable {
  Isa isa;
  std::string_view name;
  /// out[i*4 + k] = |p_i - ref_k|; out.size() == 4N.
  void (*distances_to_refs)(PointsView pts, const Ref4& refs, std::span<double> out);
  /// out[i*N + j] = |p_i - p_j|; out.size() == N*N.
  void (*pairwise_distances)(PointsView pts, std::span<double> out);
  /// max_{i<j} |p_i - p_j|, 0 for N < 2.
  double (*max_pairwise_distance)(PointsView pts);
};

/// Kernel set used by the library. Honors GEOEQUIV_KERNELS=scalar|avx2|neon.
const KernelTable& active();

/// Every variant compiled in and supported by the running CPU.
std::vector<const KernelTable*> available();

const KernelTable& scalar_table();

}  // namespace geoequiv::kernels
