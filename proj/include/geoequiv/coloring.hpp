#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "geoequiv/geometry.hpp"
#include "geoequiv/isomorphism.hpp"

namespace geoequiv {

enum class ColorMethod {
  kNone,    // input features only
  kCenter,  // append sigma(|x_ic| / diam)
  kTensor,  // center plus CG contractions with global steerable features
  kRefined, // distance-signature refinement on top of the best tensor coloring
  kIndividualized,
};

std::string to_string(ColorMethod m);

/// Absolute tolerance used to decide whether two colors are distinct.
inline constexpr double kColorTol = 1e-6;

struct Coloring {
  std::vector<Eigen::VectorXd> colors;  // one invariant vector per node
  ColorMethod method = ColorMethod::kNone;
  int max_degree = 0;  // L, tensor method only
  int order = 0;       // correlation order, tensor method only
  bool distinct = false;

  /// Short stable label, e.g. "tensor(L=3,order=2)".
  std::string tag() const;
};

/// sigma(t) = tanh(t), t = distance / diameter.
double color_sigma(double t);

/// All pairs of colors differ somewhere by more than `tol`.
bool colors_distinct(const std::vector<Eigen::VectorXd>& colors, double tol = kColorTol);

/// Node colorings. Works on the decentered geometry; `L` and `order`
/// (2 or 3) are used by kTensor only.
Coloring color_nodes(const GeometricGraph& G, ColorMethod method, int L = 3, int order = 2);

/// Global degree-l features g^(l) = (1/N) sum sigma(r_i / diam) Y^(l)(u_i),
/// l = 0..L. Nodes at the centroid contribute nothing for l >= 1.
std::vector<Eigen::VectorXd> global_steerable_features(const GeometricGraph& G, int L);

/// One WL-style round set: colors are refined by the multiset of
/// (neighbor color, quantized distance) until the class count is stable.
Coloring refine_by_distances(const GeometricGraph& G, const Coloring& start,
                             const Tolerance& tol = {});

struct SymmetricReport {
  SymmetryGroup group;
  Coloring best;  // the most refined coloring reached
};

using ColoringResult = std::variant<Coloring, SymmetricReport>;

/// Escalation ladder: center, tensor (L, order) in (2,2) (3,2) (4,2) (3,3)
/// (4,3), distance refinement; then either a symmetric report or an
/// individualization coloring for asymmetric graphs.
ColoringResult unique_coloring(const GeometricGraph& G, const Tolerance& tol = {});

/// The (method, L, order) steps tried by unique_coloring before refinement.
struct LadderStep {
  ColorMethod method;
  int L;
  int order;
};
const std::vector<LadderStep>& coloring_ladder();

// ---------------------------------------------------------------------------
// Virtual nodes

inline constexpr std::uint64_t kVirtualNodeSeed = 0x5eed'c0de'2024'0001ULL;
inline constexpr int kVirtualNodeAttempts = 8;
/// Virtual nodes count as non-coplanar when |det| > this * diam^3.
inline constexpr double kVirtualNodeVolumeRel = 1e-9;

using VirtualFrame = Eigen::Matrix<double, 4, 3, Eigen::RowMajor>;

struct VirtualNodes {
  VirtualFrame Z;
  double noncoplanarity = 0.0;  // |det(Z2 - Z1, Z3 - Z1, Z4 - Z1)|
  int attempt = 0;
};

/// Z_k = x_c + (1/N) sum phi_k(c_i) (x_i - x_c), with phi = tanh(W c + b)
/// drawn from (seed, attempt, color width). Coplanar output is legal.
VirtualNodes generate_virtual_nodes(const GeometricGraph& G, const Coloring& coloring,
                                    std::uint64_t seed = kVirtualNodeSeed, int attempt = 0);

/// Retries derived seeds until |det| > kVirtualNodeVolumeRel * diam^3;
/// throws CoplanarVirtualNodes after kVirtualNodeAttempts.
VirtualNodes separable_virtual_nodes(const GeometricGraph& G, const Coloring& coloring,
                                     std::uint64_t seed = kVirtualNodeSeed);

}  // namespace geoequiv
