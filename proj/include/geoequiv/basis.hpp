#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "geoequiv/coloring.hpp"
#include "geoequiv/geometry.hpp"
#include "geoequiv/isomorphism.hpp"
#include "geoequiv/steerable.hpp"

namespace geoequiv {

/// Singular values below rel_cutoff * sigma_max count as zero.
inline constexpr double kRankCutoff = 1e-9;
std::size_t numerical_rank(const Eigen::MatrixXd& m, double rel_cutoff = kRankCutoff);

// ---------------------------------------------------------------------------
// Fixed subspace

struct SubspaceBasis {
  int degree = 0;
  Eigen::MatrixXd columns;  // (2l+1) x k, orthonormal
  std::size_t dim() const { return static_cast<std::size_t>(columns.cols()); }
};

/// (1/|H|) sum_h rho^{(l, (-1)^l)}(h); symmetric for a closed group.
Eigen::MatrixXd group_average(const SymmetryGroup& group, int l);

/// Unit-eigenvalue eigenvectors of the averaged representation.
SubspaceBasis steerable_subspace(const SymmetryGroup& group, int l);
SubspaceBasis steerable_subspace(const GeometricGraph& G, int l, const Tolerance& tol = {});

// ---------------------------------------------------------------------------
// Full-rank basis and the dynamic method

struct BasisMatrix {
  int degree = 0;
  int parity = 1;
  Eigen::MatrixXd columns;               // (2l+1) x C
  std::vector<std::string> provenance;   // one tag per column
  std::size_t rank = 0;
  std::size_t target = 0;
};

/// Degree-l spherical harmonics of the color-ordered node directions,
/// augmented by CG products of edge-direction pairs until the rank reaches
/// 2l+1 (distinct coloring) or the fixed-subspace dimension (otherwise).
/// Throws RankDeficiency if the target stays out of reach.
BasisMatrix full_rank_basis(const GeometricGraph& G, int l, const Coloring& coloring,
                            const Tolerance& tol = {});

struct WeightSolution {
  Eigen::VectorXd w;
  double residual = 0.0;  // |V w - target|
};

/// Minimum-norm least squares with the kRankCutoff SVD threshold.
WeightSolution solve_dynamic_weights(const Eigen::MatrixXd& V, const Eigen::VectorXd& target);
WeightSolution solve_dynamic_weights(const BasisMatrix& V, const steerable::SteerableVector& target);

// ---------------------------------------------------------------------------
// Common basis set

/// CG chain: inputs (l_1..l_nu), intermediates (nu - 2 of them for nu >= 3),
/// output degree.
struct CouplingPath {
  std::vector<int> inputs;
  std::vector<int> intermediates;
  int output = 0;

  std::vector<int> key() const;
  friend bool operator<(const CouplingPath& a, const CouplingPath& b) { return a.key() < b.key(); }
};

/// Every valid path with nondecreasing inputs and all degrees drawn from
/// `degrees` (outputs included).
std::vector<CouplingPath> coupling_paths(const std::vector<int>& degrees, int nu);

/// sum_i CG-chain(A_i^(l_1), ..., A_i^(l_nu)) with A_i^(l) = sum_{j in N(i)} Y^(l)(x_ij / |x_ij|).
std::map<std::vector<int>, steerable::SteerableVector> common_basis_features(
    const GeometricGraph& G, const std::vector<CouplingPath>& paths);
std::map<std::vector<int>, steerable::SteerableVector> common_basis_features(
    const GeometricGraph& G, const std::vector<int>& degrees, int nu);

// ---------------------------------------------------------------------------
// Single-layer EGNN with canonical-form features

/// M = 1_4 x^T - Z; flattened M M^T / |M M^T|_F (row-major 4x4).
Eigen::VectorXd gram_feature(const Vec3& x, const VirtualFrame& Z);

struct MessageInput {
  const Eigen::VectorXd& hi;
  const Eigen::VectorXd& hj;
  double d2;
  const Eigen::VectorXd& e;
  std::size_t i;
  std::size_t j;
};

using WeightFn = std::function<double(const MessageInput&)>;

/// tanh(a . [h_i, h_j, d2, e] + b) with coefficients drawn per position from `seed`.
WeightFn default_weight_fn(std::uint64_t seed = 0x9e3779b97f4a7c15ULL);

struct ForwardResult {
  Points positions;                     // x_i + sum_j w_ij x_ij
  std::vector<Eigen::VectorXd> features;  // [h_i, sum_j w_ij]
  Vec3 readout;                         // x_c + sum over edges w_ij x_ij
  VirtualNodes virtual_nodes;
};

/// h~_i = [color_i, gram_feature(x_i, Z)]; w_ij = weight_fn(h~_i, h~_j, |x_ij|^2, e_ij).
ForwardResult egnn_cpl_forward(const GeometricGraph& G, const Coloring& coloring,
                               const WeightFn& weight_fn = default_weight_fn());

/// Uncolored layer on a uniform graph; the readout collapses to x_c.
Vec3 uncolored_degeneration(const GeometricGraph& G_uniform,
                            const WeightFn& weight_fn = default_weight_fn());

}  // namespace geoequiv
