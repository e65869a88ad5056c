#pragma once

// Real spherical harmonics, Wigner-D matrices and Clebsch-Gordan coupling.
//
// Convention: orthonormal real harmonics, m ordered -l..l, no Condon-Shortley
// phase. Degree 1 is sqrt(3/4pi) * (y, z, x), so D^(1)(R) = P R P^T with P the
// fixed (x,y,z) -> (y,z,x) permutation.

#include <map>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "geoequiv/geometry.hpp"

namespace geoequiv::steerable {

inline constexpr int kDefaultMaxDegree = 8;

/// Degree-l feature with parity p in {+1, -1} (e / o).
struct SteerableVector {
  int degree = 0;
  int parity = 1;
  Eigen::VectorXd values;

  SteerableVector() : values(Eigen::VectorXd::Zero(1)) {}
  SteerableVector(int degree, int parity, Eigen::VectorXd values);

  static SteerableVector zero(int degree, int parity);
};

struct WignerMatrix {
  int degree = 0;
  Eigen::MatrixXd matrix;
};

/// Real CG coefficients Q^{(l,m)}_{(l1,m1),(l2,m2)}, dense (2l+1)x(2l1+1)x(2l2+1).
class CGTable {
 public:
  CGTable(int l1, int l2, int l, std::vector<double> coeffs);

  int l1() const noexcept { return l1_; }
  int l2() const noexcept { return l2_; }
  int l() const noexcept { return l_; }
  /// False when l lies outside [|l1-l2|, l1+l2]; the table is then all zeros.
  bool in_range() const noexcept { return in_range_; }

  /// Indices are offsets m+l, m1+l1, m2+l2.
  double at(int m, int m1, int m2) const {
    return coeffs_[(static_cast<std::size_t>(m) * (2 * l1_ + 1) + m1) * (2 * l2_ + 1) + m2];
  }
  const std::vector<double>& coeffs() const noexcept { return coeffs_; }

  /// v_m = sum Q_{m,m1,m2} a_{m1} b_{m2}.
  Eigen::VectorXd contract(const Eigen::VectorXd& a, const Eigen::VectorXd& b) const;

 private:
  int l1_, l2_, l_;
  bool in_range_;
  std::vector<double> coeffs_;
};

/// (x, y, z) -> (y, z, x): maps Cartesian vectors into the degree-1 m-order.
Mat3 degree1_basis();

/// Y^(l)(u), parity (-1)^l. Throws InvalidArgument for |u| != 1 (1e-9) or
/// l outside [0, max_degree].
SteerableVector real_sph_harm(int l, const Vec3& u, int max_degree = kDefaultMaxDegree);

/// Unchecked evaluation of Y^(0..L)(u / |u|); out[l] has length 2l+1.
void sph_harm_upto(int L, const Vec3& u, std::vector<Eigen::VectorXd>& out);
Eigen::VectorXd sph_harm_values(int l, const Vec3& u);

/// Real Wigner matrix of a proper rotation, built by recurrence from the
/// degree-1 block. Throws InvalidArgument for non-rotations.
WignerMatrix wigner_d(int l, const Mat3& rotation, int max_degree = kDefaultMaxDegree);

/// rho^{(l,p)}(O) for any O in O(3): O = r * m with m in {e, i},
/// rho = sigma^(p)(m) * D^(l)(r).
Eigen::MatrixXd o3_representation(int l, int parity, const Mat3& orthogonal);

/// Cached, immutable after first construction; safe for concurrent readers.
const CGTable& cg_table(int l1, int l2, int l, int max_degree = kDefaultMaxDegree);

/// Complex CG coefficient <j1 m1 j2 m2 | J M> (Condon-Shortley, Racah form).
double complex_cg(int j1, int m1, int j2, int m2, int J, int M);

/// v1 (x)_cg v2 projected onto degree l_out; parity p1 * p2.
SteerableVector cg_product(const SteerableVector& v1, const SteerableVector& v2, int l_out);

/// Irreducible parts (0e, 1e, 2e) of sum_i x_i x_i^T.
std::map<int, SteerableVector> decompose_symmetric_tensor(std::span<const Vec3> points);
/// Inverse change of basis of decompose_symmetric_tensor (for a 3x3 tensor).
Mat3 reconstruct_tensor(const std::map<int, SteerableVector>& parts);
std::map<int, SteerableVector> decompose_tensor(const Mat3& tensor);

}  // namespace geoequiv::steerable
