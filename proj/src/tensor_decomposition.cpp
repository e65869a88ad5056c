#include "geoequiv/error.hpp"
#include "geoequiv/steerable.hpp"

namespace geoequiv::steerable {
namespace {

// Cartesian index of degree-1 slot k under the (y, z, x) ordering.
constexpr int kCart[3] = {1, 2, 0};

}  // namespace

std::map<int, SteerableVector> decompose_tensor(const Mat3& tensor) {
  std::map<int, SteerableVector> parts;
  for (int l = 0; l <= 2; ++l) {
    const CGTable& q = cg_table(1, 1, l);
    Eigen::VectorXd v = Eigen::VectorXd::Zero(2 * l + 1);
    for (int m = 0; m < 2 * l + 1; ++m) {
      for (int a = 0; a < 3; ++a) {
        for (int b = 0; b < 3; ++b) v[m] += q.at(m, a, b) * tensor(kCart[a], kCart[b]);
      }
    }
    parts.emplace(l, SteerableVector(l, 1, std::move(v)));
  }
  return parts;
}

std::map<int, SteerableVector> decompose_symmetric_tensor(std::span<const Vec3> points) {
  Mat3 t = Mat3::Zero();
  for (const Vec3& x : points) t += x * x.transpose();
  return decompose_tensor(t);
}

Mat3 reconstruct_tensor(const std::map<int, SteerableVector>& parts) {
  Mat3 t = Mat3::Zero();
  for (const auto& [l, v] : parts) {
    if (l < 0 || l > 2 || v.degree != l) throw InvalidArgument("tensor parts must have degrees 0..2");
    const CGTable& q = cg_table(1, 1, l);
    for (int m = 0; m < 2 * l + 1; ++m) {
      for (int a = 0; a < 3; ++a) {
        for (int b = 0; b < 3; ++b) t(kCart[a], kCart[b]) += q.at(m, a, b) * v.values[m];
      }
    }
  }
  return t;
}

}  // namespace geoequiv::steerable
