#include <cmath>
#include <numbers>
#include <string>

#include "geoequiv/error.hpp"
#include "geoequiv/steerable.hpp"

namespace geoequiv::steerable {

SteerableVector::SteerableVector(int degree_, int parity_, Eigen::VectorXd values_)
    : degree(degree_), parity(parity_), values(std::move(values_)) {
  if (degree < 0) throw InvalidArgument("negative degree");
  if (parity != 1 && parity != -1) throw InvalidArgument("parity must be +1 or -1");
  if (values.size() != 2 * degree + 1) {
    throw InvalidArgument("degree-" + std::to_string(degree) + " vector needs " +
                          std::to_string(2 * degree + 1) + " components");
  }
}

SteerableVector SteerableVector::zero(int degree, int parity) {
  return SteerableVector(degree, parity, Eigen::VectorXd::Zero(2 * degree + 1));
}

Mat3 degree1_basis() {
  Mat3 p = Mat3::Zero();
  p(0, 1) = 1.0;
  p(1, 2) = 1.0;
  p(2, 0) = 1.0;
  return p;
}

void sph_harm_upto(int L, const Vec3& u_in, std::vector<Eigen::VectorXd>& out) {
  const double r = u_in.norm();
  const Vec3 u = r > 0.0 ? Vec3(u_in / r) : Vec3(0.0, 0.0, 1.0);
  const double x = u[0], y = u[1], z = u[2];
  out.resize(L + 1);
  for (int l = 0; l <= L; ++l) out[l].setZero(2 * l + 1);

  // cos/sin parts of (x + iy)^m
  std::vector<double> cm(L + 1), sm(L + 1);
  cm[0] = 1.0;
  sm[0] = 0.0;
  for (int m = 1; m <= L; ++m) {
    cm[m] = cm[m - 1] * x - sm[m - 1] * y;
    sm[m] = cm[m - 1] * y + sm[m - 1] * x;
  }

  constexpr double inv4pi = 1.0 / (4.0 * std::numbers::pi);
  std::vector<double> q(L + 1);
  double qmm = 1.0;  // (2m-1)!!
  for (int m = 0; m <= L; ++m) {
    if (m > 0) qmm *= static_cast<double>(2 * m - 1);
    // q[l] = Q_l^m for l >= m
    q[m] = qmm;
    if (m + 1 <= L) q[m + 1] = static_cast<double>(2 * m + 1) * z * qmm;
    for (int l = m + 2; l <= L; ++l) {
      q[l] = (static_cast<double>(2 * l - 1) * z * q[l - 1] - static_cast<double>(l + m - 1) * q[l - 2]) /
             static_cast<double>(l - m);
    }
    for (int l = m; l <= L; ++l) {
      // (l-m)!/(l+m)!
      double ratio = 1.0;
      for (int k = l - m + 1; k <= l + m; ++k) ratio /= static_cast<double>(k);
      const double n = std::sqrt(static_cast<double>(2 * l + 1) * inv4pi * ratio);
      if (m == 0) {
        out[l][l] = n * q[l];
      } else {
        out[l][l + m] = std::numbers::sqrt2 * n * q[l] * cm[m];
        out[l][l - m] = std::numbers::sqrt2 * n * q[l] * sm[m];
      }
    }
  }
}

Eigen::VectorXd sph_harm_values(int l, const Vec3& u) {
  std::vector<Eigen::VectorXd> all;
  sph_harm_upto(l, u, all);
  return all[l];
}

SteerableVector real_sph_harm(int l, const Vec3& u, int max_degree) {
  if (l < 0 || l > max_degree) {
    throw InvalidArgument("degree " + std::to_string(l) + " outside [0, " +
                          std::to_string(max_degree) + "]");
  }
  if (!u.allFinite() || std::abs(u.norm() - 1.0) > 1e-9) {
    throw InvalidArgument("real_sph_harm needs a unit vector");
  }
  return SteerableVector(l, (l % 2 == 0) ? 1 : -1, sph_harm_values(l, u));
}

}  // namespace geoequiv::steerable
