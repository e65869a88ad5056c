#include <cmath>
#include <cstdlib>
#include <string>
#include <vector>

#include "geoequiv/error.hpp"
#include "geoequiv/steerable.hpp"

// Ivanic-Ruedenberg recurrence: D^(l) is assembled from D^(1) and D^(l-1).

namespace geoequiv::steerable {
namespace {

using Blocks = std::vector<Eigen::MatrixXd>;

double centered(const Eigen::MatrixXd& m, int l, int i, int j) { return m(i + l, j + l); }

double P(int i, int a, int b, int l, const Blocks& r) {
  const Eigen::MatrixXd& r1 = r[1];
  const Eigen::MatrixXd& rp = r[l - 1];
  if (b == l) {
    return centered(r1, 1, i, 1) * centered(rp, l - 1, a, l - 1) -
           centered(r1, 1, i, -1) * centered(rp, l - 1, a, -l + 1);
  }
  if (b == -l) {
    return centered(r1, 1, i, 1) * centered(rp, l - 1, a, -l + 1) +
           centered(r1, 1, i, -1) * centered(rp, l - 1, a, l - 1);
  }
  return centered(r1, 1, i, 0) * centered(rp, l - 1, a, b);
}

double U(int m, int n, int l, const Blocks& r) { return P(0, m, n, l, r); }

double V(int m, int n, int l, const Blocks& r) {
  if (m == 0) return P(1, 1, n, l, r) + P(-1, -1, n, l, r);
  if (m > 0) {
    const double d = (m == 1) ? 1.0 : 0.0;
    return P(1, m - 1, n, l, r) * std::sqrt(1.0 + d) - P(-1, -m + 1, n, l, r) * (1.0 - d);
  }
  const double d = (m == -1) ? 1.0 : 0.0;
  return P(1, m + 1, n, l, r) * (1.0 - d) + P(-1, -m - 1, n, l, r) * std::sqrt(1.0 + d);
}

double W(int m, int n, int l, const Blocks& r) {
  if (m > 0) return P(1, m + 1, n, l, r) + P(-1, -m - 1, n, l, r);
  return P(1, m - 1, n, l, r) - P(-1, -m + 1, n, l, r);
}

Eigen::MatrixXd next_block(int l, const Blocks& r) {
  Eigen::MatrixXd out(2 * l + 1, 2 * l + 1);
  for (int m = -l; m <= l; ++m) {
    for (int n = -l; n <= l; ++n) {
      const double d = (m == 0) ? 1.0 : 0.0;
      const int am = std::abs(m);
      const double denom = (std::abs(n) == l) ? 2.0 * l * (2.0 * l - 1.0)
                                              : static_cast<double>((l + n) * (l - n));
      double u = std::sqrt(static_cast<double>((l + m) * (l - m)) / denom);
      double v = 0.5 * std::sqrt((1.0 + d) * (l + am - 1.0) * (l + am) / denom) * (1.0 - 2.0 * d);
      double w = -0.5 * std::sqrt((l - am - 1.0) * (l - am) / denom) * (1.0 - d);
      if (u != 0.0) u *= U(m, n, l, r);
      if (v != 0.0) v *= V(m, n, l, r);
      if (w != 0.0) w *= W(m, n, l, r);
      out(m + l, n + l) = u + v + w;
    }
  }
  return out;
}

void check_rotation(const Mat3& r) {
  if (!r.allFinite()) throw InvalidArgument("rotation has non-finite entries");
  const double err = (r.transpose() * r - Mat3::Identity()).cwiseAbs().maxCoeff();
  if (err > 1e-9) throw InvalidArgument("matrix is not orthogonal");
  if (std::abs(r.determinant() - 1.0) > 1e-9) throw InvalidArgument("matrix is not a proper rotation");
}

}  // namespace

WignerMatrix wigner_d(int l, const Mat3& rotation, int max_degree) {
  if (l < 0 || l > max_degree) {
    throw InvalidArgument("degree " + std::to_string(l) + " outside [0, " +
                          std::to_string(max_degree) + "]");
  }
  check_rotation(rotation);
  Blocks r(l + 1);
  r[0] = Eigen::MatrixXd::Ones(1, 1);
  if (l >= 1) {
    const Mat3 p = degree1_basis();
    r[1] = p * rotation * p.transpose();
  }
  for (int k = 2; k <= l; ++k) r[k] = next_block(k, r);
  return WignerMatrix{l, r[l]};
}

Eigen::MatrixXd o3_representation(int l, int parity, const Mat3& orthogonal) {
  if (parity != 1 && parity != -1) throw InvalidArgument("parity must be +1 or -1");
  if (orthogonal.determinant() < 0.0) {
    // O = (-O) * (-I); the inversion acts as the scalar p.
    return static_cast<double>(parity) * wigner_d(l, -orthogonal, l).matrix;
  }
  return wigner_d(l, orthogonal, l).matrix;
}

}  // namespace geoequiv::steerable
