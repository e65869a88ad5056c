#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "geoequiv/error.hpp"
#include "geoequiv/geometry.hpp"
#include "geoequiv/steerable.hpp"

using namespace geoequiv;
using namespace geoequiv::steerable;

namespace {

constexpr double kPi = std::numbers::pi;

// Gauss-Legendre nodes and weights on [-1, 1] by Newton iteration.
void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w) {
  x.assign(n, 0.0);
  w.assign(n, 0.0);
  for (int i = 0; i < n; ++i) {
    double t = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = t;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * t * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (t * p1 - p0) / (t * t - 1.0);
      const double dt = p1 / dp;
      t -= dt;
      if (std::abs(dt) < 1e-16) break;
    }
    x[i] = t;
    w[i] = 2.0 / ((1.0 - t * t) * dp * dp);
  }
}

Vec3 random_unit(std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  Vec3 v(g(rng), g(rng), g(rng));
  return v.normalized();
}

Mat3 random_rotation(std::uint64_t seed) {
  Mat3 r = random_transform(seed, false, false).linear();
  return r;
}

}  // namespace

TEST_CASE("real spherical harmonics are orthonormal under quadrature") {
  constexpr int L = 6;
  std::vector<double> ct, wt;
  gauss_legendre(L + 2, ct, wt);
  const int nphi = 2 * L + 2;
  Eigen::MatrixXd gram = Eigen::MatrixXd::Zero((L + 1) * (L + 1), (L + 1) * (L + 1));
  std::vector<Eigen::VectorXd> ys;
  for (std::size_t a = 0; a < ct.size(); ++a) {
    const double st = std::sqrt(1.0 - ct[a] * ct[a]);
    for (int b = 0; b < nphi; ++b) {
      const double phi = 2.0 * kPi * b / nphi;
      const Vec3 u(st * std::cos(phi), st * std::sin(phi), ct[a]);
      sph_harm_upto(L, u, ys);
      Eigen::VectorXd all((L + 1) * (L + 1));
      int off = 0;
      for (int l = 0; l <= L; ++l) {
        all.segment(off, 2 * l + 1) = ys[l];
        off += 2 * l + 1;
      }
      gram += wt[a] * (2.0 * kPi / nphi) * all * all.transpose();
    }
  }
  const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(gram.rows(), gram.cols());
  CHECK((gram - id).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("closed forms for degrees 0, 1 and 2") {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 50; ++t) {
    const Vec3 u = random_unit(rng);
    const double x = u.x(), y = u.y(), z = u.z();
    CHECK(real_sph_harm(0, u).values[0] == doctest::Approx(0.5 / std::sqrt(kPi)).epsilon(1e-14));
    const Eigen::VectorXd y1 = real_sph_harm(1, u).values;
    const double c1 = std::sqrt(3.0 / (4.0 * kPi));
    CHECK((y1 - c1 * Eigen::Vector3d(y, z, x)).norm() < 1e-14);
    const Eigen::VectorXd y2 = real_sph_harm(2, u).values;
    const double a = 0.5 * std::sqrt(15.0 / kPi);
    Eigen::VectorXd e(5);
    e << a * x * y, a * y * z, 0.25 * std::sqrt(5.0 / kPi) * (3 * z * z - 1), a * x * z,
        0.5 * a * (x * x - y * y);
    CHECK((y2 - e).norm() < 1e-13);
    CHECK(real_sph_harm(2, u).parity == 1);
    CHECK(real_sph_harm(3, u).parity == -1);
  }
}

TEST_CASE("harmonics reject non-unit input and bad degrees") {
  CHECK_THROWS_AS(real_sph_harm(1, Vec3(1.0, 1.0, 0.0)), InvalidArgument);
  CHECK_THROWS_AS(real_sph_harm(9, Vec3::UnitX()), InvalidArgument);
  CHECK_THROWS_AS(real_sph_harm(-1, Vec3::UnitX()), InvalidArgument);
}

TEST_CASE("complex Clebsch-Gordan known values") {
  CHECK(complex_cg(1, 0, 1, 0, 2, 0) == doctest::Approx(std::sqrt(2.0 / 3.0)).epsilon(1e-14));
  CHECK(complex_cg(1, 1, 1, -1, 0, 0) == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-14));
  CHECK(complex_cg(1, 0, 1, 0, 0, 0) == doctest::Approx(-1.0 / std::sqrt(3.0)).epsilon(1e-14));
  CHECK(complex_cg(1, 1, 1, 0, 2, 1) == doctest::Approx(std::sqrt(0.5)).epsilon(1e-14));
  CHECK(complex_cg(1, 1, 1, 0, 1, 1) == doctest::Approx(std::sqrt(0.5)).epsilon(1e-14));
  CHECK(complex_cg(1, 0, 1, 0, 1, 0) == 0.0);
  CHECK(complex_cg(2, 1, 1, 1, 3, 2) == doctest::Approx(std::sqrt(2.0 / 3.0)).epsilon(1e-14));
  CHECK(complex_cg(1, 1, 1, 1, 2, 1) == 0.0);  // M != m1 + m2
}

TEST_CASE("Wigner matrices: degree 1 block, orthogonality, homomorphism, Y equivariance") {
  const Mat3 P = degree1_basis();
  std::mt19937_64 rng(7);
  for (std::uint64_t s = 0; s < 10; ++s) {
    const Mat3 R = random_rotation(s), S = random_rotation(s + 50);
    CHECK((wigner_d(1, R).matrix - P * R * P.transpose()).cwiseAbs().maxCoeff() < 1e-13);
    const Vec3 u = random_unit(rng);
    for (int l = 0; l <= 8; ++l) {
      const Eigen::MatrixXd D = wigner_d(l, R).matrix;
      const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(2 * l + 1, 2 * l + 1);
      CHECK((D * D.transpose() - I).cwiseAbs().maxCoeff() < 1e-11);
      CHECK((wigner_d(l, R * S).matrix - D * wigner_d(l, S).matrix).cwiseAbs().maxCoeff() < 1e-11);
      CHECK((sph_harm_values(l, R * u) - D * sph_harm_values(l, u)).cwiseAbs().maxCoeff() < 1e-11);
    }
  }
  CHECK_THROWS_AS(wigner_d(1, axis_mirror(0)), InvalidArgument);
}

TEST_CASE("O(3) representations carry parity") {
  std::mt19937_64 rng(9);
  for (std::uint64_t s = 0; s < 10; ++s) {
    const Mat3 O = random_transform(s, true, false).linear();
    const Vec3 u = random_unit(rng);
    for (int l = 0; l <= 6; ++l) {
      const int p = (l % 2 == 0) ? 1 : -1;
      const Eigen::MatrixXd rho = o3_representation(l, p, O);
      CHECK((sph_harm_values(l, O * u) - rho * sph_harm_values(l, u)).cwiseAbs().maxCoeff() < 1e-11);
      const Eigen::MatrixXd inv = o3_representation(l, -1, -Mat3::Identity());
      CHECK((inv + Eigen::MatrixXd::Identity(2 * l + 1, 2 * l + 1)).cwiseAbs().maxCoeff() < 1e-12);
    }
  }
  std::mt19937_64 r2(1);
  const Vec3 u = random_unit(r2);
  for (int l = 0; l <= 6; ++l) {
    const double sign = (l % 2 == 0) ? 1.0 : -1.0;
    CHECK((sph_harm_values(l, -u) - sign * sph_harm_values(l, u)).norm() < 1e-13);
  }
}

TEST_CASE("real CG products are equivariant") {
  std::mt19937_64 rng(11);
  std::normal_distribution<double> g(0.0, 1.0);
  for (int l1 = 0; l1 <= 3; ++l1)
    for (int l2 = 0; l2 <= 3; ++l2)
      for (int l = std::abs(l1 - l2); l <= l1 + l2; ++l) {
        Eigen::VectorXd a(2 * l1 + 1), b(2 * l2 + 1);
        for (auto& v : a) v = g(rng);
        for (auto& v : b) v = g(rng);
        const Mat3 O = random_transform(100 + l, true, false).linear();
        const int p1 = (l1 % 2 == 0) ? 1 : -1, p2 = (l2 % 2 == 0) ? -1 : 1;
        const SteerableVector va(l1, p1, a), vb(l2, p2, b);
        const SteerableVector out = cg_product(va, vb, l);
        CHECK(out.parity == p1 * p2);
        const SteerableVector rot = cg_product(SteerableVector(l1, p1, o3_representation(l1, p1, O) * a),
                                               SteerableVector(l2, p2, o3_representation(l2, p2, O) * b), l);
        CHECK((rot.values - o3_representation(l, p1 * p2, O) * out.values).cwiseAbs().maxCoeff() < 1e-11);
      }
  CHECK_FALSE(cg_table(1, 1, 3).in_range());
}

TEST_CASE("real CG tables are orthogonal couplings") {
  for (int l1 = 0; l1 <= 3; ++l1)
    for (int l2 = 0; l2 <= 3; ++l2) {
      const int n = (2 * l1 + 1) * (2 * l2 + 1);
      Eigen::MatrixXd Q(n, n);
      int row = 0;
      for (int l = std::abs(l1 - l2); l <= l1 + l2; ++l) {
        const CGTable& t = cg_table(l1, l2, l);
        for (int m = 0; m < 2 * l + 1; ++m, ++row)
          for (int m1 = 0; m1 < 2 * l1 + 1; ++m1)
            for (int m2 = 0; m2 < 2 * l2 + 1; ++m2) Q(row, m1 * (2 * l2 + 1) + m2) = t.at(m, m1, m2);
      }
      CHECK((Q * Q.transpose() - Eigen::MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("symmetric tensor decomposition round trip and equivariance") {
  std::mt19937_64 rng(13);
  std::normal_distribution<double> g(0.0, 1.0);
  std::vector<Vec3> pts(6);
  for (auto& p : pts) p = Vec3(g(rng), g(rng), g(rng));
  Mat3 T = Mat3::Zero();
  for (const auto& p : pts) T += p * p.transpose();
  const auto parts = decompose_symmetric_tensor(pts);
  CHECK(parts.count(0) == 1);
  CHECK(parts.count(2) == 1);
  CHECK((reconstruct_tensor(parts) - T).cwiseAbs().maxCoeff() < 1e-12);
  CHECK((reconstruct_tensor(decompose_tensor(T)) - T).cwiseAbs().maxCoeff() < 1e-12);

  const Mat3 O = random_transform(5, true, false).linear();
  std::vector<Vec3> moved;
  for (const auto& p : pts) moved.push_back(O * p);
  const auto mparts = decompose_symmetric_tensor(moved);
  for (const auto& [l, v] : parts) {
    CHECK((mparts.at(l).values - o3_representation(l, v.parity, O) * v.values).cwiseAbs().maxCoeff() < 1e-11);
  }
}
