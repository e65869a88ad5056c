#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdlib>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <tuple>

#include "geoequiv/error.hpp"
#include "geoequiv/steerable.hpp"

namespace geoequiv::steerable {
namespace {

using cd = std::complex<double>;

double factorial(int n) {
  double f = 1.0;
  for (int k = 2; k <= n; ++k) f *= static_cast<double>(k);
  return f;
}

// Rows: real index m (offset l), columns: complex index M (offset l).
// real_m = sum_M U(m, M) complex_M.
Eigen::MatrixXcd real_from_complex(int l) {
  Eigen::MatrixXcd u = Eigen::MatrixXcd::Zero(2 * l + 1, 2 * l + 1);
  const double s = 1.0 / std::sqrt(2.0);
  for (int m = -l; m <= l; ++m) {
    const double sign = (std::abs(m) % 2 == 0) ? 1.0 : -1.0;
    if (m > 0) {
      u(m + l, m + l) = sign * s;
      u(m + l, -m + l) = s;
    } else if (m < 0) {
      const int a = -m;
      // 1/(i sqrt2) = -i/sqrt2
      u(m + l, a + l) = cd(0.0, -sign * s);
      u(m + l, -a + l) = cd(0.0, s);
    } else {
      u(l, l) = 1.0;
    }
  }
  return u;
}

std::vector<double> build_real_table(int l1, int l2, int l) {
  const int n1 = 2 * l1 + 1, n2 = 2 * l2 + 1, n = 2 * l + 1;
  std::vector<double> out(static_cast<std::size_t>(n) * n1 * n2, 0.0);
  const Eigen::MatrixXcd u = real_from_complex(l);
  const Eigen::MatrixXcd u1 = real_from_complex(l1);
  const Eigen::MatrixXcd u2 = real_from_complex(l2);

  std::vector<cd> q(out.size(), cd(0.0, 0.0));
  for (int m = 0; m < n; ++m) {
    for (int a = 0; a < n1; ++a) {
      for (int b = 0; b < n2; ++b) {
        cd acc(0.0, 0.0);
        for (int M1 = -l1; M1 <= l1; ++M1) {
          const cd c1 = std::conj(u1(a, M1 + l1));
          if (c1 == cd(0.0, 0.0)) continue;
          for (int M2 = -l2; M2 <= l2; ++M2) {
            const cd c2 = std::conj(u2(b, M2 + l2));
            if (c2 == cd(0.0, 0.0)) continue;
            const int M = M1 + M2;
            if (std::abs(M) > l) continue;
            const cd c = u(m, M + l);
            if (c == cd(0.0, 0.0)) continue;
            acc += c * complex_cg(l1, M1, l2, M2, l, M) * c1 * c2;
          }
        }
        q[(static_cast<std::size_t>(m) * n1 + a) * n2 + b] = acc;
      }
    }
  }
  double re = 0.0, im = 0.0;
  for (const cd& v : q) {
    re += v.real() * v.real();
    im += v.imag() * v.imag();
  }
  const bool use_real = re >= im;
  for (std::size_t k = 0; k < q.size(); ++k) out[k] = use_real ? q[k].real() : q[k].imag();
  return out;
}

}  // namespace

double complex_cg(int j1, int m1, int j2, int m2, int J, int M) {
  if (M != m1 + m2) return 0.0;
  if (J < std::abs(j1 - j2) || J > j1 + j2) return 0.0;
  if (std::abs(m1) > j1 || std::abs(m2) > j2 || std::abs(M) > J) return 0.0;
  const double pre =
      std::sqrt((2.0 * J + 1.0) * factorial(J + j1 - j2) * factorial(J - j1 + j2) *
                factorial(j1 + j2 - J) / factorial(j1 + j2 + J + 1)) *
      std::sqrt(factorial(J + M) * factorial(J - M) * factorial(j1 - m1) * factorial(j1 + m1) *
                factorial(j2 - m2) * factorial(j2 + m2));
  double sum = 0.0;
  for (int k = 0; k <= j1 + j2 - J; ++k) {
    const int d1 = j1 + j2 - J - k, d2 = j1 - m1 - k, d3 = j2 + m2 - k;
    const int d4 = J - j2 + m1 + k, d5 = J - j1 - m2 + k;
    if (d1 < 0 || d2 < 0 || d3 < 0 || d4 < 0 || d5 < 0) continue;
    const double term = 1.0 / (factorial(k) * factorial(d1) * factorial(d2) * factorial(d3) *
                               factorial(d4) * factorial(d5));
    sum += (k % 2 == 0) ? term : -term;
  }
  return pre * sum;
}

CGTable::CGTable(int l1, int l2, int l, std::vector<double> coeffs)
    : l1_(l1), l2_(l2), l_(l), in_range_(l >= std::abs(l1 - l2) && l <= l1 + l2),
      coeffs_(std::move(coeffs)) {
  const std::size_t want = static_cast<std::size_t>(2 * l + 1) * (2 * l1 + 1) * (2 * l2 + 1);
  if (coeffs_.size() != want) throw InvalidArgument("CG table has the wrong size");
}

Eigen::VectorXd CGTable::contract(const Eigen::VectorXd& a, const Eigen::VectorXd& b) const {
  const int n1 = 2 * l1_ + 1, n2 = 2 * l2_ + 1, n = 2 * l_ + 1;
  if (a.size() != n1 || b.size() != n2) throw InvalidArgument("CG contraction size mismatch");
  Eigen::VectorXd out = Eigen::VectorXd::Zero(n);
  if (!in_range_) return out;
  const double* q = coeffs_.data();
  for (int m = 0; m < n; ++m) {
    double acc = 0.0;
    for (int i = 0; i < n1; ++i) {
      const double ai = a[i];
      if (ai == 0.0) {
        q += n2;
        continue;
      }
      double row = 0.0;
      for (int j = 0; j < n2; ++j) row += q[j] * b[j];
      acc += ai * row;
      q += n2;
    }
    out[m] = acc;
  }
  return out;
}

const CGTable& cg_table(int l1, int l2, int l, int max_degree) {
  if (l1 < 0 || l2 < 0 || l < 0 || l1 > max_degree || l2 > max_degree || l > 2 * max_degree) {
    throw InvalidArgument("CG degrees (" + std::to_string(l1) + ", " + std::to_string(l2) + ", " +
                          std::to_string(l) + ") outside the supported range");
  }
  static std::mutex mu;
  static std::map<std::tuple<int, int, int>, std::unique_ptr<CGTable>> cache;
  const auto key = std::make_tuple(l1, l2, l);
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(key);
  if (it != cache.end()) return *it->second;
  const bool ok = l >= std::abs(l1 - l2) && l <= l1 + l2;
  std::vector<double> coeffs =
      ok ? build_real_table(l1, l2, l)
         : std::vector<double>(static_cast<std::size_t>(2 * l + 1) * (2 * l1 + 1) * (2 * l2 + 1), 0.0);
  auto table = std::make_unique<CGTable>(l1, l2, l, std::move(coeffs));
  const CGTable& ref = *table;
  cache.emplace(key, std::move(table));
  return ref;
}

SteerableVector cg_product(const SteerableVector& v1, const SteerableVector& v2, int l_out) {
  const int lmax = std::max({v1.degree, v2.degree, kDefaultMaxDegree});
  const CGTable& t = cg_table(v1.degree, v2.degree, l_out, lmax);
  return SteerableVector(l_out, v1.parity * v2.parity, t.contract(v1.values, v2.values));
}

}  // namespace geoequiv::steerable
