#include <doctest.h>

#include <cmath>
#include <cstring>
#include <random>

#include "geoequiv/kernels.hpp"

using namespace geoequiv::kernels;

namespace {

PointsSoA random_soa(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-100.0, 100.0);
  PointsSoA p(n);
  for (std::size_t i = 0; i < n; ++i) {
    p.x[i] = u(rng);
    p.y[i] = u(rng);
    p.z[i] = u(rng);
  }
  return p;
}

bool bitwise_equal(const std::vector<double>& a, const std::vector<double>& b) {
  return a.size() == b.size() && std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

}  // namespace

TEST_CASE("scalar kernels match the naive formula") {
  const PointsSoA p = random_soa(13, 1);
  const KernelTable& s = scalar_table();
  std::vector<double> d(13 * 13);
  s.pairwise_distances(p.view(), d);
  double mx = 0.0;
  for (std::size_t i = 0; i < 13; ++i)
    for (std::size_t j = 0; j < 13; ++j) {
      const double dx = p.x[i] - p.x[j], dy = p.y[i] - p.y[j], dz = p.z[i] - p.z[j];
      CHECK(d[i * 13 + j] == std::sqrt((dx * dx + dy * dy) + dz * dz));
      mx = std::max(mx, d[i * 13 + j]);
    }
  CHECK(s.max_pairwise_distance(p.view()) == mx);
}

TEST_CASE("every available variant is bitwise identical to scalar") {
  const KernelTable& s = scalar_table();
  const Ref4 refs{{{1.5, -2.0, 0.25}, {0.0, 0.0, 0.0}, {-7.0, 3.0, 9.0}, {100.0, -100.0, 1e-3}}};
  for (std::size_t n : {0u, 1u, 2u, 3u, 4u, 5u, 7u, 8u, 9u, 31u, 64u, 129u}) {
    const PointsSoA p = random_soa(n, 100 + n);
    std::vector<double> ref_pw(n * n), ref_rf(4 * n);
    s.pairwise_distances(p.view(), ref_pw);
    s.distances_to_refs(p.view(), refs, ref_rf);
    for (const KernelTable* t : available()) {
      CAPTURE(t->name);
      CAPTURE(n);
      std::vector<double> pw(n * n), rf(4 * n);
      t->pairwise_distances(p.view(), pw);
      t->distances_to_refs(p.view(), refs, rf);
      CHECK(bitwise_equal(pw, ref_pw));
      CHECK(bitwise_equal(rf, ref_rf));
      CHECK(t->max_pairwise_distance(p.view()) == s.max_pairwise_distance(p.view()));
    }
  }
}

TEST_CASE("active kernel is one of the available variants") {
  bool found = false;
  for (const KernelTable* t : available()) found = found || t == &active();
  CHECK(found);
  CHECK(available().front() == &scalar_table());
}
