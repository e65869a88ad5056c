#include <doctest.h>

#include <cmath>

#include "geoequiv/corpus.hpp"
#include "geoequiv/error.hpp"

using namespace geoequiv;
using namespace geoequiv::corpus;

TEST_CASE("chiral pair coordinates") {
  const FourBodyPair ch = four_body_chiral_pair();
  Points expect(4, 3);
  expect << 3, 0, -4, 0, 0, 5, -3, 0, -4, 0, 5, 0;
  CHECK(ch.pair.first.positions() == expect);
  expect(3, 1) = -5;
  CHECK(ch.pair.second.positions() == expect);
  CHECK(ch.pair.ground_truth_isomorphic);
  CHECK(ch.pair.first.edges().size() == 12);
}

TEST_CASE("non-chiral pair is seeded and deterministic") {
  const FourBodyPair a = four_body_nonchiral_pair(3), b = four_body_nonchiral_pair(3);
  CHECK(a.angle == b.angle);
  CHECK(a.pair.first.positions() == b.pair.first.positions());
  CHECK(a.pair.first.size() == 7);
  CHECK(a.pair.ground_truth_isomorphic);
  CHECK(four_body_nonchiral_pair(4).angle != a.angle);
  // Only the last node differs, by the y mirror.
  const Points p = a.pair.first.positions(), q = a.pair.second.positions();
  CHECK(p.topRows(6) == q.topRows(6));
  CHECK(q(6, 1) == -p(6, 1));
}

TEST_CASE("unit-circle counterexample") {
  const Points seed = unit_circle_seed();
  CHECK(seed.rows() == 5);
  CHECK((seed.rowwise().norm().array() - 1.0).abs().maxCoeff() < 1e-15);
  CHECK(seed.col(2).cwiseAbs().maxCoeff() == 0.0);
  const GeometricGraph x = unit_circle_counterexample(1, 2);
  CHECK(x.size() == 10);
  CHECK((x.positions().rowwise().norm().array() - 1.0).abs().maxCoeff() < 1e-12);
  CHECK(unit_circle_counterexample(1, 3).size() == 15);
  CHECK(unit_circle_counterexample(1, 2).positions() == x.positions());
}

TEST_CASE("labeled pairs check their ground truth") {
  const FourBodyPair ch = four_body_chiral_pair();
  CHECK_THROWS_AS(make_pair(ch.pair.first, ch.pair.second, false, "wrong"), Error);
  CHECK_THROWS_AS(make_pair(ch.pair.first, corpus::square_cone(), true, "wrong"), Error);
  CHECK_NOTHROW(make_pair(ch.pair.first, ch.pair.first, true, "same"));
  const auto pairs = corpus_pairs(2);
  CHECK(pairs.size() == 5);
  CHECK(corpus_graphs(2).size() == 11);
  for (const auto& p : pairs) CHECK_FALSE(p.source.empty());
}

TEST_CASE("tetrahedron centers: trirectangular and regular") {
  const std::array<Vec3, 4> tri{Vec3::Zero(), Vec3::UnitX(), Vec3::UnitY(), Vec3::UnitZ()};
  const TetraCenters c = tetra_centers(tri);
  CHECK(c.monge.norm() < 1e-15);
  CHECK((c.circumcenter - Vec3::Constant(0.5)).norm() < 1e-15);
  CHECK((c.twelve_point - Vec3::Constant(1.0 / 6.0)).norm() < 1e-15);
  CHECK((c.incenter - Vec3::Constant(1.0 / (3.0 + std::sqrt(3.0)))).norm() < 1e-15);

  const std::array<Vec3, 4> reg{Vec3(1, 1, 1), Vec3(1, -1, -1), Vec3(-1, 1, -1), Vec3(-1, -1, 1)};
  const TetraCenters r = tetra_centers(reg);
  CHECK(r.monge.norm() < 1e-10);
  CHECK(r.twelve_point.norm() < 1e-10);
  CHECK(r.incenter.norm() < 1e-10);
  CHECK(r.circumcenter.norm() < 1e-10);
  CHECK(circumradius(reg) == doctest::Approx(std::sqrt(3.0)).epsilon(1e-14));

  const std::array<Vec3, 4> flat{Vec3::Zero(), Vec3::UnitX(), Vec3::UnitY(), Vec3(1, 1, 0)};
  CHECK_THROWS_AS(tetra_centers(flat), InvalidArgument);
}

TEST_CASE("random tetrahedra") {
  for (std::uint64_t s = 0; s < 200; ++s) {
    const TetrahedronSample t = random_tetrahedron(s);
    CHECK(t.radius >= 1.0);
    CHECK(t.radius <= kTetraMaxRadius);
    CHECK(circumradius(t.vertices) <= kTetraMaxRadius + 1e-9);
    CHECK(circumradius(t.vertices) == doctest::Approx(t.radius).epsilon(1e-9));
    // The incenter has strictly positive barycentric coordinates.
    Eigen::Matrix4d A;
    for (int k = 0; k < 4; ++k) A.col(k) << t.vertices[k], 1.0;
    const Eigen::Vector4d bary = A.fullPivLu().solve(Eigen::Vector4d(t.incenter.x(), t.incenter.y(), t.incenter.z(), 1.0));
    CHECK(bary.minCoeff() > 0.0);
    const TetraCenters c = tetra_centers(t.vertices);
    CHECK((c.twelve_point - (c.monge + (c.circumcenter - c.monge) / 3.0)).norm() < 1e-9);
  }
  CHECK(random_tetrahedron(9).vertices == random_tetrahedron(9).vertices);
}

TEST_CASE("chirality features") {
  const std::array<Vec3, 4> tri{Vec3::Zero(), Vec3::UnitX(), Vec3::UnitY(), Vec3::UnitZ()};
  CHECK(chirality_det(tri) == 1.0);
  std::array<Vec3, 4> swapped = tri;
  std::swap(swapped[1], swapped[2]);
  CHECK(chirality_det(swapped) == -1.0);
  std::array<Vec3, 4> mirrored;
  for (int k = 0; k < 4; ++k) mirrored[k] = -tri[k];
  CHECK(chirality_det(mirrored) == -1.0);

  const GeometricGraph g = unit_circle_counterexample(1, 2);
  const GeometricGraph m = apply_transform(g, EuclideanTransform(-Mat3::Identity()));
  CHECK(chirality_moment3(m) == doctest::Approx(-chirality_moment3(g)).epsilon(1e-9));
  const GeometricGraph rot = apply_transform(g, random_transform(4, false, true), Permutation::random(10, 5));
  CHECK(std::abs(chirality_moment3(rot) - chirality_moment3(g)) < 1e-12);
  for (const auto& t : moment3_triples()) {
    CHECK(t[0] < t[1]);
    CHECK(t[1] < t[2]);
    CHECK((t[0] + t[1] + t[2]) % 2 == 1);
    CHECK(t[2] <= t[0] + t[1]);
  }
}

TEST_CASE("chirality table has the expected shape") {
  const auto rows = chirality_table(chirality_graphs(1));
  const auto& expect = expected_chirality_pattern();
  REQUIRE(rows.size() == expect.size());
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t k = 0; k < 3; ++k)
      if (rows[r].cells[k].reproducible) CHECK(rows[r].cells[k].separates == expect[r][k]);
}
