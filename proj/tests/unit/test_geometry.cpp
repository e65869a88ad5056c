#include <doctest.h>

#include <random>

#include "geoequiv/error.hpp"
#include "geoequiv/geometry.hpp"
#include "geoequiv/graph_io.hpp"

using namespace geoequiv;

namespace {

Points random_points(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  Points p(n, 3);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < 3; ++k) p(i, k) = u(rng);
  return p;
}

}  // namespace

TEST_CASE("apply_transform is an isometry and relabels nodes") {
  const GeometricGraph g = GeometricGraph::fully_connected(random_points(7, 1));
  for (std::uint64_t s = 0; s < 20; ++s) {
    const EuclideanTransform t = random_transform(s, true, true);
    const Permutation p = Permutation::random(7, s + 100);
    const GeometricGraph h = apply_transform(g, t, p);
    for (std::size_t i = 0; i < 7; ++i) {
      CHECK((h.node(p[i]).x - t.apply(g.node(i).x)).norm() < 1e-12);
      for (std::size_t j = 0; j < 7; ++j) {
        const double dg = (g.node(i).x - g.node(j).x).norm();
        const double dh = (h.node(p[i]).x - h.node(p[j]).x).norm();
        CHECK(std::abs(dg - dh) < 1e-10);
      }
    }
    CHECK(h.edges().size() == g.edges().size());
  }
}

TEST_CASE("transforms compose") {
  const Points x = random_points(5, 2);
  const GeometricGraph g = GeometricGraph::point_cloud(x);
  const EuclideanTransform a = random_transform(3, true, true), b = random_transform(4, true, true);
  const GeometricGraph seq = apply_transform(apply_transform(g, a), b);
  const GeometricGraph once = apply_transform(g, b.compose(a));
  CHECK((seq.positions() - once.positions()).cwiseAbs().maxCoeff() < 1e-12);
  const GeometricGraph back = apply_transform(apply_transform(g, a), a.inverse());
  CHECK((back.positions() - x).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("permutation algebra") {
  const Permutation p = Permutation::random(9, 5), q = Permutation::random(9, 6);
  CHECK(p.compose(p.inverse()).is_identity());
  for (std::size_t i = 0; i < 9; ++i) CHECK(p.compose(q)[i] == p[q[i]]);
  CHECK_THROWS_AS(Permutation(std::vector<std::size_t>{0, 0, 1}), InvalidArgument);
}

TEST_CASE("kabsch recovers random O(3) transforms") {
  for (std::uint64_t s = 0; s < 100; ++s) {
    const Points x = random_points(6, s);
    const EuclideanTransform t = random_transform(s + 1000, true, true);
    Points y(6, 3);
    for (int i = 0; i < 6; ++i) y.row(i) = t.apply(x.row(i).transpose()).transpose();
    const Alignment al = kabsch_align(y, x);
    CHECK(al.rmsd < 1e-10);
    CHECK(max_displacement(y, x, al.transform) < 1e-9);
  }
}

TEST_CASE("kabsch takes the reflection branch for mirrored chiral clouds") {
  const Points x = random_points(5, 77);
  Points y = x;
  y.col(0) = -y.col(0);
  const Alignment self = kabsch_align(x, x);
  CHECK(self.rmsd < 1e-12);
  const Alignment al = kabsch_align(y, x);
  CHECK(al.rmsd < 1e-10);
  CHECK(al.transform.linear().determinant() < 0.0);
}

TEST_CASE("random_transform honors its flags") {
  for (std::uint64_t s = 0; s < 50; ++s) {
    const EuclideanTransform r = random_transform(s, false, false);
    CHECK(r.linear().determinant() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(r.translation().norm() == 0.0);
    CHECK((r.linear() * r.linear().transpose() - Mat3::Identity()).norm() < 1e-12);
  }
  CHECK_THROWS_AS(EuclideanTransform(2.0 * Mat3::Identity()), InvalidArgument);
}

TEST_CASE("undirected graphs get symmetric edge pairs") {
  const GeometricGraph g = GeometricGraph::point_cloud(random_points(4, 9)).with_edges({{0, 1, {}}, {2, 3, {}}});
  CHECK(g.edges().size() == 4);
  CHECK_THROWS_AS(GeometricGraph::point_cloud(random_points(3, 9)).with_edges({{0, 5, {}}}), InvalidArgument);
}

TEST_CASE("decenter and diameter") {
  const Points x = random_points(8, 11);
  const GeometricGraph g = GeometricGraph::point_cloud(x);
  const Decentered d = decenter(g);
  CHECK(d.graph.centroid().norm() < 1e-12);
  CHECK((d.centroid - g.centroid()).norm() == 0.0);
  double diam = 0.0;
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j) diam = std::max(diam, (x.row(i) - x.row(j)).norm());
  CHECK(g.diameter() == doctest::Approx(diam).epsilon(1e-14));
}

TEST_CASE("mirrors and axis rotations") {
  CHECK(axis_mirror(1).determinant() == -1.0);
  CHECK((axis_mirror(0) * Vec3(1, 2, 3) - Vec3(-1, 2, 3)).norm() == 0.0);
  // Column convention: rotation_y(pi/2) takes e_z to e_x.
  CHECK((rotation_y(std::acos(-1.0) / 2) * Vec3::UnitZ() - Vec3::UnitX()).norm() < 1e-15);
  CHECK((rotation_z(std::acos(-1.0) / 2) * Vec3::UnitX() - Vec3::UnitY()).norm() < 1e-15);
}

TEST_CASE("graph JSON round trip") {
  std::vector<Node> nodes{{Eigen::VectorXd::Constant(2, 0.5), Vec3(1, 2, 3)}, {Eigen::VectorXd(), Vec3(-1, 0, 0.25)}};
  std::vector<Edge> edges{{0, 1, Eigen::VectorXd::Constant(1, 3.0)}};
  const GeometricGraph g(nodes, edges, true);
  const GeometricGraph h = io::parse_graph(io::dump_graph(g));
  CHECK(h.directed());
  REQUIRE(h.size() == 2);
  CHECK(h.node(0).h.size() == 2);
  CHECK(h.node(1).h.size() == 0);
  CHECK((h.node(1).x - Vec3(-1, 0, 0.25)).norm() == 0.0);
  REQUIRE(h.edges().size() == 1);
  CHECK(h.edges()[0].e[0] == 3.0);
  CHECK(io::dump_graph(h) == io::dump_graph(g));
}

TEST_CASE("malformed graph JSON is a ParseError") {
  CHECK_THROWS_AS(io::parse_graph("{"), ParseError);
  CHECK_THROWS_AS(io::parse_graph(R"({"nodes": [{"x": [1, 2]}]})"), ParseError);
  CHECK_THROWS_AS(io::parse_graph(R"({"nodes": [{"x": [0, 0, 0]}], "edges": [{"i": 0, "j": 3}]})"), ParseError);
}
