#include <doctest.h>

#include <random>

#include "geoequiv/corpus.hpp"
#include "geoequiv/error.hpp"
#include "geoequiv/isomorphism.hpp"

using namespace geoequiv;

namespace {

GeometricGraph random_graph(int n, std::uint64_t seed, double edge_p = 0.5, bool features = true) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::bernoulli_distribution coin(edge_p);
  std::vector<Node> nodes;
  for (int i = 0; i < n; ++i) {
    Eigen::VectorXd h;
    if (features) h = Eigen::VectorXd::Constant(1, static_cast<double>(i % 2));
    nodes.push_back({h, Vec3(u(rng), u(rng), u(rng))});
  }
  std::vector<Edge> edges;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (coin(rng)) edges.push_back({static_cast<std::size_t>(i), static_cast<std::size_t>(j), {}});
  return GeometricGraph(nodes, edges, false);
}

void check_certificate(const GeometricGraph& G, const GeometricGraph& H, const IsomorphismCertificate& c) {
  const GeometricGraph mapped = apply_certificate(H, c);
  CHECK((mapped.positions() - G.positions()).cwiseAbs().maxCoeff() < 1e-8);
}

}  // namespace

TEST_CASE("four-point test agrees with the brute-force oracle") {
  int iso = 0;
  for (std::uint64_t s = 0; s < 210; ++s) {
    const int n = 4 + static_cast<int>(s % 3);
    const GeometricGraph G = random_graph(n, s);
    GeometricGraph H = apply_transform(G, random_transform(s + 1, true, true), Permutation::random(n, s + 2));
    if (s % 3 == 1) {
      Points p = H.positions();
      p(0, 0) += 1e-3;
      H = H.with_positions(p);
    } else if (s % 3 == 2) {
      std::vector<Edge> e(H.edges().begin(), H.edges().end());
      std::vector<Edge> undirected;
      for (const Edge& x : e)
        if (x.src < x.dst) undirected.push_back(x);
      if (!undirected.empty()) undirected.pop_back();
      else undirected.push_back({0, 1, {}});
      H = H.with_edges(undirected);
    }
    const bool oracle = brute_force_isomorphic(G, H);
    const auto cert = geometric_graph_isomorphic(G, H);
    CAPTURE(s);
    CHECK(oracle == cert.has_value());
    CHECK(oracle == (s % 3 == 0));
    if (cert) {
      check_certificate(G, H, *cert);
      ++iso;
    }
  }
  CHECK(iso == 70);
}

TEST_CASE("node features are respected") {
  const GeometricGraph G = random_graph(6, 42);
  std::vector<Eigen::VectorXd> f;
  for (const Node& n : G.nodes()) f.push_back(n.h);
  f[0][0] += 1.0;
  const GeometricGraph H = G.with_features(f);
  CHECK_FALSE(geometric_graph_isomorphic(G, H).has_value());
  CHECK_FALSE(brute_force_isomorphic(G, H));
  CHECK(point_cloud_isomorphic(G.positions(), H.positions()).has_value());
}

TEST_CASE("reflections count as isomorphisms") {
  const GeometricGraph G = random_graph(7, 5);
  const GeometricGraph H = apply_transform(G, EuclideanTransform(axis_mirror(2), Vec3(1, 2, 3)));
  const auto cert = geometric_graph_isomorphic(G, H);
  REQUIRE(cert.has_value());
  check_certificate(G, H, *cert);
}

TEST_CASE("decisions are invariant under actions on either side") {
  for (std::uint64_t s = 0; s < 20; ++s) {
    const GeometricGraph G = random_graph(6, 900 + s);
    const GeometricGraph H = (s % 2 == 0) ? apply_transform(G, random_transform(s, true, true))
                                          : random_graph(6, 950 + s);
    const GeometricGraph gG = apply_transform(G, random_transform(s + 7, true, true), Permutation::random(6, s));
    CHECK(geometric_graph_isomorphic(G, H).has_value() == geometric_graph_isomorphic(gG, H).has_value());
  }
}

TEST_CASE("size mismatch is not isomorphic") {
  CHECK_FALSE(geometric_graph_isomorphic(random_graph(5, 1), random_graph(6, 1)).has_value());
}

TEST_CASE("noncoplanar quadruple search") {
  Points planar(5, 3);
  planar << 0, 0, 0, 1, 0, 0, 0, 1, 0, 1, 1, 0, 2, 3, 0;
  CHECK_FALSE(find_noncoplanar_quadruple(planar).has_value());
  Points solid = planar;
  solid(4, 2) = 1.0;
  const auto q = find_noncoplanar_quadruple(solid);
  REQUIRE(q.has_value());
  CHECK((*q)[3] == 4);
}

TEST_CASE("degenerate inputs: brute force below 9 nodes, error above") {
  Points small(5, 3);
  small << 0, 0, 0, 1, 0, 0, 0, 1, 0, 1, 1, 0, 2, 3, 0;
  Points moved = small;
  for (int i = 0; i < 5; ++i) moved.row(i) = (rotation_z(0.3) * small.row(i).transpose()).transpose();
  CHECK(point_cloud_isomorphic(small, moved).has_value());

  Points big(10, 3);
  for (int i = 0; i < 10; ++i) big.row(i) = Vec3(std::cos(i * 0.7), std::sin(i * 1.3), 0.0).transpose();
  CHECK_THROWS_AS(point_cloud_isomorphic(big, big), UnsupportedDegenerate);
}

TEST_CASE("symmetry groups of the reference solids") {
  const SymmetryGroup cone = symmetry_group(corpus::square_cone());
  CHECK(cone.closed);
  CHECK(cone.order() == 8);
  const SymmetryGroup tet = symmetry_group(corpus::regular_tetrahedron());
  CHECK(tet.closed);
  CHECK(tet.order() == 24);
  CHECK(symmetry_group(random_graph(6, 77)).trivial());
  // Closure and inverses.
  auto find = [&](const Mat3& m) {
    for (const SymmetryElement& e : tet.elements)
      if ((e.transform.linear() - m).norm() < 1e-9) return true;
    return false;
  };
  for (const SymmetryElement& a : tet.elements) {
    CHECK(find(a.transform.linear().transpose()));
    for (const SymmetryElement& b : tet.elements) CHECK(find(a.transform.linear() * b.transform.linear()));
  }
  // Each element maps the decentered graph onto itself.
  const GeometricGraph g = decenter(corpus::square_cone()).graph;
  for (const SymmetryElement& e : cone.elements) {
    for (std::size_t i = 0; i < g.size(); ++i) {
      CHECK((g.node(i).x - e.transform.linear() * g.node(e.permutation[i]).x).norm() < 1e-9);
    }
  }
  Points planar(4, 3);
  planar << 0, 0, 0, 1, 0, 0, 0, 1, 0, 1, 1, 0;
  CHECK_THROWS_AS(symmetry_group(GeometricGraph::fully_connected(planar)), DegenerateGraph);
}
