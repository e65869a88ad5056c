#include <doctest.h>

#include <random>

#include "geoequiv/basis.hpp"
#include "geoequiv/coloring.hpp"
#include "geoequiv/corpus.hpp"
#include "geoequiv/error.hpp"
#include "geoequiv/isomorphism.hpp"
#include "geoequiv/steerable.hpp"

using namespace geoequiv;

namespace {

GeometricGraph random_graph(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Points p(n, 3);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < 3; ++k) p(i, k) = u(rng);
  return GeometricGraph::fully_connected(p);
}

}  // namespace

TEST_CASE("full-rank basis reaches 2l+1 and its columns are equivariant") {
  for (std::uint64_t s = 0; s < 5; ++s) {
    const GeometricGraph G = random_graph(6, s);
    const EuclideanTransform t = random_transform(s + 10, true, true);
    const Permutation p = Permutation::random(6, s + 20);
    const GeometricGraph H = apply_transform(G, t, p);
    for (int l = 1; l <= 3; ++l) {
      const BasisMatrix a = full_rank_basis(G, l, color_nodes(G, ColorMethod::kCenter));
      const BasisMatrix b = full_rank_basis(H, l, color_nodes(H, ColorMethod::kCenter));
      CHECK(a.rank == static_cast<std::size_t>(2 * l + 1));
      CHECK(a.target == a.rank);
      REQUIRE(a.columns.cols() == b.columns.cols());
      CHECK(a.provenance.size() == b.provenance.size());
      const Eigen::MatrixXd rho = steerable::o3_representation(l, a.parity, t.linear());
      CHECK((b.columns - rho * a.columns).cwiseAbs().maxCoeff() < 1e-8);
    }
  }
}

TEST_CASE("dynamic weights reproduce any target in the span") {
  const GeometricGraph G = random_graph(6, 3);
  const BasisMatrix V = full_rank_basis(G, 2, color_nodes(G, ColorMethod::kCenter));
  Eigen::VectorXd target(5);
  target << 0.3, -1.0, 2.0, 0.1, 0.7;
  const WeightSolution w = solve_dynamic_weights(V.columns, target);
  CHECK(w.residual < 1e-9);
  CHECK((V.columns * w.w - target).norm() < 1e-9);
  CHECK(numerical_rank(Eigen::MatrixXd::Zero(3, 3)) == 0);
  CHECK(numerical_rank(Eigen::MatrixXd::Identity(4, 4)) == 4);
}

TEST_CASE("fixed subspaces of the square cone") {
  const GeometricGraph cone = corpus::square_cone();
  const SymmetryGroup grp = symmetry_group(cone);
  const SubspaceBasis f1 = steerable_subspace(grp, 1);
  REQUIRE(f1.dim() == 1);
  // The degree-1 fixed vector is the symmetry axis, z, which is m = 0.
  CHECK(std::abs(std::abs(f1.columns(1, 0)) - 1.0) < 1e-12);
  CHECK(steerable_subspace(grp, 2).dim() == 1);
  const Eigen::MatrixXd avg = group_average(grp, 2);
  CHECK((avg * avg - avg).cwiseAbs().maxCoeff() < 1e-12);
  // Consistency: the rank of the colored basis stops at the subspace dimension.
  for (int l = 1; l <= 2; ++l) {
    const BasisMatrix v = full_rank_basis(cone, l, color_nodes(cone, ColorMethod::kCenter));
    CHECK(v.rank == steerable_subspace(cone, l).dim());
    const Eigen::MatrixXd P = group_average(grp, l);
    CHECK((P * v.columns - v.columns).cwiseAbs().maxCoeff() < 1e-10);
  }
  CHECK(steerable_subspace(corpus::regular_tetrahedron(), 1).dim() == 0);
}

TEST_CASE("uncolored layer collapses to the centroid on uniform graphs") {
  for (std::uint64_t s = 0; s < 50; ++s) {
    const GeometricGraph G = random_graph(4 + static_cast<int>(s % 5), 500 + s);
    CHECK((uncolored_degeneration(G) - G.centroid()).norm() < 1e-12);
  }
}

TEST_CASE("EGNN forward pass is permutation and O(3) equivariant") {
  const GeometricGraph G = random_graph(7, 8);
  const EuclideanTransform t = random_transform(9, true, true);
  const Permutation p = Permutation::random(7, 10);
  const GeometricGraph H = apply_transform(G, t, p);
  const ForwardResult a = egnn_cpl_forward(G, color_nodes(G, ColorMethod::kCenter));
  const ForwardResult b = egnn_cpl_forward(H, color_nodes(H, ColorMethod::kCenter));
  for (std::size_t i = 0; i < 7; ++i) {
    CHECK((b.positions.row(p[i]).transpose() - t.apply(a.positions.row(i).transpose())).norm() < 1e-10);
    CHECK((b.features[p[i]] - a.features[i]).cwiseAbs().maxCoeff() < 1e-10);
  }
  CHECK((b.readout - t.apply(a.readout)).norm() < 1e-10);
}

TEST_CASE("gram feature is normalized and invariant") {
  const GeometricGraph G = random_graph(5, 4);
  const VirtualNodes z = generate_virtual_nodes(G, color_nodes(G, ColorMethod::kCenter));
  const Eigen::VectorXd f = gram_feature(G.node(0).x, z.Z);
  CHECK(f.size() == 16);
  CHECK(f.norm() == doctest::Approx(1.0).epsilon(1e-12));
  const Mat3 R = random_transform(1, true, false).linear();
  VirtualFrame Z2;
  for (int k = 0; k < 4; ++k) Z2.row(k) = (R * z.Z.row(k).transpose()).transpose();
  CHECK((gram_feature(R * G.node(0).x, Z2) - f).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("coupling paths and common basis features") {
  const auto p1 = coupling_paths({0, 1, 2}, 1);
  CHECK(p1.size() == 3);
  for (const CouplingPath& p : coupling_paths({0, 1, 2, 3}, 2)) {
    CHECK(p.inputs[0] <= p.inputs[1]);
    CHECK(p.output >= std::abs(p.inputs[0] - p.inputs[1]));
    CHECK(p.output <= p.inputs[0] + p.inputs[1]);
  }
  CHECK_FALSE(coupling_paths({1, 2}, 3).empty());

  const GeometricGraph G = random_graph(6, 12);
  const EuclideanTransform t = random_transform(13, true, true);
  const GeometricGraph H = apply_transform(G, t, Permutation::random(6, 14));
  for (int nu : {1, 2, 3}) {
    const auto a = common_basis_features(G, {0, 1, 2}, nu);
    const auto b = common_basis_features(H, {0, 1, 2}, nu);
    REQUIRE(a.size() == b.size());
    for (const auto& [key, v] : a) {
      const Eigen::MatrixXd rho = steerable::o3_representation(v.degree, v.parity, t.linear());
      CHECK((b.at(key).values - rho * v.values).cwiseAbs().maxCoeff() < 1e-9);
    }
  }
  Points dup(2, 3);
  dup << 0, 0, 0, 0, 0, 0;
  CHECK_THROWS_AS(common_basis_features(GeometricGraph::fully_connected(dup), {1}, 1), InvalidArgument);
}

TEST_CASE("readout with fitted per-edge weights hits the incenter") {
  const corpus::TetrahedronSample t = corpus::random_tetrahedron(17);
  Points p(4, 3);
  for (int k = 0; k < 4; ++k) p.row(k) = t.vertices[k].transpose();
  const GeometricGraph G = GeometricGraph::fully_connected(p);
  const Coloring none = color_nodes(G, ColorMethod::kNone);
  CHECK((egnn_cpl_forward(G, none, [](const MessageInput&) { return 0.0; }).readout - G.centroid()).norm() == 0.0);

  Eigen::MatrixXd V(3, static_cast<Eigen::Index>(G.edges().size()));
  for (std::size_t k = 0; k < G.edges().size(); ++k) {
    const Edge& e = G.edges()[k];
    V.col(static_cast<Eigen::Index>(k)) = G.node(e.src).x - G.node(e.dst).x;
  }
  const Vec3 target = t.incenter - G.centroid();
  const WeightSolution sol = solve_dynamic_weights(V, target);
  CHECK(sol.residual < 1e-9);
  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(4, 4);
  for (std::size_t k = 0; k < G.edges().size(); ++k) w(G.edges()[k].src, G.edges()[k].dst) = sol.w[k];
  const ForwardResult f = egnn_cpl_forward(G, none, [&](const MessageInput& m) { return w(m.i, m.j); });
  CHECK((f.readout - t.incenter).norm() < 1e-9);
}
