#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <vector>

#include "geoequiv/geometry.hpp"

namespace geoequiv {

using Quadruple = std::array<std::size_t, 4>;

/// Lexicographically first ordered quadruple with
/// |det(x_b - x_a, x_c - x_a, x_d - x_a)| > rel * diameter^3.
std::optional<Quadruple> find_noncoplanar_quadruple(const Points& X, double rel = Tolerance{}.rel);

/// Four-point positioning test on bare point clouds (features ignored).
/// Degenerate inputs use the brute-force path for N <= 8 and throw
/// UnsupportedDegenerate above that.
std::optional<IsomorphismCertificate> point_cloud_isomorphic(const Points& X, const Points& Y,
                                                             const Tolerance& tol = {});

/// Four-point positioning test on geometric graphs: node features and the
/// directed edge multiset (with edge features) must match under sigma.
std::optional<IsomorphismCertificate> geometric_graph_isomorphic(const GeometricGraph& G,
                                                                 const GeometricGraph& H,
                                                                 const Tolerance& tol = {});

/// Exhaustive oracle over all N! node maps (distance-pruned). N <= 8.
bool brute_force_isomorphic(const GeometricGraph& G, const GeometricGraph& H,
                            const Tolerance& tol = {});
std::optional<IsomorphismCertificate> brute_force_certificate(const GeometricGraph& G,
                                                              const GeometricGraph& H,
                                                              const Tolerance& tol = {},
                                                              bool use_features = true);

struct SymmetryElement {
  EuclideanTransform transform;  // zero translation, acts on the decentered graph
  Permutation permutation;       // x_i = R x_{perm[i]}
};

struct SymmetryGroup {
  std::vector<SymmetryElement> elements;
  bool closed = false;

  std::size_t order() const noexcept { return elements.size(); }
  bool trivial() const noexcept { return elements.size() <= 1; }
};

/// Every orthogonal map (with its node permutation) fixing the decentered
/// graph. Throws DegenerateGraph when no non-coplanar quadruple exists.
SymmetryGroup symmetry_group(const GeometricGraph& G, const Tolerance& tol = {});

}  // namespace geoequiv
