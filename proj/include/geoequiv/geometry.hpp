#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "geoequiv/kernels.hpp"

namespace geoequiv {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;
/// N x 3, one point per row.
using Points = Eigen::Matrix<double, Eigen::Dynamic, 3, Eigen::RowMajor>;

/// Tolerance model shared by the isomorphism and canonical-form code.
///
/// `rel` is the quantization / matching step relative to the coordinate
/// diameter; `align` bounds the residual of an accepted alignment, also
/// relative to the diameter.
struct Tolerance {
  double rel = 1e-6;
  double align = 1e-8;
};

struct Node {
  Eigen::VectorXd h;  // invariant node feature, possibly empty
  Vec3 x;
};

struct Edge {
  std::size_t src = 0;
  std::size_t dst = 0;
  Eigen::VectorXd e;  // optional edge feature; absent == empty vector
};

/// G = (H, X; A). Undirected graphs are stored as symmetric directed pairs;
/// the constructor adds any missing reverse edge.
class GeometricGraph {
 public:
  GeometricGraph() = default;
  GeometricGraph(std::vector<Node> nodes, std::vector<Edge> edges, bool directed);

  /// Nodes at `positions` with a uniform scalar feature 1 and no edges.
  static GeometricGraph point_cloud(const Points& positions);
  /// Same as point_cloud() plus all N(N-1) directed edges.
  static GeometricGraph fully_connected(const Points& positions);

  std::size_t size() const noexcept { return nodes_.size(); }
  bool directed() const noexcept { return directed_; }
  const std::vector<Node>& nodes() const noexcept { return nodes_; }
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  const Node& node(std::size_t i) const { return nodes_.at(i); }

  Points positions() const;
  Vec3 centroid() const;
  /// Largest pairwise distance; 0 for N < 2.
  double diameter() const;

  GeometricGraph with_positions(const Points& positions) const;
  GeometricGraph with_features(std::vector<Eigen::VectorXd> features) const;
  GeometricGraph with_edges(std::vector<Edge> edges) const;

 private:
  void validate_and_close();

  std::vector<Node> nodes_;
  std::vector<Edge> edges_;
  bool directed_ = false;
};

/// Element of E(3): x -> linear * x + translation, linear orthogonal.
class EuclideanTransform {
 public:
  EuclideanTransform() : linear_(Mat3::Identity()), translation_(Vec3::Zero()) {}
  /// Throws InvalidArgument unless `linear` is orthogonal within 1e-10.
  EuclideanTransform(const Mat3& linear, const Vec3& translation = Vec3::Zero());

  static EuclideanTransform identity() { return {}; }

  const Mat3& linear() const noexcept { return linear_; }
  const Vec3& translation() const noexcept { return translation_; }
  bool is_reflection() const noexcept { return linear_.determinant() < 0.0; }

  Vec3 apply(const Vec3& x) const { return linear_ * x + translation_; }
  EuclideanTransform inverse() const;
  /// (*this) after `inner`.
  EuclideanTransform compose(const EuclideanTransform& inner) const;

 private:
  Mat3 linear_;
  Vec3 translation_;
};

/// Bijection on {0..N-1}. mapping()[i] is the image of i.
class Permutation {
 public:
  Permutation() = default;
  explicit Permutation(std::vector<std::size_t> mapping);

  static Permutation identity(std::size_t n);
  static Permutation random(std::size_t n, std::uint64_t seed);

  std::size_t size() const noexcept { return mapping_.size(); }
  std::size_t operator[](std::size_t i) const { return mapping_[i]; }
  const std::vector<std::size_t>& mapping() const noexcept { return mapping_; }
  Permutation inverse() const;
  /// (*this) after `inner`: i -> this[inner[i]].
  Permutation compose(const Permutation& inner) const;
  bool is_identity() const;

  friend bool operator==(const Permutation&, const Permutation&) = default;

 private:
  std::vector<std::size_t> mapping_;
};

/// Witness <sigma, g> of Def-style geometric isomorphism G ~ H:
/// x_i^G = g * x_{sigma(i)}^H for all i.
struct IsomorphismCertificate {
  Permutation permutation;
  EuclideanTransform transform;
  double residual = 0.0;  // max displacement after alignment
};

/// Positions become t(x); node i of the input becomes node perm[i] of the
/// output; features move with their nodes, edges are relabeled.
GeometricGraph apply_transform(const GeometricGraph& graph, const EuclideanTransform& t,
                               const std::optional<Permutation>& perm = std::nullopt);

/// Maps H onto G (up to the certificate residual).
GeometricGraph apply_certificate(const GeometricGraph& h, const IsomorphismCertificate& cert);

/// Haar-distributed orthogonal part (QR of a Gaussian matrix with sign fix),
/// translation uniform in [-10, 10]^3 when enabled.
EuclideanTransform random_transform(std::uint64_t seed, bool allow_reflection,
                                    bool allow_translation);

struct Decentered {
  GeometricGraph graph;
  Vec3 centroid;
};
Decentered decenter(const GeometricGraph& graph);

struct Alignment {
  EuclideanTransform transform;
  double rmsd = 0.0;
};

/// O(3) + translation minimizing the RMSD of t(Y) against X (reflections
/// allowed). X and Y must have the same number of rows.
Alignment kabsch_align(const Points& X, const Points& Y);

/// Maximum |x_i - t(y_i)|.
double max_displacement(const Points& X, const Points& Y, const EuclideanTransform& t);

/// Structure-of-arrays copy for the distance kernels.
kernels::PointsSoA to_soa(const Points& p);

/// Reflection about the plane with the given normal axis (0 = x, 1 = y, 2 = z).
Mat3 axis_mirror(int axis);
/// Rotation by `angle` about the y axis (column-vector convention).
Mat3 rotation_y(double angle);
Mat3 rotation_z(double angle);

}  // namespace geoequiv
