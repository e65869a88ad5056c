#include "geoequiv/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <set>
#include <string>

#include "geoequiv/error.hpp"

namespace geoequiv {

// ---------------------------------------------------------------------------
// GeometricGraph

GeometricGraph::GeometricGraph(std::vector<Node> nodes, std::vector<Edge> edges, bool directed)
    : nodes_(std::move(nodes)), edges_(std::move(edges)), directed_(directed) {
  validate_and_close();
}

void GeometricGraph::validate_and_close() {
  for (const Node& n : nodes_) {
    if (!n.x.allFinite()) throw InvalidArgument("node position is not finite");
  }
  for (const Edge& e : edges_) {
    if (e.src >= nodes_.size() || e.dst >= nodes_.size()) {
      throw InvalidArgument("edge endpoint out of range: (" + std::to_string(e.src) + ", " +
                            std::to_string(e.dst) + ")");
    }
  }
  if (directed_) return;
  std::set<std::pair<std::size_t, std::size_t>> present;
  for (const Edge& e : edges_) present.emplace(e.src, e.dst);
  const std::size_t original = edges_.size();
  for (std::size_t k = 0; k < original; ++k) {
    const Edge e = edges_[k];
    if (present.emplace(e.dst, e.src).second) edges_.push_back(Edge{e.dst, e.src, e.e});
  }
}

GeometricGraph GeometricGraph::point_cloud(const Points& positions) {
  std::vector<Node> nodes(positions.rows());
  for (Eigen::Index i = 0; i < positions.rows(); ++i) {
    nodes[i] = Node{Eigen::VectorXd::Ones(1), positions.row(i).transpose()};
  }
  return GeometricGraph(std::move(nodes), {}, false);
}

GeometricGraph GeometricGraph::fully_connected(const Points& positions) {
  GeometricGraph g = point_cloud(positions);
  const std::size_t n = g.size();
  std::vector<Edge> edges;
  edges.reserve(n * (n > 0 ? n - 1 : 0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j) edges.push_back(Edge{i, j, {}});
    }
  }
  g.edges_ = std::move(edges);
  return g;
}

Points GeometricGraph::positions() const {
  Points p(nodes_.size(), 3);
  for (std::size_t i = 0; i < nodes_.size(); ++i) p.row(i) = nodes_[i].x.transpose();
  return p;
}

Vec3 GeometricGraph::centroid() const {
  Vec3 c = Vec3::Zero();
  for (const Node& n : nodes_) c += n.x;
  return nodes_.empty() ? c : Vec3(c / static_cast<double>(nodes_.size()));
}

double GeometricGraph::diameter() const {
  if (nodes_.size() < 2) return 0.0;
  const kernels::PointsSoA soa = to_soa(positions());
  return kernels::active().max_pairwise_distance(soa.view());
}

GeometricGraph GeometricGraph::with_positions(const Points& positions) const {
  if (static_cast<std::size_t>(positions.rows()) != nodes_.size()) {
    throw InvalidArgument("position count does not match node count");
  }
  GeometricGraph g = *this;
  for (std::size_t i = 0; i < nodes_.size(); ++i) g.nodes_[i].x = positions.row(i).transpose();
  g.validate_and_close();
  return g;
}

GeometricGraph GeometricGraph::with_features(std::vector<Eigen::VectorXd> features) const {
  if (features.size() != nodes_.size()) throw InvalidArgument("feature count does not match node count");
  GeometricGraph g = *this;
  for (std::size_t i = 0; i < nodes_.size(); ++i) g.nodes_[i].h = std::move(features[i]);
  return g;
}

GeometricGraph GeometricGraph::with_edges(std::vector<Edge> edges) const {
  return GeometricGraph(nodes_, std::move(edges), directed_);
}

// ---------------------------------------------------------------------------
// EuclideanTransform

EuclideanTransform::EuclideanTransform(const Mat3& linear, const Vec3& translation)
    : linear_(linear), translation_(translation) {
  if (!linear.allFinite() || !translation.allFinite()) {
    throw InvalidArgument("transform has non-finite entries");
  }
  const double err = (linear.transpose() * linear - Mat3::Identity()).cwiseAbs().maxCoeff();
  if (err > 1e-10) throw InvalidArgument("linear part is not orthogonal");
}

EuclideanTransform EuclideanTransform::inverse() const {
  const Mat3 inv = linear_.transpose();
  return EuclideanTransform(inv, -(inv * translation_));
}

EuclideanTransform EuclideanTransform::compose(const EuclideanTransform& inner) const {
  return EuclideanTransform(linear_ * inner.linear_, linear_ * inner.translation_ + translation_);
}

// ---------------------------------------------------------------------------
// Permutation

Permutation::Permutation(std::vector<std::size_t> mapping) : mapping_(std::move(mapping)) {
  std::vector<bool> seen(mapping_.size(), false);
  for (std::size_t v : mapping_) {
    if (v >= mapping_.size() || seen[v]) throw InvalidArgument("mapping is not a bijection");
    seen[v] = true;
  }
}

Permutation Permutation::identity(std::size_t n) {
  std::vector<std::size_t> m(n);
  std::iota(m.begin(), m.end(), std::size_t{0});
  return Permutation(std::move(m));
}

Permutation Permutation::random(std::size_t n, std::uint64_t seed) {
  std::vector<std::size_t> m(n);
  std::iota(m.begin(), m.end(), std::size_t{0});
  std::mt19937_64 rng(seed);
  std::shuffle(m.begin(), m.end(), rng);
  return Permutation(std::move(m));
}

Permutation Permutation::inverse() const {
  std::vector<std::size_t> inv(mapping_.size());
  for (std::size_t i = 0; i < mapping_.size(); ++i) inv[mapping_[i]] = i;
  return Permutation(std::move(inv));
}

Permutation Permutation::compose(const Permutation& inner) const {
  if (inner.size() != size()) throw InvalidArgument("permutation sizes differ");
  std::vector<std::size_t> m(size());
  for (std::size_t i = 0; i < size(); ++i) m[i] = mapping_[inner.mapping_[i]];
  return Permutation(std::move(m));
}

bool Permutation::is_identity() const {
  for (std::size_t i = 0; i < mapping_.size(); ++i) {
    if (mapping_[i] != i) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Group actions

GeometricGraph apply_transform(const GeometricGraph& graph, const EuclideanTransform& t,
                               const std::optional<Permutation>& perm) {
  const std::size_t n = graph.size();
  if (perm && perm->size() != n) {
    throw InvalidArgument("permutation length " + std::to_string(perm->size()) +
                          " does not match node count " + std::to_string(n));
  }
  auto where = [&](std::size_t i) { return perm ? (*perm)[i] : i; };
  std::vector<Node> nodes(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Node& src = graph.nodes()[i];
    nodes[where(i)] = Node{src.h, t.apply(src.x)};
  }
  std::vector<Edge> edges;
  edges.reserve(graph.edges().size());
  for (const Edge& e : graph.edges()) edges.push_back(Edge{where(e.src), where(e.dst), e.e});
  return GeometricGraph(std::move(nodes), std::move(edges), graph.directed());
}

GeometricGraph apply_certificate(const GeometricGraph& h, const IsomorphismCertificate& cert) {
  // H node sigma(i) lands on G node i.
  return apply_transform(h, cert.transform, cert.permutation.inverse());
}

EuclideanTransform random_transform(std::uint64_t seed, bool allow_reflection,
                                    bool allow_translation) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Mat3 a;
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 3; ++c) a(r, c) = gauss(rng);
  }
  Eigen::HouseholderQR<Mat3> qr(a);
  Mat3 q = qr.householderQ();
  const Mat3 r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int c = 0; c < 3; ++c) {
    if (r(c, c) < 0.0) q.col(c) = -q.col(c);
  }
  if (!allow_reflection && q.determinant() < 0.0) q.col(0) = -q.col(0);
  Vec3 t = Vec3::Zero();
  if (allow_translation) {
    std::uniform_real_distribution<double> uni(-10.0, 10.0);
    for (int k = 0; k < 3; ++k) t[k] = uni(rng);
  }
  return EuclideanTransform(q, t);
}

Decentered decenter(const GeometricGraph& graph) {
  if (graph.size() == 0) throw InvalidArgument("cannot decenter an empty graph");
  const Vec3 c = graph.centroid();
  Points p = graph.positions();
  p.rowwise() -= c.transpose();
  return Decentered{graph.with_positions(p), c};
}

Alignment kabsch_align(const Points& X, const Points& Y) {
  if (X.rows() != Y.rows() || X.rows() == 0) {
    throw InvalidArgument("kabsch_align needs two non-empty point sets of equal size");
  }
  const Vec3 cx = X.colwise().mean().transpose();
  const Vec3 cy = Y.colwise().mean().transpose();
  Mat3 cov = Mat3::Zero();
  for (Eigen::Index i = 0; i < X.rows(); ++i) {
    cov += (Y.row(i).transpose() - cy) * (X.row(i).transpose() - cx).transpose();
  }
  Eigen::JacobiSVD<Mat3> svd(cov, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Mat3 rot = svd.matrixV() * svd.matrixU().transpose();
  const EuclideanTransform t(rot, cx - rot * cy);
  double sq = 0.0;
  for (Eigen::Index i = 0; i < X.rows(); ++i) {
    sq += (X.row(i).transpose() - t.apply(Y.row(i).transpose())).squaredNorm();
  }
  return Alignment{t, std::sqrt(sq / static_cast<double>(X.rows()))};
}

double max_displacement(const Points& X, const Points& Y, const EuclideanTransform& t) {
  double worst = 0.0;
  for (Eigen::Index i = 0; i < X.rows(); ++i) {
    worst = std::max(worst, (X.row(i).transpose() - t.apply(Y.row(i).transpose())).norm());
  }
  return worst;
}

kernels::PointsSoA to_soa(const Points& p) {
  kernels::PointsSoA soa(static_cast<std::size_t>(p.rows()));
  for (Eigen::Index i = 0; i < p.rows(); ++i) {
    soa.x[i] = p(i, 0);
    soa.y[i] = p(i, 1);
    soa.z[i] = p(i, 2);
  }
  return soa;
}

Mat3 axis_mirror(int axis) {
  Mat3 m = Mat3::Identity();
  m(axis, axis) = -1.0;
  return m;
}

Mat3 rotation_y(double angle) {
  const double c = std::cos(angle), s = std::sin(angle);
  Mat3 r;
  r << c, 0.0, s, 0.0, 1.0, 0.0, -s, 0.0, c;
  return r;
}

Mat3 rotation_z(double angle) {
  const double c = std::cos(angle), s = std::sin(angle);
  Mat3 r;
  r << c, -s, 0.0, s, c, 0.0, 0.0, 0.0, 1.0;
  return r;
}

}  // namespace geoequiv
