#include <cmath>
#include <numbers>

#include "geoequiv/basis.hpp"
#include "geoequiv/error.hpp"

namespace geoequiv {
namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Standard normal from two hashed uniforms (Box-Muller); position-addressable
// so inputs of any width get stable coefficients.
double gaussian_at(std::uint64_t seed, std::uint64_t k) {
  const std::uint64_t a = splitmix64(seed ^ splitmix64(2 * k));
  const std::uint64_t b = splitmix64(seed ^ splitmix64(2 * k + 1));
  const double u1 = (static_cast<double>(a >> 11) + 0.5) * 0x1.0p-53;
  const double u2 = static_cast<double>(b >> 11) * 0x1.0p-53;
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

}  // namespace

Eigen::VectorXd gram_feature(const Vec3& x, const VirtualFrame& Z) {
  Eigen::Matrix<double, 4, 3> m;
  for (int k = 0; k < 4; ++k) m.row(k) = x.transpose() - Z.row(k);
  const Eigen::Matrix4d g = m * m.transpose();
  const double f = g.norm();
  if (!(f > 0.0)) throw InvalidArgument("gram feature is undefined: node coincides with every virtual node");
  Eigen::VectorXd out(16);
  for (int a = 0; a < 4; ++a) {
    for (int b = 0; b < 4; ++b) out[a * 4 + b] = g(a, b) / f;
  }
  return out;
}

WeightFn default_weight_fn(std::uint64_t seed) {
  return [seed](const MessageInput& in) {
    std::uint64_t k = 0;
    double acc = gaussian_at(seed, ~std::uint64_t{0});
    auto feed = [&](const Eigen::VectorXd& v) {
      for (Eigen::Index t = 0; t < v.size(); ++t) acc += 0.5 * gaussian_at(seed, k++) * v[t];
    };
    feed(in.hi);
    feed(in.hj);
    acc += 0.5 * gaussian_at(seed, k++) * in.d2;
    feed(in.e);
    return 0.1 * std::tanh(acc);
  };
}

ForwardResult egnn_cpl_forward(const GeometricGraph& G, const Coloring& coloring, const WeightFn& weight_fn) {
  const std::size_t n = G.size();
  if (n == 0) throw InvalidArgument("empty graph");
  if (coloring.colors.size() != n) throw InvalidArgument("coloring does not match the graph");

  ForwardResult out;
  out.virtual_nodes = generate_virtual_nodes(G, coloring);
  std::vector<Eigen::VectorXd> ht(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Eigen::VectorXd& c = coloring.colors[i];
    Eigen::VectorXd g = Eigen::VectorXd::Zero(16);
    try {
      g = gram_feature(G.nodes()[i].x, out.virtual_nodes.Z);
    } catch (const InvalidArgument&) {
      // node sits on all four virtual nodes: feature left at zero
    }
    ht[i].resize(c.size() + 16);
    ht[i] << c, g;
  }

  out.positions = G.positions();
  std::vector<double> agg(n, 0.0);
  Vec3 shift = Vec3::Zero();
  for (const Edge& e : G.edges()) {
    const Vec3 xij = G.nodes()[e.src].x - G.nodes()[e.dst].x;
    const double w = weight_fn(MessageInput{ht[e.src], ht[e.dst], xij.squaredNorm(), e.e, e.src, e.dst});
    out.positions.row(e.src) += w * xij.transpose();
    agg[e.src] += w;
    shift += w * xij;
  }
  out.readout = G.centroid() + shift;
  out.features.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Eigen::VectorXd& h = G.nodes()[i].h;
    out.features[i].resize(h.size() + 1);
    out.features[i] << h, agg[i];
  }
  return out;
}

Vec3 uncolored_degeneration(const GeometricGraph& G_uniform, const WeightFn& weight_fn) {
  const auto& nodes = G_uniform.nodes();
  for (const Node& nd : nodes) {
    if (nd.h.size() != nodes.front().h.size() || (nd.h - nodes.front().h).cwiseAbs().maxCoeff() > 0.0) {
      throw InvalidArgument("uncolored degeneration needs uniform node features");
    }
  }
  return egnn_cpl_forward(G_uniform, color_nodes(G_uniform, ColorMethod::kNone), weight_fn).readout;
}

}  // namespace geoequiv
