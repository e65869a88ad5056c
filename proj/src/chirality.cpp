#include <cmath>

#include "geoequiv/corpus.hpp"
#include "geoequiv/error.hpp"
#include "geoequiv/steerable.hpp"

namespace geoequiv::corpus {

double chirality_det(const std::array<Vec3, 4>& p) {
  Mat3 m;
  m.col(0) = p[1] - p[0];
  m.col(1) = p[2] - p[0];
  m.col(2) = p[3] - p[0];
  return m.determinant();
}

double virtual_node_det(const GeometricGraph& G, const Coloring& coloring) {
  VirtualNodes vn;
  try {
    vn = separable_virtual_nodes(G, coloring, kVirtualNodeSeed);
  } catch (const CoplanarVirtualNodes&) {
    vn = generate_virtual_nodes(G, coloring, kVirtualNodeSeed, 0);
  }
  std::array<Vec3, 4> z;
  for (int k = 0; k < 4; ++k) z[k] = vn.Z.row(k).transpose();
  return chirality_det(z);
}

const std::vector<std::array<int, 3>>& moment3_triples() {
  // Odd-sum couplings vanish when two inputs coincide, so degrees are distinct.
  static const std::vector<std::array<int, 3>> t = [] {
    std::vector<std::array<int, 3>> out;
    for (int a = 1; a <= 6; ++a)
      for (int b = a + 1; b <= 6; ++b)
        for (int c = b + 1; c <= std::min(6, a + b); ++c)
          if ((a + b + c) % 2 == 1) out.push_back({a, b, c});
    return out;
  }();
  return t;
}

double chirality_moment3(const GeometricGraph& G) {
  const std::size_t n = G.size();
  if (n == 0) throw InvalidArgument("empty graph");
  const Vec3 c = G.centroid();
  const double diam = G.diameter();
  std::vector<Eigen::VectorXd> A(7), y;
  for (int l = 0; l <= 6; ++l) A[l] = Eigen::VectorXd::Zero(2 * l + 1);
  for (const Node& nd : G.nodes()) {
    const Vec3 u = nd.x - c;
    if (u.norm() <= 1e-12 * std::max(diam, 1e-300)) continue;
    steerable::sph_harm_upto(6, u, y);
    for (int l = 0; l <= 6; ++l) A[l] += y[l];
  }
  for (int l = 0; l <= 6; ++l) A[l] /= static_cast<double>(n);
  double s = 0.0;
  for (const auto& [a, b, l] : moment3_triples()) {
    s += steerable::cg_table(a, b, l).contract(A[a], A[b]).dot(A[l]);
  }
  return s;
}

LadderStep tensor_step_for(const GeometricGraph& G) {
  const LadderStep* last = nullptr;
  for (const LadderStep& s : coloring_ladder()) {
    if (s.method != ColorMethod::kTensor) continue;
    last = &s;
    try {
      separable_virtual_nodes(G, color_nodes(G, s.method, s.L, s.order), kVirtualNodeSeed);
      return s;
    } catch (const CoplanarVirtualNodes&) {
    }
  }
  return *last;
}

std::vector<ChiralityRow> chirality_table(const ChiralityGraphs& graphs) {
  const std::array<const LabeledPair*, 3> pairs{&graphs.inversion, &graphs.mirror, &graphs.counterexample};
  std::vector<ChiralityRow> rows;
  for (ChiralityMethod method : {ChiralityMethod::kDet, ChiralityMethod::kMoment3}) {
    for (ColorMethod cm : {ColorMethod::kNone, ColorMethod::kCenter, ColorMethod::kTensor}) {
      ChiralityRow row{cm, method, {}};
      for (std::size_t k = 0; k < 3; ++k) {
        LadderStep step{cm, 3, 2};
        if (method == ChiralityMethod::kDet && cm == ColorMethod::kTensor) step = tensor_step_for(pairs[k]->first);
        auto feature = [&](const GeometricGraph& g) {
          if (method == ChiralityMethod::kMoment3) return chirality_moment3(g);
          return virtual_node_det(g, color_nodes(g, cm, step.L, step.order));
        };
        ChiralityCell& cell = row.cells[k];
        cell.first = feature(pairs[k]->first);
        cell.second = feature(pairs[k]->second);
        cell.separates = std::abs(cell.first - cell.second) > kChiralityZero;
        cell.reproducible = !(method == ChiralityMethod::kMoment3 && cm == ColorMethod::kNone && k < 2);
      }
      rows.push_back(row);
    }
  }
  return rows;
}

const std::vector<std::array<bool, 3>>& expected_chirality_pattern() {
  static const std::vector<std::array<bool, 3>> p = {
      {false, false, false}, {true, true, false}, {true, true, true},
      {true, true, true},    {true, true, true},  {true, true, true},
  };
  return p;
}

}  // namespace geoequiv::corpus
