#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

#include "geoequiv/basis.hpp"
#include "geoequiv/digest.hpp"
#include "geoequiv/error.hpp"

namespace geoequiv {
namespace {

// Node order by quantized color, ties by index.
std::vector<std::size_t> color_order(const Coloring& coloring) {
  const std::size_t n = coloring.colors.size();
  std::vector<std::vector<std::int64_t>> q(n);
  for (std::size_t i = 0; i < n; ++i) q[i] = quantize(coloring.colors[i], kColorTol);
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return q[a] < q[b]; });
  return order;
}

// (l1, l2) with l1 + l2 >= l >= |l1 - l2|, l1 + l2 = l (mod 2), ordered by (l1 + l2, l1).
std::vector<std::pair<int, int>> lift_degrees(int l) {
  std::vector<std::pair<int, int>> out;
  for (int s = std::max(2, l); s <= l + 4; ++s) {
    if ((s - l) % 2 != 0) continue;
    for (int l1 = 1; l1 < s; ++l1) {
      const int l2 = s - l1;
      if (l1 > steerable::kDefaultMaxDegree || l2 > steerable::kDefaultMaxDegree) continue;
      if (std::abs(l1 - l2) > l) continue;
      out.emplace_back(l1, l2);
    }
  }
  return out;
}

}  // namespace

BasisMatrix full_rank_basis(const GeometricGraph& G, int l, const Coloring& coloring, const Tolerance& tol) {
  if (l < 0 || l > steerable::kDefaultMaxDegree) throw InvalidArgument("degree out of range");
  const std::size_t n = G.size();
  if (coloring.colors.size() != n) throw InvalidArgument("coloring does not match the graph");
  const int dim = 2 * l + 1;

  const Points xc = decenter(G).graph.positions();
  const double diam = G.diameter();
  const std::vector<std::size_t> order = color_order(coloring);
  std::vector<std::size_t> rank_of(n);
  for (std::size_t k = 0; k < n; ++k) rank_of[order[k]] = k;

  BasisMatrix out;
  out.degree = l;
  out.parity = (l % 2 == 0) ? 1 : -1;

  Eigen::MatrixXd proj = Eigen::MatrixXd::Identity(dim, dim);
  out.target = static_cast<std::size_t>(dim);
  if (!coloring.distinct) {
    const SubspaceBasis f = steerable_subspace(G, l, tol);
    proj = f.columns * f.columns.transpose();
    out.target = f.dim();
  }

  std::vector<Eigen::VectorXd> cols;
  auto current_rank = [&]() {
    Eigen::MatrixXd m(dim, static_cast<Eigen::Index>(cols.size()));
    for (std::size_t c = 0; c < cols.size(); ++c) m.col(c) = cols[c];
    return numerical_rank(m);
  };

  for (std::size_t k : order) {
    const Vec3 v = xc.row(k).transpose();
    if (v.norm() <= 1e-12 * std::max(diam, 1e-300)) continue;
    cols.push_back(proj * steerable::sph_harm_values(l, v));
    out.provenance.push_back("Y" + std::to_string(l) + "(x_" + std::to_string(k) + "c)");
  }
  out.rank = cols.empty() ? 0 : current_rank();

  if (out.rank < out.target && l >= 1) {
    // Edge directions, lower color rank -> higher.
    std::set<std::pair<std::size_t, std::size_t>> pairs;
    if (!G.edges().empty()) {
      for (const Edge& e : G.edges()) {
        if (e.src == e.dst) continue;
        std::size_t a = e.src, b = e.dst;
        if (rank_of[a] > rank_of[b]) std::swap(a, b);
        pairs.emplace(rank_of[a], rank_of[b]);
      }
    } else {
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = a + 1; b < n; ++b) pairs.emplace(a, b);
    }
    std::vector<std::pair<std::size_t, std::size_t>> edges;  // node indices
    std::vector<Vec3> dirs;
    for (const auto& [ra, rb] : pairs) {
      const Vec3 d = xc.row(order[rb]).transpose() - xc.row(order[ra]).transpose();
      if (d.norm() <= 1e-12 * std::max(diam, 1e-300)) continue;
      edges.emplace_back(order[ra], order[rb]);
      dirs.push_back(d);
    }
    const auto lifts = lift_degrees(l);
    for (const auto& [l1, l2] : lifts) {
      const steerable::CGTable& t = steerable::cg_table(l1, l2, l);
      for (std::size_t p = 0; p < dirs.size() && out.rank < out.target; ++p) {
        const Eigen::VectorXd y1 = steerable::sph_harm_values(l1, dirs[p]);
        for (std::size_t q = p + 1; q < dirs.size() && out.rank < out.target; ++q) {
          cols.push_back(proj * t.contract(y1, steerable::sph_harm_values(l2, dirs[q])));
          const std::size_t r = current_rank();
          if (r > out.rank) {
            out.rank = r;
            std::ostringstream os;
            os << "cg(" << l1 << "," << l2 << ")(e_" << edges[p].first << edges[p].second << ", e_"
               << edges[q].first << edges[q].second << ")";
            out.provenance.push_back(os.str());
          } else {
            cols.pop_back();
          }
        }
      }
      if (out.rank >= out.target) break;
    }
  }

  out.columns.resize(dim, static_cast<Eigen::Index>(cols.size()));
  for (std::size_t c = 0; c < cols.size(); ++c) out.columns.col(c) = cols[c];
  if (out.rank < out.target) {
    throw RankDeficiency("degree-" + std::to_string(l) + " basis reached rank " + std::to_string(out.rank) +
                             " of " + std::to_string(out.target),
                         out.rank, out.target);
  }
  return out;
}

WeightSolution solve_dynamic_weights(const Eigen::MatrixXd& V, const Eigen::VectorXd& target) {
  if (V.rows() != target.size()) throw InvalidArgument("basis and target sizes differ");
  WeightSolution sol;
  if (V.cols() == 0) {
    sol.w = Eigen::VectorXd();
    sol.residual = target.norm();
    return sol;
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(V, Eigen::ComputeThinU | Eigen::ComputeThinV);
  svd.setThreshold(kRankCutoff);
  sol.w = svd.solve(target);
  sol.residual = (V * sol.w - target).norm();
  return sol;
}

WeightSolution solve_dynamic_weights(const BasisMatrix& V, const steerable::SteerableVector& target) {
  if (V.degree != target.degree) throw InvalidArgument("basis and target degrees differ");
  return solve_dynamic_weights(V.columns, target.values);
}

}  // namespace geoequiv
