#include "geoequiv/basis.hpp"
#include "geoequiv/error.hpp"

namespace geoequiv {

std::size_t numerical_rank(const Eigen::MatrixXd& m, double rel_cutoff) {
  if (m.size() == 0) return 0;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  const auto& s = svd.singularValues();
  if (s.size() == 0 || s[0] <= 0.0) return 0;
  std::size_t r = 0;
  for (Eigen::Index k = 0; k < s.size(); ++k) {
    if (s[k] > rel_cutoff * s[0]) ++r;
  }
  return r;
}

Eigen::MatrixXd group_average(const SymmetryGroup& group, int l) {
  const int dim = 2 * l + 1;
  Eigen::MatrixXd avg = Eigen::MatrixXd::Zero(dim, dim);
  if (group.elements.empty()) return Eigen::MatrixXd::Identity(dim, dim);
  const int parity = (l % 2 == 0) ? 1 : -1;
  for (const SymmetryElement& e : group.elements) {
    avg += steerable::o3_representation(l, parity, e.transform.linear());
  }
  return avg / static_cast<double>(group.elements.size());
}

SubspaceBasis steerable_subspace(const SymmetryGroup& group, int l) {
  if (l < 0) throw InvalidArgument("negative degree");
  const Eigen::MatrixXd p = group_average(group, l);
  const Eigen::MatrixXd sym = 0.5 * (p + p.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sym);
  std::vector<Eigen::Index> keep;
  for (Eigen::Index k = 0; k < sym.rows(); ++k) {
    if (es.eigenvalues()[k] > 0.5) keep.push_back(k);
  }
  SubspaceBasis out;
  out.degree = l;
  out.columns.resize(sym.rows(), static_cast<Eigen::Index>(keep.size()));
  for (std::size_t c = 0; c < keep.size(); ++c) out.columns.col(c) = es.eigenvectors().col(keep[c]);
  return out;
}

SubspaceBasis steerable_subspace(const GeometricGraph& G, int l, const Tolerance& tol) {
  return steerable_subspace(symmetry_group(G, tol), l);
}

}  // namespace geoequiv
