#include <algorithm>
#include <cmath>
#include <set>

#include "geoequiv/basis.hpp"
#include "geoequiv/error.hpp"

namespace geoequiv {

std::vector<int> CouplingPath::key() const {
  std::vector<int> k = inputs;
  k.insert(k.end(), intermediates.begin(), intermediates.end());
  k.push_back(output);
  return k;
}

namespace {

bool triangle(int a, int b, int c) { return c >= std::abs(a - b) && c <= a + b; }

}  // namespace

std::vector<CouplingPath> coupling_paths(const std::vector<int>& degrees_in, int nu) {
  if (nu < 1 || nu > 3) throw InvalidArgument("body order nu must be 1, 2 or 3");
  std::vector<int> degrees = degrees_in;
  std::sort(degrees.begin(), degrees.end());
  degrees.erase(std::unique(degrees.begin(), degrees.end()), degrees.end());
  for (int l : degrees) {
    if (l < 0 || l > steerable::kDefaultMaxDegree) throw InvalidArgument("degree out of range");
  }
  std::vector<CouplingPath> out;
  if (nu == 1) {
    for (int l : degrees) out.push_back({{l}, {}, l});
    return out;
  }
  for (std::size_t a = 0; a < degrees.size(); ++a) {
    for (std::size_t b = a; b < degrees.size(); ++b) {
      const int l1 = degrees[a], l2 = degrees[b];
      if (nu == 2) {
        for (int l : degrees) {
          if (triangle(l1, l2, l)) out.push_back({{l1, l2}, {}, l});
        }
        continue;
      }
      for (std::size_t c = b; c < degrees.size(); ++c) {
        const int l3 = degrees[c];
        for (int l12 = std::abs(l1 - l2); l12 <= std::min(l1 + l2, steerable::kDefaultMaxDegree); ++l12) {
          for (int l : degrees) {
            if (triangle(l12, l3, l)) out.push_back({{l1, l2, l3}, {l12}, l});
          }
        }
      }
    }
  }
  return out;
}

std::map<std::vector<int>, steerable::SteerableVector> common_basis_features(
    const GeometricGraph& G, const std::vector<CouplingPath>& paths) {
  int lmax = 0;
  for (const CouplingPath& p : paths) {
    const std::size_t nu = p.inputs.size();
    if (nu < 1 || nu > 3) throw InvalidArgument("body order nu must be 1, 2 or 3");
    if (p.intermediates.size() != (nu >= 3 ? nu - 2 : 0)) {
      throw InvalidArgument("coupling path needs nu - 2 intermediate degrees");
    }
    for (int l : p.inputs) lmax = std::max(lmax, l);
  }

  // A_i^(l) = sum over out-edges (i, j) of Y^(l)(x_ij / |x_ij|).
  const std::size_t n = G.size();
  std::vector<std::vector<Eigen::VectorXd>> A(n);
  for (std::size_t i = 0; i < n; ++i) {
    A[i].resize(lmax + 1);
    for (int l = 0; l <= lmax; ++l) A[i][l] = Eigen::VectorXd::Zero(2 * l + 1);
  }
  std::vector<Eigen::VectorXd> y;
  const double diam = G.diameter();
  for (const Edge& e : G.edges()) {
    const Vec3 xij = G.nodes()[e.src].x - G.nodes()[e.dst].x;
    if (xij.norm() <= 1e-12 * std::max(diam, 1e-300)) {
      throw InvalidArgument("zero-length edge vector");
    }
    steerable::sph_harm_upto(lmax, xij, y);
    for (int l = 0; l <= lmax; ++l) A[e.src][l] += y[l];
  }

  std::map<std::vector<int>, steerable::SteerableVector> out;
  for (const CouplingPath& p : paths) {
    int parity = 1;
    for (int l : p.inputs) parity *= (l % 2 == 0) ? 1 : -1;
    Eigen::VectorXd total = Eigen::VectorXd::Zero(2 * p.output + 1);
    for (std::size_t i = 0; i < n; ++i) {
      Eigen::VectorXd v = A[i][p.inputs[0]];
      int lv = p.inputs[0];
      for (std::size_t k = 1; k < p.inputs.size(); ++k) {
        const int lo = (k + 1 == p.inputs.size()) ? p.output : p.intermediates[k - 1];
        v = steerable::cg_table(lv, p.inputs[k], lo).contract(v, A[i][p.inputs[k]]);
        lv = lo;
      }
      if (p.inputs.size() == 1 && p.output != lv) throw InvalidArgument("nu = 1 path must keep its degree");
      total += v;
    }
    out.emplace(p.key(), steerable::SteerableVector(p.output, parity, std::move(total)));
  }
  return out;
}

std::map<std::vector<int>, steerable::SteerableVector> common_basis_features(
    const GeometricGraph& G, const std::vector<int>& degrees, int nu) {
  return common_basis_features(G, coupling_paths(degrees, nu));
}

}  // namespace geoequiv
