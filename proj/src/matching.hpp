#pragma once

// Shared four-point positioning matcher (library-private).

#include <optional>
#include <vector>

#include "geoequiv/geometry.hpp"
#include "geoequiv/isomorphism.hpp"

namespace geoequiv::detail {

struct MatchContext {
  MatchContext(const GeometricGraph& g, const GeometricGraph& h, const Tolerance& tol,
               bool use_features, bool with_translation);

  const GeometricGraph& g;
  const GeometricGraph& h;
  std::size_t n;
  Points xg, xh;
  std::vector<double> dg, dh;  // row-major N x N distance matrices
  double scale;                // max(diam G, diam H)
  double q;                    // distance matching step
  double align;                // accepted max displacement
  double feat_tol;
  bool use_features;
  bool with_translation;

  double dist_g(std::size_t i, std::size_t j) const { return dg[i * n + j]; }
  double dist_h(std::size_t i, std::size_t j) const { return dh[i * n + j]; }
};

bool features_match(const Eigen::VectorXd& a, const Eigen::VectorXd& b, double tol);

/// Try sigma(alpha_k) = beta_k, extend greedily by distance signatures, then
/// align and check edges.
std::optional<IsomorphismCertificate> try_match(const MatchContext& ctx, const Quadruple& alpha,
                                                const Quadruple& beta);

/// Directed edge multisets agree under x^G_i <-> x^H_{perm[i]}.
bool edges_match(const GeometricGraph& g, const GeometricGraph& h, const Permutation& perm,
                 double feat_tol);

/// Calls fn(beta) for every ordered quadruple of distinct indices < n in
/// lexicographic order; stops when fn returns true.
template <class Fn>
void for_each_ordered_quadruple(std::size_t n, Fn&& fn) {
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      if (b == a) continue;
      for (std::size_t c = 0; c < n; ++c) {
        if (c == a || c == b) continue;
        for (std::size_t d = 0; d < n; ++d) {
          if (d == a || d == b || d == c) continue;
          if (fn(Quadruple{a, b, c, d})) return;
        }
      }
    }
}

}  // namespace geoequiv::detail
