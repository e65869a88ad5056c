#include "geoequiv/isomorphism.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "geoequiv/error.hpp"
#include "matching.hpp"

namespace geoequiv {
namespace detail {

namespace {

std::vector<double> distance_matrix(const Points& x) {
  const std::size_t n = static_cast<std::size_t>(x.rows());
  std::vector<double> d(n * n, 0.0);
  if (n == 0) return d;
  const kernels::PointsSoA soa = to_soa(x);
  kernels::active().pairwise_distances(soa.view(), d);
  return d;
}

double max_of(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, x);
  return m;
}

bool lex_less(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  for (Eigen::Index k = 0; k < a.size(); ++k) {
    if (a[k] != b[k]) return a[k] < b[k];
  }
  return false;
}

}  // namespace

MatchContext::MatchContext(const GeometricGraph& g_, const GeometricGraph& h_, const Tolerance& tol,
                           bool use_features_, bool with_translation_)
    : g(g_), h(h_), n(g_.size()), xg(g_.positions()), xh(h_.positions()),
      dg(distance_matrix(xg)), dh(distance_matrix(xh)),
      use_features(use_features_), with_translation(with_translation_) {
  scale = std::max(max_of(dg), max_of(dh));
  q = tol.rel * scale;
  align = tol.align * std::max(scale, std::numeric_limits<double>::min());
  feat_tol = tol.rel;
}

bool features_match(const Eigen::VectorXd& a, const Eigen::VectorXd& b, double tol) {
  if (a.size() != b.size()) return false;
  for (Eigen::Index k = 0; k < a.size(); ++k) {
    if (std::abs(a[k] - b[k]) > tol) return false;
  }
  return true;
}

bool edges_match(const GeometricGraph& g, const GeometricGraph& h, const Permutation& perm,
                 double feat_tol) {
  if (g.edges().size() != h.edges().size()) return false;
  struct Key {
    std::size_t s, d;
    const Eigen::VectorXd* e;
  };
  auto less = [](const Key& a, const Key& b) {
    if (a.s != b.s) return a.s < b.s;
    if (a.d != b.d) return a.d < b.d;
    return lex_less(*a.e, *b.e);
  };
  std::vector<Key> eg, eh;
  eg.reserve(g.edges().size());
  eh.reserve(h.edges().size());
  for (const Edge& e : g.edges()) eg.push_back(Key{perm[e.src], perm[e.dst], &e.e});
  for (const Edge& e : h.edges()) eh.push_back(Key{e.src, e.dst, &e.e});
  std::sort(eg.begin(), eg.end(), less);
  std::sort(eh.begin(), eh.end(), less);
  for (std::size_t k = 0; k < eg.size(); ++k) {
    if (eg[k].s != eh[k].s || eg[k].d != eh[k].d) return false;
    if (!features_match(*eg[k].e, *eh[k].e, feat_tol)) return false;
  }
  return true;
}

std::optional<IsomorphismCertificate> try_match(const MatchContext& ctx, const Quadruple& alpha,
                                                const Quadruple& beta) {
  const std::size_t n = ctx.n;
  for (int a = 0; a < 4; ++a) {
    if (ctx.use_features &&
        !features_match(ctx.g.nodes()[alpha[a]].h, ctx.h.nodes()[beta[a]].h, ctx.feat_tol)) {
      return std::nullopt;
    }
    for (int b = a + 1; b < 4; ++b) {
      if (std::abs(ctx.dist_g(alpha[a], alpha[b]) - ctx.dist_h(beta[a], beta[b])) > ctx.q) {
        return std::nullopt;
      }
    }
  }

  constexpr std::size_t kUnset = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> sigma(n, kUnset);
  std::vector<bool> used(n, false);
  for (int k = 0; k < 4; ++k) {
    sigma[alpha[k]] = beta[k];
    used[beta[k]] = true;
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (sigma[i] != kUnset) continue;
    std::size_t best = kUnset;
    double best_gap = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < n; ++j) {
      if (used[j]) continue;
      double gap = 0.0;
      for (int k = 0; k < 4 && gap <= ctx.q; ++k) {
        gap = std::max(gap, std::abs(ctx.dist_g(i, alpha[k]) - ctx.dist_h(j, beta[k])));
      }
      if (gap > ctx.q || gap >= best_gap) continue;
      if (ctx.use_features && !features_match(ctx.g.nodes()[i].h, ctx.h.nodes()[j].h, ctx.feat_tol)) {
        continue;
      }
      best = j;
      best_gap = gap;
    }
    if (best == kUnset) return std::nullopt;
    sigma[i] = best;
    used[best] = true;
  }

  Points y(n, 3);
  for (std::size_t i = 0; i < n; ++i) y.row(i) = ctx.xh.row(sigma[i]);
  Alignment fit = kabsch_align(ctx.xg, y);
  EuclideanTransform t = ctx.with_translation ? fit.transform : EuclideanTransform(fit.transform.linear());
  const double residual = max_displacement(ctx.xg, y, t);
  if (residual > ctx.align) return std::nullopt;

  Permutation perm(std::move(sigma));
  if (!edges_match(ctx.g, ctx.h, perm, ctx.feat_tol)) return std::nullopt;
  return IsomorphismCertificate{std::move(perm), t, residual};
}

}  // namespace detail

std::optional<Quadruple> find_noncoplanar_quadruple(const Points& X, double rel) {
  const std::size_t n = static_cast<std::size_t>(X.rows());
  if (n < 4) return std::nullopt;
  const kernels::PointsSoA soa = to_soa(X);
  const double diam = kernels::active().max_pairwise_distance(soa.view());
  const double threshold = rel * diam * diam * diam;
  for (std::size_t a = 0; a < n; ++a) {
    const Vec3 xa = X.row(a).transpose();
    for (std::size_t b = a + 1; b < n; ++b) {
      const Vec3 u = X.row(b).transpose() - xa;
      for (std::size_t c = b + 1; c < n; ++c) {
        const Vec3 uv = u.cross(Vec3(X.row(c).transpose() - xa));
        for (std::size_t d = c + 1; d < n; ++d) {
          if (std::abs(uv.dot(X.row(d).transpose() - xa)) > threshold) return Quadruple{a, b, c, d};
        }
      }
    }
  }
  return std::nullopt;
}

namespace {

std::optional<IsomorphismCertificate> four_point_test(const GeometricGraph& G, const GeometricGraph& H,
                                                      const Tolerance& tol, bool use_features) {
  if (G.size() != H.size() || G.edges().size() != H.edges().size()) return std::nullopt;
  const std::size_t n = G.size();
  if (n == 0) return IsomorphismCertificate{Permutation::identity(0), EuclideanTransform(), 0.0};

  const detail::MatchContext ctx(G, H, tol, use_features, true);
  const auto alpha = find_noncoplanar_quadruple(ctx.xg, tol.rel);
  const auto alpha_h = find_noncoplanar_quadruple(ctx.xh, tol.rel);
  if (!alpha && !alpha_h) {
    if (n <= 8) return brute_force_certificate(G, H, tol, use_features);
    throw UnsupportedDegenerate("both graphs are coplanar and N = " + std::to_string(n) +
                                " exceeds the brute-force limit of 8");
  }
  if (!alpha || !alpha_h) return std::nullopt;

  std::optional<IsomorphismCertificate> found;
  detail::for_each_ordered_quadruple(n, [&](const Quadruple& beta) {
    found = detail::try_match(ctx, *alpha, beta);
    return found.has_value();
  });
  return found;
}

}  // namespace

std::optional<IsomorphismCertificate> point_cloud_isomorphic(const Points& X, const Points& Y,
                                                             const Tolerance& tol) {
  if (X.rows() != Y.rows()) return std::nullopt;
  return four_point_test(GeometricGraph::point_cloud(X), GeometricGraph::point_cloud(Y), tol, false);
}

std::optional<IsomorphismCertificate> geometric_graph_isomorphic(const GeometricGraph& G,
                                                                 const GeometricGraph& H,
                                                                 const Tolerance& tol) {
  return four_point_test(G, H, tol, true);
}

// ---------------------------------------------------------------------------
// Brute force

std::optional<IsomorphismCertificate> brute_force_certificate(const GeometricGraph& G,
                                                              const GeometricGraph& H,
                                                              const Tolerance& tol,
                                                              bool use_features) {
  if (G.size() != H.size()) return std::nullopt;
  const std::size_t n = G.size();
  if (n > 8) throw InvalidArgument("brute force is limited to N <= 8");
  if (G.edges().size() != H.edges().size()) return std::nullopt;
  if (n == 0) return IsomorphismCertificate{Permutation::identity(0), EuclideanTransform(), 0.0};

  const detail::MatchContext ctx(G, H, tol, use_features, true);
  std::vector<std::size_t> sigma(n);
  std::vector<bool> used(n, false);
  std::optional<IsomorphismCertificate> found;

  // Equal distance matrices characterize congruence, so pruning on them
  // discards only maps that cannot be isometries.
  auto rec = [&](auto&& self, std::size_t i) -> bool {
    if (i == n) {
      Points y(n, 3);
      for (std::size_t k = 0; k < n; ++k) y.row(k) = ctx.xh.row(sigma[k]);
      const Alignment fit = kabsch_align(ctx.xg, y);
      const double residual = max_displacement(ctx.xg, y, fit.transform);
      if (residual > ctx.align) return false;
      Permutation perm(sigma);
      if (!detail::edges_match(G, H, perm, ctx.feat_tol)) return false;
      found = IsomorphismCertificate{std::move(perm), fit.transform, residual};
      return true;
    }
    for (std::size_t j = 0; j < n; ++j) {
      if (used[j]) continue;
      if (use_features && !detail::features_match(G.nodes()[i].h, H.nodes()[j].h, ctx.feat_tol)) continue;
      bool ok = true;
      for (std::size_t k = 0; k < i && ok; ++k) {
        ok = std::abs(ctx.dist_g(i, k) - ctx.dist_h(j, sigma[k])) <= ctx.q;
      }
      if (!ok) continue;
      sigma[i] = j;
      used[j] = true;
      if (self(self, i + 1)) return true;
      used[j] = false;
    }
    return false;
  };
  rec(rec, 0);
  return found;
}

bool brute_force_isomorphic(const GeometricGraph& G, const GeometricGraph& H, const Tolerance& tol) {
  return brute_force_certificate(G, H, tol, true).has_value();
}

}  // namespace geoequiv
