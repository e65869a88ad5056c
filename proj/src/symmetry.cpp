#include <algorithm>
#include <set>

#include "geoequiv/error.hpp"
#include "geoequiv/isomorphism.hpp"
#include "matching.hpp"

namespace geoequiv {

SymmetryGroup symmetry_group(const GeometricGraph& G, const Tolerance& tol) {
  if (G.size() == 0) throw DegenerateGraph("empty graph has no symmetry analysis");
  const GeometricGraph dec = decenter(G).graph;
  const detail::MatchContext ctx(dec, dec, tol, true, false);
  const auto alpha = find_noncoplanar_quadruple(ctx.xg, tol.rel);
  if (!alpha) throw DegenerateGraph("graph has no four non-coplanar nodes");

  SymmetryGroup group;
  std::set<std::vector<std::size_t>> seen;
  detail::for_each_ordered_quadruple(dec.size(), [&](const Quadruple& beta) {
    auto cert = detail::try_match(ctx, *alpha, beta);
    if (cert && seen.insert(cert->permutation.mapping()).second) {
      group.elements.push_back(SymmetryElement{cert->transform, cert->permutation});
    }
    return false;
  });

  // Identity first, the rest in discovery order.
  auto id = std::find_if(group.elements.begin(), group.elements.end(),
                         [](const SymmetryElement& e) { return e.permutation.is_identity(); });
  if (id != group.elements.end()) std::rotate(group.elements.begin(), id, id + 1);

  group.closed = id != group.elements.end();
  for (const SymmetryElement& a : group.elements) {
    for (const SymmetryElement& b : group.elements) {
      if (!group.closed) break;
      // x_i = Ra x_{pa[i]} = Ra Rb x_{pb[pa[i]]}
      group.closed = seen.count(b.permutation.compose(a.permutation).mapping()) > 0;
    }
  }
  return group;
}

}  // namespace geoequiv
