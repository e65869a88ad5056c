#include <cmath>
#include <random>

#include "geoequiv/corpus.hpp"
#include "geoequiv/error.hpp"

namespace geoequiv::corpus {

TetraCenters tetra_centers(const std::array<Vec3, 4>& v) {
  const Vec3& o = v[0];
  const Vec3 a = v[1] - o, b = v[2] - o, c = v[3] - o;
  const Vec3 bc = b.cross(c), ca = c.cross(a), ab = a.cross(b);
  const double vol6 = a.dot(bc);
  // The epsilon only guards degenerate input; it is not added to the quotient.
  if (!(std::abs(vol6) > kTetraEpsilon)) throw InvalidArgument("degenerate tetrahedron");

  TetraCenters out;
  out.monge = o + (a.dot(b + c) * bc + b.dot(c + a) * ca + c.dot(a + b) * ab) / (2.0 * vol6);
  out.circumcenter = o + (a.squaredNorm() * bc + b.squaredNorm() * ca + c.squaredNorm() * ab) / (2.0 * vol6);
  out.twelve_point = out.monge + (out.circumcenter - out.monge) / 3.0;
  const double sa = bc.norm(), sb = ca.norm(), sc = ab.norm(), so = (bc + ca + ab).norm();
  out.incenter = o + (sa * a + sb * b + sc * c) / (sa + sb + sc + so);
  return out;
}

double circumradius(const std::array<Vec3, 4>& v) {
  return (tetra_centers(v).circumcenter - v[0]).norm();
}

TetrahedronSample random_tetrahedron(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> radius(1.0, kTetraMaxRadius);
  TetrahedronSample s;
  for (;;) {
    s.radius = radius(rng);
    for (Vec3& p : s.vertices) {
      Vec3 g;
      do {
        g = Vec3(gauss(rng), gauss(rng), gauss(rng));
      } while (g.norm() < 1e-12);
      p = s.radius * g.normalized();
    }
    const double vol = std::abs((s.vertices[1] - s.vertices[0]).dot(
                           (s.vertices[2] - s.vertices[0]).cross(s.vertices[3] - s.vertices[0]))) /
                       6.0;
    if (vol > 1e-3 * s.radius * s.radius * s.radius) break;
  }
  const TetraCenters c = tetra_centers(s.vertices);
  s.monge = c.monge;
  s.twelve_point = c.twelve_point;
  s.incenter = c.incenter;
  return s;
}

}  // namespace geoequiv::corpus
