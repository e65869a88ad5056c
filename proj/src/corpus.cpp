#include <cmath>
#include <numbers>
#include <random>

#include "geoequiv/corpus.hpp"
#include "geoequiv/error.hpp"
#include "geoequiv/isomorphism.hpp"

namespace geoequiv::corpus {
namespace {

Points rows(std::initializer_list<Vec3> pts) {
  Points p(static_cast<Eigen::Index>(pts.size()), 3);
  Eigen::Index r = 0;
  for (const Vec3& v : pts) p.row(r++) = v.transpose();
  return p;
}

Points stack(std::initializer_list<Points> parts) {
  Eigen::Index n = 0;
  for (const Points& p : parts) n += p.rows();
  Points out(n, 3);
  Eigen::Index r = 0;
  for (const Points& p : parts) {
    out.middleRows(r, p.rows()) = p;
    r += p.rows();
  }
  return out;
}

Points act(const Mat3& m, const Points& p) { return p * m.transpose(); }

double random_angle(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uni(0.0, 2.0 * std::numbers::pi);
  return uni(rng);
}

const Points& h1() {
  static const Points p = rows({{3, 2, -4}, {0, 2, 5}, {-3, 2, -4}});
  return p;
}
const Points& h2() {
  static const Points p = rows({{3, -2, -4}, {0, -2, 5}, {-3, -2, -4}});
  return p;
}
const Points& h3() {
  static const Points p = rows({{0, 5, 0}});
  return p;
}
const Points& h4() {
  static const Points p = rows({{3, 0, -4}, {0, 0, 5}, {-3, 0, -4}});
  return p;
}
const Points& h5() { return h3(); }

}  // namespace

LabeledPair make_pair(GeometricGraph a, GeometricGraph b, bool isomorphic, std::string source) {
  bool truth = false;
  if (a.size() == b.size()) {
    truth = a.size() <= 8 ? brute_force_isomorphic(a, b) : geometric_graph_isomorphic(a, b).has_value();
  }
  if (truth != isomorphic) throw Error("ground truth check failed for " + source);
  return {std::move(a), std::move(b), isomorphic, std::move(source)};
}

FourBodyPair four_body_nonchiral_pair(std::uint64_t seed) {
  const double angle = random_angle(seed);
  const Mat3 ry = rotation_y(angle);
  const Mat3 mx = axis_mirror(0), my = axis_mirror(1);
  const Points g1 = stack({h1(), act(ry.transpose(), h2()), h3()});
  const Points g2 = stack({h1(), act(ry.transpose(), h2()), act(my, h3())});
  FourBodyPair out{make_pair(GeometricGraph::fully_connected(g1), GeometricGraph::fully_connected(g2), true,
                             "four_body_nonchiral"),
                   angle, (mx * ry * my).transpose()};
  return out;
}

FourBodyPair four_body_chiral_pair() {
  const Mat3 mx = axis_mirror(0), my = axis_mirror(1);
  const Points g3 = stack({h4(), h5()});
  const Points g4 = stack({h4(), act(my, h5())});
  return {make_pair(GeometricGraph::fully_connected(g3), GeometricGraph::fully_connected(g4), true,
                    "four_body_chiral"),
          0.0, mx * my};
}

GeometricGraph g5_graph(double angle) {
  const Vec3 top = rotation_y(angle) * Vec3(0, 0, 5);
  return GeometricGraph::fully_connected(rows({{3, 0, -4}, top, {-3, 0, -4}, {0, 5, 0}}));
}

Points unit_circle_seed() {
  return rows({{-1.0, 0.0, 0.0},
               {1.0 / 3.0, 2.0 * std::sqrt(2.0) / 3.0, 0.0},
               {1.0 / 3.0, -2.0 * std::sqrt(2.0) / 3.0, 0.0},
               {1.0 / 6.0, std::sqrt(35.0) / 6.0, 0.0},
               {1.0 / 6.0, -std::sqrt(35.0) / 6.0, 0.0}});
}

GeometricGraph unit_circle_counterexample(std::uint64_t seed, int m) {
  if (m < 2) throw InvalidArgument("unit circle counterexample needs m >= 2 copies");
  const Points x0 = unit_circle_seed();
  Points out(5 * m, 3);
  for (int k = 0; k < m; ++k) {
    const Mat3 r = random_transform(seed + static_cast<std::uint64_t>(k), false, false).linear();
    out.middleRows(5 * k, 5) = x0 * r;  // row convention X0 R_i
  }
  return GeometricGraph::fully_connected(out);
}

ChiralityGraphs chirality_graphs(std::uint64_t seed) {
  const GeometricGraph g1 = four_body_nonchiral_pair(seed).pair.first;
  const GeometricGraph g5 = g5_graph(random_angle(seed ^ 0x6735ULL));
  const GeometricGraph x = unit_circle_counterexample(seed ^ 0xc1c1eULL, 2);
  const EuclideanTransform inv(-Mat3::Identity());
  const EuclideanTransform mir(axis_mirror(1));
  return {make_pair(g1, apply_transform(g1, inv), true, "chirality_inversion"),
          make_pair(g5, apply_transform(g5, mir), true, "chirality_mirror"),
          make_pair(x, apply_transform(x, inv), true, "chirality_counterexample")};
}

GeometricGraph square_cone() {
  return GeometricGraph::fully_connected(rows({{1, 0, -1}, {-1, 0, -1}, {0, 1, -1}, {0, -1, -1}, {0, 0, 4}}));
}

GeometricGraph regular_tetrahedron() {
  return GeometricGraph::fully_connected(rows({{1, 1, 1}, {1, -1, -1}, {-1, 1, -1}, {-1, -1, 1}}));
}

std::vector<NamedGraph> corpus_graphs(std::uint64_t seed) {
  const FourBodyPair nc = four_body_nonchiral_pair(seed);
  const FourBodyPair ch = four_body_chiral_pair();
  const ChiralityGraphs cg = chirality_graphs(seed);
  return {{"four_body_g1", nc.pair.first},
          {"four_body_g2", nc.pair.second},
          {"four_body_g3", ch.pair.first},
          {"four_body_g4", ch.pair.second},
          {"inversion_neg_g1", cg.inversion.second},
          {"mirror_g5", cg.mirror.first},
          {"mirror_my_g5", cg.mirror.second},
          {"unit_circle", cg.counterexample.first},
          {"unit_circle_inverted", cg.counterexample.second},
          {"square_cone", square_cone()},
          {"regular_tetrahedron", regular_tetrahedron()}};
}

std::vector<LabeledPair> corpus_pairs(std::uint64_t seed) {
  ChiralityGraphs cg = chirality_graphs(seed);
  return {four_body_nonchiral_pair(seed).pair, four_body_chiral_pair().pair, std::move(cg.inversion),
          std::move(cg.mirror), std::move(cg.counterexample)};
}

}  // namespace geoequiv::corpus
