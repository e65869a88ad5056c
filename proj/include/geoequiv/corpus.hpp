#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "geoequiv/coloring.hpp"
#include "geoequiv/geometry.hpp"

namespace geoequiv::corpus {

struct LabeledPair {
  GeometricGraph first;
  GeometricGraph second;
  bool ground_truth_isomorphic = false;
  std::string source;
};

/// Checks the stated ground truth with the brute-force oracle (N <= 8) or
/// the four-point test (larger N); throws Error on disagreement.
LabeledPair make_pair(GeometricGraph a, GeometricGraph b, bool isomorphic, std::string source);

// 4-body pairs. All graphs are fully connected with uniform features.
struct FourBodyPair {
  LabeledPair pair;
  double angle = 0.0;  // R_y = rotation_y(angle)
  Mat3 witness;        // maps `second` onto `first` as point sets
};

/// G1 = H1 u R_y^T H2 u H3, G2 = H1 u R_y^T H2 u M_y H3; witness (M_x R_y M_y)^T.
FourBodyPair four_body_nonchiral_pair(std::uint64_t seed);
/// G3 = H4 u H5, G4 = H4 u M_y H5; witness M_x M_y.
FourBodyPair four_body_chiral_pair();

/// G5 = {(3,0,-4), R_y (0,0,5), (-3,0,-4), (0,5,0)}.
GeometricGraph g5_graph(double angle);

struct ChiralityGraphs {
  LabeledPair inversion;       // G1, -G1
  LabeledPair mirror;          // G5, M_y G5
  LabeledPair counterexample;  // X, -X on the unit sphere
};
ChiralityGraphs chirality_graphs(std::uint64_t seed);

/// The five-point planar seed cloud on the unit circle.
Points unit_circle_seed();
/// Union of m Haar-rotated copies of the seed cloud (5m nodes).
GeometricGraph unit_circle_counterexample(std::uint64_t seed, int m = 2);

GeometricGraph square_cone();
GeometricGraph regular_tetrahedron();

/// Every single graph the corpus exposes, tagged.
struct NamedGraph {
  std::string name;
  GeometricGraph graph;
};
std::vector<NamedGraph> corpus_graphs(std::uint64_t seed);
std::vector<LabeledPair> corpus_pairs(std::uint64_t seed);

// ---------------------------------------------------------------------------
// Tetrahedron centers

inline constexpr double kTetraEpsilon = 1e-6;
inline constexpr double kTetraMaxRadius = 6.0;

struct TetraCenters {
  Vec3 monge;
  Vec3 twelve_point;
  Vec3 incenter;
  Vec3 circumcenter;
};

/// Vertex O is vertices[0]; a, b, c are the other three minus O. Throws
/// InvalidArgument when |a . (b x c)| <= kTetraEpsilon.
TetraCenters tetra_centers(const std::array<Vec3, 4>& vertices);

struct TetrahedronSample {
  std::array<Vec3, 4> vertices;
  double radius = 0.0;
  Vec3 monge;
  Vec3 twelve_point;
  Vec3 incenter;
};

/// Four points uniform on a sphere of radius U(1, 6) about the origin,
/// resampled until the volume exceeds 1e-3 r^3.
TetrahedronSample random_tetrahedron(std::uint64_t seed);

double circumradius(const std::array<Vec3, 4>& vertices);

// ---------------------------------------------------------------------------
// Parity-odd (0o) features

/// det(v2 - v1, v3 - v1, v4 - v1).
double chirality_det(const std::array<Vec3, 4>& points);
/// det feature of the virtual nodes built from `coloring`: the first
/// separable attempt, or attempt 0 when none separates.
double virtual_node_det(const GeometricGraph& G, const Coloring& coloring);
/// First tensor step of the coloring ladder with separable virtual nodes
/// (the last tensor step when none separates).
LadderStep tensor_step_for(const GeometricGraph& G);

/// Degree triples (l1 < l2 < l3 <= 6, odd sum, triangle) used by moment3.
const std::vector<std::array<int, 3>>& moment3_triples();
/// sum over triples of <cg(A1, A2 -> l3), A3>, A_l = (1/N) sum_i Y^(l)(x_ic).
double chirality_moment3(const GeometricGraph& G);

enum class ChiralityMethod { kDet, kMoment3 };

/// Deterministic restatement of the chirality table: rows (coloring, method),
/// columns (inversion, mirror, counterexample); a cell is true when the
/// feature separates the two graphs of the pair.
struct ChiralityCell {
  double first = 0.0;
  double second = 0.0;
  bool separates = false;
  bool reproducible = true;  // false for the learned-accuracy cell
};
struct ChiralityRow {
  ColorMethod coloring;
  ChiralityMethod method;
  std::array<ChiralityCell, 3> cells;
};
inline constexpr double kChiralityZero = 1e-9;
std::vector<ChiralityRow> chirality_table(const ChiralityGraphs& graphs);

/// Expected separation pattern, row order as chirality_table().
const std::vector<std::array<bool, 3>>& expected_chirality_pattern();

}  // namespace geoequiv::corpus
