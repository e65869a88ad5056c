#pragma once

#include <array>
#include <cstdint>
#include <string>

#include "geoequiv/coloring.hpp"
#include "geoequiv/digest.hpp"
#include "geoequiv/geometry.hpp"

namespace geoequiv {

enum class ColoringChoice { kAuto, kNone, kCenter, kTensor };

struct CanonicalOptions {
  Tolerance tol;
  ColoringChoice coloring = ColoringChoice::kAuto;  // fast form only
  bool include_gram = true;
  std::uint64_t seed = kVirtualNodeSeed;
};

struct CanonicalDigest {
  std::string mode;  // "general" or "fast"
  Hash256 combined{};
  /// 32 x decentered Gram of the reference quadruple in units of step^2
  /// (general: of the quadruple with the smallest hash).
  std::array<std::int64_t, 16> gram_block{};
  Hash256 node_digest{};
  Hash256 edge_digest{};
  std::size_t nodes = 0;
  std::size_t edges = 0;
  std::size_t quadruples = 0;        // ordered quadruples digested
  std::size_t skipped_coplanar = 0;  // ordered quadruples skipped
  Quantum quantum;
  std::string coloring;  // fast only
  int attempt = 0;       // fast only, virtual-node retry used

  std::string hex() const { return to_hex(combined); }
  std::string verbose() const;

  friend bool operator==(const CanonicalDigest& a, const CanonicalDigest& b) {
    return a.combined == b.combined;
  }
};

/// Digest over every ordered non-coplanar quadruple. Throws DegenerateGraph
/// when none exists.
CanonicalDigest general_canonical_form(const GeometricGraph& G, const CanonicalOptions& opt = {});

/// Single reference frame from the virtual nodes. Throws CoplanarVirtualNodes
/// when no coloring in the allowed range separates them.
CanonicalDigest fast_canonical_form(const GeometricGraph& G, const CanonicalOptions& opt = {});

/// Fast digest with an explicit coloring and virtual frame.
CanonicalDigest fast_canonical_form(const GeometricGraph& G, const Coloring& coloring,
                                    const VirtualNodes& vn, const CanonicalOptions& opt = {});

}  // namespace geoequiv
