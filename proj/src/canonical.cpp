#include "geoequiv/canonical.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "geoequiv/error.hpp"
#include "geoequiv/isomorphism.hpp"

namespace geoequiv {
namespace {

constexpr int kRankBits = 21;  // node ranks packed into edge keys

using Entry = std::array<std::int64_t, 5>;  // four quantized distances + feature rank

// Node and edge features reduced to dense ranks of their quantized values.
// The tables of distinct values are hashed once per graph.
struct FeatureRanks {
  std::vector<std::int64_t> node;
  std::vector<std::uint64_t> edge;
  std::vector<std::uint64_t> edge_src, edge_dst;
  Hash256 table{};
};

std::vector<std::int64_t> dense_rank(const std::vector<std::vector<std::int64_t>>& items,
                                     std::vector<std::vector<std::int64_t>>& uniq) {
  uniq = items;
  std::sort(uniq.begin(), uniq.end());
  uniq.erase(std::unique(uniq.begin(), uniq.end()), uniq.end());
  std::vector<std::int64_t> rank(items.size());
  for (std::size_t k = 0; k < items.size(); ++k) {
    rank[k] = std::lower_bound(uniq.begin(), uniq.end(), items[k]) - uniq.begin();
  }
  return rank;
}

FeatureRanks feature_ranks(const GeometricGraph& G, double quantum) {
  FeatureRanks fr;
  std::vector<std::vector<std::int64_t>> qn, qe, un, ue;
  for (const Node& nd : G.nodes()) {
    auto v = quantize(nd.h, quantum);
    v.insert(v.begin(), static_cast<std::int64_t>(nd.h.size()));
    qn.push_back(std::move(v));
  }
  for (const Edge& e : G.edges()) {
    auto v = quantize(e.e, quantum);
    v.insert(v.begin(), static_cast<std::int64_t>(e.e.size()));
    qe.push_back(std::move(v));
    fr.edge_src.push_back(e.src);
    fr.edge_dst.push_back(e.dst);
  }
  fr.node = dense_rank(qn, un);
  const auto er = dense_rank(qe, ue);
  fr.edge.assign(er.begin(), er.end());
  if (ue.size() >= (1ULL << (64 - 2 * kRankBits))) throw InvalidArgument("too many distinct edge features");
  HashBuilder hb;
  hb.add(std::string_view("features"));
  for (auto* table : {&un, &ue}) {
    hb.add(static_cast<std::uint64_t>(table->size()));
    for (const auto& v : *table) hb.add(std::span<const std::int64_t>(v));
  }
  fr.table = hb.finish();
  return fr;
}

// 32 * (-1/2 J S J) for the 4x4 block of squared quantized distances S.
std::array<std::int64_t, 16> gram_from_squared(const std::array<std::int64_t, 16>& s) {
  std::array<std::int64_t, 4> r{};
  std::int64_t t = 0;
  for (int a = 0; a < 4; ++a) {
    for (int b = 0; b < 4; ++b) r[a] += s[a * 4 + b];
    t += r[a];
  }
  std::array<std::int64_t, 16> g{};
  for (int a = 0; a < 4; ++a) {
    for (int b = 0; b < 4; ++b) g[a * 4 + b] = -16 * s[a * 4 + b] + 4 * r[a] + 4 * r[b] - t;
  }
  return g;
}

// Reused per-frame buffers: node entries -> dense ranks -> packed edge keys.
struct FrameHasher {
  std::vector<Entry> entries;
  std::vector<std::uint32_t> order;
  std::vector<std::uint64_t> rank;
  std::vector<std::uint64_t> keys;
  std::vector<std::int64_t> flat;

  struct Result {
    Hash256 node, edge;
  };

  Result run(const FeatureRanks& fr) {
    const std::size_t n = entries.size();
    order.resize(n);
    std::iota(order.begin(), order.end(), 0u);
    std::sort(order.begin(), order.end(),
              [&](std::uint32_t a, std::uint32_t b) { return entries[a] < entries[b]; });
    rank.resize(n);
    flat.clear();
    std::uint64_t r = 0;
    for (std::size_t k = 0; k < n; ++k) {
      if (k > 0 && entries[order[k]] != entries[order[k - 1]]) ++r;
      rank[order[k]] = r;
      flat.insert(flat.end(), entries[order[k]].begin(), entries[order[k]].end());
    }
    Result res;
    res.node = HashBuilder().add(static_cast<std::uint64_t>(n)).add(std::span<const std::int64_t>(flat)).finish();

    const std::size_t m = fr.edge.size();
    keys.resize(m);
    for (std::size_t k = 0; k < m; ++k) {
      keys[k] = (rank[fr.edge_src[k]] << (64 - kRankBits)) | (rank[fr.edge_dst[k]] << (64 - 2 * kRankBits)) |
                fr.edge[k];
    }
    std::sort(keys.begin(), keys.end());
    res.edge = HashBuilder().add(static_cast<std::uint64_t>(m)).add(std::span<const std::uint64_t>(keys)).finish();
    return res;
  }
};

Hash256 frame_hash(const std::array<std::int64_t, 16>& gram, bool include_gram,
                   const FrameHasher::Result& r) {
  HashBuilder hb;
  if (include_gram) hb.add(std::span<const std::int64_t>(gram));
  return hb.add(r.node).add(r.edge).finish();
}

void check_size(std::size_t n) {
  if (n >= (1ULL << kRankBits)) throw InvalidArgument("graph too large for the digest packing");
}

}  // namespace

std::string CanonicalDigest::verbose() const {
  std::ostringstream os;
  os << "mode: " << mode << "\n";
  os << "digest: " << hex() << "\n";
  os << "nodes: " << nodes << "\nedges: " << edges << "\n";
  os << "quantum: 2^" << quantum.exponent << " * rel = " << quantum.step << "\n";
  if (mode == "general") {
    os << "quadruples: " << quadruples << "\nskipped_coplanar: " << skipped_coplanar << "\n";
  } else {
    os << "coloring: " << coloring << "\nvirtual_node_attempt: " << attempt << "\n";
  }
  os << "gram_block (32 x Gram, step^2 units):\n";
  for (int a = 0; a < 4; ++a) {
    os << " ";
    for (int b = 0; b < 4; ++b) os << " " << gram_block[a * 4 + b];
    os << "\n";
  }
  os << "node_digest: " << to_hex(node_digest) << "\n";
  os << "edge_digest: " << to_hex(edge_digest) << "\n";
  return os.str();
}

CanonicalDigest general_canonical_form(const GeometricGraph& G, const CanonicalOptions& opt) {
  const std::size_t n = G.size();
  check_size(n);
  if (n < 4) throw DegenerateGraph("general canonical form needs at least four nodes");

  const kernels::PointsSoA soa = to_soa(G.positions());
  std::vector<double> dist(n * n);
  kernels::active().pairwise_distances(soa.view(), dist);
  const double diam = *std::max_element(dist.begin(), dist.end());
  if (!(diam > 0.0)) throw DegenerateGraph("all nodes coincide");
  const Quantum qz = quantum_for(diam, opt.tol.rel);

  // Digested values are functions of these integers only.
  std::vector<std::int64_t> dq(n * n), sq(n * n);
  for (std::size_t k = 0; k < n * n; ++k) {
    dq[k] = quantize(dist[k], qz.step);
    sq[k] = dq[k] * dq[k];
  }
  const FeatureRanks fr = feature_ranks(G, opt.tol.rel);

  // |det[v1 v2 v3]| > rel * diam^3, evaluated as det(2E) > 8 rel^2 diam^6
  // with 2E_kl = S_ok + S_ol - S_kl on unquantized squared distances. The
  // rounding noise of the quantized S is about (diam/step)^5, far above this bound.
  const double det_threshold = 8.0 * opt.tol.rel * opt.tol.rel * std::pow(diam, 6);
  auto S2 = [&](std::size_t i, std::size_t j) { return dist[i * n + j] * dist[i * n + j]; };

  CanonicalDigest out;
  out.mode = "general";
  out.nodes = n;
  out.edges = G.edges().size();
  out.quantum = qz;

  std::vector<Hash256> quads;
  FrameHasher fh;
  fh.entries.resize(n);
  bool have_min = false;
  Hash256 min_hash{};
  auto S = [&](std::size_t i, std::size_t j) { return sq[i * n + j]; };

  std::array<std::size_t, 4> perm;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b)
      for (std::size_t c = b + 1; c < n; ++c)
        for (std::size_t d = c + 1; d < n; ++d) {
          const std::size_t v[3] = {b, c, d};
          Mat3 e2;
          for (int k = 0; k < 3; ++k) {
            for (int l = 0; l < 3; ++l) {
              e2(k, l) = S2(a, v[k]) + S2(a, v[l]) - S2(v[k], v[l]);
            }
          }
          if (!(e2.determinant() > det_threshold)) {
            out.skipped_coplanar += 24;
            continue;
          }
          perm = {a, b, c, d};
          do {
            std::array<std::int64_t, 16> s{};
            for (int p = 0; p < 4; ++p) {
              for (int q = 0; q < 4; ++q) s[p * 4 + q] = S(perm[p], perm[q]);
            }
            const auto gram = gram_from_squared(s);
            for (std::size_t i = 0; i < n; ++i) {
              fh.entries[i] = {dq[i * n + perm[0]], dq[i * n + perm[1]], dq[i * n + perm[2]],
                               dq[i * n + perm[3]], fr.node[i]};
            }
            const auto r = fh.run(fr);
            const Hash256 h = frame_hash(gram, opt.include_gram, r);
            quads.push_back(h);
            if (!have_min || h < min_hash) {
              have_min = true;
              min_hash = h;
              out.gram_block = gram;
              out.node_digest = r.node;
              out.edge_digest = r.edge;
            }
          } while (std::next_permutation(perm.begin(), perm.end()));
        }

  if (quads.empty()) throw DegenerateGraph("graph has no four non-coplanar nodes");
  out.quadruples = quads.size();
  std::sort(quads.begin(), quads.end());

  HashBuilder hb;
  hb.add(std::string_view("general"))
      .add(static_cast<std::uint64_t>(n))
      .add(static_cast<std::uint64_t>(out.edges))
      .add(static_cast<std::int64_t>(qz.exponent))
      .add(static_cast<std::uint64_t>(out.skipped_coplanar))
      .add(static_cast<std::uint64_t>(opt.include_gram))
      .add(fr.table)
      .add(static_cast<std::uint64_t>(quads.size()));
  for (const Hash256& h : quads) hb.add(h);
  out.combined = hb.finish();
  return out;
}

CanonicalDigest fast_canonical_form(const GeometricGraph& G, const Coloring& coloring,
                                    const VirtualNodes& vn, const CanonicalOptions& opt) {
  const std::size_t n = G.size();
  check_size(n);
  if (n == 0) throw DegenerateGraph("empty graph");
  const kernels::PointsSoA soa = to_soa(G.positions());
  const double diam = kernels::active().max_pairwise_distance(soa.view());
  if (!(diam > 0.0)) throw DegenerateGraph("all nodes coincide");
  const Quantum qz = quantum_for(diam, opt.tol.rel);
  const FeatureRanks fr = feature_ranks(G, opt.tol.rel);

  kernels::Ref4 refs;
  for (int k = 0; k < 4; ++k) {
    for (int c = 0; c < 3; ++c) refs[k][c] = vn.Z(k, c);
  }
  std::vector<double> dz(4 * n);
  kernels::active().distances_to_refs(soa.view(), refs, dz);

  std::array<std::int64_t, 16> s{};
  for (int a = 0; a < 4; ++a) {
    for (int b = 0; b < 4; ++b) {
      const std::int64_t q = quantize((vn.Z.row(a) - vn.Z.row(b)).norm(), qz.step);
      s[a * 4 + b] = q * q;
    }
  }
  CanonicalDigest out;
  out.mode = "fast";
  out.nodes = n;
  out.edges = G.edges().size();
  out.quantum = qz;
  out.quadruples = 1;
  out.coloring = coloring.tag();
  out.attempt = vn.attempt;
  out.gram_block = gram_from_squared(s);

  FrameHasher fh;
  fh.entries.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    fh.entries[i] = {quantize(dz[4 * i], qz.step), quantize(dz[4 * i + 1], qz.step),
                     quantize(dz[4 * i + 2], qz.step), quantize(dz[4 * i + 3], qz.step), fr.node[i]};
  }
  const auto r = fh.run(fr);
  out.node_digest = r.node;
  out.edge_digest = r.edge;

  out.combined = HashBuilder()
                     .add(std::string_view("fast"))
                     .add(std::string_view(out.coloring))
                     .add(static_cast<std::int64_t>(vn.attempt))
                     .add(static_cast<std::uint64_t>(n))
                     .add(static_cast<std::uint64_t>(out.edges))
                     .add(static_cast<std::int64_t>(qz.exponent))
                     .add(static_cast<std::uint64_t>(opt.include_gram))
                     .add(fr.table)
                     .add(frame_hash(out.gram_block, opt.include_gram, r))
                     .finish();
  return out;
}

CanonicalDigest fast_canonical_form(const GeometricGraph& G, const CanonicalOptions& opt) {
  std::vector<LadderStep> steps;
  switch (opt.coloring) {
    case ColoringChoice::kNone: steps = {{ColorMethod::kNone, 0, 0}}; break;
    case ColoringChoice::kCenter: steps = {{ColorMethod::kCenter, 0, 0}}; break;
    case ColoringChoice::kTensor:
      for (const auto& s : coloring_ladder()) {
        if (s.method == ColorMethod::kTensor) steps.push_back(s);
      }
      break;
    case ColoringChoice::kAuto: steps = coloring_ladder(); break;
  }
  double best = 0.0;
  Coloring last;
  for (const LadderStep& s : steps) {
    last = color_nodes(G, s.method, s.L, s.order);
    try {
      return fast_canonical_form(G, last, separable_virtual_nodes(G, last, opt.seed), opt);
    } catch (const CoplanarVirtualNodes& e) {
      best = std::max(best, e.noncoplanarity());
    }
  }
  if (opt.coloring == ColoringChoice::kAuto) {
    Coloring refined = refine_by_distances(G, last, opt.tol);
    try {
      return fast_canonical_form(G, refined, separable_virtual_nodes(G, refined, opt.seed), opt);
    } catch (const CoplanarVirtualNodes& e) {
      best = std::max(best, e.noncoplanarity());
    }
  }
  std::ostringstream os;
  os << "virtual nodes stay coplanar for every allowed coloring (best |det| = " << best
     << "); the fast canonical form does not apply, use --mode general";
  throw CoplanarVirtualNodes(os.str(), best);
}

}  // namespace geoequiv
