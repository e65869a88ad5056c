#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace geoequiv {

using Hash256 = std::array<std::uint8_t, 32>;

std::string to_hex(const Hash256& h);

/// Incremental SHA-256 over a byte buffer.
class HashBuilder {
 public:
  HashBuilder& add(std::int64_t v);
  HashBuilder& add(std::uint64_t v);
  HashBuilder& add(std::string_view s);
  HashBuilder& add(const Hash256& h);
  HashBuilder& add(std::span<const std::int64_t> vs);
  HashBuilder& add(std::span<const std::uint64_t> vs);
  Hash256 finish() const;

 private:
  std::vector<std::uint8_t> bytes_;
};

Hash256 sha256(std::span<const std::uint8_t> bytes);

/// llround(v / quantum). Throws InvalidArgument on non-positive quantum or
/// values that do not fit an int64.
std::int64_t quantize(double v, double quantum);
std::vector<std::int64_t> quantize(const Eigen::VectorXd& v, double quantum);

/// Order-independent digest of a list of integer vectors.
Hash256 multiset_digest_int(std::vector<std::vector<std::int64_t>> items);

/// Quantize every entry, sort, hash. Empty input gives empty_multiset_digest().
Hash256 multiset_digest(const std::vector<Eigen::VectorXd>& items, double quantum);
const Hash256& empty_multiset_digest();

/// Distance quantization step rel * 2^exponent, the exponent tracking the
/// diameter. A power of two keeps llround(d / step) exact in its scaling and
/// the exponent is hashed so uniformly scaled copies stay distinguishable.
struct Quantum {
  int exponent = 0;
  double step = 0.0;
};
Quantum quantum_for(double diameter, double rel);

}  // namespace geoequiv
