#include "geoequiv/digest.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>

#include <openssl/evp.h>

#include "geoequiv/error.hpp"

namespace geoequiv {

std::string to_hex(const Hash256& h) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out(64, '0');
  for (std::size_t k = 0; k < h.size(); ++k) {
    out[2 * k] = kDigits[h[k] >> 4];
    out[2 * k + 1] = kDigits[h[k] & 0xf];
  }
  return out;
}

namespace {

// One fetched algorithm and one context per thread; the one-shot EVP_Digest
// re-resolves the provider on every call.
struct Sha256Context {
  EVP_MD* md = EVP_MD_fetch(nullptr, "SHA256", nullptr);
  EVP_MD_CTX* ctx = EVP_MD_CTX_new();
  ~Sha256Context() {
    EVP_MD_CTX_free(ctx);
    EVP_MD_free(md);
  }
};

}  // namespace

Hash256 sha256(std::span<const std::uint8_t> bytes) {
  thread_local Sha256Context c;
  Hash256 out{};
  unsigned int len = 0;
  if (c.md == nullptr || c.ctx == nullptr || EVP_DigestInit_ex(c.ctx, c.md, nullptr) != 1 ||
      EVP_DigestUpdate(c.ctx, bytes.data(), bytes.size()) != 1 ||
      EVP_DigestFinal_ex(c.ctx, out.data(), &len) != 1 || len != out.size()) {
    throw Error("SHA-256 computation failed");
  }
  return out;
}

HashBuilder& HashBuilder::add(std::uint64_t v) {
  for (int k = 0; k < 8; ++k) bytes_.push_back(static_cast<std::uint8_t>(v >> (8 * k)));
  return *this;
}

HashBuilder& HashBuilder::add(std::int64_t v) { return add(static_cast<std::uint64_t>(v)); }

HashBuilder& HashBuilder::add(std::string_view s) {
  add(static_cast<std::uint64_t>(s.size()));
  bytes_.insert(bytes_.end(), s.begin(), s.end());
  return *this;
}

HashBuilder& HashBuilder::add(const Hash256& h) {
  bytes_.insert(bytes_.end(), h.begin(), h.end());
  return *this;
}

namespace {

template <typename T>
void append_le(std::vector<std::uint8_t>& bytes, std::span<const T> vs) {
  const std::size_t at = bytes.size();
  bytes.resize(at + 8 * vs.size());
  if constexpr (std::endian::native == std::endian::little) {
    if (!vs.empty()) std::memcpy(bytes.data() + at, vs.data(), 8 * vs.size());
  } else {
    for (std::size_t i = 0; i < vs.size(); ++i) {
      const auto v = static_cast<std::uint64_t>(vs[i]);
      for (int k = 0; k < 8; ++k) bytes[at + 8 * i + k] = static_cast<std::uint8_t>(v >> (8 * k));
    }
  }
}

}  // namespace

HashBuilder& HashBuilder::add(std::span<const std::int64_t> vs) {
  append_le(bytes_, vs);
  return *this;
}

HashBuilder& HashBuilder::add(std::span<const std::uint64_t> vs) {
  append_le(bytes_, vs);
  return *this;
}

Hash256 HashBuilder::finish() const { return sha256(bytes_); }

std::int64_t quantize(double v, double quantum) {
  if (!(quantum > 0.0)) throw InvalidArgument("quantum must be positive");
  const double r = v / quantum;
  if (!std::isfinite(r) || std::abs(r) > 9.0e18) throw InvalidArgument("value out of quantization range");
  return std::llround(r);
}

std::vector<std::int64_t> quantize(const Eigen::VectorXd& v, double quantum) {
  std::vector<std::int64_t> out(v.size());
  for (Eigen::Index k = 0; k < v.size(); ++k) out[k] = quantize(v[k], quantum);
  return out;
}

const Hash256& empty_multiset_digest() {
  static const Hash256 sentinel = HashBuilder().add(std::string_view("geoequiv/empty-multiset")).finish();
  return sentinel;
}

Hash256 multiset_digest_int(std::vector<std::vector<std::int64_t>> items) {
  if (items.empty()) return empty_multiset_digest();
  std::sort(items.begin(), items.end(), [](const auto& a, const auto& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
  HashBuilder hb;
  hb.add(static_cast<std::uint64_t>(items.size()));
  for (const auto& it : items) {
    hb.add(static_cast<std::uint64_t>(it.size()));
    hb.add(std::span<const std::int64_t>(it));
  }
  return hb.finish();
}

Hash256 multiset_digest(const std::vector<Eigen::VectorXd>& items, double quantum) {
  if (!(quantum > 0.0)) throw InvalidArgument("quantum must be positive");
  std::vector<std::vector<std::int64_t>> q;
  q.reserve(items.size());
  for (const auto& v : items) q.push_back(quantize(v, quantum));
  return multiset_digest_int(std::move(q));
}

Quantum quantum_for(double diameter, double rel) {
  if (!(rel > 0.0)) throw InvalidArgument("relative tolerance must be positive");
  if (!(diameter > 0.0) || !std::isfinite(diameter)) throw InvalidArgument("diameter must be positive");
  // The offset moves the exponent boundary off exact powers of two, where
  // round-coordinate inputs tend to sit.
  const int e = static_cast<int>(std::floor(std::log2(diameter) + 0.2));
  return Quantum{e, std::ldexp(rel, e)};
}

}  // namespace geoequiv
