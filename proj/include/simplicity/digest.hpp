#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>

namespace simplicity {

// A 256-bit digest / commitment, big-endian byte order.
struct Digest256 {
  std::array<uint8_t, 32> bytes{};

  bool operator==(const Digest256& o) const { return bytes == o.bytes; }
  bool operator!=(const Digest256& o) const { return bytes != o.bytes; }
  bool operator<(const Digest256& o) const { return bytes < o.bytes; }

  std::string hex() const;
  static std::optional<Digest256> from_hex(std::string_view hex64);
};

using MerkleRoot = Digest256;

struct DigestHash {
  size_t operator()(const Digest256& d) const {
    // Digests are uniformly distributed; the first 8 bytes suffice.
    uint64_t h = 0;
    for (int i = 0; i < 8; ++i) h = (h << 8) | d.bytes[i];
    return static_cast<size_t>(h);
  }
};

// The raw SHA-256 compression function: no padding, no length suffix.
Digest256 sha256_compress(const Digest256& iv,
                          std::span<const uint8_t, 64> block);

// Full SHA-256 with standard padding.
Digest256 sha256(std::span<const uint8_t> bytes);

// The standard SHA-256 initial vector.
const Digest256& sha256_iv();

}  // namespace simplicity
