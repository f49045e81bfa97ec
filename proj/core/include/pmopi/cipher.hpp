#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "pmopi/bit_string.hpp"

namespace pmopi {

using Bytes = std::vector<std::uint8_t>;
using Digest = std::array<std::uint8_t, 32>;

Digest sha256(std::span<const std::uint8_t> data);
Digest sha256(std::string_view text);

/// Stream-cipher key built from the exchanged PMI bits.
class CipherKey {
 public:
  explicit CipherKey(BitString bits);

  const BitString& bits() const noexcept { return bits_; }
  /// Big-endian packing, zero-padded in the last byte.
  const Bytes& bytes() const noexcept { return bytes_; }

 private:
  BitString bits_;
  Bytes bytes_;
};

/// Per-message keystream diversifier; the protocol uses the epoch number.
struct Nonce {
  std::uint64_t value = 0;

  std::array<std::uint8_t, 8> bytes() const noexcept;
};

/// Hash-counter keystream: block i = SHA-256(key bytes || nonce || i), with
/// nonce and i as 8-byte big-endian integers. Output is blocks 0, 1, ...
/// truncated to n bytes.
Bytes keystream(const CipherKey& key, Nonce nonce, std::size_t n);

/// plaintext XOR keystream.
Bytes encrypt(const CipherKey& key, Nonce nonce, std::span<const std::uint8_t> plaintext);

/// Same operation as encrypt.
Bytes decrypt(const CipherKey& key, Nonce nonce, std::span<const std::uint8_t> ciphertext);

}  // namespace pmopi
