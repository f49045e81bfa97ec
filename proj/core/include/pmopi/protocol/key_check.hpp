#pragma once

#include <cstddef>
#include <cstdint>
#include <span>

#include "pmopi/bit_string.hpp"
#include "pmopi/cipher.hpp"
#include "pmopi/protocol/message.hpp"
#include "pmopi/random.hpp"

namespace pmopi::protocol {

/// Size of the random challenge X.
inline constexpr std::size_t kKeyCheckChallengeBytes = 16;

/// Draws X, encrypts it under `key` with nonce = epoch and attaches SHA-256(X).
KeyCheck make_key_check(const BitString& key, std::uint64_t epoch, Rng& rng);

/// True iff SHA-256(decrypt(ciphertext)) matches the digest.
bool verify_key_check(const KeyCheck& msg, const BitString& key);

Data seal_data(const BitString& key, std::uint64_t epoch, std::uint32_t seq, std::span<const std::uint8_t> plaintext);
Bytes open_data(const Data& msg, const BitString& key);

}  // namespace pmopi::protocol
