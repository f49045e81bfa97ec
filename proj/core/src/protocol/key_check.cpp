#include "pmopi/protocol/key_check.hpp"

namespace pmopi::protocol {

KeyCheck make_key_check(const BitString& key, std::uint64_t epoch, Rng& rng) {
  std::uniform_int_distribution<unsigned> byte(0, 255);
  Bytes challenge(kKeyCheckChallengeBytes);
  for (auto& b : challenge) b = static_cast<std::uint8_t>(byte(rng));
  return KeyCheck{epoch, encrypt(CipherKey(key), Nonce{epoch}, challenge), sha256(challenge)};
}

bool verify_key_check(const KeyCheck& msg, const BitString& key) {
  const Bytes challenge = decrypt(CipherKey(key), Nonce{msg.epoch}, msg.ciphertext);
  return sha256(challenge) == msg.digest;
}

Data seal_data(const BitString& key, std::uint64_t epoch, std::uint32_t seq, std::span<const std::uint8_t> plaintext) {
  const Nonce nonce = data_nonce(epoch, seq);
  return Data{nonce.bytes(), encrypt(CipherKey(key), nonce, plaintext)};
}

Bytes open_data(const Data& msg, const BitString& key) {
  std::uint64_t value = 0;
  for (auto b : msg.nonce) value = (value << 8) | b;
  return decrypt(CipherKey(key), Nonce{value}, msg.ciphertext);
}

}  // namespace pmopi::protocol
