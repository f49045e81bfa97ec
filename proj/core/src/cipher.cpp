#include "pmopi/cipher.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <memory>
#include <stdexcept>

namespace pmopi {

namespace {

std::array<std::uint8_t, 8> be64(std::uint64_t v) noexcept {
  std::array<std::uint8_t, 8> out{};
  for (int i = 7; i >= 0; --i) {
    out[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(v & 0xff);
    v >>= 8;
  }
  return out;
}

struct MdCtxDeleter {
  void operator()(EVP_MD_CTX* ctx) const noexcept { EVP_MD_CTX_free(ctx); }
};
using MdCtx = std::unique_ptr<EVP_MD_CTX, MdCtxDeleter>;

class Sha256 {
 public:
  Sha256() : ctx_(EVP_MD_CTX_new()) {
    if (!ctx_ || EVP_DigestInit_ex(ctx_.get(), EVP_sha256(), nullptr) != 1) {
      throw std::runtime_error("sha256: digest initialization failed");
    }
  }

  void update(std::span<const std::uint8_t> data) {
    if (EVP_DigestUpdate(ctx_.get(), data.data(), data.size()) != 1) {
      throw std::runtime_error("sha256: update failed");
    }
  }

  Digest finish() {
    Digest out{};
    unsigned int len = 0;
    if (EVP_DigestFinal_ex(ctx_.get(), out.data(), &len) != 1 || len != out.size()) {
      throw std::runtime_error("sha256: finalization failed");
    }
    return out;
  }

 private:
  MdCtx ctx_;
};

}  // namespace

Digest sha256(std::span<const std::uint8_t> data) {
  Sha256 h;
  h.update(data);
  return h.finish();
}

Digest sha256(std::string_view text) {
  return sha256(std::span(reinterpret_cast<const std::uint8_t*>(text.data()), text.size()));
}

CipherKey::CipherKey(BitString bits) : bits_(std::move(bits)), bytes_(bits_.to_bytes()) {
  if (bits_.empty()) throw std::invalid_argument("CipherKey: empty key");
}

std::array<std::uint8_t, 8> Nonce::bytes() const noexcept { return be64(value); }

Bytes keystream(const CipherKey& key, Nonce nonce, std::size_t n) {
  Bytes out;
  out.reserve(n);
  const auto nonce_bytes = nonce.bytes();
  for (std::uint64_t block = 0; out.size() < n; ++block) {
    Sha256 h;
    h.update(key.bytes());
    h.update(nonce_bytes);
    h.update(be64(block));
    const Digest d = h.finish();
    const std::size_t take = std::min(d.size(), n - out.size());
    out.insert(out.end(), d.begin(), d.begin() + static_cast<std::ptrdiff_t>(take));
  }
  return out;
}

Bytes encrypt(const CipherKey& key, Nonce nonce, std::span<const std::uint8_t> plaintext) {
  Bytes out = keystream(key, nonce, plaintext.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] ^= plaintext[i];
  return out;
}

Bytes decrypt(const CipherKey& key, Nonce nonce, std::span<const std::uint8_t> ciphertext) {
  return encrypt(key, nonce, ciphertext);
}

}  // namespace pmopi
