#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "pmopi/cipher.hpp"

namespace pmopi::protocol {

/// Alice's channel-estimation reference (s).
struct ReferenceSignal {
  std::uint64_t epoch;
  bool operator==(const ReferenceSignal&) const = default;
};

/// Bob's plain sounding reply (r).
struct SoundingSignal {
  std::uint64_t epoch;
  bool operator==(const SoundingSignal&) const = default;
};

/// Bob found the precoding PMIs unchanged: keep precoding, key from Ur.
struct FlagStatic {
  std::uint64_t epoch;
  bool operator==(const FlagStatic&) const = default;
};

/// Bob found the PMIs changed: revert to plain sounding.
struct FlagDynamic {
  std::uint64_t epoch;
  bool operator==(const FlagDynamic&) const = default;
};

/// Bob's sounding sent through a private unitary U. The frame records only
/// that a rotation happened; U never appears on the wire.
struct RotatedSounding {
  std::uint64_t epoch;
  bool operator==(const RotatedSounding&) const = default;
};

/// Encryption of a random X under the new key plus SHA-256(X) in plaintext.
struct KeyCheck {
  std::uint64_t epoch;
  Bytes ciphertext;
  Digest digest;
  bool operator==(const KeyCheck&) const = default;
};

/// Bob's digest comparison failed; the epoch's key is discarded.
struct RekeyRequest {
  std::uint64_t epoch;
  bool operator==(const RekeyRequest&) const = default;
};

/// Encrypted application payload.
struct Data {
  std::array<std::uint8_t, 8> nonce;
  Bytes ciphertext;
  bool operator==(const Data&) const = default;
};

/// Nonce for the seq-th Data frame of an epoch. The top bit keeps it disjoint
/// from KeyCheck nonces, which are the bare epoch number.
Nonce data_nonce(std::uint64_t epoch, std::uint32_t seq);
std::uint64_t data_nonce_epoch(std::uint64_t nonce_value) noexcept;

using Message = std::variant<ReferenceSignal, SoundingSignal, FlagStatic, FlagDynamic, RotatedSounding, KeyCheck,
                             RekeyRequest, Data>;

enum class Party { Alice, Bob };

std::string_view party_name(Party p) noexcept;
std::string_view message_tag(const Message& m) noexcept;
/// Epoch carried by the message; for Data, the epoch encoded in its nonce.
std::uint64_t message_epoch(const Message& m) noexcept;

struct TranscriptEntry {
  double time_s;
  Party sender;
  Message message;
};

using Transcript = std::vector<TranscriptEntry>;

/// One line: "<epoch>,<sender>,<tag>,<hex payload>". Signals have an empty
/// payload; KeyCheck is ciphertext||digest; Data is nonce||ciphertext.
std::string format_entry(const TranscriptEntry& entry);
std::string format_transcript(const Transcript& transcript);

struct ParsedLine {
  std::uint64_t epoch;
  Party sender;
  Message message;
};

/// Inverse of format_entry (the timestamp is not part of the log).
ParsedLine parse_entry(std::string_view line);

}  // namespace pmopi::protocol
