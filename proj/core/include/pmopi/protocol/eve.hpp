#pragma once

// Eve sees only the transcript and her own channels. Nothing here may depend
// on the Alice-Bob channel or on Bob's rotations.

#include <optional>

#include "pmopi/channel.hpp"
#include "pmopi/codebook.hpp"
#include "pmopi/mimo.hpp"
#include "pmopi/protocol/message.hpp"
#include "pmopi/protocol/subbands.hpp"

namespace pmopi::protocol {

enum class EveStrategy {
  /// Select PMIs on H_AE at Alice's reference signal.
  AliceSounding,
  /// Select PMIs on H_BE at Bob's sounding. A rotated sounding is treated as
  /// unrotated since U is unknown to her.
  BobSounding,
};

/// Eve's key guess for the latest epoch in the transcript, from perfect
/// estimates of her own channels. Returns nothing if the transcript holds no
/// sounding she can use.
std::optional<KeyMaterial> eve_estimate(const Transcript& transcript, const ChannelProcess& alice_eve,
                                        const ChannelProcess& bob_eve, Snr rho, const Codebook& codebook,
                                        const SubbandPlan& plan, EveStrategy strategy = EveStrategy::AliceSounding);

/// Same, restricted to one epoch.
std::optional<KeyMaterial> eve_estimate_epoch(const Transcript& transcript, std::uint64_t epoch,
                                              const ChannelProcess& alice_eve, const ChannelProcess& bob_eve,
                                              Snr rho, const Codebook& codebook, const SubbandPlan& plan,
                                              EveStrategy strategy = EveStrategy::AliceSounding);

}  // namespace pmopi::protocol
