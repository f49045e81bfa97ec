#include "pmopi/protocol/eve.hpp"

namespace pmopi::protocol {

namespace {

bool is_observed_sounding(const TranscriptEntry& e, EveStrategy strategy) {
  if (strategy == EveStrategy::AliceSounding) return std::holds_alternative<ReferenceSignal>(e.message);
  return std::holds_alternative<SoundingSignal>(e.message) || std::holds_alternative<RotatedSounding>(e.message);
}

std::optional<KeyMaterial> estimate_from(const TranscriptEntry& entry, const ChannelProcess& alice_eve,
                                         const ChannelProcess& bob_eve, Snr rho, const Codebook& codebook,
                                         const SubbandPlan& plan, EveStrategy strategy) {
  const ChannelProcess& channel = strategy == EveStrategy::AliceSounding ? alice_eve : bob_eve;
  const FadingSnapshot snap = channel.fading_at(entry.time_s);
  std::vector<Pmi> pmis;
  pmis.reserve(plan.size());
  for (std::size_t k : plan.center_indices) pmis.push_back(select_pmi(channel.response(snap, k), rho, codebook));
  return KeyMaterial::from_pmis(message_epoch(entry.message), std::move(pmis));
}

}  // namespace

std::optional<KeyMaterial> eve_estimate(const Transcript& transcript, const ChannelProcess& alice_eve,
                                        const ChannelProcess& bob_eve, Snr rho, const Codebook& codebook,
                                        const SubbandPlan& plan, EveStrategy strategy) {
  for (auto it = transcript.rbegin(); it != transcript.rend(); ++it) {
    if (is_observed_sounding(*it, strategy)) {
      return estimate_from(*it, alice_eve, bob_eve, rho, codebook, plan, strategy);
    }
  }
  return std::nullopt;
}

std::optional<KeyMaterial> eve_estimate_epoch(const Transcript& transcript, std::uint64_t epoch,
                                              const ChannelProcess& alice_eve, const ChannelProcess& bob_eve,
                                              Snr rho, const Codebook& codebook, const SubbandPlan& plan,
                                              EveStrategy strategy) {
  for (const auto& entry : transcript) {
    if (message_epoch(entry.message) == epoch && is_observed_sounding(entry, strategy)) {
      return estimate_from(entry, alice_eve, bob_eve, rho, codebook, plan, strategy);
    }
  }
  return std::nullopt;
}

}  // namespace pmopi::protocol
