#include "pmopi/protocol/exchange.hpp"

#include <cmath>
#include <deque>
#include <stdexcept>

namespace pmopi::protocol {

void ExchangeConfig::validate() const {
  if (max_rekey_rounds < 1) throw std::invalid_argument("max_rekey_rounds must be at least 1");
  if (key_epochs < 1) throw std::invalid_argument("key_epochs must be at least 1");
  if (key_staleness_epochs < 1) throw std::invalid_argument("key_staleness_epochs must be at least 1");
  if (!std::isfinite(sounding_delay_s) || sounding_delay_s < 0.0) {
    throw std::invalid_argument("sounding_delay_s must be >= 0");
  }
  if (subband_plan.center_indices.empty()) throw std::invalid_argument("subband plan is empty");
}

EveChannels independent_eve_channels(const ChannelParams& alice_bob) {
  ChannelParams ae = alice_bob;
  ChannelParams be = alice_bob;
  ae.seed = mix_seed(alice_bob.seed ^ 0x41450000ULL);
  be.seed = mix_seed(alice_bob.seed ^ 0x42450000ULL);
  return EveChannels{ChannelProcess(ae), ChannelProcess(be)};
}

ExchangeOutcome run_exchange(const ChannelProcess& alice_bob, const ChannelProcess& alice_eve,
                             const ChannelProcess& bob_eve, const ExchangeConfig& config, Rng& rng) {
  config.validate();
  for (std::size_t k : config.subband_plan.center_indices) {
    if (k >= alice_bob.params().num_subcarriers) throw std::invalid_argument("subband center outside the band");
  }

  // Fixed draw order keeps every party's randomness independent of the others'.
  Rng alice_noise = split(rng);
  Rng bob_noise = split(rng);
  Rng bob_rotation = split(rng);
  Rng challenge = split(rng);

  PartyConfig party;
  party.mode = config.mode;
  party.rotation_policy = config.rotation_policy;
  party.rho = config.rho;
  party.codebook = config.codebook;
  party.plan = config.subband_plan;
  party.sounding_delay_s = config.sounding_delay_s;
  party.key_staleness_epochs = config.key_staleness_epochs;

  Alice alice(party, Radio(alice_bob, config.snr, std::move(alice_noise)), std::move(challenge));
  Bob bob(party, Radio(alice_bob, config.snr, std::move(bob_noise)), std::move(bob_rotation),
          config.rotations ? config.rotations : haar_rotations(alice_bob.params().tx_antennas));

  ExchangeOutcome outcome;
  std::size_t confirmed = 0;
  for (std::uint64_t epoch = 0;; ++epoch) {
    const double start = 2.0 * static_cast<double>(epoch) * config.sounding_delay_s;

    std::deque<AirFrame> air;
    air.push_back(alice.begin_epoch(epoch, start));
    while (!air.empty()) {
      AirFrame frame = std::move(air.front());
      air.pop_front();
      outcome.transcript.push_back(TranscriptEntry{frame.time_s, frame.sender, frame.message});
      auto replies = frame.sender == Party::Alice ? bob.receive(frame) : alice.receive(frame);
      for (auto& r : replies) air.push_back(std::move(r));
    }
    alice.end_epoch(epoch);
    bob.end_epoch(epoch);

    const bool passed = bob.last_check().value_or(false);
    const auto eve = eve_estimate_epoch(outcome.transcript, epoch, alice_eve, bob_eve, config.rho, config.codebook,
                                        config.subband_plan, config.eve_strategy);

    outcome.key_alice = alice.pending_key().value();
    outcome.key_bob = bob.pending_key().value();
    outcome.eve_key = eve.value();
    outcome.matched = outcome.key_alice.key_bits == outcome.key_bob.key_bits;
    outcome.epochs.push_back(EpochRecord{epoch, start, bob.rotated_last_epoch(), outcome.key_alice.pmis,
                                         outcome.key_bob.pmis, outcome.eve_key.pmis, passed});

    if (passed) {
      if (++confirmed == config.key_epochs) break;
    } else if (++outcome.rekey_rounds == config.max_rekey_rounds) {
      break;
    }
  }
  outcome.alice_keys = alice.keys();
  outcome.bob_keys = bob.keys();
  return outcome;
}

ExchangeOutcome run_exchange(const ChannelProcess& alice_bob, const ExchangeConfig& config, Rng& rng) {
  const EveChannels eve = independent_eve_channels(alice_bob.params());
  return run_exchange(alice_bob, eve.alice_eve, eve.bob_eve, config, rng);
}

}  // namespace pmopi::protocol
