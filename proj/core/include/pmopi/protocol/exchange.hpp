#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "pmopi/channel.hpp"
#include "pmopi/estimation.hpp"
#include "pmopi/protocol/eve.hpp"
#include "pmopi/protocol/message.hpp"
#include "pmopi/protocol/parties.hpp"
#include "pmopi/protocol/subbands.hpp"
#include "pmopi/random.hpp"

namespace pmopi::protocol {

struct ExchangeConfig {
  Mode mode = Mode::Fast;
  RotationPolicy rotation_policy = RotationPolicy::OnStaticFlag;
  EstimationNoise snr = EstimationNoise::noiseless();
  Snr rho{10.0};
  /// Time between Alice's reference signal and Bob's sounding.
  double sounding_delay_s = 0.0;
  std::size_t max_rekey_rounds = 3;
  SubbandPlan subband_plan;
  std::uint64_t key_staleness_epochs = 8;
  /// Number of keys to establish; each successful KeyCheck completes one.
  std::size_t key_epochs = 1;
  Codebook codebook = householder_codebook();
  EveStrategy eve_strategy = EveStrategy::AliceSounding;
  /// Injected rotation source for Bob (Haar when empty).
  RotationSource rotations;

  void validate() const;
};

/// What happened in one sounding exchange.
struct EpochRecord {
  std::uint64_t epoch;
  double start_time_s;
  bool rotated;
  std::vector<Pmi> alice_pmis;
  std::vector<Pmi> bob_pmis;
  std::vector<Pmi> eve_pmis;
  bool key_check_passed;
};

struct ExchangeOutcome {
  KeyMaterial key_alice;
  KeyMaterial key_bob;
  bool matched = false;
  std::size_t rekey_rounds = 0;
  KeyMaterial eve_key;
  Transcript transcript;
  std::vector<EpochRecord> epochs;
  KeySet alice_keys;
  KeySet bob_keys;
};

/// Independent channels to Eve for an Alice-Bob process: same parameters,
/// seeds derived from the Alice-Bob seed.
struct EveChannels {
  ChannelProcess alice_eve;
  ChannelProcess bob_eve;
};
EveChannels independent_eve_channels(const ChannelParams& alice_bob);

/// Runs sounding exchanges until config.key_epochs keys are confirmed or
/// max_rekey_rounds KeyCheck failures occur. Epoch e starts at
/// t = 2 e sounding_delay_s; Bob's reply is at start + sounding_delay_s.
/// Key fields of the outcome describe the last attempted epoch.
ExchangeOutcome run_exchange(const ChannelProcess& alice_bob, const ChannelProcess& alice_eve,
                             const ChannelProcess& bob_eve, const ExchangeConfig& config, Rng& rng);

/// As above with Eve's channels from independent_eve_channels().
ExchangeOutcome run_exchange(const ChannelProcess& alice_bob, const ExchangeConfig& config, Rng& rng);

}  // namespace pmopi::protocol
