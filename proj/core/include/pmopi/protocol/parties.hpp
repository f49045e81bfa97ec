#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "pmopi/channel.hpp"
#include "pmopi/codebook.hpp"
#include "pmopi/estimation.hpp"
#include "pmopi/mimo.hpp"
#include "pmopi/protocol/message.hpp"
#include "pmopi/protocol/subbands.hpp"
#include "pmopi/random.hpp"

namespace pmopi::protocol {

enum class Mode { Fast, SlowVarying };

/// When Bob rotates his sounding in slow-varying mode.
enum class RotationPolicy {
  /// Only after finding the precoding PMIs unchanged (the protocol rule).
  OnStaticFlag,
  /// Every epoch, for measuring the rotated variant in isolation.
  Always,
};

/// A frame on the air: the logged message plus the physical-layer rotation a
/// receiver's front end experiences but cannot read back out.
struct AirFrame {
  double time_s;
  Party sender;
  Message message;
  /// One unitary per subband on a RotatedSounding; empty otherwise.
  std::vector<ComplexMatrix> rotations;
};

/// Receive chain of one party: noisy channel estimates at subband centers.
class Radio {
 public:
  Radio(const ChannelProcess& channel, EstimationNoise noise, Rng rng);

  /// Estimate of H(t, k) + N per subband center. When the sounding was rotated
  /// the estimate is (H + N) U, which is all the receiver can observe.
  std::vector<ComplexMatrix> sound(double t, const SubbandPlan& plan, std::span<const ComplexMatrix> rotations = {});

 private:
  const ChannelProcess* channel_;
  EstimationNoise noise_;
  Rng rng_;
};

struct PartyConfig {
  Mode mode = Mode::Fast;
  RotationPolicy rotation_policy = RotationPolicy::OnStaticFlag;
  Snr rho{10.0};
  Codebook codebook = householder_codebook();
  SubbandPlan plan;
  double sounding_delay_s = 0.0;
  std::uint64_t key_staleness_epochs = 8;
};

std::vector<Pmi> select_pmis(std::span<const ComplexMatrix> estimates, Snr rho, const Codebook& codebook);

/// Initiator: sends the reference signal, derives her key from Bob's
/// sounding and proves it with a KeyCheck.
class Alice {
 public:
  Alice(PartyConfig config, Radio radio, Rng challenge_rng);

  AirFrame begin_epoch(std::uint64_t epoch, double t);
  std::vector<AirFrame> receive(const AirFrame& frame);
  /// Commits the epoch's key unless Bob asked for a rekey.
  void end_epoch(std::uint64_t epoch);

  const std::optional<KeyMaterial>& pending_key() const noexcept { return pending_; }
  const KeySet& keys() const noexcept { return keys_; }
  /// Last flag from Bob: keep the current precoder.
  bool precoding_static() const noexcept { return precoding_static_; }

 private:
  PartyConfig config_;
  Radio radio_;
  Rng challenge_rng_;
  std::optional<KeyMaterial> pending_;
  bool rejected_ = false;
  bool precoding_static_ = false;
  KeySet keys_;
};

using RotationSource = std::function<ComplexMatrix(Rng&)>;

/// Haar 4x4 unitaries.
RotationSource haar_rotations(std::size_t n = 4);

/// Responder: estimates from Alice's reference, replies with a plain or
/// rotated sounding, verifies Alice's KeyCheck.
class Bob {
 public:
  Bob(PartyConfig config, Radio radio, Rng rotation_rng, RotationSource rotations = haar_rotations());

  std::vector<AirFrame> receive(const AirFrame& frame);
  void end_epoch(std::uint64_t epoch);

  const std::optional<KeyMaterial>& pending_key() const noexcept { return pending_; }
  const KeySet& keys() const noexcept { return keys_; }
  /// PMIs chosen for precoding from the latest reference signal.
  const std::optional<std::vector<Pmi>>& precoding_pmis() const noexcept { return last_precoding_; }
  bool rotated_last_epoch() const noexcept { return rotated_; }
  /// Result of the latest KeyCheck, if one arrived.
  std::optional<bool> last_check() const noexcept { return last_check_; }

 private:
  std::vector<AirFrame> on_reference(std::uint64_t epoch, double t);

  PartyConfig config_;
  Radio radio_;
  Rng rotation_rng_;
  RotationSource rotation_source_;
  std::optional<std::vector<Pmi>> last_precoding_;
  bool static_state_ = false;
  bool rotated_ = false;
  std::optional<KeyMaterial> pending_;
  std::optional<bool> last_check_;
  KeySet keys_;
};

}  // namespace pmopi::protocol
