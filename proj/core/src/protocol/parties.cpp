#include "pmopi/protocol/parties.hpp"

#include <stdexcept>

#include "pmopi/protocol/key_check.hpp"

namespace pmopi::protocol {

Radio::Radio(const ChannelProcess& channel, EstimationNoise noise, Rng rng)
    : channel_(&channel), noise_(noise), rng_(std::move(rng)) {}

std::vector<ComplexMatrix> Radio::sound(double t, const SubbandPlan& plan, std::span<const ComplexMatrix> rotations) {
  if (!rotations.empty() && rotations.size() != plan.size()) {
    throw std::invalid_argument("Radio::sound: one rotation per subband required");
  }
  const FadingSnapshot snap = channel_->fading_at(t);
  std::vector<ComplexMatrix> out;
  out.reserve(plan.size());
  for (std::size_t i = 0; i < plan.size(); ++i) {
    ComplexMatrix est = estimate(channel_->response(snap, plan.center_indices[i]), noise_, rng_);
    if (!rotations.empty()) est = est * rotations[i];
    out.push_back(std::move(est));
  }
  return out;
}

std::vector<Pmi> select_pmis(std::span<const ComplexMatrix> estimates, Snr rho, const Codebook& codebook) {
  std::vector<Pmi> pmis;
  pmis.reserve(estimates.size());
  for (const auto& h : estimates) pmis.push_back(select_pmi(h, rho, codebook));
  return pmis;
}

// ---------------------------------------------------------------------------

Alice::Alice(PartyConfig config, Radio radio, Rng challenge_rng)
    : config_(std::move(config)), radio_(std::move(radio)), challenge_rng_(std::move(challenge_rng)) {}

AirFrame Alice::begin_epoch(std::uint64_t epoch, double t) {
  pending_.reset();
  rejected_ = false;
  return AirFrame{t, Party::Alice, ReferenceSignal{epoch}, {}};
}

std::vector<AirFrame> Alice::receive(const AirFrame& frame) {
  std::vector<AirFrame> out;
  const Message& msg = frame.message;
  if (std::holds_alternative<FlagStatic>(msg)) {
    precoding_static_ = true;
  } else if (std::holds_alternative<FlagDynamic>(msg)) {
    precoding_static_ = false;
  } else if (std::holds_alternative<SoundingSignal>(msg) || std::holds_alternative<RotatedSounding>(msg)) {
    // A rotated sounding looks like any other channel to Alice; the rotation
    // is already inside what her radio measures.
    const auto estimates = radio_.sound(frame.time_s, config_.plan, frame.rotations);
    const std::uint64_t epoch = message_epoch(msg);
    pending_ = KeyMaterial::from_pmis(epoch, select_pmis(estimates, config_.rho, config_.codebook));
    out.push_back(AirFrame{frame.time_s, Party::Alice, make_key_check(pending_->key_bits, epoch, challenge_rng_), {}});
  } else if (const auto* rekey = std::get_if<RekeyRequest>(&msg)) {
    if (pending_ && pending_->epoch == rekey->epoch) rejected_ = true;
  }
  return out;
}

void Alice::end_epoch(std::uint64_t epoch) {
  if (pending_ && pending_->epoch == epoch && !rejected_) {
    keys_.insert(epoch, pending_->key_bits);
    keys_.expire(epoch, config_.key_staleness_epochs);
  }
}

// ---------------------------------------------------------------------------

RotationSource haar_rotations(std::size_t n) {
  return [n](Rng& rng) { return random_unitary(rng, n); };
}

Bob::Bob(PartyConfig config, Radio radio, Rng rotation_rng, RotationSource rotations)
    : config_(std::move(config)),
      radio_(std::move(radio)),
      rotation_rng_(std::move(rotation_rng)),
      rotation_source_(std::move(rotations)) {}

std::vector<AirFrame> Bob::receive(const AirFrame& frame) {
  const Message& msg = frame.message;
  if (const auto* ref = std::get_if<ReferenceSignal>(&msg)) return on_reference(ref->epoch, frame.time_s);

  if (const auto* check = std::get_if<KeyCheck>(&msg)) {
    const bool ok = pending_ && pending_->epoch == check->epoch && verify_key_check(*check, pending_->key_bits);
    last_check_ = ok;
    if (!ok) return {AirFrame{frame.time_s, Party::Bob, RekeyRequest{check->epoch}, {}}};
  }
  return {};
}

std::vector<AirFrame> Bob::on_reference(std::uint64_t epoch, double t) {
  pending_.reset();
  last_check_.reset();
  rotated_ = false;

  const auto estimates = radio_.sound(t, config_.plan);
  std::vector<Pmi> precoding = select_pmis(estimates, config_.rho, config_.codebook);
  const double reply_time = t + config_.sounding_delay_s;

  std::vector<AirFrame> out;
  const bool slow = config_.mode == Mode::SlowVarying;
  const bool unchanged = last_precoding_ && *last_precoding_ == precoding;
  const bool rotate = slow && (unchanged || config_.rotation_policy == RotationPolicy::Always);

  if (rotate) {
    std::vector<ComplexMatrix> rotations;
    std::vector<Pmi> key_pmis;
    rotations.reserve(estimates.size());
    key_pmis.reserve(estimates.size());
    for (const auto& h : estimates) {
      rotations.push_back(rotation_source_(rotation_rng_));
      key_pmis.push_back(select_pmi_rotated(h, rotations.back(), config_.rho, config_.codebook));
    }
    out.push_back(AirFrame{reply_time, Party::Bob, FlagStatic{epoch}, {}});
    out.push_back(AirFrame{reply_time, Party::Bob, RotatedSounding{epoch}, std::move(rotations)});
    pending_ = KeyMaterial::from_pmis(epoch, std::move(key_pmis));
    static_state_ = true;
    rotated_ = true;
  } else {
    if (slow && static_state_) out.push_back(AirFrame{reply_time, Party::Bob, FlagDynamic{epoch}, {}});
    out.push_back(AirFrame{reply_time, Party::Bob, SoundingSignal{epoch}, {}});
    pending_ = KeyMaterial::from_pmis(epoch, precoding);
    static_state_ = false;
  }
  last_precoding_ = std::move(precoding);
  return out;
}

void Bob::end_epoch(std::uint64_t epoch) {
  if (pending_ && pending_->epoch == epoch && last_check_.value_or(false)) {
    keys_.insert(epoch, pending_->key_bits);
    keys_.expire(epoch, config_.key_staleness_epochs);
  }
}

}  // namespace pmopi::protocol
