#include "pmopi/channel.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "pmopi/random.hpp"

namespace pmopi {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

bool positive(double x) { return std::isfinite(x) && x > 0.0; }

}  // namespace

void ChannelParams::validate() const {
  if (!positive(carrier_freq_hz)) throw std::invalid_argument("carrier_freq_hz must be positive");
  if (!positive(subcarrier_spacing_hz)) throw std::invalid_argument("subcarrier_spacing_hz must be positive");
  if (num_subcarriers == 0) throw std::invalid_argument("num_subcarriers must be at least 1");
  if (!std::isfinite(velocity_kmh) || velocity_kmh < 0.0) throw std::invalid_argument("velocity_kmh must be >= 0");
  if (!positive(rms_delay_spread_s)) throw std::invalid_argument("rms_delay_spread_s must be positive");
  if (num_taps == 0) throw std::invalid_argument("num_taps must be at least 1");
  if (num_sinusoids < 8) throw std::invalid_argument("num_sinusoids must be at least 8");
  if (rx_antennas == 0 || tx_antennas == 0) throw std::invalid_argument("antenna counts must be positive");
}

double max_doppler_hz(const ChannelParams& params) noexcept {
  return (params.velocity_kmh / 3.6) * params.carrier_freq_hz / kSpeedOfLight;
}

std::vector<Tap> exponential_tap_profile(std::size_t num_taps, double rms_delay_spread_s) {
  if (num_taps == 0) throw std::invalid_argument("exponential_tap_profile: no taps");
  const double power = 1.0 / static_cast<double>(num_taps);
  const double count = static_cast<double>(num_taps);

  std::vector<Tap> taps(num_taps);
  double mean = 0.0;
  for (std::size_t l = 0; l < num_taps; ++l) {
    taps[l] = {-std::log1p(-static_cast<double>(l) / count), power};
    mean += power * taps[l].delay_s;
  }
  double second = 0.0;
  for (const auto& tap : taps) second += tap.power * (tap.delay_s - mean) * (tap.delay_s - mean);
  const double unit_rms = std::sqrt(second);

  // A single tap has no spread to rescale; it stays at zero delay.
  const double scale = unit_rms > 0.0 ? rms_delay_spread_s / unit_rms : 0.0;
  for (auto& tap : taps) tap.delay_s *= scale;
  return taps;
}

ChannelProcess::ChannelProcess(const ChannelParams& params)
    : params_(params), doppler_hz_(0.0) {
  params_.validate();
  doppler_hz_ = max_doppler_hz(params_);
  taps_ = exponential_tap_profile(params_.num_taps, params_.rms_delay_spread_s);

  Rng rng = derive_stream(params_.seed, {0x6368616eULL});
  const std::size_t entries = params_.rx_antennas * params_.tx_antennas;
  const std::size_t m_count = params_.num_sinusoids;
  oscillators_.resize(params_.num_taps * entries);
  for (auto& osc : oscillators_) {
    const double theta = uniform_phase(rng);
    osc.doppler_cos.resize(m_count);
    osc.phase.resize(m_count);
    for (std::size_t m = 0; m < m_count; ++m) {
      osc.doppler_cos[m] = std::cos((kTwoPi * static_cast<double>(m) + theta) / static_cast<double>(m_count));
      osc.phase[m] = uniform_phase(rng);
    }
  }
}

FadingSnapshot ChannelProcess::fading_at(double t) const {
  const std::size_t rx = params_.rx_antennas;
  const std::size_t tx = params_.tx_antennas;
  const double omega_t = kTwoPi * doppler_hz_ * t;
  const double norm = 1.0 / std::sqrt(static_cast<double>(params_.num_sinusoids));

  FadingSnapshot snap{t, {}};
  snap.taps.reserve(taps_.size());
  for (std::size_t l = 0; l < taps_.size(); ++l) {
    ComplexMatrix g(rx, tx);
    const double amplitude = std::sqrt(taps_[l].power) * norm;
    for (std::size_t e = 0; e < rx * tx; ++e) {
      const Oscillator& osc = oscillators_[l * rx * tx + e];
      Complex acc = 0.0;
      for (std::size_t m = 0; m < osc.phase.size(); ++m) {
        acc += std::polar(1.0, omega_t * osc.doppler_cos[m] + osc.phase[m]);
      }
      g(e / tx, e % tx) = amplitude * acc;
    }
    snap.taps.push_back(std::move(g));
  }
  return snap;
}

std::vector<Complex> ChannelProcess::tap_phasors(std::size_t k) const {
  if (k >= params_.num_subcarriers) throw std::out_of_range("channel: subcarrier index out of range");
  const double omega_k = kTwoPi * static_cast<double>(k) * params_.subcarrier_spacing_hz;
  std::vector<Complex> out(taps_.size());
  for (std::size_t l = 0; l < taps_.size(); ++l) out[l] = std::polar(1.0, -omega_k * taps_[l].delay_s);
  return out;
}

ComplexMatrix ChannelProcess::response(const FadingSnapshot& snapshot, std::span<const Complex> phasors) const {
  if (phasors.size() != taps_.size() || snapshot.taps.size() != taps_.size()) {
    throw std::invalid_argument("channel: one phasor and one fading matrix per tap required");
  }
  ComplexMatrix h(params_.rx_antennas, params_.tx_antennas);
  for (std::size_t l = 0; l < taps_.size(); ++l) {
    const auto& g = snapshot.taps[l];
    for (std::size_t r = 0; r < h.rows(); ++r) {
      for (std::size_t c = 0; c < h.cols(); ++c) h(r, c) += g(r, c) * phasors[l];
    }
  }
  return h;
}

ComplexMatrix ChannelProcess::response(const FadingSnapshot& snapshot, std::size_t k) const {
  return response(snapshot, tap_phasors(k));
}

ComplexMatrix ChannelProcess::channel_at(double t, std::size_t k) const {
  if (k >= params_.num_subcarriers) throw std::out_of_range("channel: subcarrier index out of range");
  return response(fading_at(t), k);
}

ChannelProcess sample_channel(const ChannelParams& params) { return ChannelProcess(params); }

}  // namespace pmopi
