#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "pmopi/complex_matrix.hpp"

namespace pmopi {

inline constexpr double kSpeedOfLight = 2.99792458e8;

/// RMS delay spread that puts the 0.5 frequency-correlation crossing of the
/// default 12-tap profile at 20 subcarriers (300 kHz at 15 kHz spacing).
/// Produced by `pmopi calibrate` with the default configuration.
inline constexpr double kCalibratedRmsDelaySpread = 0.68e-6;

struct ChannelParams {
  double carrier_freq_hz = 2e9;
  double subcarrier_spacing_hz = 15e3;
  std::size_t num_subcarriers = 1200;
  double velocity_kmh = 0.0;
  double rms_delay_spread_s = kCalibratedRmsDelaySpread;
  std::size_t num_taps = 12;
  std::size_t num_sinusoids = 16;
  std::uint64_t seed = 0;
  std::size_t rx_antennas = 2;
  std::size_t tx_antennas = 4;

  /// Throws std::invalid_argument on out-of-range fields.
  void validate() const;
};

/// f_D = v * f_c / c with v converted from km/h.
double max_doppler_hz(const ChannelParams& params) noexcept;

struct Tap {
  double delay_s;
  double power;
};

/// Per-tap fading matrices at one instant, already scaled by sqrt(power).
struct FadingSnapshot {
  double time_s;
  std::vector<ComplexMatrix> taps;
};

/// Tapped-delay-line MIMO channel with sum-of-sinusoids Doppler.
///
/// Tap delays sit on the exponential quantile grid d_l = -ln(1 - l/L) with
/// equal powers, rescaled so the profile's RMS delay spread equals the
/// configured value. Every (tap, rx, tx) entry is an independent unit-power
/// fading process
///   g(t) = M^{-1/2} sum_m exp(j (2 pi f_D cos(a_m) t + phi_m)),
///   a_m = (2 pi m + theta) / M,
/// with theta and phi_m drawn once per entry. Over theta the autocorrelation is
/// exactly J0(2 pi f_D tau). Immutable after construction.
class ChannelProcess {
 public:
  explicit ChannelProcess(const ChannelParams& params);

  const ChannelParams& params() const noexcept { return params_; }
  const std::vector<Tap>& taps() const noexcept { return taps_; }
  double doppler_hz() const noexcept { return doppler_hz_; }

  FadingSnapshot fading_at(double t) const;

  /// H(t, k) from a snapshot taken at t.
  ComplexMatrix response(const FadingSnapshot& snapshot, std::size_t k) const;

  /// exp(-j 2 pi k df tau_l) for every tap; depends only on the tap profile.
  std::vector<Complex> tap_phasors(std::size_t k) const;
  /// response() with precomputed tap_phasors(k).
  ComplexMatrix response(const FadingSnapshot& snapshot, std::span<const Complex> phasors) const;

  /// H(t, k) = sum_l sqrt(p_l) G_l(t) exp(-j 2 pi k df tau_l).
  ComplexMatrix channel_at(double t, std::size_t k) const;

 private:
  struct Oscillator {
    std::vector<double> doppler_cos;
    std::vector<double> phase;
  };

  ChannelParams params_;
  double doppler_hz_;
  std::vector<Tap> taps_;
  // taps x rx x tx, row-major per tap.
  std::vector<Oscillator> oscillators_;
};

ChannelProcess sample_channel(const ChannelParams& params);

/// Delay grid and powers used by ChannelProcess, exposed for analysis.
std::vector<Tap> exponential_tap_profile(std::size_t num_taps, double rms_delay_spread_s);

}  // namespace pmopi
