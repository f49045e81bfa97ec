#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "pmopi/channel.hpp"

namespace pmopi {

/// Frequency correlation |rho(d)| for d = 0..max_sep subcarriers.
///
/// Each trial samples an independent channel (seed derived from params.seed
/// and the trial index) at t = 0. The estimator pools all trials, antenna
/// entries and reference subcarriers:
///   rho(d) = |sum H(k) H*(k+d)| / sqrt(sum |H(k)|^2 * sum |H(k+d)|^2).
/// Entry 0 is exactly 1.
std::vector<double> frequency_correlation(const ChannelParams& params, std::size_t num_trials, std::size_t max_sep);

/// Noise-free correlation of the tap profile itself, |sum_l p_l exp(-j 2 pi d df tau_l)|.
std::vector<double> profile_frequency_correlation(const ChannelParams& params, std::size_t max_sep);

struct CoherenceEstimate {
  double bandwidth_hz;
  /// Interpolated separation in subcarriers where the curve drops below threshold.
  double separation;
  bool crossed;
};

/// First point where corr falls below threshold, linearly interpolated between
/// the bracketing separations. If the curve never drops below, reports
/// spacing_hz * corr.size() with crossed = false.
CoherenceEstimate coherence_bandwidth(std::span<const double> corr, double spacing_hz, double threshold = 0.5);

}  // namespace pmopi
