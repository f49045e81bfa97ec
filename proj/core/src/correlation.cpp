#include "pmopi/correlation.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "pmopi/random.hpp"

namespace pmopi {

namespace {

constexpr std::size_t kReferenceStride = 4;

}  // namespace

std::vector<double> frequency_correlation(const ChannelParams& params, std::size_t num_trials, std::size_t max_sep) {
  params.validate();
  if (num_trials < 100) throw std::invalid_argument("frequency_correlation: need at least 100 trials");
  if (max_sep >= params.num_subcarriers) {
    throw std::invalid_argument("frequency_correlation: max_sep must be below num_subcarriers");
  }

  const std::size_t span = params.num_subcarriers - max_sep;
  std::vector<Complex> cross(max_sep + 1);
  std::vector<double> power_ref(max_sep + 1);
  std::vector<double> power_shift(max_sep + 1);

  // Tap delays do not depend on the seed, so the per-subcarrier phasors are shared by all trials.
  const ChannelProcess reference(params);
  std::vector<std::vector<Complex>> phasors;
  phasors.reserve(params.num_subcarriers);
  for (std::size_t k = 0; k < params.num_subcarriers; ++k) phasors.push_back(reference.tap_phasors(k));

  std::vector<ComplexMatrix> responses;
  responses.reserve(params.num_subcarriers);
  for (std::size_t trial = 0; trial < num_trials; ++trial) {
    ChannelParams trial_params = params;
    trial_params.seed = mix_seed(params.seed ^ mix_seed(trial));
    const ChannelProcess process(trial_params);
    const FadingSnapshot snap = process.fading_at(0.0);

    responses.clear();
    for (std::size_t k = 0; k < params.num_subcarriers; ++k) responses.push_back(process.response(snap, phasors[k]));

    for (std::size_t k0 = 0; k0 < span; k0 += kReferenceStride) {
      const auto a = responses[k0].entries();
      for (std::size_t d = 0; d <= max_sep; ++d) {
        const auto b = responses[k0 + d].entries();
        for (std::size_t e = 0; e < a.size(); ++e) {
          cross[d] += a[e] * std::conj(b[e]);
          power_ref[d] += std::norm(a[e]);
          power_shift[d] += std::norm(b[e]);
        }
      }
    }
  }

  std::vector<double> corr(max_sep + 1);
  corr[0] = 1.0;
  for (std::size_t d = 1; d <= max_sep; ++d) {
    corr[d] = std::abs(cross[d]) / std::sqrt(power_ref[d] * power_shift[d]);
  }
  return corr;
}

std::vector<double> profile_frequency_correlation(const ChannelParams& params, std::size_t max_sep) {
  params.validate();
  const auto taps = exponential_tap_profile(params.num_taps, params.rms_delay_spread_s);
  std::vector<double> corr(max_sep + 1);
  for (std::size_t d = 0; d <= max_sep; ++d) {
    Complex acc = 0.0;
    for (const auto& tap : taps) {
      acc += tap.power * std::polar(1.0, -2.0 * std::numbers::pi * static_cast<double>(d) *
                                             params.subcarrier_spacing_hz * tap.delay_s);
    }
    corr[d] = std::abs(acc);
  }
  return corr;
}

CoherenceEstimate coherence_bandwidth(std::span<const double> corr, double spacing_hz, double threshold) {
  if (corr.empty()) throw std::invalid_argument("coherence_bandwidth: empty curve");
  for (std::size_t d = 1; d < corr.size(); ++d) {
    if (corr[d] < threshold) {
      const double hi = corr[d - 1];
      const double lo = corr[d];
      const double frac = (hi - threshold) / (hi - lo);
      const double sep = static_cast<double>(d - 1) + frac;
      return {spacing_hz * sep, sep, true};
    }
  }
  const double sep = static_cast<double>(corr.size());
  return {spacing_hz * sep, sep, false};
}

}  // namespace pmopi
