#pragma once

#include <optional>

#include "pmopi/complex_matrix.hpp"
#include "pmopi/random.hpp"

namespace pmopi {

/// Channel-estimation quality: reference-signal power over noise variance,
/// or a perfect (noiseless) estimate.
class EstimationNoise {
 public:
  static EstimationNoise noiseless() noexcept { return EstimationNoise(); }
  static EstimationNoise from_db(double snr_db);

  bool is_noiseless() const noexcept { return !snr_db_.has_value(); }
  /// Only meaningful when !is_noiseless().
  double snr_db() const noexcept { return snr_db_.value_or(0.0); }
  /// Per-entry complex noise variance 10^(-snr_db/10); zero when noiseless.
  double variance() const noexcept;

  bool operator==(const EstimationNoise&) const = default;

 private:
  EstimationNoise() = default;
  std::optional<double> snr_db_;
};

/// H + N with N iid CN(0, noise.variance()). Noiseless returns H unchanged and
/// draws nothing from rng.
ComplexMatrix estimate(const ComplexMatrix& h, EstimationNoise noise, Rng& rng);

}  // namespace pmopi
