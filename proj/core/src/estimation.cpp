#include "pmopi/estimation.hpp"

#include <cmath>
#include <stdexcept>

namespace pmopi {

EstimationNoise EstimationNoise::from_db(double snr_db) {
  if (!std::isfinite(snr_db)) throw std::invalid_argument("EstimationNoise: snr_db must be finite");
  EstimationNoise noise;
  noise.snr_db_ = snr_db;
  return noise;
}

double EstimationNoise::variance() const noexcept {
  return snr_db_ ? std::pow(10.0, -*snr_db_ / 10.0) : 0.0;
}

ComplexMatrix estimate(const ComplexMatrix& h, EstimationNoise noise, Rng& rng) {
  if (noise.is_noiseless()) return h;
  return h + gaussian_matrix(rng, h.rows(), h.cols(), noise.variance());
}

}  // namespace pmopi
