#pragma once

#include <compare>
#include <cstddef>

#include "pmopi/codebook.hpp"
#include "pmopi/complex_matrix.hpp"
#include "pmopi/random.hpp"

namespace pmopi {

/// Linear transmit-SNR scaling rho applied to F^H H^H H F.
class Snr {
 public:
  explicit Snr(double rho);
  static Snr from_db(double db);

  double linear() const noexcept { return rho_; }
  double db() const noexcept;

 private:
  double rho_;
};

/// Precoding matrix index: a position in a Codebook.
class Pmi {
 public:
  static constexpr unsigned kBits = 4;

  constexpr Pmi() = default;
  explicit Pmi(std::size_t index);

  std::size_t index() const noexcept { return index_; }
  auto operator<=>(const Pmi&) const = default;

 private:
  std::size_t index_ = 0;
};

/// log2 det(I_2 + rho F^H H^H H F).
///
/// H is r x t, F is t x 2. The 2x2 determinant is evaluated in closed form.
/// Never negative.
double capacity(const ComplexMatrix& h, const ComplexMatrix& f, Snr snr);

/// Capacity seen through a secret rotation: log2 det(I_2 + rho F^H (HU)^H (HU) F).
/// Equal to capacity(h, u * f, snr). Throws if U deviates from unitary by more
/// than 1e-6.
double rotated_capacity(const ComplexMatrix& h, const ComplexMatrix& f, const ComplexMatrix& u, Snr snr);

/// Codebook entry maximizing capacity. Ties go to the lowest index; values are
/// compared exactly as computed.
Pmi select_pmi(const ComplexMatrix& h, Snr snr, const Codebook& codebook);

/// select_pmi with rotated_capacity as the objective.
Pmi select_pmi_rotated(const ComplexMatrix& h, const ComplexMatrix& u, Snr snr, const Codebook& codebook);

/// Haar-distributed n x n unitary: QR of an iid CN(0,1) matrix with the
/// triangular factor's diagonal forced real positive.
ComplexMatrix random_unitary(Rng& rng, std::size_t n);

}  // namespace pmopi
