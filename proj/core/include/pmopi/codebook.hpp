#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "pmopi/complex_matrix.hpp"

namespace pmopi {

/// Ordered set of rank-2 precoders; list position is the PMI.
class Codebook {
 public:
  static constexpr std::size_t kHouseholderSize = 16;
  static constexpr double kOrthonormalTolerance = 1e-9;

  /// Every precoder must share one shape with two orthonormal columns.
  explicit Codebook(std::vector<ComplexMatrix> precoders);

  std::size_t size() const noexcept { return precoders_.size(); }
  std::size_t tx_antennas() const noexcept { return precoders_.front().rows(); }
  const ComplexMatrix& operator[](std::size_t pmi) const { return precoders_.at(pmi); }
  const std::vector<ComplexMatrix>& precoders() const noexcept { return precoders_; }

  /// First `count` entries, for experiments with a reduced PMI space.
  Codebook truncated(std::size_t count) const;

 private:
  std::vector<ComplexMatrix> precoders_;
};

/// I - 2 u u^H / (u^H u) for a non-zero generating vector u.
ComplexMatrix householder_matrix(std::span<const Complex> u);

/// Generating vector u_n of the 4-antenna Householder codebook.
std::array<Complex, 4> householder_generator(std::size_t index);

/// Columns of W_n used for the rank-2 precoder of index n.
std::array<std::size_t, 2> householder_rank2_columns(std::size_t index);

/// The 16-entry 4x2 Householder codebook, columns scaled to unit norm.
///
/// Generating vectors and rank-2 column selections follow the LTE 4-port
/// closed-loop spatial multiplexing codebook (3GPP TS 36.211, Table
/// 6.3.4.2.3-2). The table's 1/sqrt(2) layer normalization is dropped so that
/// F^H F = I_2; a positive common scale cannot change which entry maximizes
/// capacity.
const Codebook& householder_codebook();

/// Fresh construction of the same codebook (no caching).
Codebook build_householder_codebook();

}  // namespace pmopi
