#include "pmopi/codebook.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace pmopi {

namespace {

constexpr double kInvSqrt2 = 1.0 / std::numbers::sqrt2;
constexpr Complex kJ{0.0, 1.0};

// 3GPP TS 36.211 Table 6.3.4.2.3-2, column u_n.
const std::array<std::array<Complex, 4>, 16>& generator_table() {
  static const std::array<std::array<Complex, 4>, 16> table{{
      {1.0, -1.0, -1.0, -1.0},
      {1.0, -kJ, 1.0, kJ},
      {1.0, 1.0, -1.0, 1.0},
      {1.0, kJ, 1.0, -kJ},
      {1.0, (-1.0 - kJ) * kInvSqrt2, -kJ, (1.0 - kJ) * kInvSqrt2},
      {1.0, (1.0 - kJ) * kInvSqrt2, kJ, (-1.0 - kJ) * kInvSqrt2},
      {1.0, (1.0 + kJ) * kInvSqrt2, -kJ, (-1.0 + kJ) * kInvSqrt2},
      {1.0, (-1.0 + kJ) * kInvSqrt2, kJ, (1.0 + kJ) * kInvSqrt2},
      {1.0, -1.0, 1.0, 1.0},
      {1.0, -kJ, -1.0, -kJ},
      {1.0, 1.0, 1.0, -1.0},
      {1.0, kJ, -1.0, kJ},
      {1.0, -1.0, -1.0, 1.0},
      {1.0, -1.0, 1.0, -1.0},
      {1.0, 1.0, -1.0, -1.0},
      {1.0, 1.0, 1.0, 1.0},
  }};
  return table;
}

// Same table, "number of layers = 2" column, as zero-based column indices of W_n.
constexpr std::array<std::array<std::size_t, 2>, 16> kRank2Columns{{
    {0, 3}, {0, 1}, {0, 1}, {0, 1}, {0, 3}, {0, 3}, {0, 2}, {0, 2},
    {0, 1}, {0, 3}, {0, 2}, {0, 2}, {0, 1}, {0, 2}, {0, 2}, {0, 1},
}};

}  // namespace

Codebook::Codebook(std::vector<ComplexMatrix> precoders) : precoders_(std::move(precoders)) {
  if (precoders_.empty()) throw std::invalid_argument("Codebook: no precoders");
  const std::size_t rows = precoders_.front().rows();
  for (const auto& f : precoders_) {
    if (f.rows() != rows || f.cols() != 2) {
      throw std::invalid_argument("Codebook: precoders must share an N x 2 shape");
    }
    if (orthonormality_error(f) > kOrthonormalTolerance) {
      throw std::invalid_argument("Codebook: precoder columns are not orthonormal");
    }
  }
}

Codebook Codebook::truncated(std::size_t count) const {
  if (count == 0 || count > precoders_.size()) throw std::out_of_range("Codebook::truncated");
  return Codebook(std::vector<ComplexMatrix>(precoders_.begin(), precoders_.begin() + count));
}

ComplexMatrix householder_matrix(std::span<const Complex> u) {
  const std::size_t n = u.size();
  double norm2 = 0.0;
  for (auto x : u) norm2 += std::norm(x);
  if (n == 0 || !(norm2 > 0.0)) throw std::invalid_argument("householder_matrix: zero vector");

  ComplexMatrix w = ComplexMatrix::identity(n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) w(r, c) -= 2.0 * u[r] * std::conj(u[c]) / norm2;
  }
  return w;
}

std::array<Complex, 4> householder_generator(std::size_t index) { return generator_table().at(index); }

std::array<std::size_t, 2> householder_rank2_columns(std::size_t index) { return kRank2Columns.at(index); }

Codebook build_householder_codebook() {
  std::vector<ComplexMatrix> precoders;
  precoders.reserve(Codebook::kHouseholderSize);
  for (std::size_t n = 0; n < Codebook::kHouseholderSize; ++n) {
    const auto u = householder_generator(n);
    const auto cols = householder_rank2_columns(n);
    precoders.push_back(householder_matrix(u).columns(cols));
  }
  return Codebook(std::move(precoders));
}

const Codebook& householder_codebook() {
  static const Codebook codebook = build_householder_codebook();
  return codebook;
}

}  // namespace pmopi
