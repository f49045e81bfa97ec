#include "pmopi/mimo.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace pmopi {

namespace {

constexpr double kUnitaryTolerance = 1e-6;

void require_capacity_shapes(const ComplexMatrix& h, const ComplexMatrix& f) {
  if (f.cols() != 2) throw std::invalid_argument("capacity: precoder must have 2 columns");
  if (h.cols() != f.rows()) throw std::invalid_argument("capacity: H columns must equal F rows");
  if (!h.is_finite() || !f.is_finite()) throw std::invalid_argument("capacity: non-finite input");
}

void require_unitary(const ComplexMatrix& u, std::size_t n) {
  if (u.rows() != n || u.cols() != n) throw std::invalid_argument("rotation: U must be square and match H columns");
  if (!u.is_finite() || orthonormality_error(u) > kUnitaryTolerance) {
    throw std::invalid_argument("rotation: U is not unitary");
  }
}

// Shapes already validated.
double capacity_unchecked(const ComplexMatrix& h, const ComplexMatrix& f, double rho) {
  // G = HF is r x 2; M = I + rho G^H G.
  Complex g00 = 0.0, g11 = 0.0, g01 = 0.0;
  for (std::size_t r = 0; r < h.rows(); ++r) {
    Complex a = 0.0, b = 0.0;
    for (std::size_t k = 0; k < h.cols(); ++k) {
      a += h(r, k) * f(k, 0);
      b += h(r, k) * f(k, 1);
    }
    g00 += std::conj(a) * a;
    g11 += std::conj(b) * b;
    g01 += std::conj(a) * b;
  }
  const Complex m00 = 1.0 + rho * g00;
  const Complex m11 = 1.0 + rho * g11;
  const Complex m01 = rho * g01;
  const Complex m10 = std::conj(m01);
  const Complex det = m00 * m11 - m01 * m10;
  // det is real up to rounding for a Hermitian M; the imaginary residue is dropped.
  return std::max(0.0, std::log2(det.real()));
}

}  // namespace

Snr::Snr(double rho) : rho_(rho) {
  if (!std::isfinite(rho) || !(rho > 0.0)) throw std::invalid_argument("Snr: rho must be finite and positive");
}

Snr Snr::from_db(double db) { return Snr(std::pow(10.0, db / 10.0)); }

double Snr::db() const noexcept { return 10.0 * std::log10(rho_); }

Pmi::Pmi(std::size_t index) : index_(index) {
  if (index >= (std::size_t{1} << kBits)) throw std::out_of_range("Pmi: index outside 4-bit range");
}

double capacity(const ComplexMatrix& h, const ComplexMatrix& f, Snr snr) {
  require_capacity_shapes(h, f);
  return capacity_unchecked(h, f, snr.linear());
}

double rotated_capacity(const ComplexMatrix& h, const ComplexMatrix& f, const ComplexMatrix& u, Snr snr) {
  require_unitary(u, h.cols());
  return capacity(h * u, f, snr);
}

Pmi select_pmi(const ComplexMatrix& h, Snr snr, const Codebook& codebook) {
  require_capacity_shapes(h, codebook[0]);
  std::size_t best = 0;
  double best_value = capacity_unchecked(h, codebook[0], snr.linear());
  for (std::size_t i = 1; i < codebook.size(); ++i) {
    const double value = capacity_unchecked(h, codebook[i], snr.linear());
    if (value > best_value) {
      best = i;
      best_value = value;
    }
  }
  return Pmi(best);
}

Pmi select_pmi_rotated(const ComplexMatrix& h, const ComplexMatrix& u, Snr snr, const Codebook& codebook) {
  require_unitary(u, h.cols());
  return select_pmi(h * u, snr, codebook);
}

ComplexMatrix random_unitary(Rng& rng, std::size_t n) {
  if (n == 0) throw std::invalid_argument("random_unitary: n must be positive");
  ComplexMatrix q = gaussian_matrix(rng, n, n);

  // Modified Gram-Schmidt with one re-orthogonalization pass. R's diagonal is
  // the (real, positive) column norm, which is the phase normalization that
  // makes Q Haar distributed.
  for (std::size_t j = 0; j < n; ++j) {
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t i = 0; i < j; ++i) {
        Complex proj = 0.0;
        for (std::size_t r = 0; r < n; ++r) proj += std::conj(q(r, i)) * q(r, j);
        for (std::size_t r = 0; r < n; ++r) q(r, j) -= proj * q(r, i);
      }
    }
    double norm2 = 0.0;
    for (std::size_t r = 0; r < n; ++r) norm2 += std::norm(q(r, j));
    const double inv = 1.0 / std::sqrt(norm2);
    for (std::size_t r = 0; r < n; ++r) q(r, j) *= inv;
  }
  return q;
}

}  // namespace pmopi
