#include <gtest/gtest.h>

#include <Eigen/Dense>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "pmopi/codebook.hpp"
#include "pmopi/complex_matrix.hpp"
#include "pmopi/mimo.hpp"
#include "pmopi/random.hpp"

using namespace pmopi;

namespace {

const Complex j{0.0, 1.0};

// sum_i log2(1 + rho * lambda_i) over the eigenvalues of F^H H^H H F.
double eigen_capacity(const ComplexMatrix& h, const ComplexMatrix& f, double rho) {
  const ComplexMatrix g = f.adjoint() * h.adjoint() * h * f;
  Eigen::Matrix2cd m;
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) m(r, c) = g(static_cast<std::size_t>(r), static_cast<std::size_t>(c));
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> solver(m);
  double sum = 0.0;
  for (int i = 0; i < 2; ++i) sum += std::log2(1.0 + rho * std::max(0.0, solver.eigenvalues()(i)));
  return sum;
}

ComplexMatrix det_helper_h() { return ComplexMatrix(2, 4, {1.0, j, 0.0, 0.0, 0.0, 0.0, 1.0, -1.0}); }

}  // namespace

TEST(ComplexMatrix, RejectsBadShapesAndNonFinite) {
  EXPECT_THROW(ComplexMatrix(0, 2), std::invalid_argument);
  EXPECT_THROW(ComplexMatrix(2, 2, {1.0, 2.0, 3.0}), std::invalid_argument);
  EXPECT_THROW(ComplexMatrix(1, 1, {Complex(std::nan(""), 0.0)}), std::invalid_argument);
  EXPECT_THROW(ComplexMatrix(2, 3) * ComplexMatrix(2, 3), std::invalid_argument);
  EXPECT_THROW(ComplexMatrix(2, 2).at(2, 0), std::out_of_range);
}

TEST(ComplexMatrix, AdjointAndProduct) {
  const ComplexMatrix a(2, 2, {1.0, j, 2.0, 3.0});
  const ComplexMatrix ah = a.adjoint();
  EXPECT_EQ(ah(0, 1), Complex(2.0, 0.0));
  EXPECT_EQ(ah(1, 0), -j);
  const ComplexMatrix p = a * ComplexMatrix::identity(2);
  EXPECT_EQ(p, a);
  EXPECT_DOUBLE_EQ((a * ah)(0, 0).real(), 2.0);
}

TEST(Codebook, SixteenOrthonormalFourByTwoPrecoders) {
  const Codebook& cb = householder_codebook();
  ASSERT_EQ(cb.size(), 16u);
  for (const auto& f : cb.precoders()) {
    ASSERT_EQ(f.rows(), 4u);
    ASSERT_EQ(f.cols(), 2u);
    EXPECT_LT(orthonormality_error(f), 1e-12);
  }
}

TEST(Codebook, DeterministicConstruction) {
  const Codebook a = build_householder_codebook();
  const Codebook b = build_householder_codebook();
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(a[i], b[i]);
}

TEST(Codebook, HouseholderAllOnesFirstRow) {
  const std::array<Complex, 4> u{1.0, 1.0, 1.0, 1.0};
  const ComplexMatrix w = householder_matrix(u);
  EXPECT_NEAR(w(0, 0).real(), 0.5, 1e-15);
  for (std::size_t c = 1; c < 4; ++c) EXPECT_NEAR(w(0, c).real(), -0.5, 1e-15);
}

// Entries frozen from an independent numpy construction of the same table.
TEST(Codebook, FirstPrecodersMatchOracle) {
  const Codebook& cb = householder_codebook();
  const ComplexMatrix w0(4, 2, {0.5, 0.5, 0.5, -0.5, 0.5, -0.5, 0.5, 0.5});
  const ComplexMatrix w1(4, 2, {0.5, -0.5 * j, 0.5 * j, 0.5, -0.5, -0.5 * j, -0.5 * j, 0.5});
  EXPECT_LT(cb[0].max_abs_diff(w0), 1e-15);
  EXPECT_LT(cb[1].max_abs_diff(w1), 1e-15);
}

TEST(Codebook, RejectsNonOrthonormalOrMixedShapes) {
  EXPECT_THROW(Codebook({ComplexMatrix(4, 2)}), std::invalid_argument);
  EXPECT_THROW(Codebook({}), std::invalid_argument);
  EXPECT_THROW(Codebook({ComplexMatrix::identity(4).columns(0, 2), ComplexMatrix::identity(3).columns(0, 2)}),
               std::invalid_argument);
}

TEST(Snr, Validation) {
  EXPECT_THROW(Snr{0.0}, std::invalid_argument);
  EXPECT_THROW(Snr{-1.0}, std::invalid_argument);
  EXPECT_THROW(Snr{std::numeric_limits<double>::infinity()}, std::invalid_argument);
  EXPECT_NEAR(Snr::from_db(10.0).linear(), 10.0, 1e-12);
  EXPECT_THROW(Pmi(16), std::out_of_range);
}

TEST(Capacity, IdentityChannelClosedForm) {
  const ComplexMatrix h = ComplexMatrix::identity(4).columns(0, 2).adjoint();
  const ComplexMatrix f = ComplexMatrix::identity(4).columns(0, 2);
  EXPECT_NEAR(capacity(h, f, Snr(10.0)), 6.918863237274595, 1e-12);
}

TEST(Capacity, FrozenNumpyExample) {
  EXPECT_NEAR(capacity(det_helper_h(), householder_codebook()[0], Snr(10.0)), 6.149747119504682, 1e-12);
}

TEST(Capacity, ZeroChannelIsZero) {
  EXPECT_EQ(capacity(ComplexMatrix(2, 4), householder_codebook()[3], Snr(10.0)), 0.0);
}

TEST(Capacity, ShapeErrors) {
  EXPECT_THROW(capacity(ComplexMatrix(2, 3), householder_codebook()[0], Snr(1.0)), std::invalid_argument);
  EXPECT_THROW(capacity(ComplexMatrix(2, 4), ComplexMatrix(4, 1), Snr(1.0)), std::invalid_argument);
}

TEST(Capacity, MatchesEigenvalueOracle) {
  Rng rng(42);
  const Codebook& cb = householder_codebook();
  for (int i = 0; i < 1000; ++i) {
    const ComplexMatrix h = gaussian_matrix(rng, 2, 4);
    const std::size_t k = rng() % 16;
    const double rho = std::pow(10.0, std::uniform_real_distribution<double>(-2.0, 3.0)(rng));
    const double expected = eigen_capacity(h, cb[k], rho);
    const double got = capacity(h, cb[k], Snr(rho));
    EXPECT_LE(std::abs(got - expected), 1e-9 * std::max(1.0, std::abs(expected))) << "sample " << i;
  }
}

TEST(Capacity, DeterminantIdentityBothOrders) {
  // det(I2 + rho F^H H^H H F) == det(I2 + rho H F F^H H^H) for the 2x2 sizes here.
  Rng rng(7);
  for (int i = 0; i < 200; ++i) {
    const ComplexMatrix h = gaussian_matrix(rng, 2, 4);
    const ComplexMatrix f = householder_codebook()[i % 16];
    const ComplexMatrix b = h * f * f.adjoint() * h.adjoint();
    const Complex det = (1.0 + 3.0 * b(0, 0)) * (1.0 + 3.0 * b(1, 1)) - 9.0 * b(0, 1) * b(1, 0);
    EXPECT_NEAR(capacity(h, f, Snr(3.0)), std::log2(det.real()), 1e-9);
  }
}

TEST(Capacity, MonotoneInRhoNonNegativePhaseInvariant) {
  Rng rng(11);
  for (int i = 0; i < 200; ++i) {
    const ComplexMatrix h = gaussian_matrix(rng, 2, 4);
    const ComplexMatrix& f = householder_codebook()[i % 16];
    const double lo = capacity(h, f, Snr(1.0));
    const double hi = capacity(h, f, Snr(2.0));
    EXPECT_GE(lo, 0.0);
    EXPECT_GT(hi, lo);
    const Complex phase = std::polar(1.0, uniform_phase(rng));
    EXPECT_NEAR(capacity(phase * h, f, Snr(1.0)), lo, 1e-12);
    EXPECT_NEAR(capacity(h, phase * f, Snr(1.0)), lo, 1e-12);
  }
}

TEST(SelectPmi, ArgmaxOverCodebook) {
  // Independent numpy capacities put the maximum at indices 2, 3 and 12.
  const Pmi p = select_pmi(det_helper_h(), Snr(10.0), householder_codebook());
  EXPECT_TRUE(p.index() == 2 || p.index() == 3 || p.index() == 12);
  EXPECT_NEAR(capacity(det_helper_h(), householder_codebook()[p.index()], Snr(10.0)), 7.851749, 1e-6);
}

TEST(SelectPmi, TiesGoToLowestIndex) {
  EXPECT_EQ(select_pmi(ComplexMatrix(2, 4), Snr(10.0), householder_codebook()).index(), 0u);
  const ComplexMatrix f = householder_codebook()[5];
  const Codebook twins({householder_codebook()[1], f, f});
  Rng rng(3);
  for (int i = 0; i < 50; ++i) {
    const Pmi p = select_pmi(gaussian_matrix(rng, 2, 4), Snr(10.0), twins);
    EXPECT_NE(p.index(), 2u);
  }
}

TEST(RandomUnitary, IsUnitaryAndSeeded) {
  Rng a(5), b(5);
  for (int i = 0; i < 100; ++i) {
    const ComplexMatrix u = random_unitary(a, 4);
    EXPECT_LT(orthonormality_error(u), 1e-12);
    EXPECT_LT(orthonormality_error(u.adjoint()), 1e-12);
    EXPECT_EQ(u, random_unitary(b, 4));
  }
}

TEST(Rotation, RotatedCapacityEqualsCapacityOfUF) {
  Rng rng(99);
  const Codebook& cb = householder_codebook();
  for (int i = 0; i < 1000; ++i) {
    const ComplexMatrix h = gaussian_matrix(rng, 2, 4);
    const ComplexMatrix u = random_unitary(rng, 4);
    const ComplexMatrix& f = cb[i % 16];
    EXPECT_NEAR(rotated_capacity(h, f, u, Snr(10.0)), capacity(h, u * f, Snr(10.0)), 1e-9);
  }
}

TEST(Rotation, IdentityRotationEqualsPlainSelection) {
  Rng rng(4);
  const ComplexMatrix id = ComplexMatrix::identity(4);
  for (int i = 0; i < 200; ++i) {
    const ComplexMatrix h = gaussian_matrix(rng, 2, 4);
    EXPECT_EQ(select_pmi_rotated(h, id, Snr(10.0), householder_codebook()),
              select_pmi(h, Snr(10.0), householder_codebook()));
  }
}

TEST(Rotation, RejectsNonUnitary) {
  ComplexMatrix u = ComplexMatrix::identity(4);
  u(0, 0) = 1.1;
  EXPECT_THROW(rotated_capacity(ComplexMatrix(2, 4), householder_codebook()[0], u, Snr(1.0)),
               std::invalid_argument);
  EXPECT_THROW(select_pmi_rotated(ComplexMatrix(2, 4), u, Snr(1.0), householder_codebook()),
               std::invalid_argument);
}

TEST(Random, DeriveStreamIsPathSensitive) {
  Rng a = derive_stream(1, {2, 3});
  Rng b = derive_stream(1, {2, 3});
  Rng c = derive_stream(1, {3, 2});
  const auto x = a();
  EXPECT_EQ(x, b());
  EXPECT_NE(x, c());
}

TEST(Random, ComplexGaussianVariance) {
  Rng rng(8);
  double sum = 0.0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) sum += std::norm(complex_gaussian(rng, 2.0));
  EXPECT_NEAR(sum / n, 2.0, 0.02);
}
