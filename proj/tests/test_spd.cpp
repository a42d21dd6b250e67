#include <gtest/gtest.h>

#include <cmath>

#include "opineq/errors.hpp"
#include "opineq/spd.hpp"
#include "oracles.hpp"

using namespace opineq;

namespace {

Matrix m2(double a, double b, double c, double d) { return (Matrix(2, 2) << a, b, c, d).finished(); }

}  // namespace

TEST(MakeSpd, IdentityHasUnitSpectrum) {
  const SpdMatrix a = make_spd(Matrix::Identity(3, 3));
  EXPECT_EQ(a.dim(), 3);
  for (int i = 0; i < 3; ++i) EXPECT_DOUBLE_EQ(a.eigenvalues()(i), 1.0);
}

TEST(MakeSpd, DiagonalKeepsStandardBasis) {
  const SpdMatrix a = make_spd(m2(1, 0, 0, 4));
  EXPECT_DOUBLE_EQ(a.min_eigenvalue(), 1.0);
  EXPECT_DOUBLE_EQ(a.max_eigenvalue(), 4.0);
  EXPECT_NEAR(std::abs(a.eigenvectors()(0, 0)), 1.0, 1e-15);
  EXPECT_NEAR(std::abs(a.eigenvectors()(1, 1)), 1.0, 1e-15);
}

TEST(MakeSpd, TwoByTwoClosedForm) {
  // [[a, b], [b, a]] has eigenvalues a - b and a + b.
  const SpdMatrix a = make_spd(m2(2.3, 0.3, 0.3, 2.3));
  EXPECT_NEAR(a.min_eigenvalue(), 2.0, 1e-14);
  EXPECT_NEAR(a.max_eigenvalue(), 2.6, 1e-14);
}

TEST(MakeSpd, Rejections) {
  EXPECT_THROW(make_spd(Matrix::Zero(2, 3)), DimensionMismatch);
  EXPECT_THROW(make_spd(m2(1, 0, 0, 0)), NotPositiveDefinite);
  EXPECT_THROW(make_spd(m2(1, 2, 2, 1)), NotPositiveDefinite);
  EXPECT_THROW(make_spd(m2(1, 0, 0, -3)), NotPositiveDefinite);
}

TEST(MatrixFunction, DiagonalSqrt) {
  const Matrix s = matrix_function(make_spd(m2(4, 0, 0, 9)), MatrixFunction::sqrt);
  EXPECT_TRUE(s.isApprox(m2(2, 0, 0, 3), 1e-15));
}

TEST(MatrixFunction, AgreesWithDenmanBeavers) {
  std::mt19937_64 rng(5);
  for (int n : {2, 3, 5, 8}) {
    const Matrix q = oracle::random_orthogonal(n, rng);
    const Matrix raw = oracle::with_spectrum(Vector::LinSpaced(n, 0.5, 7.0), q);
    const SpdMatrix a = make_spd(raw);
    Matrix inv_sqrt;
    const Matrix s = oracle::sqrt_db(raw, &inv_sqrt);
    EXPECT_LT((matrix_function(a, MatrixFunction::sqrt) - s).norm(), 1e-12);
    EXPECT_LT((matrix_function(a, MatrixFunction::inv_sqrt) - inv_sqrt).norm(), 1e-12);
    EXPECT_LT((matrix_function(a, MatrixFunction::inv) * raw - Matrix::Identity(n, n)).norm(), 1e-10);
    EXPECT_LT((matrix_function(a, MatrixFunction::square) - raw * raw).norm(), 1e-11);
  }
}

TEST(MatrixFunction, LogOfIdentityIsZero) {
  EXPECT_LT(matrix_function(SpdMatrix::identity(3), MatrixFunction::log).norm(), 1e-15);
  EXPECT_THROW(spd_function(SpdMatrix::identity(2), MatrixFunction::log), InvalidArgument);
}

TEST(LoewnerLeq, ScalarExamples) {
  const Matrix i2 = Matrix::Identity(2, 2);
  CheckVerdict v = loewner_leq(i2, 2 * i2, 1e-9);
  EXPECT_TRUE(v.holds);
  EXPECT_NEAR(v.min_gap_eig, 1.0, 1e-15);
  v = loewner_leq(2 * i2, i2, 1e-9);
  EXPECT_FALSE(v.holds);
  EXPECT_NEAR(v.min_gap_eig, -1.0, 1e-15);
  const Matrix a = m2(2.3, 0.3, 0.3, 2.3);
  v = loewner_leq(a, a, 1e-9);
  EXPECT_TRUE(v.holds);
  EXPECT_EQ(v.min_gap_eig, 0.0);
}

TEST(LoewnerLeq, GapMatchesBisectionOracle) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 2 + trial % 5;
    const Matrix q1 = oracle::random_orthogonal(n, rng);
    const Matrix q2 = oracle::random_orthogonal(n, rng);
    const Matrix a = oracle::with_spectrum(Vector::LinSpaced(n, 1.0, 3.0), q1);
    const Matrix b = oracle::with_spectrum(Vector::LinSpaced(n, 1.5, 4.0), q2);
    const CheckVerdict v = loewner_leq(a, b);
    EXPECT_NEAR(v.min_gap_eig, oracle::min_eig(b - a), 1e-9);
    EXPECT_EQ(v.holds, oracle::min_eig(b - a) >= -v.tol_used);
  }
}

TEST(LoewnerLeq, ToleranceIsRelativeToRhs) {
  const Matrix i = Matrix::Identity(2, 2);
  EXPECT_TRUE(loewner_leq((1.0 + 5e-9) * 1e6 * i, 1e6 * i, 1e-8).holds);
  EXPECT_FALSE(loewner_leq((1.0 + 5e-8) * 1e6 * i, 1e6 * i, 1e-8).holds);
  EXPECT_THROW(loewner_leq(i, Matrix::Identity(3, 3)), DimensionMismatch);
}

TEST(Norms, OperatorNorm) {
  EXPECT_DOUBLE_EQ(operator_norm(Matrix::Identity(3, 3)), 1.0);
  EXPECT_DOUBLE_EQ(operator_norm(m2(1, 0, 0, -4)), 4.0);
  EXPECT_NEAR(operator_norm(m2(2.3, 0.3, 0.3, 2.3)), 2.6, 1e-14);
}

TEST(Norms, SpectralNormOfNonSymmetric) {
  // sqrt of the largest eigenvalue of X^T X, closed form for [[0, 2], [0, 0]].
  EXPECT_NEAR(spectral_norm(m2(0, 2, 0, 0)), 2.0, 1e-15);
  const Matrix x = m2(1, 2, 3, 4);
  const double oracle = std::sqrt(-oracle::min_eig(-(x.transpose() * x)));
  EXPECT_NEAR(spectral_norm(x), oracle, 1e-9);
}

TEST(SpectralBounds, Examples) {
  auto b = spectral_bounds(make_spd(m2(1, 0, 0, 4)));
  EXPECT_DOUBLE_EQ(b.lo, 1.0);
  EXPECT_DOUBLE_EQ(b.hi, 4.0);
  b = spectral_bounds(SpdMatrix::identity(2));
  EXPECT_DOUBLE_EQ(b.lo, 1.0);
  EXPECT_DOUBLE_EQ(b.hi, 1.0);
  b = spectral_bounds(make_spd(m2(2.3, 0.3, 0.3, 2.3)));
  EXPECT_NEAR(b.lo, 2.0, 1e-14);
  EXPECT_NEAR(b.hi, 2.6, 1e-14);
  EXPECT_THROW(SpectralInterval::make(2.0, 1.0), InvalidArgument);
  EXPECT_THROW(SpectralInterval::make(0.0, 1.0), InvalidArgument);
}

TEST(LoewnerRatio, ScaleFree) {
  const Matrix a = m2(2.3, 0.3, 0.3, 2.3);
  EXPECT_NEAR(loewner_ratio(a, a), 1.0, 1e-14);
  EXPECT_NEAR(loewner_ratio(0.5 * a, a), 0.5, 1e-14);
  EXPECT_NEAR(loewner_ratio(m2(1, 0, 0, 3), m2(2, 0, 0, 2)), 1.5, 1e-14);
}
