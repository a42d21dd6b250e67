#include "opineq/spd.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>
#include <vector>

#include "opineq/errors.hpp"

namespace opineq {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

double scale_with_floor(double norm, double reference) {
  return std::max(norm, 64.0 * kEps * reference);
}

}  // namespace

SpdMatrix::SpdMatrix(Matrix entries, Vector eigenvalues, Matrix eigenvectors)
    : entries_(std::move(entries)),
      eigenvalues_(std::move(eigenvalues)),
      eigenvectors_(std::move(eigenvectors)) {}

SpdMatrix SpdMatrix::from_raw(const Matrix& raw) {
  if (raw.rows() != raw.cols() || raw.rows() == 0) {
    throw DimensionMismatch("make_spd: expected a non-empty square matrix, got " +
                            std::to_string(raw.rows()) + "x" + std::to_string(raw.cols()));
  }
  if (!raw.allFinite()) throw InvalidArgument("make_spd: non-finite entries");
  Matrix sym = symmetrize(raw);
  Eigen::SelfAdjointEigenSolver<Matrix> es(sym);
  if (es.info() != Eigen::Success) throw NotPositiveDefinite("make_spd: eigensolver failed");
  if (es.eigenvalues()(0) <= 0.0) {
    throw NotPositiveDefinite("make_spd: smallest eigenvalue " +
                              std::to_string(es.eigenvalues()(0)) + " is not positive");
  }
  return SpdMatrix(std::move(sym), es.eigenvalues(), es.eigenvectors());
}

SpdMatrix SpdMatrix::from_spectrum(const Vector& eigenvalues, const Matrix& eigenvectors) {
  const auto n = eigenvalues.size();
  if (eigenvectors.rows() != n || eigenvectors.cols() != n || n == 0) {
    throw DimensionMismatch("from_spectrum: eigenvector matrix must be n x n");
  }
  if ((eigenvalues.array() <= 0.0).any()) {
    throw NotPositiveDefinite("from_spectrum: non-positive eigenvalue");
  }
  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index i, Eigen::Index j) { return eigenvalues(i) < eigenvalues(j); });
  Vector sorted(n);
  Matrix q(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    sorted(k) = eigenvalues(order[static_cast<std::size_t>(k)]);
    q.col(k) = eigenvectors.col(order[static_cast<std::size_t>(k)]);
  }
  Matrix entries = symmetrize(q * sorted.asDiagonal() * q.transpose());
  return SpdMatrix(std::move(entries), std::move(sorted), std::move(q));
}

SpdMatrix SpdMatrix::identity(int dim) { return scaled_identity(dim, 1.0); }

SpdMatrix SpdMatrix::scaled_identity(int dim, double value) {
  return from_spectrum(Vector::Constant(dim, value), Matrix::Identity(dim, dim));
}

SpdMatrix SpdMatrix::diagonal(const Vector& diag) {
  return from_spectrum(diag, Matrix::Identity(diag.size(), diag.size()));
}

SpectralInterval SpectralInterval::make(double lo, double hi) {
  if (!(lo > 0.0) || !(hi >= lo) || !std::isfinite(hi)) {
    throw InvalidArgument("spectral interval needs 0 < lo <= hi, got [" + std::to_string(lo) +
                          ", " + std::to_string(hi) + "]");
  }
  return SpectralInterval{lo, hi};
}

bool SpectralInterval::contains(double value, double rel_tol) const {
  return value >= lo * (1.0 - rel_tol) && value <= hi * (1.0 + rel_tol);
}

SpdMatrix make_spd(const Matrix& raw) { return SpdMatrix::from_raw(raw); }

namespace {

double apply_scalar(MatrixFunction f, double x) {
  switch (f) {
    case MatrixFunction::sqrt:
      return std::sqrt(x);
    case MatrixFunction::inv:
      return 1.0 / x;
    case MatrixFunction::inv_sqrt:
      return 1.0 / std::sqrt(x);
    case MatrixFunction::square:
      return x * x;
    case MatrixFunction::log:
      return std::log(x);
  }
  return x;
}

}  // namespace

Matrix matrix_function(const SpdMatrix& a, MatrixFunction f) {
  const Vector fx = a.eigenvalues().unaryExpr([f](double x) { return apply_scalar(f, x); });
  const Matrix& q = a.eigenvectors();
  return symmetrize(q * fx.asDiagonal() * q.transpose());
}

SpdMatrix spd_function(const SpdMatrix& a, MatrixFunction f) {
  if (f == MatrixFunction::log) {
    throw InvalidArgument("spd_function: log of an SPD matrix need not be positive definite");
  }
  const Vector fx = a.eigenvalues().unaryExpr([f](double x) { return apply_scalar(f, x); });
  return SpdMatrix::from_spectrum(fx, a.eigenvectors());
}

Matrix symmetrize(const Matrix& x) { return 0.5 * (x + x.transpose()); }

Vector symmetric_eigenvalues(const Matrix& x) {
  if (x.rows() != x.cols()) throw DimensionMismatch("symmetric_eigenvalues: non-square input");
  Eigen::SelfAdjointEigenSolver<Matrix> es(symmetrize(x), Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

double operator_norm(const Matrix& symmetric) {
  if (symmetric.size() == 0) return 0.0;
  return symmetric_eigenvalues(symmetric).cwiseAbs().maxCoeff();
}

double spectral_norm(const Matrix& general) {
  if (general.size() == 0) return 0.0;
  Eigen::JacobiSVD<Matrix> svd(general);
  return svd.singularValues()(0);
}

void require_same_square(const Matrix& a, const Matrix& b, const char* what) {
  if (a.rows() != a.cols() || b.rows() != b.cols() || a.rows() != b.rows()) {
    throw DimensionMismatch(std::string(what) + ": dimension mismatch (" +
                            std::to_string(a.rows()) + "x" + std::to_string(a.cols()) + " vs " +
                            std::to_string(b.rows()) + "x" + std::to_string(b.cols()) + ")");
  }
}

CheckVerdict loewner_leq(const Matrix& a, const Matrix& b, double tol, double reference) {
  require_same_square(a, b, "loewner_leq");
  CheckVerdict v;
  v.min_gap_eig = symmetric_eigenvalues(b - a)(0);
  const double scale = scale_with_floor(operator_norm(b), reference);
  v.tol_used = tol * scale;
  v.holds = v.min_gap_eig >= -v.tol_used;
  v.rel_slack = scale > 0.0 ? v.min_gap_eig / scale : v.min_gap_eig;
  return v;
}

CheckVerdict scalar_leq(double lhs, double rhs, double tol, double reference) {
  CheckVerdict v;
  v.min_gap_eig = rhs - lhs;
  const double scale = scale_with_floor(std::abs(rhs), reference);
  v.tol_used = tol * scale;
  v.holds = v.min_gap_eig >= -v.tol_used;
  v.rel_slack = scale > 0.0 ? v.min_gap_eig / scale : v.min_gap_eig;
  return v;
}

double loewner_ratio(const Matrix& lhs, const Matrix& rhs) {
  require_same_square(lhs, rhs, "loewner_ratio");
  Eigen::GeneralizedSelfAdjointEigenSolver<Matrix> ges(symmetrize(lhs), symmetrize(rhs),
                                                       Eigen::EigenvaluesOnly);
  if (ges.info() != Eigen::Success) {
    throw NotPositiveDefinite("loewner_ratio: right-hand side is not positive definite");
  }
  return ges.eigenvalues()(ges.eigenvalues().size() - 1);
}

SpectralInterval spectral_bounds(const SpdMatrix& a) {
  return SpectralInterval{a.min_eigenvalue(), a.max_eigenvalue()};
}

}  // namespace opineq
