#pragma once

#include <Eigen/Dense>

namespace opineq {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Default relative tolerance for Loewner comparisons.
inline constexpr double kDefaultTol = 1e-8;

/// Dense real symmetric positive-definite matrix with a cached
/// eigendecomposition (eigenvalues ascending, orthonormal eigenvectors).
/// Immutable after construction.
class SpdMatrix {
 public:
  /// Symmetrizes `raw` and checks positive definiteness.
  static SpdMatrix from_raw(const Matrix& raw);

  /// Builds Q diag(eigenvalues) Q^T; `eigenvectors` must be orthogonal.
  /// The cached spectrum is the one supplied (sorted), not a recomputation.
  static SpdMatrix from_spectrum(const Vector& eigenvalues, const Matrix& eigenvectors);

  static SpdMatrix identity(int dim);
  static SpdMatrix scaled_identity(int dim, double value);
  static SpdMatrix diagonal(const Vector& diag);

  int dim() const { return static_cast<int>(entries_.rows()); }
  const Matrix& matrix() const { return entries_; }
  const Vector& eigenvalues() const { return eigenvalues_; }
  const Matrix& eigenvectors() const { return eigenvectors_; }
  double min_eigenvalue() const { return eigenvalues_(0); }
  double max_eigenvalue() const { return eigenvalues_(eigenvalues_.size() - 1); }

 private:
  SpdMatrix(Matrix entries, Vector eigenvalues, Matrix eigenvectors);

  Matrix entries_;
  Vector eigenvalues_;
  Matrix eigenvectors_;
};

/// Outcome of a single order comparison LHS <= RHS.
struct CheckVerdict {
  bool holds = true;
  /// Smallest eigenvalue of RHS - LHS (or RHS - LHS for scalars).
  double min_gap_eig = 0.0;
  /// min_gap_eig divided by the comparison scale (normally ||RHS||).
  double rel_slack = 0.0;
  /// Absolute threshold applied: holds iff min_gap_eig >= -tol_used.
  double tol_used = 0.0;
};

struct SpectralInterval {
  double lo = 1.0;
  double hi = 1.0;

  /// Throws InvalidArgument unless 0 < lo <= hi.
  static SpectralInterval make(double lo, double hi);
  bool contains(double value, double rel_tol = 0.0) const;
};

enum class MatrixFunction { sqrt, inv, inv_sqrt, square, log };

SpdMatrix make_spd(const Matrix& raw);

/// Q f(Lambda) Q^T from the cached eigendecomposition.
Matrix matrix_function(const SpdMatrix& a, MatrixFunction f);

/// Same as matrix_function, but keeps the SPD structure. `log` is rejected.
SpdMatrix spd_function(const SpdMatrix& a, MatrixFunction f);

inline SpdMatrix spd_sqrt(const SpdMatrix& a) { return spd_function(a, MatrixFunction::sqrt); }
inline SpdMatrix spd_inverse(const SpdMatrix& a) { return spd_function(a, MatrixFunction::inv); }
inline SpdMatrix spd_inv_sqrt(const SpdMatrix& a) { return spd_function(a, MatrixFunction::inv_sqrt); }

/// (X + X^T) / 2
Matrix symmetrize(const Matrix& x);

/// Eigenvalues of sym(x), ascending.
Vector symmetric_eigenvalues(const Matrix& x);

/// Largest absolute eigenvalue of a symmetric matrix.
double operator_norm(const Matrix& symmetric);

/// Largest singular value of an arbitrary matrix.
double spectral_norm(const Matrix& general);

/// Verdict of A <= B. The comparison scale is ||B||, floored at
/// 64 eps * `reference` so that a bound whose constant vanishes (B = 0)
/// still tolerates roundoff of the size of the unscaled quantity.
CheckVerdict loewner_leq(const Matrix& a, const Matrix& b, double tol = kDefaultTol,
                         double reference = 0.0);

/// Scalar analogue of loewner_leq.
CheckVerdict scalar_leq(double lhs, double rhs, double tol = kDefaultTol, double reference = 0.0);

/// lambda_max(RHS^{-1/2} LHS RHS^{-1/2}) for RHS positive definite: the
/// smallest c with LHS <= c RHS.
double loewner_ratio(const Matrix& lhs, const Matrix& rhs);

SpectralInterval spectral_bounds(const SpdMatrix& a);

/// Throws DimensionMismatch when the shapes differ or are not square.
void require_same_square(const Matrix& a, const Matrix& b, const char* what);

}  // namespace opineq
