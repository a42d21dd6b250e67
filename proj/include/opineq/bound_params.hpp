#pragma once

namespace opineq {

/// Kantorovich constant K(h) = (h + 1)^2 / (4h).
double kantorovich_constant(double h);

/// Refinement divisor 1 + (ln c)^2 / 8 (natural logarithm).
double refinement_factor(double c);

/// Scalar regime (m, m', M', M) shared by every hypothesis chain. Regimes
/// that do not use m' or M' carry m' = m and/or M' = M.
struct BoundParams {
  double m = 1.0;
  double m_prime = 1.0;
  double M_prime = 1.0;
  double M = 1.0;

  /// Throws InvalidArgument unless all four values are finite and positive.
  static BoundParams make(double m, double m_prime, double M_prime, double M);
  /// Two-parameter regimes (plain, relative).
  static BoundParams pair(double m, double M) { return make(m, m, M, M); }
  /// Three-parameter regimes (shifted, self-inverse).
  static BoundParams triple(double m, double m_prime, double M) { return make(m, m_prime, M, M); }

  double h() const { return M / m; }
  double K_h() const { return kantorovich_constant(h()); }

  friend bool operator==(const BoundParams&, const BoundParams&) = default;
};

}  // namespace opineq
