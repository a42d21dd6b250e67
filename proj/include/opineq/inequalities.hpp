#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "opineq/bound_params.hpp"
#include "opineq/means_maps.hpp"
#include "opineq/samplers.hpp"
#include "opineq/spd.hpp"

namespace opineq {

/// Stable identifiers; the string forms are part of the CLI and report formats.
enum class TheoremId {
  scalar_amgm,
  lemma_amgm,
  kantorovich,
  kantorovich_product,
  holder_mccarthy,
  square_order,
  polya_szego,
  isometry_family,
  lin_squared_mapped,
  lin_squared_means,
  lin_chain,
  wielandt_scalar,
  wielandt_bhatia_davis,
  wielandt_gumus,
  wielandt_refined,
  choi,
  norm_amgm,
};

std::string_view theorem_name(TheoremId id);
std::optional<TheoremId> parse_theorem(std::string_view name);
const std::vector<TheoremId>& all_theorems();

/// Hypothesis regime the theorem's refined statement is checked under.
Regime theorem_regime(TheoremId id);

/// Relative tolerance used when validating that an instance lies in its regime.
inline constexpr double kRegimeTol = 1e-9;

struct Fingerprint {
  std::uint64_t seed = 0;
  int dim = 0;
  BoundParams params;
  std::uint64_t sample_index = 0;
};

struct NamedVerdict {
  std::string name;
  CheckVerdict verdict;
};

/// One checked inequality "LHS <= constant * RHS".
///
/// `verdict` is the refined bound (or the only bound when the inequality has
/// no refinement); `classical` is the unrefined baseline on the same data.
/// `ratio` is the attained LHS/RHS: a plain quotient for scalar bounds, and
/// lambda_max(RHS^{-1/2} LHS RHS^{-1/2}) for Loewner bounds.
struct IneqRecord {
  TheoremId theorem = TheoremId::scalar_amgm;
  std::string label;
  std::string lhs_desc;
  std::string rhs_desc;
  double lhs_value = 0.0;
  double rhs_value = 0.0;

  CheckVerdict verdict;
  double ratio = 0.0;

  std::optional<CheckVerdict> classical;
  double classical_ratio = 0.0;

  // Informational comparison (the conjectured Wielandt constant); never
  // counted as a violation.
  std::optional<CheckVerdict> conjecture;
  double conjecture_ratio = 0.0;

  // Derived preconditions checked alongside the bound; counted.
  std::vector<NamedVerdict> side_checks;

  double classical_rhs_scale = 1.0;
  double refined_rhs_scale = 1.0;
  double improvement_ratio = 1.0;
  bool near_tight = false;
  Fingerprint fingerprint;

  bool refined_holds() const;
  bool classical_holds() const;
  bool all_hold() const { return refined_holds() && classical_holds(); }
  /// Smallest rel_slack over every counted verdict.
  double min_rel_slack() const;
  /// Largest attained ratio over the counted bounds.
  double max_ratio() const;
};

// ---------------------------------------------------------------------------
// Scalar AM-GM refinement.

/// (1 + (ln b - ln a)^2 / 8) sqrt(ab) <= (a + b) / 2
IneqRecord scalar_refined_amgm(double a, double b, double tol = kDefaultTol);

/// Constrained form: for 1 < m with ma <= b,
/// (1 + (ln m)^2 / 8) sqrt(ab) <= (a + b) / 2.
IneqRecord scalar_refined_amgm_bounded(double a, double b, double m, double tol = kDefaultTol);

// ---------------------------------------------------------------------------
// Kantorovich family.

/// (1 + (ln m)^2 / 8) A#B <= (A + B) / 2 under mA <= B, 1 < m.
IneqRecord check_lemma_refined_amgm(const SpdMatrix& a, const SpdMatrix& b, double m,
                                    double tol = kDefaultTol);

/// <Ax,x><A^{-1}x,x> <= (M+m)^2 / (4Mm) under mI <= A <= MI.
IneqRecord check_kantorovich_classical(const SpdMatrix& a, const Vector& x, double m, double M,
                                       double tol = kDefaultTol);

/// <Ax,x><Bx,x> <= K(h) / R(m')^2 <A#Bx,x>^2 under mI <= m'A <= B <= MI.
/// Both sides are homogeneous of degree two in (A, B).
IneqRecord check_kantorovich_product_refined(const SpdMatrix& a, const SpdMatrix& b,
                                             const Vector& x, const BoundParams& params,
                                             double tol = kDefaultTol);

/// The unsquared reading <Ax,x><Bx,x> <= K(h) / R(m')^2 <A#Bx,x>; kept only
/// to demonstrate that it is not scale invariant.
IneqRecord check_kantorovich_product_literal(const SpdMatrix& a, const SpdMatrix& b,
                                             const Vector& x, const BoundParams& params,
                                             double tol = kDefaultTol);

/// <Ax,x><A^{-1}x,x> <= K(h) / R(m')^2 under mI <= m'A <= A^{-1} <= MI.
IneqRecord check_kantorovich_refined(const SpdMatrix& a, const Vector& x, double m,
                                     double m_prime, double M, double tol = kDefaultTol);

/// <A^2x,x> <= K(h) / R(m')^2 <Ax,x>^2 under mI <= m'A <= A^{-1} <= MI.
IneqRecord check_holder_mccarthy_refined(const SpdMatrix& a, const Vector& x,
                                         const BoundParams& params, double tol = kDefaultTol);

/// A^2 <= K(h) / R(m')^2 B^2 under mI <= m'A <= A^{-1} <= MI and A <= B.
IneqRecord check_square_order_refined(const SpdMatrix& a, const SpdMatrix& b,
                                      const BoundParams& params, double tol = kDefaultTol);

/// Phi(A)#Phi(B) <= sqrt(K(h)) / R(m') Phi(A#B) under mI <= m'A <= B <= MI.
IneqRecord check_polya_szego_refined(const PositiveMapSpec& spec, const SpdMatrix& a,
                                     const SpdMatrix& b, const BoundParams& params,
                                     double tol = kDefaultTol);

/// (sum U_j^T A U_j) # (sum U_j^T A^{-1} U_j) <= sqrt(K(h)) / R(m') I
/// under mI <= m'A <= A^{-1} <= MI.
IneqRecord check_isometry_family_bound(const std::vector<Matrix>& family, const SpdMatrix& a,
                                       const BoundParams& params, double tol = kDefaultTol);

// ---------------------------------------------------------------------------
// Squared reverse AM-GM for positive unital maps.

enum class LinVariant { mapped_mean, mean_of_maps };

/// Phi((A+B)/2)^2 <= K(h)^2 / R(M'/m')^2 Phi(A#B)^2            (mapped_mean)
/// Phi((A+B)/2)^2 <= K(h)^2 / R(M'/m')^2 (Phi(A)#Phi(B))^2     (mean_of_maps)
/// under mI <= A <= m'I <= M'I <= B <= MI.
IneqRecord check_lin_refined_squared(const PositiveMapSpec& spec, const SpdMatrix& a,
                                     const SpdMatrix& b, const BoundParams& params,
                                     LinVariant variant, double tol = kDefaultTol);

/// Every intermediate step of the squared bound, in order:
///   bound_a, bound_b, summed, inverse_mean_lemma, mean_plus_inverse_gm,
///   mapped_inverse_of_gm, mapped_gm_inverse, norm_lemma_step, norm_product.
std::vector<IneqRecord> check_lin_chain(const PositiveMapSpec& spec, const SpdMatrix& a,
                                        const SpdMatrix& b, const BoundParams& params,
                                        double tol = kDefaultTol);

// ---------------------------------------------------------------------------
// Wielandt family.

/// |<x,Ay>|^2 <= ((M-m)/(M+m))^2 <x,Ax><y,Ay> for orthonormal x, y.
IneqRecord check_wielandt_scalar(const SpdMatrix& a, const Vector& x, const Vector& y, double m,
                                 double M, double tol = kDefaultTol);

/// Degree-inconsistent variant |<x,Ay>|^2 <= ((M-m)/(M+m))^2 <x,Ay><y,Ay>.
IneqRecord check_wielandt_scalar_literal(const SpdMatrix& a, const Vector& x, const Vector& y,
                                         double m, double M, double tol = kDefaultTol);

enum class WielandtVariant { bhatia_davis, gumus, refined };

/// With P = Phi(X^T A Y), S_Y = Phi(Y^T A Y), S_X = Phi(X^T A X) and
/// T = P S_Y^{-1} Phi(Y^T A X):
///   bhatia_davis: T <= k^2 S_X                        (Loewner)
///   gumus:        ||T S_X^{-1}|| <= k^2 sqrt(K(h))
///   refined:      ||T S_X^{-1}|| <= k^2 sqrt(K(h)) / R(m')
/// with k = (M-m)/(M+m). The gumus and refined records also carry the
/// conjectured constant k^2 as an informational comparison.
IneqRecord check_wielandt_operator(const PositiveMapSpec& spec, const SpdMatrix& a,
                                   const IsometryPair& pair, const BoundParams& params,
                                   WielandtVariant variant, double tol = kDefaultTol);

// ---------------------------------------------------------------------------
// Auxiliary facts wrapped as records.

IneqRecord check_choi_record(const PositiveMapSpec& spec, const SpdMatrix& t,
                             double tol = kDefaultTol);
IneqRecord check_norm_amgm_record(const Matrix& a, const Matrix& b, double tol = kDefaultTol);

// ---------------------------------------------------------------------------
// Constants.

struct ConstantRow {
  std::string name;
  double classical = 0.0;
  double refined = 0.0;
  /// refined = classical / divisor, divisor = R(argument)^power.
  double divisor = 1.0;
  int power = 0;
  std::string argument_name;
  double argument = 1.0;
  double improvement_ratio = 1.0;
  /// Whether the parameters satisfy the regime this row belongs to.
  bool feasible = true;
};

struct ConstantsTable {
  BoundParams params;
  std::string log_base = "natural";
  std::vector<ConstantRow> rows;

  const ConstantRow* find(std::string_view name) const;
};

/// Classical constants of every bound and their refined counterparts.
/// Throws InfeasibleRegime when m > M.
ConstantsTable refinement_constants(const BoundParams& params);

}  // namespace opineq
