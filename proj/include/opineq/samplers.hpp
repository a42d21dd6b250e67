#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "opineq/bound_params.hpp"
#include "opineq/means_maps.hpp"
#include "opineq/spd.hpp"

namespace opineq {

using Rng = std::mt19937_64;

/// splitmix64 finalizer; used to derive independent stream seeds.
std::uint64_t mix_seed(std::uint64_t x);

/// Seed of the stream owned by (master, stream, index); every worker draws
/// from its own stream so results do not depend on scheduling.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream, std::uint64_t index);

/// Hypothesis chains under which the inequalities are stated.
enum class Regime {
  relative,           // mA <= B <= MA
  shifted,            // mI <= m'A <= B <= MI
  sandwich,           // mI <= A <= m'I <= M'I <= B <= MI
  self_inverse_low,   // mI <= m'A <= A^{-1} <= MI
  self_inverse_high,  // mI <= m'A^{-1} <= A <= MI
  plain,              // mI <= A <= MI
};

std::string_view regime_name(Regime regime);

struct Feasibility {
  bool ok = true;
  std::string reason;
};

/// Closed-form feasibility predicate of a regime over its parameters.
Feasibility check_feasible(Regime regime, const BoundParams& params);

/// Throws InfeasibleRegime with the reason when the predicate fails.
void require_feasible(Regime regime, const BoundParams& params);

enum class SelfInverseVariant { low, high };

/// Spectral window of A in a self-inverse regime:
///   low:  [max(m/m', 1/M), 1/sqrt(m')]
///   high: [sqrt(m'), min(m'/m, M)]
/// Throws InfeasibleRegime when empty.
SpectralInterval self_inverse_window(double m, double m_prime, double M, SelfInverseVariant variant);

/// Column-orthonormal pair with orthogonal ranges.
struct IsometryPair {
  Matrix x;
  Matrix y;
};

/// Haar orthogonal matrix: QR of a Gaussian matrix with the signs of R's
/// diagonal moved into Q.
Matrix haar_orthogonal(int n, Rng& rng);

/// Eigenvalues uniform in [lo, hi] with the extremes pinned to lo and hi
/// (dim >= 2), Haar eigenvectors.
SpdMatrix sample_spd(int dim, SpectralInterval interval, Rng& rng);

/// A ~ sample_spd(dim, [1, 4]); B = A^{1/2} C A^{1/2} with C ~ sample_spd(dim, [m, M]).
std::pair<SpdMatrix, SpdMatrix> sample_relative_pair(int dim, double m, double M, Rng& rng);

/// Deterministic core of sample_relative_pair for a given A and C.
SpdMatrix relative_partner(const SpdMatrix& a, const SpdMatrix& c);

struct ShiftedPair {
  SpdMatrix a;
  SpdMatrix b;
  double t;
};

/// A ~ sample_spd(dim, [m/m', M/m']), t ~ U(0, 1], B = (1 - t) m'A + tMI.
ShiftedPair sample_shifted_pair(int dim, double m, double m_prime, double M, Rng& rng);

/// (1 - t) m'A + tMI
SpdMatrix shifted_partner(const SpdMatrix& a, double m_prime, double M, double t);

/// A ~ sample_spd(dim, [m, m']), B ~ sample_spd(dim, [M', M]).
std::pair<SpdMatrix, SpdMatrix> sample_sandwich_pair(int dim, const BoundParams& params, Rng& rng);

SpdMatrix sample_self_inverse(int dim, double m, double m_prime, double M,
                              SelfInverseVariant variant, Rng& rng);

/// First r and last r columns of a Haar orthogonal n x n matrix.
IsometryPair sample_orthogonal_isometries(int n, int r, Rng& rng);

/// First r and last r columns of the given orthogonal matrix.
IsometryPair isometries_from(const Matrix& orthogonal, int r);

Vector sample_unit_vector(int dim, Rng& rng);

/// U_j = D_j Q with Q Haar orthogonal and diagonal D_j >= 0, sum_j D_j^2 = I.
std::vector<Matrix> sample_congruence_family(int n, int k, Rng& rng);

/// Random member of the given catalog kind acting on n x n matrices.
PositiveMapSpec sample_map(MapKind kind, int n, Rng& rng);

/// Random positive semidefinite matrix, eigenvalues uniform in [0, hi];
/// with `singular` the smallest eigenvalue is pinned to 0.
Matrix sample_psd(int dim, double hi, bool singular, Rng& rng);

}  // namespace opineq
