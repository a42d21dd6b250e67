#include "opineq/samplers.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "opineq/errors.hpp"

namespace opineq {

namespace {

constexpr double kFeasibleTol = 1e-12;

double uniform(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

int uniform_int(Rng& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

Matrix gaussian_matrix(int rows, int cols, Rng& rng) {
  std::normal_distribution<double> normal;
  Matrix g(rows, cols);
  for (int j = 0; j < cols; ++j) {
    for (int i = 0; i < rows; ++i) g(i, j) = normal(rng);
  }
  return g;
}

bool leq_tol(double a, double b) { return a <= b * (1.0 + kFeasibleTol); }

std::string fmt(double v) { return std::to_string(v); }

}  // namespace

std::uint64_t mix_seed(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream, std::uint64_t index) {
  return mix_seed(mix_seed(mix_seed(master) ^ stream) ^ index);
}

std::string_view regime_name(Regime regime) {
  switch (regime) {
    case Regime::relative:
      return "relative";
    case Regime::shifted:
      return "shifted";
    case Regime::sandwich:
      return "sandwich";
    case Regime::self_inverse_low:
      return "self_inverse_low";
    case Regime::self_inverse_high:
      return "self_inverse_high";
    case Regime::plain:
      return "plain";
  }
  return "unknown";
}

Feasibility check_feasible(Regime regime, const BoundParams& p) {
  switch (regime) {
    case Regime::relative:
      if (!(p.m > 1.0)) return {false, "relative regime needs m > 1 (m = " + fmt(p.m) + ")"};
      if (!leq_tol(p.m, p.M)) return {false, "relative regime needs m <= M"};
      return {};
    case Regime::shifted:
      if (!(p.m_prime > 1.0)) {
        return {false, "shifted regime needs m' > 1 (m' = " + fmt(p.m_prime) + ")"};
      }
      if (!leq_tol(p.m, p.M)) return {false, "shifted regime needs m <= M"};
      return {};
    case Regime::sandwich:
      if (!leq_tol(p.m, p.m_prime)) return {false, "sandwich regime needs m <= m'"};
      if (!leq_tol(p.m_prime, p.M_prime)) return {false, "sandwich regime needs m' <= M'"};
      if (!leq_tol(p.M_prime, p.M)) return {false, "sandwich regime needs M' <= M"};
      return {};
    case Regime::self_inverse_low:
    case Regime::self_inverse_high: {
      if (!(p.m_prime > 1.0)) {
        return {false, std::string(regime_name(regime)) + " regime needs m' > 1 (m' = " +
                           fmt(p.m_prime) + ")"};
      }
      const double root = std::sqrt(p.m_prime);
      if (!leq_tol(p.m, root)) {
        return {false, "empty spectral window: m = " + fmt(p.m) + " exceeds sqrt(m') = " + fmt(root)};
      }
      if (!leq_tol(root, p.M)) {
        return {false, "empty spectral window: sqrt(m') = " + fmt(root) + " exceeds M = " + fmt(p.M)};
      }
      return {};
    }
    case Regime::plain:
      if (!leq_tol(p.m, p.M)) return {false, "plain regime needs m <= M"};
      return {};
  }
  return {false, "unknown regime"};
}

void require_feasible(Regime regime, const BoundParams& params) {
  const Feasibility f = check_feasible(regime, params);
  if (!f.ok) throw InfeasibleRegime(f.reason);
}

SpectralInterval self_inverse_window(double m, double m_prime, double M, SelfInverseVariant variant) {
  const auto regime =
      variant == SelfInverseVariant::low ? Regime::self_inverse_low : Regime::self_inverse_high;
  require_feasible(regime, BoundParams::triple(m, m_prime, M));
  double lo = 0.0;
  double hi = 0.0;
  if (variant == SelfInverseVariant::low) {
    lo = std::max(m / m_prime, 1.0 / M);
    hi = 1.0 / std::sqrt(m_prime);
  } else {
    lo = std::sqrt(m_prime);
    hi = std::min(m_prime / m, M);
  }
  // The predicate accepts boundary cases within kFeasibleTol.
  lo = std::min(lo, hi);
  return SpectralInterval::make(lo, hi);
}

Matrix haar_orthogonal(int n, Rng& rng) {
  if (n < 1) throw InvalidArgument("haar_orthogonal: n must be positive");
  Eigen::HouseholderQR<Matrix> qr(gaussian_matrix(n, n, rng));
  Matrix q = qr.householderQ();
  const Matrix& r = qr.matrixQR();
  for (int j = 0; j < n; ++j) {
    if (r(j, j) < 0.0) q.col(j) = -q.col(j);
  }
  return q;
}

SpdMatrix sample_spd(int dim, SpectralInterval interval, Rng& rng) {
  if (dim < 1) throw InvalidArgument("sample_spd: dim must be positive");
  interval = SpectralInterval::make(interval.lo, interval.hi);
  Vector eig(dim);
  for (int i = 0; i < dim; ++i) eig(i) = uniform(rng, interval.lo, interval.hi);
  eig(0) = interval.lo;
  if (dim >= 2) eig(dim - 1) = interval.hi;
  return SpdMatrix::from_spectrum(eig, haar_orthogonal(dim, rng));
}

SpdMatrix relative_partner(const SpdMatrix& a, const SpdMatrix& c) {
  if (a.dim() != c.dim()) throw DimensionMismatch("relative_partner: dimension mismatch");
  const Matrix half = matrix_function(a, MatrixFunction::sqrt);
  return make_spd(half * c.matrix() * half);
}

std::pair<SpdMatrix, SpdMatrix> sample_relative_pair(int dim, double m, double M, Rng& rng) {
  require_feasible(Regime::relative, BoundParams::pair(m, M));
  SpdMatrix a = sample_spd(dim, SpectralInterval{1.0, 4.0}, rng);
  const SpdMatrix c = sample_spd(dim, SpectralInterval::make(m, M), rng);
  SpdMatrix b = relative_partner(a, c);
  return {std::move(a), std::move(b)};
}

SpdMatrix shifted_partner(const SpdMatrix& a, double m_prime, double M, double t) {
  if (!(t >= 0.0 && t <= 1.0)) throw InvalidArgument("shifted_partner: t must lie in [0, 1]");
  const Matrix b = (1.0 - t) * m_prime * a.matrix() +
                   t * M * Matrix::Identity(a.dim(), a.dim());
  return make_spd(b);
}

ShiftedPair sample_shifted_pair(int dim, double m, double m_prime, double M, Rng& rng) {
  require_feasible(Regime::shifted, BoundParams::triple(m, m_prime, M));
  SpdMatrix a = sample_spd(dim, SpectralInterval::make(m / m_prime, M / m_prime), rng);
  const double t = 1.0 - uniform(rng, 0.0, 1.0);
  SpdMatrix b = shifted_partner(a, m_prime, M, t);
  return ShiftedPair{std::move(a), std::move(b), t};
}

std::pair<SpdMatrix, SpdMatrix> sample_sandwich_pair(int dim, const BoundParams& params, Rng& rng) {
  require_feasible(Regime::sandwich, params);
  SpdMatrix a = sample_spd(dim, SpectralInterval::make(params.m, params.m_prime), rng);
  SpdMatrix b = sample_spd(dim, SpectralInterval::make(params.M_prime, params.M), rng);
  return {std::move(a), std::move(b)};
}

SpdMatrix sample_self_inverse(int dim, double m, double m_prime, double M,
                              SelfInverseVariant variant, Rng& rng) {
  return sample_spd(dim, self_inverse_window(m, m_prime, M, variant), rng);
}

IsometryPair isometries_from(const Matrix& orthogonal, int r) {
  const auto n = orthogonal.rows();
  if (r < 1 || 2 * r > n) {
    throw InvalidArgument("isometries: need 1 <= r and 2r <= n (r = " + std::to_string(r) +
                          ", n = " + std::to_string(n) + ")");
  }
  return IsometryPair{orthogonal.leftCols(r), orthogonal.rightCols(r)};
}

IsometryPair sample_orthogonal_isometries(int n, int r, Rng& rng) {
  if (r < 1 || 2 * r > n) {
    throw InvalidArgument("sample_orthogonal_isometries: need 1 <= r and 2r <= n");
  }
  return isometries_from(haar_orthogonal(n, rng), r);
}

Vector sample_unit_vector(int dim, Rng& rng) {
  if (dim < 1) throw InvalidArgument("sample_unit_vector: dim must be positive");
  Vector x = gaussian_matrix(dim, 1, rng).col(0);
  const double norm = x.norm();
  if (norm == 0.0) return Vector::Unit(dim, 0);
  return x / norm;
}

std::vector<Matrix> sample_congruence_family(int n, int k, Rng& rng) {
  if (n < 1 || k < 1) throw InvalidArgument("sample_congruence_family: n and k must be positive");
  const Matrix q = haar_orthogonal(n, rng);
  Matrix weights(n, k);
  for (int i = 0; i < n; ++i) {
    double total = 0.0;
    for (int j = 0; j < k; ++j) {
      weights(i, j) = uniform(rng, 0.0, 1.0);
      total += weights(i, j);
    }
    if (total == 0.0) {
      weights.row(i).setZero();
      weights(i, 0) = 1.0;
      total = 1.0;
    }
    weights.row(i) /= total;
  }
  std::vector<Matrix> family;
  family.reserve(static_cast<std::size_t>(k));
  for (int j = 0; j < k; ++j) {
    family.emplace_back(weights.col(j).cwiseSqrt().asDiagonal() * q);
  }
  return family;
}

PositiveMapSpec sample_map(MapKind kind, int n, Rng& rng) {
  switch (kind) {
    case MapKind::identity:
      return PositiveMapSpec::identity(n);
    case MapKind::compression: {
      const int r = uniform_int(rng, 1, n);
      return PositiveMapSpec::compression(haar_orthogonal(n, rng).leftCols(r));
    }
    case MapKind::congruence_sum:
      return PositiveMapSpec::congruence_sum(sample_congruence_family(n, uniform_int(rng, 1, 3), rng));
    case MapKind::trace_normalize:
      return PositiveMapSpec::trace_normalize(n);
    case MapKind::pinching: {
      std::vector<int> perm(static_cast<std::size_t>(n));
      std::iota(perm.begin(), perm.end(), 0);
      std::shuffle(perm.begin(), perm.end(), rng);
      std::vector<std::vector<int>> blocks;
      std::size_t pos = 0;
      while (pos < perm.size()) {
        const auto remaining = static_cast<int>(perm.size() - pos);
        const auto len = static_cast<std::size_t>(uniform_int(rng, 1, remaining));
        blocks.emplace_back(perm.begin() + static_cast<std::ptrdiff_t>(pos),
                            perm.begin() + static_cast<std::ptrdiff_t>(pos + len));
        pos += len;
      }
      return PositiveMapSpec::pinching(n, std::move(blocks));
    }
  }
  return PositiveMapSpec::identity(n);
}

Matrix sample_psd(int dim, double hi, bool singular, Rng& rng) {
  if (dim < 1 || !(hi > 0.0)) throw InvalidArgument("sample_psd: need dim >= 1 and hi > 0");
  Vector eig(dim);
  for (int i = 0; i < dim; ++i) eig(i) = uniform(rng, 0.0, hi);
  if (singular) {
    eig(0) = 0.0;
    if (dim >= 2) eig(dim - 1) = hi;
  }
  const Matrix q = haar_orthogonal(dim, rng);
  return symmetrize(q * eig.asDiagonal() * q.transpose());
}

}  // namespace opineq
