#include "opineq/means_maps.hpp"

#include <algorithm>
#include <sstream>

#include "opineq/errors.hpp"

namespace opineq {

namespace {

constexpr double kStructureTol = 1e-10;

void require_same_dim(const SpdMatrix& a, const SpdMatrix& b, const char* what) {
  if (a.dim() != b.dim()) {
    throw DimensionMismatch(std::string(what) + ": operands have dimensions " +
                            std::to_string(a.dim()) + " and " + std::to_string(b.dim()));
  }
}

}  // namespace

SpdMatrix geometric_mean(const SpdMatrix& a, const SpdMatrix& b) {
  require_same_dim(a, b, "geometric_mean");
  const Matrix a_half = matrix_function(a, MatrixFunction::sqrt);
  const Matrix a_neg_half = matrix_function(a, MatrixFunction::inv_sqrt);
  const SpdMatrix inner = make_spd(a_neg_half * b.matrix() * a_neg_half);
  const Matrix inner_half = matrix_function(inner, MatrixFunction::sqrt);
  return make_spd(a_half * inner_half * a_half);
}

SpdMatrix arithmetic_mean(const SpdMatrix& a, const SpdMatrix& b) {
  require_same_dim(a, b, "arithmetic_mean");
  return make_spd(0.5 * (a.matrix() + b.matrix()));
}

SpdMatrix harmonic_like(const SpdMatrix& a, const SpdMatrix& b) {
  require_same_dim(a, b, "harmonic_like");
  return make_spd(0.5 * (matrix_function(a, MatrixFunction::inv) +
                         matrix_function(b, MatrixFunction::inv)));
}

std::string_view map_kind_name(MapKind kind) {
  switch (kind) {
    case MapKind::identity:
      return "identity";
    case MapKind::compression:
      return "compression";
    case MapKind::congruence_sum:
      return "congruence_sum";
    case MapKind::trace_normalize:
      return "trace_normalize";
    case MapKind::pinching:
      return "pinching";
  }
  return "unknown";
}

PositiveMapSpec PositiveMapSpec::identity(int n) {
  if (n < 1) throw InvalidArgument("identity map: dimension must be positive");
  return PositiveMapSpec(MapKind::identity, n, n);
}

PositiveMapSpec PositiveMapSpec::compression(const Matrix& v) {
  if (v.rows() < 1 || v.cols() < 1 || v.cols() > v.rows()) {
    throw InvalidArgument("compression: V must be n x r with 1 <= r <= n");
  }
  const auto r = v.cols();
  if ((v.transpose() * v - Matrix::Identity(r, r)).cwiseAbs().maxCoeff() > kStructureTol) {
    throw InvalidArgument("compression: V is not column-orthonormal");
  }
  PositiveMapSpec spec(MapKind::compression, static_cast<int>(v.rows()), static_cast<int>(r));
  spec.v_ = v;
  return spec;
}

PositiveMapSpec PositiveMapSpec::congruence_sum(std::vector<Matrix> family) {
  if (family.empty()) throw InvalidArgument("congruence_sum: empty family");
  const auto n = family.front().rows();
  Matrix total = Matrix::Zero(n, n);
  for (const Matrix& u : family) {
    if (u.rows() != n || u.cols() != n) {
      throw DimensionMismatch("congruence_sum: every U_j must be n x n");
    }
    total += u.transpose() * u;
  }
  if ((total - Matrix::Identity(n, n)).cwiseAbs().maxCoeff() > kStructureTol) {
    throw InvalidArgument("congruence_sum: sum of U_j^T U_j differs from I");
  }
  PositiveMapSpec spec(MapKind::congruence_sum, static_cast<int>(n), static_cast<int>(n));
  spec.family_ = std::move(family);
  return spec;
}

PositiveMapSpec PositiveMapSpec::trace_normalize(int n) {
  if (n < 1) throw InvalidArgument("trace_normalize: dimension must be positive");
  return PositiveMapSpec(MapKind::trace_normalize, n, n);
}

PositiveMapSpec PositiveMapSpec::pinching(int n, std::vector<std::vector<int>> blocks) {
  if (n < 1) throw InvalidArgument("pinching: dimension must be positive");
  std::vector<int> seen(static_cast<std::size_t>(n), 0);
  for (const auto& block : blocks) {
    if (block.empty()) throw InvalidArgument("pinching: empty block");
    for (int i : block) {
      if (i < 0 || i >= n) throw InvalidArgument("pinching: index out of range");
      ++seen[static_cast<std::size_t>(i)];
    }
  }
  if (std::any_of(seen.begin(), seen.end(), [](int c) { return c != 1; })) {
    throw InvalidArgument("pinching: blocks do not partition the index set");
  }
  PositiveMapSpec spec(MapKind::pinching, n, n);
  spec.blocks_ = std::move(blocks);
  return spec;
}

std::string PositiveMapSpec::describe() const {
  std::ostringstream os;
  os << map_kind_name(kind_) << "(" << in_dim_ << "->" << out_dim_;
  if (kind_ == MapKind::congruence_sum) os << ", k=" << family_.size();
  if (kind_ == MapKind::pinching) {
    os << ", blocks=";
    for (std::size_t b = 0; b < blocks_.size(); ++b) {
      os << (b ? "|" : "");
      for (std::size_t i = 0; i < blocks_[b].size(); ++i) os << (i ? "," : "") << blocks_[b][i];
    }
  }
  os << ")";
  return os.str();
}

Matrix apply_map(const PositiveMapSpec& spec, const Matrix& t) {
  if (t.rows() != spec.in_dim() || t.cols() != spec.in_dim()) {
    throw DimensionMismatch("apply_map: argument is " + std::to_string(t.rows()) + "x" +
                            std::to_string(t.cols()) + ", map expects " +
                            std::to_string(spec.in_dim()));
  }
  switch (spec.kind()) {
    case MapKind::identity:
      return t;
    case MapKind::compression:
      return spec.isometry().transpose() * t * spec.isometry();
    case MapKind::congruence_sum: {
      Matrix out = Matrix::Zero(t.rows(), t.cols());
      for (const Matrix& u : spec.family()) out += u.transpose() * t * u;
      return out;
    }
    case MapKind::trace_normalize:
      return Matrix::Identity(t.rows(), t.cols()) * (t.trace() / static_cast<double>(t.rows()));
    case MapKind::pinching: {
      Matrix out = Matrix::Zero(t.rows(), t.cols());
      for (const auto& block : spec.blocks()) {
        for (int i : block) {
          for (int j : block) out(i, j) = t(i, j);
        }
      }
      return out;
    }
  }
  return t;
}

SpdMatrix apply_map(const PositiveMapSpec& spec, const SpdMatrix& t) {
  return make_spd(apply_map(spec, t.matrix()));
}

CheckVerdict check_choi(const PositiveMapSpec& spec, const SpdMatrix& t, double tol) {
  const SpdMatrix image = apply_map(spec, t);
  const Matrix lhs = matrix_function(image, MatrixFunction::inv);
  const Matrix rhs = apply_map(spec, matrix_function(t, MatrixFunction::inv));
  return loewner_leq(lhs, rhs, tol);
}

CheckVerdict check_norm_amgm(const Matrix& a, const Matrix& b, double tol) {
  require_same_square(a, b, "check_norm_amgm");
  const double sum_norm = operator_norm(a + b);
  return scalar_leq(spectral_norm(a * b), 0.25 * sum_norm * sum_norm, tol);
}

}  // namespace opineq
