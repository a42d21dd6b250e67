#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "opineq/bound_params.hpp"
#include "opineq/spd.hpp"

namespace opineq {

/// A^{1/2} (A^{-1/2} B A^{-1/2})^{1/2} A^{1/2}
SpdMatrix geometric_mean(const SpdMatrix& a, const SpdMatrix& b);

/// (A + B) / 2
SpdMatrix arithmetic_mean(const SpdMatrix& a, const SpdMatrix& b);

/// (A^{-1} + B^{-1}) / 2
SpdMatrix harmonic_like(const SpdMatrix& a, const SpdMatrix& b);

enum class MapKind { identity, compression, congruence_sum, trace_normalize, pinching };

std::string_view map_kind_name(MapKind kind);

/// A positive unital linear map from the representable catalog. Every kind
/// is completely positive, hence 2-positive.
class PositiveMapSpec {
 public:
  static PositiveMapSpec identity(int n);
  /// T -> V^T T V for a column-orthonormal n x r matrix V.
  static PositiveMapSpec compression(const Matrix& v);
  /// T -> sum_j U_j^T T U_j with sum_j U_j^T U_j = I.
  static PositiveMapSpec congruence_sum(std::vector<Matrix> family);
  /// T -> (tr T / n) I
  static PositiveMapSpec trace_normalize(int n);
  /// Block-diagonal restriction; `blocks` must partition {0, ..., n-1}.
  static PositiveMapSpec pinching(int n, std::vector<std::vector<int>> blocks);

  MapKind kind() const { return kind_; }
  int in_dim() const { return in_dim_; }
  int out_dim() const { return out_dim_; }
  const Matrix& isometry() const { return v_; }
  const std::vector<Matrix>& family() const { return family_; }
  const std::vector<std::vector<int>>& blocks() const { return blocks_; }

  std::string describe() const;

 private:
  PositiveMapSpec(MapKind kind, int in_dim, int out_dim) : kind_(kind), in_dim_(in_dim), out_dim_(out_dim) {}

  MapKind kind_;
  int in_dim_;
  int out_dim_;
  Matrix v_;
  std::vector<Matrix> family_;
  std::vector<std::vector<int>> blocks_;
};

/// Applies the map to any square matrix of size in_dim (the maps are linear
/// and transpose-preserving, so non-symmetric arguments are allowed).
Matrix apply_map(const PositiveMapSpec& spec, const Matrix& t);

/// Image of a positive-definite argument; positive definite by unitality.
SpdMatrix apply_map(const PositiveMapSpec& spec, const SpdMatrix& t);

/// (Phi(T))^{-1} <= Phi(T^{-1})
CheckVerdict check_choi(const PositiveMapSpec& spec, const SpdMatrix& t, double tol = kDefaultTol);

/// ||AB|| <= ||A + B||^2 / 4 for positive semidefinite A, B.
CheckVerdict check_norm_amgm(const Matrix& a, const Matrix& b, double tol = kDefaultTol);

}  // namespace opineq
