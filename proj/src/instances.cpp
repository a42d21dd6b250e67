#include "opineq/instances.hpp"

#include <algorithm>
#include <cmath>

#include "opineq/errors.hpp"

namespace opineq {

namespace {

constexpr int kMapKinds = 5;

MapKind map_kind_for(std::uint64_t index) {
  return static_cast<MapKind>(static_cast<int>(index % kMapKinds));
}

std::vector<Vector> test_vectors(const SpdMatrix& a, int count, Rng& rng) {
  std::vector<Vector> out;
  const int n = a.dim();
  out.reserve(static_cast<std::size_t>(count + n + 1));
  for (int i = 0; i < count; ++i) out.push_back(sample_unit_vector(n, rng));
  const Matrix& q = a.eigenvectors();
  for (int j = 0; j < n; ++j) out.push_back(q.col(j));
  if (n >= 2) out.push_back((q.col(0) + q.col(n - 1)) / std::sqrt(2.0));
  return out;
}

// Orthonormal pairs: random ones plus (e_min +- e_max)/sqrt(2), which
// attains the Wielandt constant.
std::vector<std::pair<Vector, Vector>> test_pairs(const SpdMatrix& a, int count, Rng& rng) {
  std::vector<std::pair<Vector, Vector>> out;
  const int n = a.dim();
  if (n < 2) return out;
  for (int i = 0; i < count; ++i) {
    const Matrix q = haar_orthogonal(n, rng);
    out.emplace_back(q.col(0), q.col(1));
  }
  const Matrix& q = a.eigenvectors();
  const double s = std::sqrt(0.5);
  out.emplace_back(s * (q.col(0) + q.col(n - 1)), s * (q.col(0) - q.col(n - 1)));
  return out;
}

std::vector<IsometryPair> test_isometries(const SpdMatrix& a, int r, int count, Rng& rng) {
  std::vector<IsometryPair> out;
  const int n = a.dim();
  for (int i = 0; i < count; ++i) out.push_back(sample_orthogonal_isometries(n, r, rng));
  // Extreme eigenvectors mixed pairwise, completed by the middle of the spectrum.
  const Matrix& q = a.eigenvectors();
  Matrix mixed = q;
  const double s = std::sqrt(0.5);
  for (int j = 0; j < r; ++j) {
    mixed.col(j) = s * (q.col(j) + q.col(n - 1 - j));
    mixed.col(n - 1 - j) = s * (q.col(j) - q.col(n - 1 - j));
  }
  out.push_back(isometries_from(mixed, r));
  return out;
}

SpdMatrix self_inverse(int dim, const BoundParams& p, SelfInverseVariant v, Rng& rng) {
  return sample_self_inverse(dim, p.m, p.m_prime, p.M, v, rng);
}

}  // namespace

InstanceResult evaluate_instance(TheoremId theorem, const Fingerprint& fp, double tol, int vectors,
                                 bool capture) {
  Rng rng(fp.seed);
  const int n = fp.dim;
  const BoundParams& p = fp.params;
  const std::uint64_t index = fp.sample_index;
  InstanceResult out;
  auto keep = [&](std::string name, const Matrix& value) {
    if (capture) out.matrices.push_back({std::move(name), value});
  };
  auto add = [&](IneqRecord r) {
    r.fingerprint = fp;
    out.records.push_back(std::move(r));
  };
  auto keep_map = [&](const PositiveMapSpec& spec) {
    if (!capture) return;
    switch (spec.kind()) {
      case MapKind::compression:
        keep("map_isometry", spec.isometry());
        break;
      case MapKind::congruence_sum:
        for (std::size_t j = 0; j < spec.family().size(); ++j) {
          keep("map_family_" + std::to_string(j), spec.family()[j]);
        }
        break;
      default:
        break;
    }
  };

  switch (theorem) {
    case TheoremId::scalar_amgm: {
      const double a = 1.0 + 3.0 * std::uniform_real_distribution<double>(0.0, 1.0)(rng);
      const double c = p.m + (p.M - p.m) * std::uniform_real_distribution<double>(0.0, 1.0)(rng);
      const double b = c * a;
      keep("ab", (Matrix(1, 2) << a, b).finished());
      add(scalar_refined_amgm(a, b, tol));
      add(scalar_refined_amgm_bounded(a, b, p.m, tol));
      break;
    }
    case TheoremId::lemma_amgm: {
      auto [a, b] = sample_relative_pair(n, p.m, p.M, rng);
      keep("A", a.matrix());
      keep("B", b.matrix());
      add(check_lemma_refined_amgm(a, b, p.m, tol));
      break;
    }
    case TheoremId::kantorovich:
    case TheoremId::holder_mccarthy: {
      const SpdMatrix a = self_inverse(n, p, SelfInverseVariant::low, rng);
      keep("A", a.matrix());
      for (const Vector& x : test_vectors(a, vectors, rng)) {
        add(theorem == TheoremId::kantorovich
                ? check_kantorovich_refined(a, x, p.m, p.m_prime, p.M, tol)
                : check_holder_mccarthy_refined(a, x, p, tol));
      }
      break;
    }
    case TheoremId::kantorovich_product: {
      const ShiftedPair s = sample_shifted_pair(n, p.m, p.m_prime, p.M, rng);
      keep("A", s.a.matrix());
      keep("B", s.b.matrix());
      for (const Vector& x : test_vectors(s.a, vectors, rng)) {
        add(check_kantorovich_product_refined(s.a, s.b, x, p, tol));
      }
      break;
    }
    case TheoremId::square_order: {
      const SpdMatrix a = self_inverse(n, p, SelfInverseVariant::low, rng);
      const Matrix w = sample_psd(n, a.max_eigenvalue(), index % 2 == 0, rng);
      const SpdMatrix b = make_spd(a.matrix() + w);
      keep("A", a.matrix());
      keep("B", b.matrix());
      add(check_square_order_refined(a, b, p, tol));
      break;
    }
    case TheoremId::polya_szego: {
      const ShiftedPair s = sample_shifted_pair(n, p.m, p.m_prime, p.M, rng);
      const PositiveMapSpec spec = sample_map(map_kind_for(index), n, rng);
      keep("A", s.a.matrix());
      keep("B", s.b.matrix());
      keep_map(spec);
      IneqRecord r = check_polya_szego_refined(spec, s.a, s.b, p, tol);
      r.label = std::string(map_kind_name(spec.kind()));
      add(std::move(r));
      break;
    }
    case TheoremId::isometry_family: {
      const SpdMatrix a = self_inverse(n, p, SelfInverseVariant::low, rng);
      const auto family = sample_congruence_family(n, 1 + static_cast<int>(index % 3), rng);
      keep("A", a.matrix());
      for (std::size_t j = 0; j < family.size(); ++j) keep("U_" + std::to_string(j), family[j]);
      add(check_isometry_family_bound(family, a, p, tol));
      break;
    }
    case TheoremId::lin_squared_mapped:
    case TheoremId::lin_squared_means:
    case TheoremId::lin_chain: {
      auto [a, b] = sample_sandwich_pair(n, p, rng);
      const PositiveMapSpec spec = sample_map(map_kind_for(index), n, rng);
      keep("A", a.matrix());
      keep("B", b.matrix());
      keep_map(spec);
      if (theorem == TheoremId::lin_chain) {
        for (auto& r : check_lin_chain(spec, a, b, p, tol)) add(std::move(r));
      } else {
        const auto variant = theorem == TheoremId::lin_squared_mapped ? LinVariant::mapped_mean
                                                                      : LinVariant::mean_of_maps;
        IneqRecord r = check_lin_refined_squared(spec, a, b, p, variant, tol);
        r.label = std::string(map_kind_name(spec.kind()));
        add(std::move(r));
      }
      break;
    }
    case TheoremId::wielandt_scalar: {
      const SpdMatrix a = sample_spd(n, SpectralInterval::make(p.m, p.M), rng);
      keep("A", a.matrix());
      for (const auto& [x, y] : test_pairs(a, vectors, rng)) {
        add(check_wielandt_scalar(a, x, y, p.m, p.M, tol));
      }
      break;
    }
    case TheoremId::wielandt_bhatia_davis:
    case TheoremId::wielandt_gumus:
    case TheoremId::wielandt_refined: {
      if (n < 2) break;
      const SpdMatrix a = theorem == TheoremId::wielandt_refined
                              ? self_inverse(n, p, SelfInverseVariant::high, rng)
                              : sample_spd(n, SpectralInterval::make(p.m, p.M), rng);
      const int r = 1 + static_cast<int>(index % static_cast<std::uint64_t>(n / 2));
      const PositiveMapSpec spec = sample_map(map_kind_for(index), r, rng);
      keep("A", a.matrix());
      keep_map(spec);
      const auto variant = theorem == TheoremId::wielandt_bhatia_davis ? WielandtVariant::bhatia_davis
                           : theorem == TheoremId::wielandt_gumus      ? WielandtVariant::gumus
                                                                       : WielandtVariant::refined;
      const int count = std::max(1, vectors / 4);
      for (const IsometryPair& pair : test_isometries(a, r, count, rng)) {
        IneqRecord rec = check_wielandt_operator(spec, a, pair, p, variant, tol);
        rec.label = std::string(map_kind_name(spec.kind()));
        add(std::move(rec));
      }
      break;
    }
    case TheoremId::choi: {
      const SpdMatrix t = sample_spd(n, SpectralInterval::make(p.m, p.M), rng);
      const PositiveMapSpec spec = sample_map(map_kind_for(index), n, rng);
      keep("T", t.matrix());
      keep_map(spec);
      IneqRecord r = check_choi_record(spec, t, tol);
      r.label = std::string(map_kind_name(spec.kind()));
      add(std::move(r));
      break;
    }
    case TheoremId::norm_amgm: {
      const bool singular = index % 2 == 0;
      const Matrix a = sample_psd(n, p.M, singular, rng);
      const Matrix b = sample_psd(n, p.M, !singular, rng);
      keep("A", a);
      keep("B", b);
      add(check_norm_amgm_record(a, b, tol));
      break;
    }
  }
  return out;
}

}  // namespace opineq
