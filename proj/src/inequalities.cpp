#include "opineq/inequalities.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <utility>

#include "opineq/errors.hpp"

namespace opineq {

namespace {

constexpr double kNearTight = 1e-3;
constexpr double kUnitTol = 1e-10;

struct TheoremInfo {
  TheoremId id;
  std::string_view name;
  Regime regime;
};

constexpr std::array<TheoremInfo, 17> kTheorems{{
    {TheoremId::scalar_amgm, "scalar_amgm", Regime::relative},
    {TheoremId::lemma_amgm, "lemma_amgm", Regime::relative},
    {TheoremId::kantorovich, "kantorovich", Regime::self_inverse_low},
    {TheoremId::kantorovich_product, "kantorovich_product", Regime::shifted},
    {TheoremId::holder_mccarthy, "holder_mccarthy", Regime::self_inverse_low},
    {TheoremId::square_order, "square_order", Regime::self_inverse_low},
    {TheoremId::polya_szego, "polya_szego", Regime::shifted},
    {TheoremId::isometry_family, "isometry_family", Regime::self_inverse_low},
    {TheoremId::lin_squared_mapped, "lin_squared_mapped", Regime::sandwich},
    {TheoremId::lin_squared_means, "lin_squared_means", Regime::sandwich},
    {TheoremId::lin_chain, "lin_chain", Regime::sandwich},
    {TheoremId::wielandt_scalar, "wielandt_scalar", Regime::plain},
    {TheoremId::wielandt_bhatia_davis, "wielandt_bhatia_davis", Regime::plain},
    {TheoremId::wielandt_gumus, "wielandt_gumus", Regime::plain},
    {TheoremId::wielandt_refined, "wielandt_refined", Regime::self_inverse_high},
    {TheoremId::choi, "choi", Regime::plain},
    {TheoremId::norm_amgm, "norm_amgm", Regime::plain},
}};

const TheoremInfo& info(TheoremId id) {
  for (const auto& t : kTheorems) {
    if (t.id == id) return t;
  }
  throw InvalidArgument("unknown theorem id");
}

double wielandt_k2(double m, double M) {
  const double k = (M - m) / (M + m);
  return k * k;
}

double scalar_ratio(double lhs, double rhs) {
  if (rhs > 0.0) return lhs / rhs;
  return lhs > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
}

double matrix_ratio(const Matrix& lhs, const Matrix& rhs) {
  if (operator_norm(rhs) == 0.0) {
    return operator_norm(lhs) > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
  }
  return loewner_ratio(lhs, rhs);
}

void finish(IneqRecord& r) {
  r.improvement_ratio =
      r.classical_rhs_scale != 0.0 ? r.refined_rhs_scale / r.classical_rhs_scale : 1.0;
  r.near_tight = r.verdict.holds && r.verdict.rel_slack < kNearTight;
}

IneqRecord scalar_record(TheoremId id, double lhs, double rhs, double tol, double reference = 0.0) {
  IneqRecord r;
  r.theorem = id;
  r.lhs_value = lhs;
  r.rhs_value = rhs;
  r.verdict = scalar_leq(lhs, rhs, tol, reference);
  r.ratio = scalar_ratio(lhs, rhs);
  return r;
}

void add_classical_scalar(IneqRecord& r, double lhs, double rhs, double tol, double reference = 0.0) {
  r.classical = scalar_leq(lhs, rhs, tol, reference);
  r.classical_ratio = scalar_ratio(lhs, rhs);
}

IneqRecord loewner_record(TheoremId id, const Matrix& lhs, const Matrix& rhs, double tol,
                          double reference = 0.0) {
  IneqRecord r;
  r.theorem = id;
  r.lhs_value = operator_norm(lhs);
  r.rhs_value = operator_norm(rhs);
  r.verdict = loewner_leq(lhs, rhs, tol, reference);
  r.ratio = matrix_ratio(lhs, rhs);
  return r;
}

void add_classical_loewner(IneqRecord& r, const Matrix& lhs, const Matrix& rhs, double tol,
                           double reference = 0.0) {
  r.classical = loewner_leq(lhs, rhs, tol, reference);
  r.classical_ratio = matrix_ratio(lhs, rhs);
}

Matrix identity(int n) { return Matrix::Identity(n, n); }

void require_relation(const Matrix& lo, const Matrix& hi, const std::string& relation) {
  if (!loewner_leq(lo, hi, kRegimeTol).holds) {
    throw RegimeViolation("instance violates " + relation);
  }
}

void require_same_dim(const SpdMatrix& a, const SpdMatrix& b, const char* what) {
  if (a.dim() != b.dim()) throw DimensionMismatch(std::string(what) + ": A and B differ in dimension");
}

void require_unit(const Vector& x, int dim, const char* what) {
  if (x.size() != dim) throw DimensionMismatch(std::string(what) + ": vector dimension mismatch");
  if (std::abs(x.norm() - 1.0) > kUnitTol) {
    throw InvalidArgument(std::string(what) + ": x is not a unit vector");
  }
}

void require_plain(const SpdMatrix& a, double m, double M) {
  require_feasible(Regime::plain, BoundParams::pair(m, M));
  const int n = a.dim();
  require_relation(m * identity(n), a.matrix(), "mI <= A");
  require_relation(a.matrix(), M * identity(n), "A <= MI");
}

void require_shifted(const SpdMatrix& a, const SpdMatrix& b, const BoundParams& p) {
  require_feasible(Regime::shifted, p);
  require_same_dim(a, b, "shifted regime");
  const int n = a.dim();
  const Matrix ma = p.m_prime * a.matrix();
  require_relation(p.m * identity(n), ma, "mI <= m'A");
  require_relation(ma, b.matrix(), "m'A <= B");
  require_relation(b.matrix(), p.M * identity(n), "B <= MI");
}

void require_self_inverse_low(const SpdMatrix& a, const BoundParams& p) {
  require_feasible(Regime::self_inverse_low, p);
  const int n = a.dim();
  const Matrix ma = p.m_prime * a.matrix();
  const Matrix inv = matrix_function(a, MatrixFunction::inv);
  require_relation(p.m * identity(n), ma, "mI <= m'A");
  require_relation(ma, inv, "m'A <= A^{-1}");
  require_relation(inv, p.M * identity(n), "A^{-1} <= MI");
}

void require_self_inverse_high(const SpdMatrix& a, const BoundParams& p) {
  require_feasible(Regime::self_inverse_high, p);
  const int n = a.dim();
  const Matrix minv = p.m_prime * matrix_function(a, MatrixFunction::inv);
  require_relation(p.m * identity(n), minv, "mI <= m'A^{-1}");
  require_relation(minv, a.matrix(), "m'A^{-1} <= A");
  require_relation(a.matrix(), p.M * identity(n), "A <= MI");
}

void require_sandwich(const SpdMatrix& a, const SpdMatrix& b, const BoundParams& p) {
  require_feasible(Regime::sandwich, p);
  require_same_dim(a, b, "sandwich regime");
  const int n = a.dim();
  require_relation(p.m * identity(n), a.matrix(), "mI <= A");
  require_relation(a.matrix(), p.m_prime * identity(n), "A <= m'I");
  require_relation(p.M_prime * identity(n), b.matrix(), "M'I <= B");
  require_relation(b.matrix(), p.M * identity(n), "B <= MI");
}

double quad(const Matrix& a, const Vector& x) { return x.dot(a * x); }

double kantorovich_refined_constant(const BoundParams& p) {
  const double r = refinement_factor(p.m_prime);
  return p.K_h() / (r * r);
}

double polya_szego_classical(const BoundParams& p) {
  return (p.M + p.m) / (2.0 * std::sqrt(p.M * p.m));
}

}  // namespace

std::string_view theorem_name(TheoremId id) { return info(id).name; }

std::optional<TheoremId> parse_theorem(std::string_view name) {
  for (const auto& t : kTheorems) {
    if (t.name == name) return t.id;
  }
  return std::nullopt;
}

const std::vector<TheoremId>& all_theorems() {
  static const std::vector<TheoremId> ids = [] {
    std::vector<TheoremId> out;
    for (const auto& t : kTheorems) out.push_back(t.id);
    return out;
  }();
  return ids;
}

Regime theorem_regime(TheoremId id) { return info(id).regime; }

bool IneqRecord::refined_holds() const {
  if (!verdict.holds) return false;
  return std::all_of(side_checks.begin(), side_checks.end(),
                     [](const NamedVerdict& s) { return s.verdict.holds; });
}

bool IneqRecord::classical_holds() const { return !classical || classical->holds; }

double IneqRecord::min_rel_slack() const {
  double s = verdict.rel_slack;
  if (classical) s = std::min(s, classical->rel_slack);
  for (const auto& side : side_checks) s = std::min(s, side.verdict.rel_slack);
  return s;
}

double IneqRecord::max_ratio() const {
  return classical ? std::max(ratio, classical_ratio) : ratio;
}

// ---------------------------------------------------------------------------

IneqRecord scalar_refined_amgm(double a, double b, double tol) {
  if (!(a > 0.0) || !(b > 0.0)) throw InvalidArgument("scalar_refined_amgm: a and b must be positive");
  const double d = std::log(b) - std::log(a);
  const double gm = std::sqrt(a * b);
  const double factor = 1.0 + d * d / 8.0;
  IneqRecord r = scalar_record(TheoremId::scalar_amgm, factor * gm, 0.5 * (a + b), tol);
  r.lhs_desc = "(1+(ln b-ln a)^2/8) sqrt(ab)";
  r.rhs_desc = "(a+b)/2";
  add_classical_scalar(r, gm, 0.5 * (a + b), tol);
  r.classical_rhs_scale = 1.0;
  r.refined_rhs_scale = 1.0 / factor;
  finish(r);
  return r;
}

IneqRecord scalar_refined_amgm_bounded(double a, double b, double m, double tol) {
  if (!(a > 0.0) || !(b > 0.0)) throw InvalidArgument("scalar_refined_amgm_bounded: a and b must be positive");
  if (!(m > 1.0)) throw InfeasibleRegime("scalar_refined_amgm_bounded: needs m > 1");
  if (b < m * a * (1.0 - kRegimeTol)) throw RegimeViolation("scalar_refined_amgm_bounded: needs ma <= b");
  const double gm = std::sqrt(a * b);
  const double factor = refinement_factor(m);
  IneqRecord r = scalar_record(TheoremId::scalar_amgm, factor * gm, 0.5 * (a + b), tol);
  r.label = "bounded";
  r.lhs_desc = "(1+(ln m)^2/8) sqrt(ab)";
  r.rhs_desc = "(a+b)/2";
  add_classical_scalar(r, gm, 0.5 * (a + b), tol);
  r.refined_rhs_scale = 1.0 / factor;
  finish(r);
  return r;
}

IneqRecord check_lemma_refined_amgm(const SpdMatrix& a, const SpdMatrix& b, double m, double tol) {
  require_same_dim(a, b, "check_lemma_refined_amgm");
  if (!(m > 1.0)) throw InfeasibleRegime("relative regime needs m > 1");
  const Matrix a_neg_half = matrix_function(a, MatrixFunction::inv_sqrt);
  const double c_min = symmetric_eigenvalues(a_neg_half * b.matrix() * a_neg_half)(0);
  if (c_min < m * (1.0 - kRegimeTol)) throw RegimeViolation("instance violates mA <= B");

  const Matrix gm = geometric_mean(a, b).matrix();
  const Matrix am = 0.5 * (a.matrix() + b.matrix());
  const double factor = refinement_factor(m);
  IneqRecord r = loewner_record(TheoremId::lemma_amgm, factor * gm, am, tol);
  r.lhs_desc = "(1+(ln m)^2/8) A#B";
  r.rhs_desc = "(A+B)/2";
  add_classical_loewner(r, gm, am, tol);
  r.refined_rhs_scale = 1.0 / factor;
  finish(r);
  return r;
}

IneqRecord check_kantorovich_classical(const SpdMatrix& a, const Vector& x, double m, double M,
                                       double tol) {
  require_unit(x, a.dim(), "check_kantorovich_classical");
  require_plain(a, m, M);
  const double lhs = quad(a.matrix(), x) * quad(matrix_function(a, MatrixFunction::inv), x);
  const double k = kantorovich_constant(M / m);
  IneqRecord r = scalar_record(TheoremId::kantorovich, lhs, k, tol);
  r.label = "classical";
  r.lhs_desc = "<Ax,x><A^{-1}x,x>";
  r.rhs_desc = "(M+m)^2/(4Mm)";
  r.classical_rhs_scale = r.refined_rhs_scale = k;
  finish(r);
  return r;
}

namespace {

struct ProductTerms {
  double a;
  double b;
  double g;
};

ProductTerms product_terms(const SpdMatrix& a, const SpdMatrix& b, const Vector& x,
                           const BoundParams& p) {
  require_unit(x, a.dim(), "kantorovich_product");
  require_shifted(a, b, p);
  return {quad(a.matrix(), x), quad(b.matrix(), x), quad(geometric_mean(a, b).matrix(), x)};
}

}  // namespace

IneqRecord check_kantorovich_product_refined(const SpdMatrix& a, const SpdMatrix& b,
                                             const Vector& x, const BoundParams& params,
                                             double tol) {
  const auto t = product_terms(a, b, x, params);
  const double refined = kantorovich_refined_constant(params);
  const double classical = params.K_h();
  const double lhs = t.a * t.b;
  const double g2 = t.g * t.g;
  IneqRecord r = scalar_record(TheoremId::kantorovich_product, lhs, refined * g2, tol);
  r.lhs_desc = "<Ax,x><Bx,x>";
  r.rhs_desc = "K(h)/R(m')^2 <A#Bx,x>^2";
  add_classical_scalar(r, lhs, classical * g2, tol);
  r.classical_rhs_scale = classical;
  r.refined_rhs_scale = refined;
  finish(r);
  return r;
}

IneqRecord check_kantorovich_product_literal(const SpdMatrix& a, const SpdMatrix& b,
                                             const Vector& x, const BoundParams& params,
                                             double tol) {
  const auto t = product_terms(a, b, x, params);
  const double refined = kantorovich_refined_constant(params);
  IneqRecord r = scalar_record(TheoremId::kantorovich_product, t.a * t.b, refined * t.g, tol);
  r.label = "literal_unsquared";
  r.lhs_desc = "<Ax,x><Bx,x>";
  r.rhs_desc = "K(h)/R(m')^2 <A#Bx,x>";
  r.classical_rhs_scale = params.K_h();
  r.refined_rhs_scale = refined;
  finish(r);
  return r;
}

IneqRecord check_kantorovich_refined(const SpdMatrix& a, const Vector& x, double m,
                                     double m_prime, double M, double tol) {
  const BoundParams p = BoundParams::triple(m, m_prime, M);
  require_unit(x, a.dim(), "check_kantorovich_refined");
  require_self_inverse_low(a, p);
  const double lhs = quad(a.matrix(), x) * quad(matrix_function(a, MatrixFunction::inv), x);
  const double refined = kantorovich_refined_constant(p);
  IneqRecord r = scalar_record(TheoremId::kantorovich, lhs, refined, tol);
  r.lhs_desc = "<Ax,x><A^{-1}x,x>";
  r.rhs_desc = "K(h)/R(m')^2";
  add_classical_scalar(r, lhs, p.K_h(), tol);
  r.classical_rhs_scale = p.K_h();
  r.refined_rhs_scale = refined;
  finish(r);
  return r;
}

IneqRecord check_holder_mccarthy_refined(const SpdMatrix& a, const Vector& x,
                                         const BoundParams& params, double tol) {
  require_unit(x, a.dim(), "check_holder_mccarthy_refined");
  require_self_inverse_low(a, params);
  const Vector ax = a.matrix() * x;
  const double lhs = ax.squaredNorm();
  const double base = x.dot(ax) * x.dot(ax);
  const double refined = kantorovich_refined_constant(params);
  IneqRecord r = scalar_record(TheoremId::holder_mccarthy, lhs, refined * base, tol);
  r.lhs_desc = "<A^2x,x>";
  r.rhs_desc = "K(h)/R(m')^2 <Ax,x>^2";
  add_classical_scalar(r, lhs, params.K_h() * base, tol);
  r.classical_rhs_scale = params.K_h();
  r.refined_rhs_scale = refined;
  finish(r);
  return r;
}

IneqRecord check_square_order_refined(const SpdMatrix& a, const SpdMatrix& b,
                                      const BoundParams& params, double tol) {
  require_same_dim(a, b, "check_square_order_refined");
  require_self_inverse_low(a, params);
  require_relation(a.matrix(), b.matrix(), "A <= B");
  const Matrix a2 = a.matrix() * a.matrix();
  const Matrix b2 = symmetrize(b.matrix() * b.matrix());
  const double refined = kantorovich_refined_constant(params);
  IneqRecord r = loewner_record(TheoremId::square_order, symmetrize(a2), refined * b2, tol);
  r.lhs_desc = "A^2";
  r.rhs_desc = "K(h)/R(m')^2 B^2";
  add_classical_loewner(r, symmetrize(a2), params.K_h() * b2, tol);
  r.classical_rhs_scale = params.K_h();
  r.refined_rhs_scale = refined;
  finish(r);
  return r;
}

IneqRecord check_polya_szego_refined(const PositiveMapSpec& spec, const SpdMatrix& a,
                                     const SpdMatrix& b, const BoundParams& params, double tol) {
  require_shifted(a, b, params);
  const SpdMatrix fa = apply_map(spec, a);
  const SpdMatrix fb = apply_map(spec, b);
  const Matrix lhs = geometric_mean(fa, fb).matrix();
  const Matrix base = apply_map(spec, geometric_mean(a, b).matrix());
  const double classical = polya_szego_classical(params);
  const double refined = classical / refinement_factor(params.m_prime);
  IneqRecord r = loewner_record(TheoremId::polya_szego, lhs, refined * base, tol);
  r.lhs_desc = "Phi(A)#Phi(B)";
  r.rhs_desc = "sqrt(K(h))/R(m') Phi(A#B)";
  add_classical_loewner(r, lhs, classical * base, tol);
  r.classical_rhs_scale = classical;
  r.refined_rhs_scale = refined;
  finish(r);
  return r;
}

IneqRecord check_isometry_family_bound(const std::vector<Matrix>& family, const SpdMatrix& a,
                                       const BoundParams& params, double tol) {
  const PositiveMapSpec spec = PositiveMapSpec::congruence_sum(family);
  if (spec.in_dim() != a.dim()) throw DimensionMismatch("check_isometry_family_bound: family size");
  require_self_inverse_low(a, params);
  const SpdMatrix fa = apply_map(spec, a);
  const SpdMatrix finv = apply_map(spec, spd_inverse(a));
  const Matrix lhs = geometric_mean(fa, finv).matrix();
  const int n = a.dim();
  const double classical = polya_szego_classical(params);
  const double refined = classical / refinement_factor(params.m_prime);
  IneqRecord r = loewner_record(TheoremId::isometry_family, lhs, refined * identity(n), tol);
  r.lhs_desc = "Phi(A)#Phi(A^{-1})";
  r.rhs_desc = "sqrt(K(h))/R(m') I";
  add_classical_loewner(r, lhs, classical * identity(n), tol);
  r.classical_rhs_scale = classical;
  r.refined_rhs_scale = refined;
  finish(r);
  return r;
}

IneqRecord check_lin_refined_squared(const PositiveMapSpec& spec, const SpdMatrix& a,
                                     const SpdMatrix& b, const BoundParams& params,
                                     LinVariant variant, double tol) {
  require_sandwich(a, b, params);
  const Matrix mapped_am = apply_map(spec, Matrix(0.5 * (a.matrix() + b.matrix())));
  const Matrix lhs = symmetrize(mapped_am * mapped_am);
  Matrix base;
  if (variant == LinVariant::mapped_mean) {
    base = apply_map(spec, geometric_mean(a, b).matrix());
  } else {
    base = geometric_mean(apply_map(spec, a), apply_map(spec, b)).matrix();
  }
  const Matrix base2 = symmetrize(base * base);
  const double k = params.K_h();
  const double r_factor = refinement_factor(params.M_prime / params.m_prime);
  const double classical = k * k;
  const double refined = classical / (r_factor * r_factor);
  IneqRecord r = loewner_record(variant == LinVariant::mapped_mean ? TheoremId::lin_squared_mapped
                                                                  : TheoremId::lin_squared_means,
                                lhs, refined * base2, tol);
  r.lhs_desc = "Phi((A+B)/2)^2";
  r.rhs_desc = variant == LinVariant::mapped_mean ? "K(h)^2/R(M'/m')^2 Phi(A#B)^2"
                                                  : "K(h)^2/R(M'/m')^2 (Phi(A)#Phi(B))^2";
  add_classical_loewner(r, lhs, classical * base2, tol);
  r.classical_rhs_scale = classical;
  r.refined_rhs_scale = refined;
  finish(r);
  return r;
}

std::vector<IneqRecord> check_lin_chain(const PositiveMapSpec& spec, const SpdMatrix& a,
                                        const SpdMatrix& b, const BoundParams& params,
                                        double tol) {
  require_sandwich(a, b, params);
  const int n = a.dim();
  const int k = spec.out_dim();
  const double m = params.m;
  const double M = params.M;
  const double mm = M * m;
  const double rf = refinement_factor(params.M_prime / params.m_prime);

  const Matrix a_inv = matrix_function(a, MatrixFunction::inv);
  const Matrix b_inv = matrix_function(b, MatrixFunction::inv);
  const Matrix am = 0.5 * (a.matrix() + b.matrix());
  const SpdMatrix gm = geometric_mean(a, b);
  const Matrix gm_inv = matrix_function(gm, MatrixFunction::inv);
  const Matrix inv_gm = geometric_mean(spd_inverse(a), spd_inverse(b)).matrix();
  const Matrix inv_am = 0.5 * (a_inv + b_inv);

  std::vector<IneqRecord> links;
  auto push = [&](IneqRecord r, const char* label, const char* lhs, const char* rhs) {
    r.label = label;
    r.lhs_desc = lhs;
    r.rhs_desc = rhs;
    finish(r);
    links.push_back(std::move(r));
  };

  const Matrix half_sum_i = 0.5 * (M + m) * identity(n);
  push(loewner_record(TheoremId::lin_chain, 0.5 * a.matrix() + 0.5 * mm * a_inv, half_sum_i, tol),
       "bound_a", "A/2 + Mm A^{-1}/2", "(M+m)/2 I");
  push(loewner_record(TheoremId::lin_chain, 0.5 * b.matrix() + 0.5 * mm * b_inv, half_sum_i, tol),
       "bound_b", "B/2 + Mm B^{-1}/2", "(M+m)/2 I");
  push(loewner_record(TheoremId::lin_chain, am + mm * inv_am, (M + m) * identity(n), tol), "summed",
       "(A+B)/2 + Mm (A^{-1}+B^{-1})/2", "(M+m) I");

  {
    IneqRecord r = loewner_record(TheoremId::lin_chain, rf * inv_gm, inv_am, tol);
    add_classical_loewner(r, inv_gm, inv_am, tol);
    r.refined_rhs_scale = 1.0 / rf;
    push(std::move(r), "inverse_mean_lemma", "R(M'/m') A^{-1}#B^{-1}", "(A^{-1}+B^{-1})/2");
  }

  auto refined_pair = [&](const Matrix& first, const Matrix& second, const Matrix& rhs) {
    IneqRecord r = loewner_record(TheoremId::lin_chain, first + mm * rf * second, rhs, tol);
    add_classical_loewner(r, first + mm * second, rhs, tol);
    r.refined_rhs_scale = 1.0 / rf;
    return r;
  };

  push(refined_pair(am, gm_inv, (M + m) * identity(n)), "mean_plus_inverse_gm",
       "(A+B)/2 + Mm R(M'/m') (A#B)^{-1}", "(M+m) I");

  const Matrix mapped_am = apply_map(spec, am);
  const Matrix mapped_gm = apply_map(spec, gm.matrix());
  const Matrix mapped_gm_inverse = matrix_function(make_spd(mapped_gm), MatrixFunction::inv);
  push(refined_pair(mapped_am, apply_map(spec, gm_inv), (M + m) * identity(k)),
       "mapped_inverse_of_gm", "Phi((A+B)/2) + Mm R(M'/m') Phi((A#B)^{-1})", "(M+m) I");
  push(refined_pair(mapped_am, mapped_gm_inverse, (M + m) * identity(k)), "mapped_gm_inverse",
       "Phi((A+B)/2) + Mm R(M'/m') Phi(A#B)^{-1}", "(M+m) I");

  {
    const Matrix y = mm * rf * mapped_gm_inverse;
    const double sum_norm = operator_norm(mapped_am + y);
    IneqRecord r = scalar_record(TheoremId::lin_chain, spectral_norm(mapped_am * y),
                                 0.25 * sum_norm * sum_norm, tol);
    push(std::move(r), "norm_lemma_step", "||X Y||", "||X + Y||^2/4");
  }

  {
    const double lhs = spectral_norm(mapped_am * mapped_gm_inverse);
    const double classical = (M + m) * (M + m) / (4.0 * mm);
    IneqRecord r = scalar_record(TheoremId::lin_chain, lhs, classical / rf, tol);
    add_classical_scalar(r, lhs, classical, tol);
    r.classical_rhs_scale = classical;
    r.refined_rhs_scale = classical / rf;
    push(std::move(r), "norm_product", "||Phi((A+B)/2) Phi(A#B)^{-1}||",
         "(M+m)^2/(4Mm R(M'/m'))");
  }
  return links;
}

namespace {

void require_orthonormal_pair(const Vector& x, const Vector& y, int dim) {
  require_unit(x, dim, "wielandt");
  require_unit(y, dim, "wielandt");
  if (std::abs(x.dot(y)) > kUnitTol) throw InvalidArgument("wielandt: x and y are not orthogonal");
}

}  // namespace

IneqRecord check_wielandt_scalar(const SpdMatrix& a, const Vector& x, const Vector& y, double m,
                                 double M, double tol) {
  require_orthonormal_pair(x, y, a.dim());
  require_plain(a, m, M);
  const double cross = x.dot(a.matrix() * y);
  const double base = quad(a.matrix(), x) * quad(a.matrix(), y);
  const double k2 = wielandt_k2(m, M);
  IneqRecord r = scalar_record(TheoremId::wielandt_scalar, cross * cross, k2 * base, tol, base);
  r.lhs_desc = "|<x,Ay>|^2";
  r.rhs_desc = "((M-m)/(M+m))^2 <x,Ax><y,Ay>";
  r.classical_rhs_scale = r.refined_rhs_scale = k2;
  finish(r);
  return r;
}

IneqRecord check_wielandt_scalar_literal(const SpdMatrix& a, const Vector& x, const Vector& y,
                                         double m, double M, double tol) {
  require_orthonormal_pair(x, y, a.dim());
  require_plain(a, m, M);
  const double cross = x.dot(a.matrix() * y);
  const double base = cross * quad(a.matrix(), y);
  const double k2 = wielandt_k2(m, M);
  IneqRecord r = scalar_record(TheoremId::wielandt_scalar, cross * cross, k2 * base, tol,
                               std::abs(base));
  r.label = "literal_misprint";
  r.lhs_desc = "|<x,Ay>|^2";
  r.rhs_desc = "((M-m)/(M+m))^2 <x,Ay><y,Ay>";
  r.classical_rhs_scale = r.refined_rhs_scale = k2;
  finish(r);
  return r;
}

IneqRecord check_wielandt_operator(const PositiveMapSpec& spec, const SpdMatrix& a,
                                   const IsometryPair& pair, const BoundParams& params,
                                   WielandtVariant variant, double tol) {
  const int n = a.dim();
  const auto r_cols = pair.x.cols();
  if (pair.x.rows() != n || pair.y.rows() != n || pair.y.cols() != r_cols) {
    throw DimensionMismatch("check_wielandt_operator: isometries must both be n x r");
  }
  const Matrix eye_r = Matrix::Identity(r_cols, r_cols);
  if ((pair.x.transpose() * pair.x - eye_r).cwiseAbs().maxCoeff() > kUnitTol ||
      (pair.y.transpose() * pair.y - eye_r).cwiseAbs().maxCoeff() > kUnitTol) {
    throw InvalidArgument("check_wielandt_operator: X or Y is not an isometry");
  }
  if ((pair.x.transpose() * pair.y).cwiseAbs().maxCoeff() > kUnitTol) {
    throw InvalidArgument("check_wielandt_operator: X^T Y != 0");
  }
  if (spec.in_dim() != r_cols) throw DimensionMismatch("check_wielandt_operator: map acts on r x r");

  if (variant == WielandtVariant::refined) {
    require_self_inverse_high(a, params);
  } else {
    require_plain(a, params.m, params.M);
  }

  const Matrix& am = a.matrix();
  const Matrix p = apply_map(spec, Matrix(pair.x.transpose() * am * pair.y));
  const Matrix q = apply_map(spec, Matrix(pair.y.transpose() * am * pair.x));
  const Matrix sy = symmetrize(apply_map(spec, Matrix(pair.y.transpose() * am * pair.y)));
  const Matrix sx = symmetrize(apply_map(spec, Matrix(pair.x.transpose() * am * pair.x)));
  if (symmetric_eigenvalues(sy)(0) <= 0.0 || symmetric_eigenvalues(sx)(0) <= 0.0) {
    throw NotPositiveDefinite("check_wielandt_operator: Phi(Y^T A Y) or Phi(X^T A X) is singular");
  }
  const Matrix t = symmetrize(p * make_spd(sy).matrix().inverse() * q);
  const double k2 = wielandt_k2(params.m, params.M);
  const double sx_norm = operator_norm(sx);

  if (variant == WielandtVariant::bhatia_davis) {
    IneqRecord r = loewner_record(TheoremId::wielandt_bhatia_davis, t, k2 * sx, tol, sx_norm);
    r.lhs_desc = "Phi(X^T A Y) Phi(Y^T A Y)^{-1} Phi(Y^T A X)";
    r.rhs_desc = "((M-m)/(M+m))^2 Phi(X^T A X)";
    r.classical_rhs_scale = r.refined_rhs_scale = k2;
    finish(r);
    return r;
  }

  const double lhs = spectral_norm(t * sx.inverse());
  const double gumus = k2 * std::sqrt(params.K_h());
  IneqRecord r;
  if (variant == WielandtVariant::gumus) {
    r = scalar_record(TheoremId::wielandt_gumus, lhs, gumus, tol, 1.0);
    r.rhs_desc = "(M-m)^2/(2 sqrt(Mm)(M+m))";
    r.classical_rhs_scale = r.refined_rhs_scale = gumus;
  } else {
    const double refined = gumus / refinement_factor(params.m_prime);
    r = scalar_record(TheoremId::wielandt_refined, lhs, refined, tol, 1.0);
    r.rhs_desc = "(M-m)^2/(2 sqrt(Mm)(M+m) R(m'))";
    add_classical_scalar(r, lhs, gumus, tol, 1.0);
    r.classical_rhs_scale = gumus;
    r.refined_rhs_scale = refined;
    const Matrix eye = Matrix::Identity(sx.rows(), sx.rows());
    r.side_checks.push_back({"mI <= Phi(X^T A X)", loewner_leq(params.m * eye, sx, kRegimeTol)});
    r.side_checks.push_back({"Phi(X^T A X) <= MI", loewner_leq(sx, params.M * eye, kRegimeTol)});
  }
  r.lhs_desc = "||Phi(X^T A Y) Phi(Y^T A Y)^{-1} Phi(Y^T A X) Phi(X^T A X)^{-1}||";
  r.conjecture = scalar_leq(lhs, k2, tol, 1.0);
  r.conjecture_ratio = scalar_ratio(lhs, k2);
  finish(r);
  return r;
}

IneqRecord check_choi_record(const PositiveMapSpec& spec, const SpdMatrix& t, double tol) {
  const SpdMatrix image = apply_map(spec, t);
  const Matrix lhs = matrix_function(image, MatrixFunction::inv);
  const Matrix rhs = apply_map(spec, matrix_function(t, MatrixFunction::inv));
  IneqRecord r = loewner_record(TheoremId::choi, lhs, rhs, tol);
  r.lhs_desc = "Phi(T)^{-1}";
  r.rhs_desc = "Phi(T^{-1})";
  finish(r);
  return r;
}

IneqRecord check_norm_amgm_record(const Matrix& a, const Matrix& b, double tol) {
  require_same_square(a, b, "check_norm_amgm");
  const double sum_norm = operator_norm(a + b);
  IneqRecord r = scalar_record(TheoremId::norm_amgm, spectral_norm(a * b),
                               0.25 * sum_norm * sum_norm, tol);
  r.lhs_desc = "||AB||";
  r.rhs_desc = "||A+B||^2/4";
  finish(r);
  return r;
}

// ---------------------------------------------------------------------------

const ConstantRow* ConstantsTable::find(std::string_view name) const {
  for (const auto& row : rows) {
    if (row.name == name) return &row;
  }
  return nullptr;
}

ConstantsTable refinement_constants(const BoundParams& p) {
  if (p.m > p.M) throw InfeasibleRegime("constants need m <= M");
  ConstantsTable table;
  table.params = p;

  auto row = [&](std::string name, double classical, int power, std::string arg_name, double arg,
                 Regime regime) {
    ConstantRow r;
    r.name = std::move(name);
    r.classical = classical;
    r.power = power;
    r.argument_name = std::move(arg_name);
    r.argument = arg;
    r.divisor = power == 0 ? 1.0 : std::pow(refinement_factor(arg), power);
    r.refined = classical / r.divisor;
    r.improvement_ratio = r.refined / r.classical;
    r.feasible = check_feasible(regime, p).ok;
    table.rows.push_back(std::move(r));
  };

  const double k = p.K_h();
  const double k2w = wielandt_k2(p.m, p.M);
  const double spread = p.M_prime / p.m_prime;
  row("kantorovich_constant", k, 0, "", 1.0, Regime::plain);
  row("lemma_amgm_coefficient", 1.0, 1, "m", p.m, Regime::relative);
  row("kantorovich", k, 2, "m'", p.m_prime, Regime::self_inverse_low);
  row("kantorovich_product", k, 2, "m'", p.m_prime, Regime::shifted);
  row("holder_mccarthy", k, 2, "m'", p.m_prime, Regime::self_inverse_low);
  row("square_order", k, 2, "m'", p.m_prime, Regime::self_inverse_low);
  row("polya_szego", std::sqrt(k), 1, "m'", p.m_prime, Regime::shifted);
  row("isometry_family", std::sqrt(k), 1, "m'", p.m_prime, Regime::self_inverse_low);
  row("lin_squared", k * k, 2, "M'/m'", spread, Regime::sandwich);
  row("lin_norm", k, 1, "M'/m'", spread, Regime::sandwich);
  row("wielandt_bhatia_davis", k2w, 0, "", 1.0, Regime::plain);
  row("wielandt_conjecture", k2w, 0, "", 1.0, Regime::plain);
  row("wielandt_gumus", k2w * std::sqrt(k), 1, "m'", p.m_prime, Regime::self_inverse_high);
  return table;
}

}  // namespace opineq
