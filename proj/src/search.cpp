#include "opineq/search.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <map>
#include <tuple>

#include "opineq/errors.hpp"

namespace opineq {

namespace {

constexpr double kDeltaStart = 0.1;
constexpr double kDeltaEnd = 1e-4;
constexpr int kInitTries = 200;
const double kNegInf = -std::numeric_limits<double>::infinity();

struct State {
  BoundParams params;
  std::vector<Vector> spectra;
  std::vector<Matrix> frames;
  std::vector<Vector> vecs;
  double t = 0.5;
};

struct Layout {
  int spectra = 0;
  int frames = 0;
  int vecs = 0;
  bool uses_t = false;
  bool uses_map = false;
};

Layout layout_of(TheoremId id) {
  switch (id) {
    case TheoremId::scalar_amgm:
      return {2, 0, 0, false, false};
    case TheoremId::lemma_amgm:
    case TheoremId::square_order:
    case TheoremId::norm_amgm:
      return {2, 2, 0, false, false};
    case TheoremId::kantorovich:
    case TheoremId::holder_mccarthy:
      return {1, 1, 1, false, false};
    case TheoremId::kantorovich_product:
      return {1, 1, 1, true, false};
    case TheoremId::polya_szego:
      return {1, 1, 0, true, true};
    case TheoremId::isometry_family:
      return {1, 1, 0, false, true};
    case TheoremId::lin_squared_mapped:
    case TheoremId::lin_squared_means:
    case TheoremId::lin_chain:
      return {2, 2, 0, false, true};
    case TheoremId::wielandt_scalar:
      return {1, 1, 2, false, false};
    case TheoremId::wielandt_bhatia_davis:
    case TheoremId::wielandt_gumus:
    case TheoremId::wielandt_refined:
      return {1, 2, 0, false, false};
    case TheoremId::choi:
      return {1, 1, 0, false, true};
  }
  return {};
}

bool uses_m_prime(Regime r) { return r == Regime::shifted || r == Regime::sandwich ||
                                     r == Regime::self_inverse_low || r == Regime::self_inverse_high; }

BoundParams normalize(BoundParams p, Regime regime) {
  if (!uses_m_prime(regime)) p.m_prime = p.m;
  if (regime != Regime::sandwich) p.M_prime = p.M;
  return p;
}

bool feasible(Regime regime, const BoundParams& p) {
  if (!(p.m > 0.0 && p.m_prime > 0.0 && p.M_prime > 0.0 && p.M > 0.0)) return false;
  return check_feasible(regime, p).ok;
}

class Problem {
 public:
  Problem(const SearchConfig& config, Rng& rng)
      : config_(config),
        regime_(search_regime(config.theorem, config.bound)),
        layout_(layout_of(config.theorem)),
        n_(config.theorem == TheoremId::scalar_amgm ? 1 : config.dim) {
    if (layout_.uses_map) {
      const auto kind = static_cast<MapKind>(static_cast<int>(rng() % 5));
      if (config.theorem == TheoremId::isometry_family) {
        family_ = sample_congruence_family(n_, 1 + static_cast<int>(rng() % 3), rng);
      } else {
        map_ = sample_map(kind, n_, rng);
      }
    }
  }

  Regime regime() const { return regime_; }
  const Layout& layout() const { return layout_; }
  int dim() const { return n_; }

  State initial(const BoundParams& params, Rng& rng) const {
    State s;
    s.params = params;
    s.spectra.assign(static_cast<std::size_t>(layout_.spectra), Vector());
    for (int k = 0; k < layout_.frames; ++k) s.frames.push_back(haar_orthogonal(n_, rng));
    for (int k = 0; k < layout_.vecs; ++k) s.vecs.push_back(sample_unit_vector(n_, rng));
    s.t = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
    for (int k = 0; k < layout_.spectra; ++k) {
      const auto iv = window(k, s);
      Vector v(n_);
      for (int i = 0; i < n_; ++i) v(i) = std::uniform_real_distribution<double>(iv.first, iv.second)(rng);
      s.spectra[static_cast<std::size_t>(k)] = v;
    }
    return s;
  }

  /// Clamps every spectrum into its window under the current parameters.
  void project(State& s) const {
    s.t = std::clamp(s.t, 0.0, 1.0);
    for (int k = 0; k < layout_.spectra; ++k) {
      const auto iv = window(k, s);
      Vector& v = s.spectra[static_cast<std::size_t>(k)];
      for (int i = 0; i < n_; ++i) v(i) = std::clamp(v(i), iv.first, iv.second);
    }
  }

  /// Attained ratio of the selected bound; -inf when the candidate cannot be
  /// evaluated (degenerate vectors or rounding outside the regime).
  double evaluate(const State& s, std::vector<NamedMatrix>* capture = nullptr) const {
    try {
      return evaluate_impl(s, capture);
    } catch (const Error&) {
      return kNegInf;
    }
  }

 private:
  std::pair<double, double> window(int k, const State& s) const {
    const BoundParams& p = s.params;
    switch (config_.theorem) {
      case TheoremId::scalar_amgm:
      case TheoremId::lemma_amgm:
        return k == 0 ? std::pair{1.0, 4.0} : std::pair{p.m, p.M};
      case TheoremId::kantorovich:
      case TheoremId::holder_mccarthy:
      case TheoremId::isometry_family:
      case TheoremId::square_order: {
        if (k == 1) return {0.0, s.spectra[0].maxCoeff()};
        if (regime_ == Regime::plain) return {p.m, p.M};
        const auto iv = self_inverse_window(p.m, p.m_prime, p.M, SelfInverseVariant::low);
        return {iv.lo, iv.hi};
      }
      case TheoremId::kantorovich_product:
      case TheoremId::polya_szego:
        return {p.m / p.m_prime, p.M / p.m_prime};
      case TheoremId::lin_squared_mapped:
      case TheoremId::lin_squared_means:
      case TheoremId::lin_chain:
        return k == 0 ? std::pair{p.m, p.m_prime} : std::pair{p.M_prime, p.M};
      case TheoremId::wielandt_refined: {
        const auto iv = self_inverse_window(p.m, p.m_prime, p.M, SelfInverseVariant::high);
        return {iv.lo, iv.hi};
      }
      case TheoremId::norm_amgm:
        return {0.0, p.M};
      case TheoremId::wielandt_scalar:
      case TheoremId::wielandt_bhatia_davis:
      case TheoremId::wielandt_gumus:
      case TheoremId::choi:
        return {p.m, p.M};
    }
    return {p.m, p.M};
  }

  SpdMatrix spd(const State& s, int k) const {
    return SpdMatrix::from_spectrum(s.spectra[static_cast<std::size_t>(k)],
                                    s.frames[static_cast<std::size_t>(k)]);
  }

  Matrix psd(const State& s, int k) const {
    const Matrix& q = s.frames[static_cast<std::size_t>(k)];
    return symmetrize(q * s.spectra[static_cast<std::size_t>(k)].asDiagonal() * q.transpose());
  }

  double pick(const IneqRecord& r) const {
    if (config_.bound == BoundKind::classical && r.classical) return r.classical_ratio;
    return r.ratio;
  }

  double evaluate_impl(const State& s, std::vector<NamedMatrix>* capture) const {
    const BoundParams& p = s.params;
    const double tol = config_.tol;
    auto keep = [&](const char* name, const Matrix& m) {
      if (capture) capture->push_back({name, m});
    };
    switch (config_.theorem) {
      case TheoremId::scalar_amgm: {
        const double a = s.spectra[0](0);
        const double b = a * s.spectra[1](0);
        keep("ab", (Matrix(1, 2) << a, b).finished());
        return pick(scalar_refined_amgm(a, b, tol));
      }
      case TheoremId::lemma_amgm: {
        const SpdMatrix a = spd(s, 0);
        const SpdMatrix b = relative_partner(a, spd(s, 1));
        keep("A", a.matrix());
        keep("B", b.matrix());
        return pick(check_lemma_refined_amgm(a, b, p.m, tol));
      }
      case TheoremId::kantorovich:
      case TheoremId::holder_mccarthy: {
        const SpdMatrix a = spd(s, 0);
        keep("A", a.matrix());
        keep("x", s.vecs[0]);
        if (config_.theorem == TheoremId::holder_mccarthy) {
          return pick(check_holder_mccarthy_refined(a, s.vecs[0], p, tol));
        }
        if (regime_ == Regime::plain) return check_kantorovich_classical(a, s.vecs[0], p.m, p.M, tol).ratio;
        return pick(check_kantorovich_refined(a, s.vecs[0], p.m, p.m_prime, p.M, tol));
      }
      case TheoremId::kantorovich_product:
      case TheoremId::polya_szego: {
        const SpdMatrix a = spd(s, 0);
        const SpdMatrix b = shifted_partner(a, p.m_prime, p.M, s.t);
        keep("A", a.matrix());
        keep("B", b.matrix());
        if (config_.theorem == TheoremId::polya_szego) {
          return pick(check_polya_szego_refined(map_, a, b, p, tol));
        }
        keep("x", s.vecs[0]);
        return pick(check_kantorovich_product_refined(a, b, s.vecs[0], p, tol));
      }
      case TheoremId::square_order: {
        const SpdMatrix a = spd(s, 0);
        const SpdMatrix b = make_spd(a.matrix() + psd(s, 1));
        keep("A", a.matrix());
        keep("B", b.matrix());
        return pick(check_square_order_refined(a, b, p, tol));
      }
      case TheoremId::isometry_family: {
        const SpdMatrix a = spd(s, 0);
        keep("A", a.matrix());
        return pick(check_isometry_family_bound(family_, a, p, tol));
      }
      case TheoremId::lin_squared_mapped:
      case TheoremId::lin_squared_means:
      case TheoremId::lin_chain: {
        const SpdMatrix a = spd(s, 0);
        const SpdMatrix b = spd(s, 1);
        keep("A", a.matrix());
        keep("B", b.matrix());
        if (config_.theorem == TheoremId::lin_chain) {
          double best = kNegInf;
          for (const IneqRecord& r : check_lin_chain(map_, a, b, p, tol)) best = std::max(best, pick(r));
          return best;
        }
        const auto variant = config_.theorem == TheoremId::lin_squared_mapped ? LinVariant::mapped_mean
                                                                              : LinVariant::mean_of_maps;
        return pick(check_lin_refined_squared(map_, a, b, p, variant, tol));
      }
      case TheoremId::wielandt_scalar: {
        const SpdMatrix a = spd(s, 0);
        const Vector& x = s.vecs[0];
        Vector y = s.vecs[1] - x.dot(s.vecs[1]) * x;
        if (y.norm() < 1e-6) return kNegInf;
        y.normalize();
        keep("A", a.matrix());
        keep("x", x);
        keep("y", y);
        return pick(check_wielandt_scalar(a, x, y, p.m, p.M, tol));
      }
      case TheoremId::wielandt_bhatia_davis:
      case TheoremId::wielandt_gumus:
      case TheoremId::wielandt_refined: {
        if (n_ < 2) return kNegInf;
        const SpdMatrix a = spd(s, 0);
        const IsometryPair pair = isometries_from(s.frames[1], 1);
        keep("A", a.matrix());
        keep("X", pair.x);
        keep("Y", pair.y);
        const auto variant = config_.theorem == TheoremId::wielandt_bhatia_davis ? WielandtVariant::bhatia_davis
                             : config_.theorem == TheoremId::wielandt_gumus      ? WielandtVariant::gumus
                                                                                 : WielandtVariant::refined;
        return pick(check_wielandt_operator(PositiveMapSpec::identity(1), a, pair, p, variant, tol));
      }
      case TheoremId::choi: {
        const SpdMatrix t = spd(s, 0);
        keep("T", t.matrix());
        return pick(check_choi_record(map_, t, tol));
      }
      case TheoremId::norm_amgm: {
        const Matrix a = psd(s, 0);
        const Matrix b = psd(s, 1);
        keep("A", a);
        keep("B", b);
        return pick(check_norm_amgm_record(a, b, tol));
      }
    }
    return kNegInf;
  }

  const SearchConfig& config_;
  Regime regime_;
  Layout layout_;
  int n_;
  PositiveMapSpec map_ = PositiveMapSpec::identity(1);
  std::vector<Matrix> family_;
};

double coord(const BoundParams& p, int c) {
  switch (c) {
    case 0: return p.m;
    case 1: return p.m_prime;
    case 2: return p.M_prime;
    default: return p.M;
  }
}

void set_coord(BoundParams& p, int c, double v) {
  switch (c) {
    case 0: p.m = v; break;
    case 1: p.m_prime = v; break;
    case 2: p.M_prime = v; break;
    default: p.M = v; break;
  }
}

std::vector<int> free_coords(const ParamBox& box, Regime regime) {
  std::vector<int> out;
  for (int c = 0; c < 4; ++c) {
    if (c == 1 && !uses_m_prime(regime)) continue;
    if (c == 2 && regime != Regime::sandwich) continue;
    if (coord(box.hi, c) > coord(box.lo, c)) out.push_back(c);
  }
  return out;
}

BoundParams random_in_box(const ParamBox& box, Regime regime, Rng& rng) {
  BoundParams p = box.lo;
  for (int c = 0; c < 4; ++c) {
    const double lo = coord(box.lo, c);
    const double hi = coord(box.hi, c);
    set_coord(p, c, lo + (hi - lo) * std::uniform_real_distribution<double>(0.0, 1.0)(rng));
  }
  return normalize(p, regime);
}

struct RestartOutcome {
  double best = kNegInf;
  State state;
  std::vector<double> trace;
  int evaluations = 0;
  std::string error;
};

RestartOutcome run_restart(const SearchConfig& config, const BoundParams& start_hint, int restart,
                           int budget, std::uint64_t stream) {
  RestartOutcome out;
  Rng rng(derive_seed(config.seed, stream, static_cast<std::uint64_t>(restart)));
  const Problem problem(config, rng);
  const Regime regime = problem.regime();
  const std::vector<int> coords = free_coords(config.box, regime);

  BoundParams start = start_hint;
  for (int i = 0; i < kInitTries && !coords.empty(); ++i) {
    const BoundParams p = random_in_box(config.box, regime, rng);
    if (feasible(regime, p)) {
      start = p;
      break;
    }
  }
  State current = problem.initial(start, rng);
  problem.project(current);
  double current_ratio = problem.evaluate(current);
  out.evaluations = 1;
  out.trace.push_back(current_ratio);

  const Layout& layout = problem.layout();
  std::vector<int> moves;
  if (layout.spectra > 0) moves.push_back(0);
  if (layout.frames > 0 && problem.dim() >= 2) moves.push_back(1);
  if (layout.vecs > 0 && problem.dim() >= 2) moves.push_back(2);
  if (!coords.empty()) moves.push_back(3);
  if (layout.uses_t) moves.push_back(4);

  std::uniform_real_distribution<double> unit(0.0, 1.0);
  auto index = [&rng](int count) { return static_cast<int>(rng() % static_cast<std::uint64_t>(count)); };
  const int steps = std::max(0, budget - 1);
  for (int e = 0; e < steps && !moves.empty(); ++e) {
    const double frac = steps > 1 ? static_cast<double>(e) / (steps - 1) : 0.0;
    const double delta = kDeltaStart * std::pow(kDeltaEnd / kDeltaStart, frac);
    const double sign = rng() % 2 == 0 ? 1.0 : -1.0;
    State cand = current;
    switch (moves[static_cast<std::size_t>(index(static_cast<int>(moves.size())))]) {
      case 0: {
        Vector& v = cand.spectra[static_cast<std::size_t>(index(layout.spectra))];
        v(index(static_cast<int>(v.size()))) *= 1.0 + sign * delta;
        break;
      }
      case 1: {
        Matrix& q = cand.frames[static_cast<std::size_t>(index(layout.frames))];
        const int n = static_cast<int>(q.rows());
        const int i = index(n);
        int j = index(n - 1);
        if (j >= i) ++j;
        const double c = std::cos(sign * delta);
        const double s = std::sin(sign * delta);
        const Vector qi = q.col(i);
        q.col(i) = c * qi - s * q.col(j);
        q.col(j) = s * qi + c * q.col(j);
        break;
      }
      case 2: {
        Vector& v = cand.vecs[static_cast<std::size_t>(index(layout.vecs))];
        for (int i = 0; i < v.size(); ++i) v(i) += delta * (2.0 * unit(rng) - 1.0);
        const double norm = v.norm();
        if (norm > 0.0) v /= norm;
        break;
      }
      case 3: {
        const int c = coords[static_cast<std::size_t>(index(static_cast<int>(coords.size())))];
        const double v = std::clamp(coord(cand.params, c) * (1.0 + sign * delta), coord(config.box.lo, c),
                                    coord(config.box.hi, c));
        set_coord(cand.params, c, v);
        cand.params = normalize(cand.params, regime);
        break;
      }
      default:
        cand.t += sign * delta;
        break;
    }
    ++out.evaluations;
    if (!feasible(regime, cand.params)) continue;
    problem.project(cand);
    const double r = problem.evaluate(cand);
    if (r >= current_ratio) {
      if (r > current_ratio) out.trace.push_back(r);
      current_ratio = r;
      current = std::move(cand);
    }
  }
  out.best = current_ratio;
  out.state = std::move(current);
  return out;
}

std::uint64_t search_stream(const SearchConfig& config) {
  std::uint64_t h = cell_stream(config.theorem, config.dim, config.box.lo);
  h = mix_seed(h ^ cell_stream(config.theorem, config.dim, config.box.hi));
  return mix_seed(h + static_cast<std::uint64_t>(config.bound));
}

}  // namespace

Regime search_regime(TheoremId theorem, BoundKind bound) {
  if (theorem == TheoremId::kantorovich && bound == BoundKind::classical) return Regime::plain;
  // The unbounded scalar form needs no spread hypothesis.
  if (theorem == TheoremId::scalar_amgm) return Regime::plain;
  return theorem_regime(theorem);
}

SearchResult maximize_ratio(const SearchConfig& config) { return maximize_ratio(config, Execution::parallel); }

SearchResult maximize_ratio(const SearchConfig& config, Execution mode) {
  if (config.budget < 1) throw InvalidArgument("search needs budget >= 1");
  if (config.restarts < 1) throw InvalidArgument("search needs restarts >= 1");
  if (config.dim < 1 || config.dim > 8) throw InvalidArgument("search dims must lie in [1, 8]");
  const Regime regime = search_regime(config.theorem, config.bound);
  for (int c = 0; c < 4; ++c) {
    if (coord(config.box.lo, c) > coord(config.box.hi, c)) throw InvalidArgument("search box has lo > hi");
  }

  // A feasible anchor: a box corner, or failing that a random interior point.
  BoundParams anchor;
  bool found = false;
  for (const BoundParams& p : {normalize(config.box.lo, regime), normalize(config.box.hi, regime)}) {
    if (feasible(regime, p)) {
      anchor = p;
      found = true;
      break;
    }
  }
  Rng probe(derive_seed(config.seed, 0, 0));
  for (int i = 0; i < kInitTries && !found; ++i) {
    const BoundParams p = random_in_box(config.box, regime, probe);
    if (feasible(regime, p)) {
      anchor = p;
      found = true;
    }
  }
  if (!found) {
    throw InfeasibleRegime("search box has no point satisfying the " + std::string(regime_name(regime)) +
                           " regime: " + check_feasible(regime, normalize(config.box.lo, regime)).reason);
  }

  const int per_restart = std::max(1, config.budget / config.restarts);
  const std::uint64_t stream = search_stream(config);
  std::vector<RestartOutcome> outcomes(static_cast<std::size_t>(config.restarts));
  auto one = [&](int r) {
    try {
      outcomes[static_cast<std::size_t>(r)] = run_restart(config, anchor, r, per_restart, stream);
    } catch (const std::exception& e) {
      outcomes[static_cast<std::size_t>(r)].error = e.what();
    }
  };
  if (mode == Execution::parallel) {
#pragma omp parallel for schedule(dynamic, 1)
    for (int r = 0; r < config.restarts; ++r) one(r);
  } else {
    for (int r = 0; r < config.restarts; ++r) one(r);
  }

  SearchResult result;
  result.best_ratio = kNegInf;
  for (int r = 0; r < config.restarts; ++r) {
    const RestartOutcome& o = outcomes[static_cast<std::size_t>(r)];
    if (!o.error.empty()) throw Error("search restart " + std::to_string(r) + ": " + o.error);
    result.evaluations += o.evaluations;
    result.restart_ratios.push_back(o.best);
    if (o.best > result.best_ratio) {
      result.best_ratio = o.best;
      result.best_restart = r;
    }
  }
  const RestartOutcome& win = outcomes[static_cast<std::size_t>(result.best_restart)];
  result.params = win.state.params;
  result.trace = win.trace;
  Rng rng(derive_seed(config.seed, stream, static_cast<std::uint64_t>(result.best_restart)));
  const Problem problem(config, rng);
  problem.evaluate(win.state, &result.instance);
  return result;
}

// ---------------------------------------------------------------------------

bool CompareTable::all_monotone() const {
  return std::all_of(monotonicity.begin(), monotonicity.end(),
                     [](const MonotonicityReport& m) { return m.strictly_decreasing; });
}

CompareTable compare_bounds(const std::vector<BoundParams>& grid) {
  CompareTable table;
  // (name, m, M) -> (argument, refined)
  std::map<std::tuple<std::string, double, double>, std::vector<std::pair<double, double>>> series;
  std::map<std::string, std::string> argument_names;
  for (const BoundParams& p : grid) {
    const ConstantsTable constants = refinement_constants(p);
    for (const ConstantRow& c : constants.rows) {
      CompareRow row;
      row.params = p;
      row.name = c.name;
      row.argument_name = c.argument_name;
      row.argument = c.argument;
      row.classical = c.classical;
      row.refined = c.refined;
      row.improvement_pct = 100.0 * (1.0 - c.improvement_ratio);
      row.feasible = c.feasible;
      table.rows.push_back(row);
      if (c.power > 0 && c.feasible && c.argument >= 1.0) {
        series[{c.name, p.m, p.M}].emplace_back(c.argument, c.refined);
        argument_names[c.name] = c.argument_name;
      }
    }
  }
  std::map<std::string, MonotonicityReport> per_name;
  for (auto& [key, points] : series) {
    const std::string& name = std::get<0>(key);
    MonotonicityReport& rep = per_name[name];
    rep.name = name;
    rep.argument_name = argument_names[name];
    std::sort(points.begin(), points.end());
    rep.points += static_cast<int>(points.size());
    for (std::size_t i = 1; i < points.size(); ++i) {
      if (points[i].first > points[i - 1].first && !(points[i].second < points[i - 1].second)) {
        rep.strictly_decreasing = false;
      }
    }
  }
  for (auto& [name, rep] : per_name) table.monotonicity.push_back(rep);
  return table;
}

}  // namespace opineq
