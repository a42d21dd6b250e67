#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "opineq/inequalities.hpp"
#include "opineq/campaign.hpp"
#include "opineq/instances.hpp"

namespace opineq {

enum class BoundKind { refined, classical };

/// Axis-aligned box over (m, m', M', M); lo == hi pins the parameters.
struct ParamBox {
  BoundParams lo;
  BoundParams hi;

  static ParamBox point(const BoundParams& p) { return {p, p}; }
};

struct SearchConfig {
  TheoremId theorem = TheoremId::kantorovich;
  BoundKind bound = BoundKind::refined;
  int dim = 2;
  ParamBox box = ParamBox::point(BoundParams::pair(1.0, 4.0));
  /// Evaluations in total, split evenly over the restarts.
  int budget = 10000;
  int restarts = 8;
  std::uint64_t seed = 42;
  double tol = kDefaultTol;
};

struct SearchResult {
  double best_ratio = 0.0;
  int best_restart = 0;
  int evaluations = 0;
  BoundParams params;
  std::vector<NamedMatrix> instance;
  /// Best ratio of each restart.
  std::vector<double> restart_ratios;
  /// Running best of the winning restart after each accepted improvement.
  std::vector<double> trace;
};

/// Regime searched for a theorem and bound. The classical Kantorovich bound
/// is searched over plain spectra [m, M]; everything else uses the theorem's
/// own regime.
Regime search_regime(TheoremId theorem, BoundKind bound);

/// Random-restart hill climbing of the attained LHS/RHS ratio over spectra,
/// orthogonal frames, unit vectors and parameters. Every candidate is
/// projected back into the regime before evaluation. Throws InfeasibleRegime
/// when the box contains no feasible point and InvalidArgument on bad sizes.
SearchResult maximize_ratio(const SearchConfig& config, Execution mode);
SearchResult maximize_ratio(const SearchConfig& config);

// ---------------------------------------------------------------------------

struct CompareRow {
  BoundParams params;
  std::string name;
  std::string argument_name;
  double argument = 1.0;
  double classical = 0.0;
  double refined = 0.0;
  /// 100 (1 - refined / classical)
  double improvement_pct = 0.0;
  bool feasible = true;
};

struct MonotonicityReport {
  std::string name;
  std::string argument_name;
  int points = 0;
  bool strictly_decreasing = true;
};

struct CompareTable {
  std::vector<CompareRow> rows;
  std::vector<MonotonicityReport> monotonicity;

  bool all_monotone() const;
};

/// Classical and refined constants at each grid point. Monotonicity is
/// checked per bound on the feasible points sharing (m, M), sorted by the
/// refinement argument (points with argument < 1 are outside every stated
/// regime and are not compared).
CompareTable compare_bounds(const std::vector<BoundParams>& grid);

}  // namespace opineq
