#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "opineq/inequalities.hpp"
#include "opineq/instances.hpp"

namespace opineq {

enum class Execution { serial, parallel };

struct CampaignConfig {
  std::vector<TheoremId> theorems;
  std::vector<int> dims{2, 3, 4, 8};
  int samples = 1000;
  std::uint64_t seed = 42;
  double tol = kDefaultTol;
  int vectors_per_instance = 16;
  /// Grid per regime; regimes without an entry use default_grid().
  std::map<Regime, std::vector<BoundParams>> grids;
  /// When set, replaces the grid of every regime.
  std::optional<std::vector<BoundParams>> params_override;
};

/// Documented parameter points of each regime.
const std::vector<BoundParams>& default_grid(Regime regime);

struct CellReport {
  TheoremId theorem = TheoremId::scalar_amgm;
  int dim = 0;
  BoundParams params;
  int samples = 0;
  std::uint64_t checks = 0;
  /// refined_violations + classical_violations
  std::uint64_t violations = 0;
  std::uint64_t refined_violations = 0;
  std::uint64_t classical_violations = 0;
  /// Informational: exceedances of the conjectured Wielandt constant.
  std::uint64_t conjecture_exceedances = 0;
  std::uint64_t near_tight = 0;
  double max_ratio = 0.0;
  double min_slack = 0.0;
  double mean_slack = 0.0;
  /// Instance holding min_slack.
  Fingerprint extremal;
};

struct SkippedCell {
  TheoremId theorem = TheoremId::scalar_amgm;
  BoundParams params;
  std::string reason;
};

struct ExtremalInstance {
  TheoremId theorem = TheoremId::scalar_amgm;
  Fingerprint fingerprint;
  double min_slack = 0.0;
  double max_ratio = 0.0;
  std::vector<NamedMatrix> matrices;
};

struct CampaignReport {
  std::vector<CellReport> cells;
  std::vector<SkippedCell> skipped;
  /// Worst-slack instance per theorem, regenerated with its inputs.
  std::vector<ExtremalInstance> extremal;

  std::uint64_t total_violations() const;
};

/// Stream id of a cell: FNV-1a over the theorem name, dimension and params.
std::uint64_t cell_stream(TheoremId theorem, int dim, const BoundParams& params);

/// Runs every (theorem, dim, feasible grid point) cell. Instances own
/// independent RNG streams and are reduced in index order, so both execution
/// modes return identical reports. Throws InfeasibleRegime when no cell is
/// feasible and InvalidArgument on bad sizes.
CampaignReport run_campaign(const CampaignConfig& config, Execution mode = Execution::parallel);

}  // namespace opineq
