#include "opineq/campaign.hpp"

#include <algorithm>
#include <bit>
#include <cstring>
#include <exception>
#include <limits>

#include "opineq/errors.hpp"

namespace opineq {

namespace {

struct InstanceSummary {
  std::uint64_t checks = 0;
  std::uint64_t refined_violations = 0;
  std::uint64_t classical_violations = 0;
  std::uint64_t conjecture_exceedances = 0;
  std::uint64_t near_tight = 0;
  double max_ratio = -std::numeric_limits<double>::infinity();
  double min_slack = std::numeric_limits<double>::infinity();
  double slack_sum = 0.0;
};

InstanceSummary summarize(const InstanceResult& result) {
  InstanceSummary s;
  for (const IneqRecord& r : result.records) {
    ++s.checks;
    if (!r.refined_holds()) ++s.refined_violations;
    if (!r.classical_holds()) ++s.classical_violations;
    if (r.conjecture && !r.conjecture->holds) ++s.conjecture_exceedances;
    if (r.near_tight) ++s.near_tight;
    s.max_ratio = std::max(s.max_ratio, r.max_ratio());
    const double slack = r.min_rel_slack();
    s.min_slack = std::min(s.min_slack, slack);
    s.slack_sum += slack;
  }
  return s;
}

std::uint64_t fnv1a(std::uint64_t h, const void* data, std::size_t size) {
  const auto* p = static_cast<const unsigned char*>(data);
  for (std::size_t i = 0; i < size; ++i) {
    h ^= p[i];
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::uint64_t fnv_double(std::uint64_t h, double v) {
  const auto bits = std::bit_cast<std::uint64_t>(v);
  return fnv1a(h, &bits, sizeof bits);
}

CellReport run_cell(const CampaignConfig& config, TheoremId theorem, int dim,
                    const BoundParams& params, Execution mode) {
  const std::uint64_t stream = cell_stream(theorem, dim, params);
  const auto n = static_cast<std::size_t>(config.samples);
  std::vector<InstanceSummary> summaries(n);
  std::vector<std::string> errors(n);

  auto one = [&](std::size_t i) {
    Fingerprint fp;
    fp.seed = derive_seed(config.seed, stream, i);
    fp.dim = dim;
    fp.params = params;
    fp.sample_index = i;
    try {
      summaries[i] = summarize(evaluate_instance(theorem, fp, config.tol, config.vectors_per_instance));
    } catch (const std::exception& e) {
      errors[i] = e.what();
    }
  };

  if (mode == Execution::parallel) {
    const auto count = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(dynamic, 8)
    for (std::ptrdiff_t i = 0; i < count; ++i) one(static_cast<std::size_t>(i));
  } else {
    for (std::size_t i = 0; i < n; ++i) one(i);
  }

  CellReport cell;
  cell.theorem = theorem;
  cell.dim = dim;
  cell.params = params;
  cell.samples = config.samples;
  cell.max_ratio = -std::numeric_limits<double>::infinity();
  cell.min_slack = std::numeric_limits<double>::infinity();
  double slack_sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (!errors[i].empty()) {
      throw Error(std::string(theorem_name(theorem)) + " instance " + std::to_string(i) + ": " +
                  errors[i]);
    }
    const InstanceSummary& s = summaries[i];
    cell.checks += s.checks;
    cell.refined_violations += s.refined_violations;
    cell.classical_violations += s.classical_violations;
    cell.conjecture_exceedances += s.conjecture_exceedances;
    cell.near_tight += s.near_tight;
    cell.max_ratio = std::max(cell.max_ratio, s.max_ratio);
    if (s.min_slack < cell.min_slack) {
      cell.min_slack = s.min_slack;
      cell.extremal.seed = derive_seed(config.seed, stream, i);
      cell.extremal.dim = dim;
      cell.extremal.params = params;
      cell.extremal.sample_index = i;
    }
    slack_sum += s.slack_sum;
  }
  cell.violations = cell.refined_violations + cell.classical_violations;
  cell.mean_slack = cell.checks > 0 ? slack_sum / static_cast<double>(cell.checks) : 0.0;
  if (cell.checks == 0) {
    cell.max_ratio = 0.0;
    cell.min_slack = 0.0;
  }
  return cell;
}

}  // namespace

const std::vector<BoundParams>& default_grid(Regime regime) {
  static const std::map<Regime, std::vector<BoundParams>> grids = {
      {Regime::relative, {BoundParams::pair(4.0, 9.0), BoundParams::pair(1.5, 4.0)}},
      {Regime::shifted, {BoundParams::triple(1.0, 3.0, 3.0), BoundParams::triple(1.0, 1.5, 4.0)}},
      {Regime::self_inverse_low,
       {BoundParams::triple(0.5, 1.21, 4.0), BoundParams::triple(0.25, 1.5, 4.0)}},
      {Regime::self_inverse_high,
       {BoundParams::triple(1.5, 4.0, 4.0), BoundParams::triple(1.0, 2.0, 4.0)}},
      {Regime::sandwich,
       {BoundParams::make(1, 1, 2, 4), BoundParams::make(1, 1, 3, 4), BoundParams::make(1, 2, 2, 4),
        BoundParams::make(1, 2, 3, 4), BoundParams::make(1, 1, 4, 4)}},
      {Regime::plain, {BoundParams::pair(2.0, 2.6), BoundParams::pair(1.0, 4.0)}},
  };
  return grids.at(regime);
}

std::uint64_t CampaignReport::total_violations() const {
  std::uint64_t total = 0;
  for (const CellReport& c : cells) total += c.violations;
  return total;
}

std::uint64_t cell_stream(TheoremId theorem, int dim, const BoundParams& params) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  const std::string_view name = theorem_name(theorem);
  h = fnv1a(h, name.data(), name.size());
  const std::int64_t d = dim;
  h = fnv1a(h, &d, sizeof d);
  for (double v : {params.m, params.m_prime, params.M_prime, params.M}) h = fnv_double(h, v);
  return h;
}

CampaignReport run_campaign(const CampaignConfig& config, Execution mode) {
  if (config.samples < 1) throw InvalidArgument("campaign needs samples >= 1");
  if (config.vectors_per_instance < 0) throw InvalidArgument("campaign needs vectors >= 0");
  if (config.theorems.empty()) throw InvalidArgument("campaign needs at least one theorem");
  if (config.dims.empty()) throw InvalidArgument("campaign needs at least one dimension");
  for (int d : config.dims) {
    if (d < 1 || d > 64) throw InvalidArgument("campaign dims must lie in [1, 64]");
  }

  CampaignReport report;
  for (TheoremId theorem : config.theorems) {
    const Regime regime = theorem_regime(theorem);
    const std::vector<BoundParams>* grid = &default_grid(regime);
    if (config.params_override) {
      grid = &*config.params_override;
    } else if (auto it = config.grids.find(regime); it != config.grids.end()) {
      grid = &it->second;
    }
    std::vector<BoundParams> feasible;
    for (const BoundParams& p : *grid) {
      const Feasibility f = check_feasible(regime, p);
      if (f.ok) {
        feasible.push_back(p);
      } else {
        report.skipped.push_back({theorem, p, f.reason});
      }
    }
    for (int dim : config.dims) {
      for (const BoundParams& p : feasible) {
        report.cells.push_back(run_cell(config, theorem, dim, p, mode));
      }
    }
  }
  if (report.cells.empty()) {
    std::string reason = "no feasible grid point";
    if (!report.skipped.empty()) reason += ": " + report.skipped.front().reason;
    throw InfeasibleRegime(reason);
  }

  for (TheoremId theorem : config.theorems) {
    const CellReport* worst = nullptr;
    for (const CellReport& c : report.cells) {
      if (c.theorem == theorem && c.checks > 0 && (!worst || c.min_slack < worst->min_slack)) worst = &c;
    }
    if (!worst) continue;
    ExtremalInstance ex;
    ex.theorem = theorem;
    ex.fingerprint = worst->extremal;
    const InstanceResult regenerated =
        evaluate_instance(theorem, ex.fingerprint, config.tol, config.vectors_per_instance, true);
    const InstanceSummary s = summarize(regenerated);
    ex.min_slack = s.min_slack;
    ex.max_ratio = s.max_ratio;
    ex.matrices = regenerated.matrices;
    report.extremal.push_back(std::move(ex));
  }
  return report;
}

}  // namespace opineq
