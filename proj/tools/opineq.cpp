#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "opineq/campaign.hpp"
#include "opineq/errors.hpp"
#include "opineq/inequalities.hpp"
#include "opineq/report.hpp"
#include "opineq/search.hpp"

namespace {

using namespace opineq;

constexpr int kExitViolation = 1;
constexpr int kExitSearchExceeded = 2;
constexpr int kExitUsage = 64;
constexpr int kExitInfeasible = 65;
constexpr int kExitInternal = 70;

std::string g(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

BoundParams parse_params(const std::string& text) {
  const auto parts = split(text, ',');
  if (parts.size() != 2 && parts.size() != 3 && parts.size() != 4) {
    throw CLI::ValidationError("--params", "expected m,M or m,m',M or m,m',M',M but got '" + text + "'");
  }
  std::vector<double> v;
  for (const auto& p : parts) {
    try {
      v.push_back(std::stod(p));
    } catch (const std::exception&) {
      throw CLI::ValidationError("--params", "not a number: '" + p + "'");
    }
  }
  if (v.size() == 2) return BoundParams::pair(v[0], v[1]);
  if (v.size() == 3) return BoundParams::triple(v[0], v[1], v[2]);
  return BoundParams::make(v[0], v[1], v[2], v[3]);
}

std::vector<TheoremId> parse_theorems(const std::string& text) {
  if (text == "all") return all_theorems();
  std::vector<TheoremId> out;
  for (const auto& name : split(text, ',')) {
    const auto id = parse_theorem(name);
    if (!id) throw CLI::ValidationError("--theorems", "unknown theorem id '" + name + "'");
    out.push_back(*id);
  }
  if (out.empty()) throw CLI::ValidationError("--theorems", "no theorem given");
  return out;
}

std::string params_text(const BoundParams& p) {
  return "m=" + g(p.m) + " m'=" + g(p.m_prime) + " M'=" + g(p.M_prime) + " M=" + g(p.M);
}

struct VerifyArgs {
  std::string theorems = "all";
  std::vector<int> dims{2, 3, 4, 8};
  int samples = 1000;
  std::uint64_t seed = 42;
  double tol = kDefaultTol;
  int vectors = 16;
  std::vector<std::string> params;
  std::string out;
  std::string csv;
  bool serial = false;
  bool quiet = false;
};

int run_verify(const VerifyArgs& a) {
  CampaignConfig config;
  config.theorems = parse_theorems(a.theorems);
  config.dims = a.dims;
  config.samples = a.samples;
  config.seed = a.seed;
  config.tol = a.tol;
  config.vectors_per_instance = a.vectors;
  if (!a.params.empty()) {
    std::vector<BoundParams> grid;
    for (const auto& p : a.params) grid.push_back(parse_params(p));
    config.params_override = grid;
  }
  const CampaignReport report = run_campaign(config, a.serial ? Execution::serial : Execution::parallel);
  const ReportDocument doc = make_report(config, report, utc_timestamp());
  if (!a.out.empty()) emit_report(doc, ReportFormat::json, a.out);
  if (!a.csv.empty()) emit_report(doc, ReportFormat::csv, a.csv);

  if (!a.quiet) {
    std::printf("%-22s %3s  %-30s %9s %6s %10s %6s %14s %12s\n", "theorem", "dim", "params", "checks",
                "viol", "(classic)", "conj", "max_ratio", "min_slack");
    for (const CellReport& c : report.cells) {
      std::printf("%-22s %3d  %-30s %9llu %6llu %10llu %6llu %14.10f %12.4e\n",
                  std::string(theorem_name(c.theorem)).c_str(), c.dim,
                  (g(c.params.m) + "," + g(c.params.m_prime) + "," + g(c.params.M_prime) + "," + g(c.params.M)).c_str(),
                  static_cast<unsigned long long>(c.checks), static_cast<unsigned long long>(c.violations),
                  static_cast<unsigned long long>(c.classical_violations),
                  static_cast<unsigned long long>(c.conjecture_exceedances), c.max_ratio, c.min_slack);
    }
    for (const SkippedCell& s : report.skipped) {
      std::printf("skipped %s at %s: %s\n", std::string(theorem_name(s.theorem)).c_str(),
                  params_text(s.params).c_str(), s.reason.c_str());
    }
  }
  const auto total = report.total_violations();
  std::printf("%s: %llu violation(s) in %zu cell(s)\n", total == 0 ? "PASS" : "FAIL",
              static_cast<unsigned long long>(total), report.cells.size());
  return total == 0 ? 0 : kExitViolation;
}

struct SearchArgs {
  std::string theorem = "kantorovich";
  std::string bound = "refined";
  int dim = 2;
  int budget = 10000;
  int restarts = 8;
  std::uint64_t seed = 42;
  double tol = kDefaultTol;
  std::string lo;
  std::string hi;
  std::string params;
  std::string out;
  bool serial = false;
};

int run_search(const SearchArgs& a) {
  SearchConfig config;
  const auto id = parse_theorem(a.theorem);
  if (!id) throw CLI::ValidationError("--theorem", "unknown theorem id '" + a.theorem + "'");
  config.theorem = *id;
  config.bound = a.bound == "classical" ? BoundKind::classical : BoundKind::refined;
  config.dim = a.dim;
  config.budget = a.budget;
  config.restarts = a.restarts;
  config.seed = a.seed;
  config.tol = a.tol;
  const Regime regime = search_regime(config.theorem, config.bound);
  if (!a.params.empty()) {
    config.box = ParamBox::point(parse_params(a.params));
  } else if (!a.lo.empty() || !a.hi.empty()) {
    if (a.lo.empty() || a.hi.empty()) throw CLI::ValidationError("--lo/--hi", "both corners are required");
    config.box = {parse_params(a.lo), parse_params(a.hi)};
  } else {
    config.box = ParamBox::point(default_grid(regime).front());
  }

  const SearchResult r = maximize_ratio(config, a.serial ? Execution::serial : Execution::parallel);
  std::printf("theorem %s (%s bound, %s regime), dim %d\n", a.theorem.c_str(), a.bound.c_str(),
              std::string(regime_name(regime)).c_str(), config.dim);
  std::printf("evaluations %d over %d restart(s)\n", r.evaluations, config.restarts);
  std::printf("best ratio %.17g (restart %d) at %s\n", r.best_ratio, r.best_restart, params_text(r.params).c_str());
  for (const NamedMatrix& m : r.instance) {
    std::ostringstream os;
    os << m.value.format(Eigen::IOFormat(Eigen::FullPrecision, 0, ", ", "\n    ", "[", "]"));
    std::printf("  %s =\n    %s\n", m.name.c_str(), os.str().c_str());
  }

  if (!a.out.empty()) {
    nlohmann::json instance = nlohmann::json::object();
    for (const NamedMatrix& m : r.instance) {
      nlohmann::json rows = nlohmann::json::array();
      for (Eigen::Index i = 0; i < m.value.rows(); ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (Eigen::Index k = 0; k < m.value.cols(); ++k) row.push_back(m.value(i, k));
        rows.push_back(row);
      }
      instance[m.name] = rows;
    }
    const nlohmann::json doc = {
        {"theorem_id", a.theorem},
        {"bound", a.bound},
        {"dim", config.dim},
        {"seed", config.seed},
        {"budget", config.budget},
        {"restarts", config.restarts},
        {"best_ratio", r.best_ratio},
        {"best_restart", r.best_restart},
        {"restart_ratios", r.restart_ratios},
        {"params", {{"m", r.params.m}, {"m_prime", r.params.m_prime}, {"M_prime", r.params.M_prime}, {"M", r.params.M}}},
        {"instance", instance}};
    std::ofstream f(a.out, std::ios::binary);
    if (!f) throw Error("cannot open " + a.out + " for writing");
    f << canonical_dump(doc);
  }
  if (r.best_ratio > 1.0 + config.tol) {
    std::printf("EXCEEDED: ratio above 1 + tol\n");
    return kExitSearchExceeded;
  }
  return 0;
}

struct ConstantsArgs {
  double m = 1.0;
  double mp = 2.0;
  double Mp = 3.0;
  double M = 4.0;
  bool json = false;
};

int run_constants(const ConstantsArgs& a) {
  const ConstantsTable t = refinement_constants(BoundParams::make(a.m, a.mp, a.Mp, a.M));
  if (a.json) {
    nlohmann::json rows = nlohmann::json::array();
    for (const ConstantRow& r : t.rows) {
      rows.push_back({{"name", r.name}, {"classical", r.classical}, {"refined", r.refined},
                      {"divisor", r.divisor}, {"power", r.power}, {"argument_name", r.argument_name},
                      {"argument", r.argument}, {"improvement_ratio", r.improvement_ratio},
                      {"feasible", r.feasible}});
    }
    const nlohmann::json doc = {
        {"params", {{"m", a.m}, {"m_prime", a.mp}, {"M_prime", a.Mp}, {"M", a.M}}},
        {"log_base", t.log_base},
        {"h", t.params.h()},
        {"K_h", t.params.K_h()},
        {"rows", rows}};
    std::cout << canonical_dump(doc);
    return 0;
  }
  std::printf("%s, h = M/m = %s, K(h) = %.17g, log base: %s\n", params_text(t.params).c_str(),
              g(t.params.h()).c_str(), t.params.K_h(), t.log_base.c_str());
  std::printf("%-24s %22s %22s %20s %8s %10s\n", "bound", "classical", "refined", "divisor", "arg",
              "feasible");
  for (const ConstantRow& r : t.rows) {
    const std::string arg = r.power == 0 ? "-" : r.argument_name + "=" + g(r.argument);
    std::printf("%-24s %22.17g %22.17g %20.17g %8s %10s\n", r.name.c_str(), r.classical, r.refined,
                r.divisor, arg.c_str(), r.feasible ? "yes" : "no");
  }
  return 0;
}

void demo_line(const char* what, const IneqRecord& r) {
  std::printf("%-52s lhs %.10g  rhs %.10g  slack %.3e  %s\n", what, r.lhs_value, r.rhs_value,
              r.verdict.rel_slack, r.verdict.holds ? "holds" : "FAILS");
}

int run_demo() {
  std::printf("constants\n");
  std::printf("  K(4) = %.17g, K(4)^2 = %.17g\n", kantorovich_constant(4.0),
              std::pow(kantorovich_constant(4.0), 2));
  std::printf("  (1 + (ln 4)^2/8)^2 = %.17g\n", std::pow(refinement_factor(4.0), 2));
  std::printf("  1 + (ln e^2)^2/8 = %.17g\n", refinement_factor(std::exp(2.0)));

  std::printf("worked instances\n");
  {
    const auto spec = PositiveMapSpec::identity(1);
    const auto a = SpdMatrix::scaled_identity(1, 1.0);
    const auto b = SpdMatrix::scaled_identity(1, 4.0);
    const auto p = BoundParams::make(1.0, 1.0, 4.0, 4.0);
    demo_line("1x1 squared mapped-mean bound, a=1, b=4",
              check_lin_refined_squared(spec, a, b, p, LinVariant::mapped_mean));
  }
  {
    Matrix frame = Matrix::Identity(2, 2);
    const auto a = SpdMatrix::diagonal((Vector(2) << 2.0, 2.6).finished());
    const double s = std::sqrt(0.5);
    frame << s, s, s, -s;
    const IsometryPair pair = isometries_from(frame, 1);
    const auto p = BoundParams::triple(1.5, 4.0, 4.0);
    const auto spec = PositiveMapSpec::identity(1);
    const IneqRecord refined = check_wielandt_operator(spec, a, pair, p, WielandtVariant::refined);
    const IneqRecord gumus = check_wielandt_operator(spec, a, pair, p, WielandtVariant::gumus);
    demo_line("2x2 operator Wielandt, A=diag(2,2.6), refined", refined);
    demo_line("2x2 operator Wielandt, A=diag(2,2.6), previous", gumus);
  }
  std::printf("equality witnesses\n");
  {
    const auto a = SpdMatrix::diagonal((Vector(2) << 1.0, 4.0).finished());
    const Vector x = (Vector(2) << 1.0, 1.0).finished() / std::sqrt(2.0);
    demo_line("Kantorovich at A=diag(1,4), x=(1,1)/sqrt2", check_kantorovich_classical(a, x, 1.0, 4.0));
    demo_line("scalar refined AM-GM at a=b=3", scalar_refined_amgm(3.0, 3.0));
  }
  std::printf("degree-inconsistent variants\n");
  {
    const auto a = SpdMatrix::scaled_identity(1, 10.0);
    const auto b = SpdMatrix::scaled_identity(1, 10.1);
    const auto p = BoundParams::triple(10.0, 1.01, 10.1);
    const Vector x = Vector::Ones(1);
    demo_line("unsquared product reading, a=10, b=10.1", check_kantorovich_product_literal(a, b, x, p));
    demo_line("squared product reading, a=10, b=10.1", check_kantorovich_product_refined(a, b, x, p));
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical verification of refined operator inequalities"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolVersion);

  std::uint64_t default_seed = 42;
  if (const char* env = std::getenv("OPINEQ_SEED")) {
    try {
      default_seed = std::stoull(env);
    } catch (const std::exception&) {
      std::cerr << "OPINEQ_SEED is not an unsigned integer: " << env << "\n";
      return kExitUsage;
    }
  }

  VerifyArgs va;
  va.seed = default_seed;
  auto* verify = app.add_subcommand("verify", "run seeded verification campaigns; exit 1 on any violation");
  verify->add_option("--theorems", va.theorems, "comma-separated theorem ids or 'all'")->capture_default_str();
  verify->add_option("--dims", va.dims, "dimensions")->delimiter(',')->check(CLI::Range(1, 64))->capture_default_str();
  verify->add_option("--samples", va.samples, "instances per cell")->check(CLI::PositiveNumber)->capture_default_str();
  verify->add_option("--seed", va.seed, "master seed (default from OPINEQ_SEED)")->capture_default_str();
  verify->add_option("--tol", va.tol, "relative tolerance")->check(CLI::PositiveNumber)->capture_default_str();
  verify->add_option("--vectors", va.vectors, "random unit vectors per instance")->check(CLI::NonNegativeNumber)->capture_default_str();
  verify->add_option("--params", va.params, "grid point m,M | m,m',M | m,m',M',M (repeatable)");
  verify->add_option("--out", va.out, "JSON report path");
  verify->add_option("--csv", va.csv, "CSV summary path");
  verify->add_flag("--serial", va.serial, "single-threaded reference run");
  verify->add_flag("--quiet", va.quiet, "print only the verdict line");

  SearchArgs sa;
  sa.seed = default_seed;
  auto* search = app.add_subcommand("search", "maximize the attained ratio; exit 2 if it exceeds 1 + tol");
  search->add_option("--theorem", sa.theorem, "theorem id")->capture_default_str();
  search->add_option("--bound", sa.bound, "refined or classical")->check(CLI::IsMember({"refined", "classical"}))->capture_default_str();
  search->add_option("--dim", sa.dim, "dimension")->check(CLI::Range(1, 8))->capture_default_str();
  search->add_option("--budget", sa.budget, "total evaluations")->check(CLI::PositiveNumber)->capture_default_str();
  search->add_option("--restarts", sa.restarts, "random restarts")->check(CLI::PositiveNumber)->capture_default_str();
  search->add_option("--seed", sa.seed, "master seed (default from OPINEQ_SEED)")->capture_default_str();
  search->add_option("--tol", sa.tol, "tolerance for the exceedance check")->check(CLI::PositiveNumber)->capture_default_str();
  search->add_option("--params", sa.params, "fixed parameters m,M | m,m',M | m,m',M',M");
  search->add_option("--lo", sa.lo, "lower corner of the parameter box");
  search->add_option("--hi", sa.hi, "upper corner of the parameter box");
  search->add_option("--out", sa.out, "JSON result path");
  search->add_flag("--serial", sa.serial, "run restarts sequentially");

  ConstantsArgs ca;
  auto* constants = app.add_subcommand("constants", "classical and refined constants at one parameter point");
  constants->add_option("--m", ca.m, "m")->capture_default_str();
  constants->add_option("--mp", ca.mp, "m'")->capture_default_str();
  constants->add_option("--Mp", ca.Mp, "M'")->capture_default_str();
  constants->add_option("--M", ca.M, "M")->capture_default_str();
  constants->add_flag("--json", ca.json, "emit JSON");

  auto* demo = app.add_subcommand("demo", "evaluate the worked examples and print their slack");

  try {
    app.parse(argc, argv);
    if (*verify) return run_verify(va);
    if (*search) return run_search(sa);
    if (*constants) return run_constants(ca);
    if (*demo) return run_demo();
  } catch (const CLI::CallForHelp&) {
    std::cout << app.help();
    return 0;
  } catch (const CLI::CallForVersion&) {
    std::cout << kToolVersion << "\n";
    return 0;
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  } catch (const InfeasibleRegime& e) {
    std::cerr << "infeasible parameters: " << e.what() << "\n";
    return kExitInfeasible;
  } catch (const InvalidArgument& e) {
    std::cerr << "invalid parameters: " << e.what() << "\n";
    return kExitInfeasible;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitUsage;
}
