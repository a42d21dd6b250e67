// Acceptance criteria: one PASS/FAIL line each. Exits non-zero if any fails.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "cli_runner.hpp"
#include "diagonal_oracle.hpp"
#include "opineq/campaign.hpp"
#include "opineq/inequalities.hpp"
#include "opineq/report.hpp"
#include "opineq/search.hpp"
#include "oracles.hpp"

using namespace opineq;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, double a, double b = 0, double c = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("opineq_acceptance_" + name)).string();
}

const std::string kFullRun = "verify --theorems all --dims 2,3,4,8 --samples 1000 --seed 42 --tol 1e-8 --quiet";

Outcome soundness() {
  const CliRun r = run_cli(kFullRun + " --out " + temp_path("run1.json"));
  std::string last = r.out;
  while (!last.empty() && last.back() == '\n') last.pop_back();
  last = last.substr(last.rfind('\n') + 1);
  return {r.status == 0, "exit " + std::to_string(r.status) + "; " + last};
}

Outcome constants() {
  const double k4 = kantorovich_constant(4.0);
  const double divisor = std::pow(refinement_factor(4.0), 2);
  const double expected_divisor = std::pow(1.0 + std::pow(std::log(4.0), 2) / 8.0, 2);
  const double e2 = refinement_factor(std::exp(2.0));
  const ConstantsTable t = refinement_constants(BoundParams::pair(1, 4));
  const bool ok = k4 == 1.5625 && k4 * k4 == 2.44140625 && std::abs(divisor - expected_divisor) <= 1e-6 &&
                  std::abs(divisor - 1.538162) <= 1e-6 && std::abs(e2 * e2 - 9.0 / 4.0) <= 1e-12 &&
                  t.find("lin_squared")->classical == 2.44140625;
  return {ok, fmt("K(4)=%.17g divisor=%.9f factor(e^2)^2=%.15f", k4, divisor, e2 * e2)};
}

Outcome worked_instances() {
  const IneqRecord lin = check_lin_refined_squared(PositiveMapSpec::identity(1), SpdMatrix::identity(1),
                                                   SpdMatrix::scaled_identity(1, 4.0),
                                                   BoundParams::make(1, 1, 4, 4), LinVariant::mapped_mean);
  // (5/2)^2 against K(4)^2 / R(4)^2 * (sqrt(1*4))^2.
  const double lin_rhs = std::pow(oracle::kantorovich(4.0), 2) / std::pow(oracle::refine(4.0), 2) * 4.0;

  const auto a = SpdMatrix::diagonal((Vector(2) << 2.0, 2.6).finished());
  const double s = std::sqrt(0.5);
  const IsometryPair pair{(Vector(2) << s, s).finished(), (Vector(2) << s, -s).finished()};
  const auto p = BoundParams::triple(1.5, 4.0, 4.0);
  const IneqRecord refined = check_wielandt_operator(PositiveMapSpec::identity(1), a, pair, p, WielandtVariant::refined);
  const IneqRecord gumus = check_wielandt_operator(PositiveMapSpec::identity(1), a, pair, p, WielandtVariant::gumus);
  // <x,Ay> = -0.3, <x,Ax> = <y,Ay> = 2.3.
  const double lhs = 0.09 / (2.3 * 2.3);
  const double k2 = std::pow(2.5 / 5.5, 2);
  const double gumus_rhs = k2 * std::sqrt(oracle::kantorovich(4.0 / 1.5));
  const double refined_rhs = gumus_rhs / oracle::refine(4.0);

  bool ok = std::abs(lin.lhs_value - 6.25) <= 1e-12 && std::abs(lin.rhs_value - lin_rhs) <= 1e-10 &&
            std::abs(lin.rhs_value - 6.34889) <= 1e-4 && lin.verdict.holds;
  ok = ok && std::abs(refined.lhs_value - lhs) <= 1e-10 && std::abs(refined.lhs_value - 0.017013) <= 1e-5;
  ok = ok && std::abs(refined.rhs_value - refined_rhs) <= 1e-10 && std::abs(refined.rhs_value - 0.187035) <= 1e-5;
  ok = ok && std::abs(gumus.rhs_value - gumus_rhs) <= 1e-10 && std::abs(gumus.rhs_value - 0.231965) <= 1e-5;
  ok = ok && refined.verdict.holds && gumus.verdict.holds && refined.rhs_value < gumus.rhs_value;
  return {ok, fmt("%.6f <= %.6f", lin.lhs_value, lin.rhs_value) +
                  fmt("; %.6f <= %.6f < %.6f", refined.lhs_value, refined.rhs_value, gumus.rhs_value)};
}

Outcome equality_witnesses() {
  bool ok = true;
  double worst = 0.0;
  for (auto [m, M] : {std::pair{1.0, 4.0}, {2.0, 2.6}, {0.5, 50.0}}) {
    const auto a = SpdMatrix::diagonal((Vector(2) << m, M).finished());
    const Vector x = (Vector(2) << 1.0, 1.0).finished() / std::sqrt(2.0);
    const IneqRecord r = check_kantorovich_classical(a, x, m, M);
    const double expected = (M + m) * (M + m) / (4 * M * m);
    worst = std::max(worst, std::abs(r.lhs_value - expected));
    ok = ok && std::abs(r.lhs_value - expected) <= 1e-12 && r.verdict.holds;
  }
  for (double v : {0.25, 1.0, 3.0, 1e3}) {
    const IneqRecord r = scalar_refined_amgm(v, v);
    worst = std::max(worst, std::abs(r.verdict.min_gap_eig));
    ok = ok && std::abs(r.verdict.min_gap_eig) <= 1e-12 * v && r.verdict.holds;
  }
  int links = 0;
  for (double m : {1.0, 2.5}) {
    for (int n : {1, 3}) {
      const auto a = SpdMatrix::scaled_identity(n, m);
      const auto p = BoundParams::make(m, m, m, m);
      for (const auto& l : check_lin_chain(PositiveMapSpec::trace_normalize(n), a, a, p)) {
        ++links;
        worst = std::max(worst, std::abs(l.verdict.rel_slack));
        ok = ok && std::abs(l.verdict.rel_slack) <= 1e-12 && l.all_hold();
      }
    }
  }
  return {ok, fmt("worst deviation %.3e over %g chain links", worst, links)};
}

Outcome dominance() {
  std::vector<BoundParams> grid;
  for (Regime r : {Regime::relative, Regime::shifted, Regime::self_inverse_low, Regime::self_inverse_high,
                   Regime::sandwich, Regime::plain}) {
    for (const BoundParams& p : default_grid(r)) grid.push_back(p);
  }
  for (double mp : {1.25, 1.5, 2.0, 3.0}) {
    for (double Mp : {4.0, 8.0}) grid.push_back(BoundParams::make(1, mp, Mp, 16));
  }
  for (double m : {1.5, 2.0, 4.0}) grid.push_back(BoundParams::pair(m, 16));

  // Independent table: power of the divisor and the argument it is taken of.
  const std::map<std::string, std::pair<int, std::function<double(const BoundParams&)>>> powers = {
      {"lemma_amgm_coefficient", {1, [](const BoundParams& p) { return p.m; }}},
      {"kantorovich", {2, [](const BoundParams& p) { return p.m_prime; }}},
      {"kantorovich_product", {2, [](const BoundParams& p) { return p.m_prime; }}},
      {"holder_mccarthy", {2, [](const BoundParams& p) { return p.m_prime; }}},
      {"square_order", {2, [](const BoundParams& p) { return p.m_prime; }}},
      {"polya_szego", {1, [](const BoundParams& p) { return p.m_prime; }}},
      {"isometry_family", {1, [](const BoundParams& p) { return p.m_prime; }}},
      {"lin_squared", {2, [](const BoundParams& p) { return p.M_prime / p.m_prime; }}},
      {"lin_norm", {1, [](const BoundParams& p) { return p.M_prime / p.m_prime; }}},
      {"wielandt_gumus", {1, [](const BoundParams& p) { return p.m_prime; }}},
  };

  const CompareTable table = compare_bounds(grid);
  bool ok = true;
  int checked = 0;
  double worst = 0.0;
  for (const CompareRow& row : table.rows) {
    if (!row.feasible) continue;
    const auto it = powers.find(row.name);
    if (it == powers.end()) continue;
    ++checked;
    const double expected = 1.0 / std::pow(oracle::refine(it->second.second(row.params)), it->second.first);
    const double ratio = row.refined / row.classical;
    worst = std::max(worst, std::abs(ratio - expected));
    ok = ok && row.refined <= row.classical && std::abs(ratio - expected) <= 1e-12;
  }
  for (const auto& [name, spec] : powers) {
    bool seen = false;
    for (const MonotonicityReport& m : table.monotonicity) {
      if (m.name == name) seen = m.points >= 2;
    }
    ok = ok && seen;
  }
  ok = ok && table.all_monotone();
  return {ok, fmt("%g feasible rows, worst ratio error %.3e, monotone %g", checked, worst, table.all_monotone())};
}

Outcome falsifiers() {
  bool ok = true;
  for (double s : {1.0, 2.0, 5.0, 10.0}) {
    const auto p = BoundParams::triple(10 * s, 1.01, 10.1 * s);
    const auto a = SpdMatrix::scaled_identity(1, 10 * s);
    const auto b = SpdMatrix::scaled_identity(1, 10.1 * s);
    const Vector x = Vector::Ones(1);
    ok = ok && !check_kantorovich_product_literal(a, b, x, p).verdict.holds;
    ok = ok && check_kantorovich_product_refined(a, b, x, p).verdict.holds;
  }
  const auto a = SpdMatrix::from_raw((Matrix(2, 2) << 2.3, 0.3, 0.3, 2.3).finished());
  const IneqRecord w = check_wielandt_scalar(a, (Vector(2) << 1, 0).finished(), (Vector(2) << 0, 1).finished(), 2, 2.6);
  ok = ok && w.verdict.holds && std::abs(w.lhs_value - w.rhs_value) <= 1e-10;
  return {ok, fmt("Wielandt witness %.12f vs %.12f", w.lhs_value, w.rhs_value)};
}

Outcome oracle_equivalence() {
  bool ok = true;
  int cases = 0;
  std::string first;
  for (TheoremId id : all_theorems()) {
    const auto out = diag_oracle::run(id, 200, 20240);
    cases += out.cases;
    if (out.mismatches != 0) {
      ok = false;
      if (first.empty()) first = std::string(theorem_name(id)) + ": " + out.first_failure;
    }
  }
  return {ok, std::to_string(cases) + " cases" + (first.empty() ? "" : "; " + first)};
}

Outcome search_sanity() {
  SearchConfig c;
  c.theorem = TheoremId::kantorovich;
  c.bound = BoundKind::classical;
  c.dim = 2;
  c.budget = 10000;
  const SearchResult r = maximize_ratio(c);
  bool ok = r.best_ratio >= 1.0 - 1e-4 && r.best_ratio <= 1.0 + 1e-8;
  for (double v : r.restart_ratios) ok = ok && v <= 1.0 + 1e-8;
  return {ok, fmt("best ratio %.15f after %g evaluations", r.best_ratio, r.evaluations)};
}

std::string without_timestamp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  nlohmann::json j = nlohmann::json::parse(ss.str());
  j["meta"].erase("timestamp");
  return canonical_dump(j);
}

Outcome determinism() {
  const std::string first = temp_path("run1.json");
  const std::string second = temp_path("run2.json");
  if (!std::filesystem::exists(first)) run_cli(kFullRun + " --out " + first);
  run_cli(kFullRun + " --out " + second);
  if (!std::filesystem::exists(first) || !std::filesystem::exists(second)) return {false, "report not written"};
  const std::string a = without_timestamp(first);
  const std::string b = without_timestamp(second);
  std::filesystem::remove(first);
  std::filesystem::remove(second);
  return {a == b, std::to_string(a.size()) + " bytes, " + (a == b ? "identical" : "different")};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"soundness of the full verification sweep", soundness},
      {"closed-form constants", constants},
      {"worked instances", worked_instances},
      {"equality witnesses", equality_witnesses},
      {"dominance and monotonicity of refined constants", dominance},
      {"degree-inconsistent variants fail", falsifiers},
      {"diagonal oracle equivalence", oracle_equivalence},
      {"search sanity on the classical bound", search_sanity},
      {"determinism of the JSON report", determinism},
  };
  int failed = 0;
  int index = 0;
  for (const auto& [name, fn] : criteria) {
    ++index;
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failed;
    std::printf("%s %d %s (%s)\n", o.pass ? "PASS" : "FAIL", index, name, o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
