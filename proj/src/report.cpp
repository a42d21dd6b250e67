#include "opineq/report.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <limits>
#include <sstream>

#include "opineq/errors.hpp"

namespace opineq {

using nlohmann::json;

namespace {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void dump_string(std::string& out, const std::string& s) {
  // nlohmann's escaping is already canonical for strings.
  out += json(s).dump();
}

void dump(std::string& out, const json& j, int indent) {
  const std::string pad(static_cast<std::size_t>(indent + 2), ' ');
  const std::string close(static_cast<std::size_t>(indent), ' ');
  switch (j.type()) {
    case json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ",\n";
        first = false;
        out += pad;
        dump_string(out, it.key());
        out += ": ";
        dump(out, it.value(), indent + 2);
      }
      out += "\n" + close + "}";
      return;
    }
    case json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      out += "[\n";
      bool first = true;
      for (const json& v : j) {
        if (!first) out += ",\n";
        first = false;
        out += pad;
        dump(out, v, indent + 2);
      }
      out += "\n" + close + "]";
      return;
    }
    case json::value_t::number_float: {
      const double v = j.get<double>();
      out += std::isfinite(v) ? format_double(v) : "null";
      return;
    }
    default:
      out += j.dump();
      return;
  }
}

json num(double v) {
  if (!std::isfinite(v)) return nullptr;
  return v;
}

double get_num(const json& j) {
  if (j.is_null()) return std::numeric_limits<double>::quiet_NaN();
  return j.get<double>();
}

json params_json(const BoundParams& p) {
  return {{"m", p.m}, {"m_prime", p.m_prime}, {"M_prime", p.M_prime}, {"M", p.M}};
}

BoundParams params_from(const json& j) {
  BoundParams p;
  p.m = j.at("m").get<double>();
  p.m_prime = j.at("m_prime").get<double>();
  p.M_prime = j.at("M_prime").get<double>();
  p.M = j.at("M").get<double>();
  return p;
}

json fingerprint_json(const Fingerprint& f) {
  return {{"seed", f.seed}, {"dim", f.dim}, {"params", params_json(f.params)}, {"sample_index", f.sample_index}};
}

Fingerprint fingerprint_from(const json& j) {
  Fingerprint f;
  f.seed = j.at("seed").get<std::uint64_t>();
  f.dim = j.at("dim").get<int>();
  f.params = params_from(j.at("params"));
  f.sample_index = j.at("sample_index").get<std::uint64_t>();
  return f;
}

TheoremId theorem_from(const json& j) {
  const auto name = j.get<std::string>();
  const auto id = parse_theorem(name);
  if (!id) throw InvalidArgument("unknown theorem id in report: " + name);
  return *id;
}

json matrix_json(const Matrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back(num(m(i, k)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix matrix_from(const json& j) {
  const auto rows = static_cast<Eigen::Index>(j.size());
  const auto cols = rows > 0 ? static_cast<Eigen::Index>(j.at(0).size()) : 0;
  Matrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const json& row = j.at(static_cast<std::size_t>(i));
    if (static_cast<Eigen::Index>(row.size()) != cols) throw InvalidArgument("ragged matrix in report");
    for (Eigen::Index k = 0; k < cols; ++k) m(i, k) = get_num(row.at(static_cast<std::size_t>(k)));
  }
  return m;
}

}  // namespace

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

ReportDocument make_report(const CampaignConfig& config, const CampaignReport& report,
                           std::string timestamp) {
  ReportDocument doc;
  doc.meta.master_seed = config.seed;
  doc.meta.tol = config.tol;
  doc.meta.timestamp = std::move(timestamp);
  for (TheoremId id : config.theorems) doc.meta.theorems.emplace_back(theorem_name(id));
  doc.meta.dims = config.dims;
  doc.meta.samples = config.samples;
  doc.results = report.cells;
  doc.skipped = report.skipped;
  doc.extremal_instances = report.extremal;
  return doc;
}

json to_json(const ReportDocument& doc) {
  json meta = {{"tool_version", doc.meta.tool_version},
               {"master_seed", doc.meta.master_seed},
               {"tol", num(doc.meta.tol)},
               {"timestamp", doc.meta.timestamp},
               {"log_base", doc.meta.log_base},
               {"theorems", doc.meta.theorems},
               {"dims", doc.meta.dims},
               {"samples", doc.meta.samples}};

  json results = json::array();
  for (const CellReport& c : doc.results) {
    results.push_back({{"theorem_id", std::string(theorem_name(c.theorem))},
                       {"dim", c.dim},
                       {"params", params_json(c.params)},
                       {"samples", c.samples},
                       {"checks", c.checks},
                       {"violations", c.violations},
                       {"refined_violations", c.refined_violations},
                       {"classical_violations", c.classical_violations},
                       {"conjecture_exceedances", c.conjecture_exceedances},
                       {"near_tight", c.near_tight},
                       {"max_ratio", num(c.max_ratio)},
                       {"min_slack", num(c.min_slack)},
                       {"mean_slack", num(c.mean_slack)},
                       {"extremal", fingerprint_json(c.extremal)}});
  }

  json skipped = json::array();
  for (const SkippedCell& s : doc.skipped) {
    skipped.push_back({{"theorem_id", std::string(theorem_name(s.theorem))},
                       {"params", params_json(s.params)},
                       {"reason", s.reason}});
  }

  json extremal = json::array();
  for (const ExtremalInstance& e : doc.extremal_instances) {
    json matrices = json::array();
    for (const NamedMatrix& m : e.matrices) matrices.push_back({{"name", m.name}, {"value", matrix_json(m.value)}});
    extremal.push_back({{"theorem_id", std::string(theorem_name(e.theorem))},
                        {"fingerprint", fingerprint_json(e.fingerprint)},
                        {"min_slack", num(e.min_slack)},
                        {"max_ratio", num(e.max_ratio)},
                        {"matrices", matrices}});
  }

  return {{"meta", meta}, {"results", results}, {"skipped", skipped}, {"extremal_instances", extremal}};
}

ReportDocument report_from_json(const json& j) {
  try {
    ReportDocument doc;
    const json& meta = j.at("meta");
    doc.meta.tool_version = meta.at("tool_version").get<std::string>();
    doc.meta.master_seed = meta.at("master_seed").get<std::uint64_t>();
    doc.meta.tol = get_num(meta.at("tol"));
    doc.meta.timestamp = meta.at("timestamp").get<std::string>();
    doc.meta.log_base = meta.at("log_base").get<std::string>();
    doc.meta.theorems = meta.at("theorems").get<std::vector<std::string>>();
    doc.meta.dims = meta.at("dims").get<std::vector<int>>();
    doc.meta.samples = meta.at("samples").get<int>();

    for (const json& r : j.at("results")) {
      CellReport c;
      c.theorem = theorem_from(r.at("theorem_id"));
      c.dim = r.at("dim").get<int>();
      c.params = params_from(r.at("params"));
      c.samples = r.at("samples").get<int>();
      c.checks = r.at("checks").get<std::uint64_t>();
      c.violations = r.at("violations").get<std::uint64_t>();
      c.refined_violations = r.at("refined_violations").get<std::uint64_t>();
      c.classical_violations = r.at("classical_violations").get<std::uint64_t>();
      c.conjecture_exceedances = r.at("conjecture_exceedances").get<std::uint64_t>();
      c.near_tight = r.at("near_tight").get<std::uint64_t>();
      c.max_ratio = get_num(r.at("max_ratio"));
      c.min_slack = get_num(r.at("min_slack"));
      c.mean_slack = get_num(r.at("mean_slack"));
      c.extremal = fingerprint_from(r.at("extremal"));
      doc.results.push_back(c);
    }
    for (const json& s : j.at("skipped")) {
      doc.skipped.push_back({theorem_from(s.at("theorem_id")), params_from(s.at("params")),
                             s.at("reason").get<std::string>()});
    }
    for (const json& e : j.at("extremal_instances")) {
      ExtremalInstance x;
      x.theorem = theorem_from(e.at("theorem_id"));
      x.fingerprint = fingerprint_from(e.at("fingerprint"));
      x.min_slack = get_num(e.at("min_slack"));
      x.max_ratio = get_num(e.at("max_ratio"));
      for (const json& m : e.at("matrices")) {
        x.matrices.push_back({m.at("name").get<std::string>(), matrix_from(m.at("value"))});
      }
      doc.extremal_instances.push_back(std::move(x));
    }
    return doc;
  } catch (const json::exception& e) {
    throw InvalidArgument(std::string("malformed report: ") + e.what());
  }
}

std::string canonical_dump(const json& j) {
  std::string out;
  dump(out, j, 0);
  out += "\n";
  return out;
}

std::string report_csv(const ReportDocument& doc) {
  std::ostringstream os;
  os << "theorem_id,dim,m,m_prime,M_prime,M,samples,violations,max_ratio,min_slack,mean_slack\n";
  for (const CellReport& c : doc.results) {
    os << theorem_name(c.theorem) << ',' << c.dim << ',' << format_double(c.params.m) << ','
       << format_double(c.params.m_prime) << ',' << format_double(c.params.M_prime) << ','
       << format_double(c.params.M) << ',' << c.samples << ',' << c.violations << ','
       << format_double(c.max_ratio) << ',' << format_double(c.min_slack) << ','
       << format_double(c.mean_slack) << '\n';
  }
  return os.str();
}

void emit_report(const ReportDocument& doc, ReportFormat format, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open " + path + " for writing");
  out << (format == ReportFormat::json ? canonical_dump(to_json(doc)) : report_csv(doc));
  out.flush();
  if (!out) throw Error("failed writing " + path);
}

}  // namespace opineq
