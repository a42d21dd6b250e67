#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "opineq/campaign.hpp"

namespace opineq {

inline constexpr const char* kToolVersion = "1.0.0";

struct ReportMeta {
  std::string tool_version = kToolVersion;
  std::uint64_t master_seed = 0;
  double tol = kDefaultTol;
  std::string timestamp;
  std::string log_base = "natural logarithm in every refinement factor 1 + (ln c)^2 / 8";
  std::vector<std::string> theorems;
  std::vector<int> dims;
  int samples = 0;
};

struct ReportDocument {
  ReportMeta meta;
  std::vector<CellReport> results;
  std::vector<SkippedCell> skipped;
  std::vector<ExtremalInstance> extremal_instances;
};

ReportDocument make_report(const CampaignConfig& config, const CampaignReport& report,
                           std::string timestamp);

/// UTC time as YYYY-MM-DDTHH:MM:SSZ.
std::string utc_timestamp();

nlohmann::json to_json(const ReportDocument& doc);
/// Inverse of to_json; throws InvalidArgument on malformed documents.
ReportDocument report_from_json(const nlohmann::json& j);

/// Canonical text: sorted keys, two-space indent, integers exact, floats as
/// %.17g, non-finite floats as null. Parsing the output and emitting again
/// reproduces it byte for byte.
std::string canonical_dump(const nlohmann::json& j);

/// One header line plus one row per result cell.
std::string report_csv(const ReportDocument& doc);

enum class ReportFormat { json, csv };

/// Writes the document; throws Error on I/O failure.
void emit_report(const ReportDocument& doc, ReportFormat format, const std::string& path);

}  // namespace opineq
