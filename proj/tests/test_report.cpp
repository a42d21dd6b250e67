#include <gtest/gtest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "opineq/errors.hpp"
#include "opineq/report.hpp"

using namespace opineq;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

ReportDocument one_cell() {
  CampaignConfig c;
  c.theorems = {TheoremId::kantorovich_product};
  c.dims = {3};
  c.samples = 5;
  c.params_override = std::vector<BoundParams>{BoundParams::triple(1, 1.5, 4)};
  return make_report(c, run_campaign(c), "2026-01-01T00:00:00Z");
}

}  // namespace

TEST(Report, EmptyResults) {
  ReportDocument doc;
  const std::string text = canonical_dump(to_json(doc));
  const auto j = nlohmann::json::parse(text);
  EXPECT_TRUE(j.at("results").is_array());
  EXPECT_TRUE(j.at("results").empty());
  EXPECT_EQ(text, canonical_dump(j));
}

TEST(Report, CanonicalRoundTripIsByteIdentical) {
  const std::string text = canonical_dump(to_json(one_cell()));
  EXPECT_EQ(canonical_dump(nlohmann::json::parse(text)), text);
  const ReportDocument back = report_from_json(nlohmann::json::parse(text));
  EXPECT_EQ(canonical_dump(to_json(back)), text);
}

TEST(Report, FloatsKeepFullPrecision) {
  nlohmann::json j = {{"x", 0.1}, {"y", 1.0 / 3.0}, {"n", 12345678901234567ULL}, {"bad", NAN}};
  const std::string text = canonical_dump(j);
  EXPECT_NE(text.find("0.10000000000000001"), std::string::npos);
  EXPECT_NE(text.find("0.33333333333333331"), std::string::npos);
  EXPECT_NE(text.find("12345678901234567"), std::string::npos);
  EXPECT_NE(text.find("\"bad\": null"), std::string::npos);
  EXPECT_EQ(nlohmann::json::parse(text).at("y").get<double>(), 1.0 / 3.0);
}

TEST(Report, MatricesRoundTripExactly) {
  const ReportDocument doc = one_cell();
  const ReportDocument back = report_from_json(nlohmann::json::parse(canonical_dump(to_json(doc))));
  ASSERT_EQ(back.extremal_instances.size(), doc.extremal_instances.size());
  for (std::size_t i = 0; i < doc.extremal_instances.size(); ++i) {
    const auto& a = doc.extremal_instances[i].matrices;
    const auto& b = back.extremal_instances[i].matrices;
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t k = 0; k < a.size(); ++k) EXPECT_EQ(a[k].value, b[k].value);
  }
  EXPECT_EQ(back.results.at(0).extremal.seed, doc.results.at(0).extremal.seed);
}

TEST(Report, CsvHasHeaderAndOneRowPerCell) {
  const std::string path = testing::TempDir() + "opineq_report.csv";
  emit_report(one_cell(), ReportFormat::csv, path);
  std::istringstream in(slurp(path));
  std::string line;
  std::vector<std::string> lines;
  while (std::getline(in, line)) lines.push_back(line);
  ASSERT_EQ(lines.size(), 2u);
  EXPECT_EQ(lines[0], "theorem_id,dim,m,m_prime,M_prime,M,samples,violations,max_ratio,min_slack,mean_slack");
  EXPECT_EQ(lines[1].rfind("kantorovich_product,3,1,1.5,4,4,5,0,", 0), 0u);
  std::remove(path.c_str());
}

TEST(Report, JsonFileMatchesCanonicalText) {
  const std::string path = testing::TempDir() + "opineq_report.json";
  const ReportDocument doc = one_cell();
  emit_report(doc, ReportFormat::json, path);
  EXPECT_EQ(slurp(path), canonical_dump(to_json(doc)));
  std::remove(path.c_str());
  EXPECT_THROW(emit_report(doc, ReportFormat::json, "/nonexistent-dir/x.json"), Error);
}

TEST(Report, MalformedInputRejected) {
  EXPECT_THROW(report_from_json(nlohmann::json::parse("{}")), InvalidArgument);
}
