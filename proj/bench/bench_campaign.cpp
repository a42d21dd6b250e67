// Serial reference against the OpenMP path for campaigns and search.

#include <benchmark/benchmark.h>

#include "opineq/campaign.hpp"
#include "opineq/search.hpp"

using namespace opineq;

namespace {

CampaignConfig campaign_config() {
  CampaignConfig c;
  c.theorems = {TheoremId::kantorovich_product, TheoremId::lin_squared_mapped, TheoremId::wielandt_refined};
  c.dims = {4, 8};
  c.samples = 50;
  return c;
}

void BM_Campaign(benchmark::State& state) {
  const Execution mode = state.range(0) == 0 ? Execution::serial : Execution::parallel;
  const CampaignConfig config = campaign_config();
  for (auto _ : state) benchmark::DoNotOptimize(run_campaign(config, mode).total_violations());
}
BENCHMARK(BM_Campaign)->Arg(0)->Arg(1)->ArgName("parallel")->Unit(benchmark::kMillisecond);

void BM_Search(benchmark::State& state) {
  const Execution mode = state.range(0) == 0 ? Execution::serial : Execution::parallel;
  SearchConfig config;
  config.theorem = TheoremId::polya_szego;
  config.dim = 3;
  config.box = ParamBox::point(BoundParams::triple(1, 1.5, 4));
  config.budget = 2000;
  for (auto _ : state) benchmark::DoNotOptimize(maximize_ratio(config, mode).best_ratio);
}
BENCHMARK(BM_Search)->Arg(0)->Arg(1)->ArgName("parallel")->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
