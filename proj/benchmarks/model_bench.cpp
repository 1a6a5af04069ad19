#include <benchmark/benchmark.h>

#include "carbontier/net_benefit.hpp"
#include "carbontier/tier_plan.hpp"

namespace {

using namespace carbontier;

void BM_FitDefaults(benchmark::State& state) {
  const EmissionsTable table = EmissionsTable::defaults();
  for (auto _ : state) {
    EmissionsModel model = EmissionsModel::fit(table);
    benchmark::DoNotOptimize(model);
  }
}
BENCHMARK(BM_FitDefaults);

void BM_NetBenefitAt(benchmark::State& state) {
  const UserProfile profile = UserProfile::high_quality(0.5);
  const EmissionsModel model = EmissionsModel::fit();
  for (auto _ : state) {
    OptimalChoice c = net_benefit_at({0.93, 1.06}, profile, model, 0.3);
    benchmark::DoNotOptimize(c);
  }
}
BENCHMARK(BM_NetBenefitAt);

void BM_OptimizeDefaultGrid(benchmark::State& state) {
  const UserProfile profile = UserProfile::high_quality(0.5);
  const EmissionsModel model = EmissionsModel::fit();
  for (auto _ : state) {
    OptimalChoice c = optimize_choice(profile, model, 0.3);
    benchmark::DoNotOptimize(c);
  }
}
BENCHMARK(BM_OptimizeDefaultGrid);

void BM_OptimizeCoarseGrid(benchmark::State& state) {
  const UserProfile profile = UserProfile::high_quality(0.5);
  const EmissionsModel model = EmissionsModel::fit();
  const SearchGrid coarse{0.01, 0.01};
  for (auto _ : state) {
    OptimalChoice c = optimize_choice(profile, model, 0.3, coarse);
    benchmark::DoNotOptimize(c);
  }
}
BENCHMARK(BM_OptimizeCoarseGrid);

void BM_MinIncentive(benchmark::State& state) {
  const UserProfile profile = UserProfile::high_quality(0.5);
  const EmissionsModel model = EmissionsModel::fit();
  for (auto _ : state) {
    auto p = min_incentive_for_reduction(profile, model, 0.2);
    benchmark::DoNotOptimize(p);
  }
}
BENCHMARK(BM_MinIncentive);

void BM_DesignTierMonth(benchmark::State& state) {
  TierConfig config;
  std::vector<DailyIntensity> series;
  for (int i = 0; i < 30; ++i)
    series.push_back({{2024, 4, i + 1}, (i % 2 == 0) ? 200.0 : 275.0});
  for (auto _ : state) {
    TierPlan plan = design_tier(series, config);
    benchmark::DoNotOptimize(plan);
  }
}
BENCHMARK(BM_DesignTierMonth);

}  // namespace

BENCHMARK_MAIN();
