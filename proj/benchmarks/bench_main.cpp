#include <benchmark/benchmark.h>

#include <vector>

#include "normsim/rationale.hpp"
#include "normsim/stats.hpp"
#include "normsim/world.hpp"
#include "normsim/xcs.hpp"

using namespace normsim;

namespace {

ContextVector random_context(Rng& rng) {
  ContextVector ctx;
  for (Attribute a : {Attribute::Risk, Attribute::Preference, Attribute::InteractWith, Attribute::ObserverAgentType,
                      Attribute::Location}) {
    ctx.set(a, static_cast<Binding>(rng.below(domain_size(a))));
  }
  return ctx;
}

// A population grown by the learner itself over many random contexts.
RulePopulation trained_population(int steps) {
  XcsParams params;
  Rng rng(7);
  RulePopulation pop;
  for (int t = 0; t < steps; ++t) {
    const auto ctx = random_context(rng);
    const auto ms = build_match_set(pop, ctx, params, rng, t);
    auto as = form_action_set(pop, ms, select_action(pop, ms, rng.bernoulli(0.1), rng));
    learn(pop, as, ctx, rng.uniform01() * 2 - 1, params, rng, t);
  }
  return pop;
}

void BM_FindMatches(benchmark::State& state) {
  const auto pop = trained_population(static_cast<int>(state.range(0)));
  Rng rng(3);
  std::vector<ContextVector> contexts;
  for (int i = 0; i < 256; ++i) contexts.push_back(random_context(rng));
  std::size_t k = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(find_matches(pop, contexts[k++ & 255]));
  }
  state.counters["rules"] = static_cast<double>(pop.size());
}
BENCHMARK(BM_FindMatches)->Arg(1000)->Arg(10000);

void BM_LearnStep(benchmark::State& state) {
  XcsParams params;
  Rng rng(5);
  RulePopulation pop = trained_population(2000);
  std::int64_t t = 2000;
  for (auto _ : state) {
    const auto ctx = random_context(rng);
    const auto ms = build_match_set(pop, ctx, params, rng, t);
    auto as = form_action_set(pop, ms, select_action(pop, ms, false, rng));
    learn(pop, as, ctx, 0.5, params, rng, t++);
  }
}
BENCHMARK(BM_LearnStep);

void BM_Rationale(benchmark::State& state) {
  RulePopulation pop = trained_population(5000);
  Rng rng(9);
  const auto policy = static_cast<SocietyPolicy>(state.range(0));
  AgentProfile actor;
  actor.value_importances = {preset_importance(ValuePreset::Pure, AgentType::Health, "pandemic")};
  AgentProfile observer;
  observer.type = AgentType::Freedom;
  observer.value_importances = {preset_importance(ValuePreset::Pure, AgentType::Freedom, "pandemic")};
  const auto values = get_value_importance("pandemic", actor, &observer);
  const DisclosurePolicy disclosure;
  for (auto _ : state) {
    const auto ctx = random_context(rng);
    benchmark::DoNotOptimize(generate_rationale(ctx, Action::Wear, policy, pop, values, disclosure));
  }
}
BENCHMARK(BM_Rationale)
    ->Arg(static_cast<int>(SocietyPolicy::ShareAll))
    ->Arg(static_cast<int>(SocietyPolicy::ShareRules))
    ->Arg(static_cast<int>(SocietyPolicy::Exanna));

void BM_WorldStep(benchmark::State& state) {
  Scenario sc;
  sc.world.n_agents = static_cast<int>(state.range(0));
  sc.world.seed = 11;
  World world(sc);
  RunMetrics metrics(1 << 20, sc.world.n_agents, 1 << 20);
  for (int warm = 0; warm < 200; ++warm) world.advance(metrics);
  for (auto _ : state) world.advance(metrics);
  state.SetItemsProcessed(state.iterations() * sc.world.n_agents);
}
BENCHMARK(BM_WorldStep)->Arg(100)->Arg(200)->Unit(benchmark::kMicrosecond);

void BM_Welch(benchmark::State& state) {
  Rng rng(13);
  std::vector<double> a(static_cast<std::size_t>(state.range(0)));
  std::vector<double> b(a.size());
  for (auto& x : a) x = rng.uniform01();
  for (auto& x : b) x = rng.uniform01() + 0.1;
  for (auto _ : state) benchmark::DoNotOptimize(stats::welch_t_test(a, b));
}
BENCHMARK(BM_Welch)->Arg(10)->Arg(1000);

}  // namespace

BENCHMARK_MAIN();
