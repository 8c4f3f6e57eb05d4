#include "normsim/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

namespace normsim {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double ratio(double num, double den) { return den > 0 ? num / den : kNaN; }

}  // namespace

DecisionLog::DecisionLog(int n_agents) : entries_(n_agents), index_(n_agents) {}

void DecisionLog::record(int agent, const ContextVector& ctx, Action action) {
  auto [it, inserted] = index_[agent].try_emplace(ctx.key(), entries_[agent].size());
  if (inserted) entries_[agent].push_back({ctx, {}});
  entries_[agent][it->second].counts[index_of(action)] += 1;
}

RunMetrics::RunMetrics(std::int64_t steps, int n_agents, std::int64_t window_start)
    : steps_(static_cast<std::size_t>(std::max<std::int64_t>(steps, 0))),
      window_start_(window_start),
      log_(n_agents) {}

void RunMetrics::begin_step(std::int64_t step) { current_ = step; }

void RunMetrics::record_decision(const DecisionEvent& ev) {
  StepRecord& r = steps_.at(static_cast<std::size_t>(current_));
  const double sanction = ev.sanction.value_or(0.0);
  r.decisions += 1;
  r.social_sum += ev.actor_reward + sanction;
  const bool deviated = ev.action != ev.goal;
  if (deviated) r.deviations += 1;

  auto& t = by_type_[index_of(ev.type)];
  t.actor_sum += ev.actor_reward;
  t.actor_count += 1;
  if (ev.sanction) {
    t.observer_sum += *ev.sanction;
    t.observer_count += 1;
  }
  if (deviated) t.deviations += 1;

  if (current_ >= window_start_) log_.record(ev.agent, ev.context, ev.action);
}

void RunMetrics::record_evaluation(Decision d) {
  StepRecord& r = steps_.at(static_cast<std::size_t>(current_));
  r.evaluations += 1;
  if (d == Decision::Accept) r.accepts += 1;
}

void RunMetrics::record_rationale(double privacy) {
  StepRecord& r = steps_.at(static_cast<std::size_t>(current_));
  r.rationales += 1;
  r.privacy_sum += privacy;
}

void RunMetrics::record_interaction(const InteractionEvents& ev) {
  for (int i = 0; i < 2; ++i) {
    record_decision(ev.decisions[i]);
    record_evaluation(ev.evaluations[i]);
    record_rationale(ev.privacy[i]);
  }
}

RunSummary RunMetrics::summary() const {
  StepRecord total;
  for (const auto& r : steps_) total += r;
  RunSummary s;
  s.resolution = resolution_pct(total);
  s.social = social_mean(total);
  s.privacy = privacy_mean(total);
  s.flexibility = flexibility_mean(total);
  for (std::size_t t = 0; t < kAgentTypeCount; ++t) {
    const auto& bt = by_type_[t];
    s.actor_payoff[t] = ratio(bt.actor_sum, static_cast<double>(bt.actor_count));
    s.observer_payoff[t] = ratio(bt.observer_sum, static_cast<double>(bt.observer_count));
    s.flexibility_by_type[t] = ratio(static_cast<double>(bt.deviations), static_cast<double>(bt.actor_count));
  }
  return s;
}

double resolution_pct(const StepRecord& r) { return 100.0 * ratio(r.accepts, r.evaluations); }
double social_mean(const StepRecord& r) { return ratio(r.social_sum, r.decisions); }
double privacy_mean(const StepRecord& r) { return ratio(r.privacy_sum, r.rationales); }
double flexibility_mean(const StepRecord& r) { return ratio(r.deviations, r.decisions); }

StepRecord& operator+=(StepRecord& acc, const StepRecord& r) {
  acc.evaluations += r.evaluations;
  acc.accepts += r.accepts;
  acc.decisions += r.decisions;
  acc.deviations += r.deviations;
  acc.rationales += r.rationales;
  acc.social_sum += r.social_sum;
  acc.privacy_sum += r.privacy_sum;
  return acc;
}

std::vector<NormCandidate> reference_norm_candidates() {
  static const char* const kPremises[] = {
      "Risk=NONE;Preference=NOT_WEAR;ObserverAgentType=HEALTH;InteractWith=COLLEAGUE;Location=OFFICE",
      "Risk=NONE;Preference=NOT_WEAR;ObserverAgentType=HEALTH;InteractWith=COLLEAGUE;Location=HOSPITAL",
      "Risk=RISK;Preference=NOT_WEAR;ObserverAgentType=HEALTH;InteractWith=COLLEAGUE;Location=OFFICE",
      "Risk=RISK;Preference=NOT_WEAR;ObserverAgentType=HEALTH;InteractWith=COLLEAGUE;Location=HOSPITAL",
      "Risk=NONE;ObserverAgentType=HEALTH;InteractWith=COLLEAGUE;Location=OFFICE",
      "Preference=NOT_WEAR;ObserverAgentType=HEALTH;InteractWith=COLLEAGUE;Location=OFFICE",
      "Preference=NOT_WEAR;InteractWith=COLLEAGUE;Location=OFFICE",
      "Preference=NOT_WEAR;InteractWith=COLLEAGUE;Location=HOSPITAL",
      "Preference=NOT_WEAR;ObserverAgentType=HEALTH;InteractWith=COLLEAGUE;Location=HOSPITAL",
      "ObserverAgentType=HEALTH;InteractWith=COLLEAGUE;Location=OFFICE",
      "ObserverAgentType=HEALTH;InteractWith=COLLEAGUE;Location=HOSPITAL",
      "ObserverAgentType=FREEDOM;InteractWith=COLLEAGUE;Location=HOSPITAL",
      "Risk=RISK;ObserverAgentType=HEALTH;InteractWith=COLLEAGUE;Location=OFFICE",
  };
  std::vector<NormCandidate> out;
  for (const char* p : kPremises) out.push_back({parse_context(p), Action::Wear});
  return out;
}

std::vector<NormCandidate> collect_candidates(std::span<const RulePopulation> populations,
                                              bool include_reference) {
  std::vector<NormCandidate> out;
  std::set<std::pair<std::uint32_t, int>> seen;
  auto add = [&](const ContextVector& premise, Action action) {
    if (seen.emplace(premise.key(), static_cast<int>(action)).second) out.push_back({premise, action});
  };
  if (include_reference) {
    for (const auto& c : reference_norm_candidates()) add(c.premise, c.action);
  }
  for (const auto& pop : populations) {
    for (const auto& cl : pop.rules()) add(cl.premise, cl.action);
  }
  return out;
}

NormResult assess_candidate(const DecisionLog& log, const NormCandidate& rule, const NormCriteria& c) {
  NormResult res;
  res.rule = rule;
  for (int agent = 0; agent < log.agent_count(); ++agent) {
    int matching = 0;
    int followed = 0;
    for (const auto& e : log.entries(agent)) {
      if (!matches(rule.premise, e.context)) continue;
      matching += e.counts[0] + e.counts[1];
      followed += e.counts[index_of(rule.action)];
    }
    if (matching < c.min_decisions) continue;
    res.eligible += 1;
    // "at least" threshold; the slack absorbs rounding in threshold * matching
    if (static_cast<double>(followed) >= c.adoption_threshold * matching - 1e-9) res.adopted += 1;
  }
  res.adoption_fraction = res.eligible > 0 ? static_cast<double>(res.adopted) / res.eligible : 0.0;
  res.is_norm = res.eligible > 0 && res.adoption_fraction > c.norm_threshold;
  return res;
}

std::vector<NormResult> detect_norms(std::span<const RulePopulation> populations, const DecisionLog& log,
                                     const NormCriteria& criteria) {
  std::vector<NormResult> norms;
  for (const auto& cand : collect_candidates(populations)) {
    auto res = assess_candidate(log, cand, criteria);
    if (res.is_norm) norms.push_back(std::move(res));
  }
  return norms;
}

}  // namespace normsim
