#pragma once
// Per-step metric collection for one run and behavioural norm detection.

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "normsim/model.hpp"
#include "normsim/xcs.hpp"

namespace normsim {

struct StepRecord {
  std::uint32_t evaluations = 0;
  std::uint32_t accepts = 0;
  std::uint32_t decisions = 0;
  std::uint32_t deviations = 0;
  std::uint32_t rationales = 0;
  double social_sum = 0.0;
  double privacy_sum = 0.0;
};

// One agent's choice in one step.
struct DecisionEvent {
  int agent = 0;
  AgentType type = AgentType::Health;
  ContextVector context;
  Action action = Action::Wear;
  Action goal = Action::Wear;
  double actor_reward = 0.0;
  std::optional<double> sanction;  // received from the partner, if any
};

struct InteractionEvents {
  std::array<DecisionEvent, 2> decisions;
  // evaluations[i] is agent i's verdict on the partner's rationale.
  std::array<Decision, 2> evaluations{};
  // privacy[i] is the score of agent i's own rationale.
  std::array<double, 2> privacy{};
};

// Per-agent action counts per distinct context inside the adoption window.
class DecisionLog {
 public:
  struct Entry {
    ContextVector context;
    std::array<int, kActionCount> counts{};
  };

  explicit DecisionLog(int n_agents = 0);
  void record(int agent, const ContextVector& ctx, Action action);
  int agent_count() const { return static_cast<int>(entries_.size()); }
  const std::vector<Entry>& entries(int agent) const { return entries_[agent]; }

 private:
  std::vector<std::vector<Entry>> entries_;
  std::vector<std::unordered_map<std::uint32_t, std::size_t>> index_;
};

struct RunSummary {
  double resolution = 0.0;  // percent
  double social = 0.0;
  double privacy = 0.0;
  double flexibility = 0.0;
  std::array<double, kAgentTypeCount> actor_payoff{};
  std::array<double, kAgentTypeCount> observer_payoff{};
  std::array<double, kAgentTypeCount> flexibility_by_type{};
};

class RunMetrics {
 public:
  RunMetrics(std::int64_t steps, int n_agents, std::int64_t window_start);

  void begin_step(std::int64_t step);
  void record_decision(const DecisionEvent& ev);
  void record_evaluation(Decision d);
  void record_rationale(double privacy);
  void record_interaction(const InteractionEvents& ev);

  const std::vector<StepRecord>& steps() const { return steps_; }
  const DecisionLog& decision_log() const { return log_; }
  RunSummary summary() const;

 private:
  struct TypeTotals {
    double actor_sum = 0.0;
    std::uint64_t actor_count = 0;
    double observer_sum = 0.0;
    std::uint64_t observer_count = 0;
    std::uint64_t deviations = 0;
  };

  std::vector<StepRecord> steps_;
  std::int64_t current_ = -1;
  std::int64_t window_start_ = 0;
  DecisionLog log_;
  std::array<TypeTotals, kAgentTypeCount> by_type_{};
};

// Mean helpers over step records; NaN when the denominator is empty.
double resolution_pct(const StepRecord& r);
double social_mean(const StepRecord& r);
double privacy_mean(const StepRecord& r);
double flexibility_mean(const StepRecord& r);
StepRecord& operator+=(StepRecord& acc, const StepRecord& r);

struct NormCriteria {
  // Fraction of eligible agents that must adopt; strictly exceeded.
  double norm_threshold = 0.9;
  // Fraction of an agent's matching decisions that must follow the rule.
  double adoption_threshold = 0.9;
  int min_decisions = 5;
  // Trailing fraction of the run whose decisions feed the log.
  double window_fraction = 0.1;
};

struct NormCandidate {
  ContextVector premise;
  Action action = Action::Wear;
  friend bool operator==(const NormCandidate&, const NormCandidate&) = default;
};

struct NormResult {
  NormCandidate rule;
  int eligible = 0;  // agents with >= min_decisions matching decisions
  int adopted = 0;
  double adoption_fraction = 0.0;  // adopted / eligible
  bool is_norm = false;
};

// Premises of the norms reported for the mask scenario; all prescribe WEAR.
std::vector<NormCandidate> reference_norm_candidates();

// Every distinct (premise, action) in the populations plus the reference set,
// in a deterministic order.
std::vector<NormCandidate> collect_candidates(std::span<const RulePopulation> populations,
                                              bool include_reference = true);

NormResult assess_candidate(const DecisionLog& log, const NormCandidate& rule, const NormCriteria& c);

// Candidates whose adoption fraction exceeds the norm threshold.
std::vector<NormResult> detect_norms(std::span<const RulePopulation> populations, const DecisionLog& log,
                                     const NormCriteria& criteria);

}  // namespace normsim
