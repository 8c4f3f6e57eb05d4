#pragma once
// The pandemic world: places, movement, pairing, per-place risk and the
// symmetric interaction loop that ties decisions, rationales, sanctions and
// learning together.

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "normsim/metrics.hpp"
#include "normsim/model.hpp"
#include "normsim/payoff.hpp"
#include "normsim/rationale.hpp"
#include "normsim/rng.hpp"
#include "normsim/xcs.hpp"

namespace normsim {

enum class ValuePreset : std::uint8_t { Pure, Mixed };

std::string_view preset_name(ValuePreset p);
std::optional<ValuePreset> parse_preset(std::string_view name);

// pure: health-freak {health 1}, freedom-loving {freedom 1}.
// mixed: the dominant value gets 0.7, the other 0.3.
ValueImportance preset_importance(ValuePreset preset, AgentType type, const std::string& context_class);

struct WorldConfig {
  int n_agents = 200;
  int n_homes = 5;
  int n_offices = 5;
  int n_parties = 5;
  std::int64_t steps = 30000;
  double interact_prob = 0.5;
  double native_move_prob = 0.75;
  // Probability a place of each category is risky on a given step.
  std::array<double, kPlaceCount> risk_prob{0.2, 0.5, 0.5, 0.1, 0.9};
  // Agents without a partner still decide, earn and learn.
  bool solitary_agents_act = true;
  bool include_risk_from_another = false;
  double risk_from_another_prob = 0.5;
  double prefer_not_wear_prob = 0.5;
  double health_type_fraction = 0.5;
  std::string context_class = "pandemic";
  SocietyPolicy society = SocietyPolicy::Exanna;
  std::uint64_t seed = 0;

  // Throws ConfigError with a diagnostic.
  void validate() const;
  int circle_size() const { return n_homes > 0 ? n_agents / n_homes : 0; }
};

// Everything one run needs.
struct Scenario {
  WorldConfig world;
  XcsParams xcs;
  PayoffTables payoffs = PayoffTables::defaults();
  DisclosurePolicy disclosure;
  ValuePreset preset = ValuePreset::Pure;
  NormCriteria norms;

  void validate() const;
};

// Flat place indices: homes, offices, parties, then the park and the hospital.
class PlaceLayout {
 public:
  PlaceLayout(int homes, int offices, int parties);
  int instances(Place p) const { return counts_[index_of(p)]; }
  int first(Place p) const { return offsets_[index_of(p)]; }
  int index(Place p, int instance) const { return first(p) + instance; }
  Place category(int place) const;
  int count() const { return offsets_.back() + counts_.back(); }

 private:
  std::array<int, kPlaceCount> counts_{};
  std::array<int, kPlaceCount> offsets_{};
};

struct Agent {
  AgentProfile profile;
  RulePopulation rules;
  int location = 0;
};

struct InteractionResult {
  InteractionEvents events;
  std::array<SanctionRecord, 2> sanctions;
  std::array<RationaleMessage, 2> rationales;
};

struct TraceRecord {
  std::int64_t step = 0;
  int actor = 0;
  int observer = 0;
  SocietyPolicy policy = SocietyPolicy::Exanna;
  Action action = Action::Wear;
  ContextVector factors;
  int disclosed_private = 0;
  int total_private = 0;
  Decision decision = Decision::Reject;
};

using TraceSink = std::function<void(const TraceRecord&)>;

class World {
 public:
  // Validates the scenario and assigns agent types, preferences and native
  // places from the seeded generator.
  explicit World(Scenario scenario);

  const Scenario& scenario() const { return scenario_; }
  const PlaceLayout& layout() const { return layout_; }
  std::int64_t step() const { return step_; }
  std::vector<Agent>& agents() { return agents_; }
  const std::vector<Agent>& agents() const { return agents_; }
  RiskLevel risk_at(int place) const { return risk_[place]; }
  void set_risk(int place, RiskLevel r) { risk_[place] = r; }
  Rng& rng() { return rng_; }

  void update_risk();
  // Moves one agent and returns its new place index.
  int move_agent(int agent);
  void move_all();
  // Disjoint pairs of willing, co-located agents.
  std::vector<std::pair<int, int>> pair_interactions();

  // Family > friend > colleague > stranger.
  Circle circle(int a, int b) const;
  ContextVector form_beliefs(int agent, std::optional<int> partner);

  // Both agents decide, share rationales, evaluate and sanction each other,
  // then learn from reward plus received sanction.
  InteractionResult run_interaction(int a, int b);
  // Decide and learn from the actor reward alone.
  DecisionEvent run_solitary(int agent);

  // One full step: risk, movement, pairing, interactions, solitary agents.
  void advance(RunMetrics& metrics, const TraceSink& trace = {});

 private:
  struct Choice {
    ContextVector beliefs;
    ActionSet action_set;
    Action goal = Action::Wear;
    double reward = 0.0;
  };
  Choice decide(int agent, const ContextVector& beliefs);

  Scenario scenario_;
  PlaceLayout layout_;
  Rng rng_;
  std::vector<Agent> agents_;
  std::vector<RiskLevel> risk_;
  std::int64_t step_ = 0;
};

struct SimulationResult {
  RunMetrics metrics;
  std::vector<RulePopulation> populations;
  std::vector<AgentProfile> profiles;
};

// First step whose decisions feed the norm-adoption log.
std::int64_t adoption_window_start(std::int64_t steps, double window_fraction);

SimulationResult run_simulation(const Scenario& scenario, const TraceSink& trace = {});

}  // namespace normsim
