#pragma once
// Single-step accuracy-based learning classifier system: matching, covering,
// fitness-weighted action selection, reinforcement of the action set, genetic
// rule discovery with subsumption, and per-action-set deletion.

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "normsim/model.hpp"
#include "normsim/rng.hpp"

namespace normsim {

struct XcsParams {
  double beta = 0.1;             // learning rate
  double dont_care_prob = 0.3;   // wildcard probability at covering
  double epsilon0 = 0.01;        // accuracy threshold
  double nu = 5.0;               // fitness exponent
  double alpha = 0.1;            // accuracy scaling factor (bound to fitness_falloff by default)
  int ga_threshold = 25;
  double mutation_prob = 0.4;
  double crossover_prob = 0.8;
  int deletion_experience_threshold = 20;
  int subsumption_experience_threshold = 20;
  double fitness_falloff = 0.1;
  int max_rules_per_action_set = 20;
  double explore_prob = 0.1;

  double initial_prediction = 0.01;
  double initial_error = 0.01;
  double initial_fitness = 0.01;
  // Offspring start with this fraction of their parents' mean fitness.
  double offspring_fitness_factor = 0.1;

  // Throws ConfigError on out-of-range values.
  void validate() const;
};

// Owns one agent's rules. Indices handed out in match/action sets stay valid
// until the next compact().
class RulePopulation {
 public:
  std::vector<Classifier>& rules() { return rules_; }
  const std::vector<Classifier>& rules() const { return rules_; }
  Classifier& operator[](std::size_t i) { return rules_[i]; }
  const Classifier& operator[](std::size_t i) const { return rules_[i]; }
  std::size_t size() const { return rules_.size(); }
  bool empty() const { return rules_.empty(); }
  int total_numerosity() const;

  // Index of a rule with the same premise and action, if any.
  std::optional<std::size_t> find_identical(const ContextVector& premise, Action action) const;

  // Merges into an identical rule (adding numerosity) or appends. Returns
  // the index holding the rule and whether it was appended.
  std::pair<std::size_t, bool> insert(Classifier cl);

  // Drops rules whose numerosity reached 0. Returns old->new index mapping
  // (SIZE_MAX for removed entries).
  std::vector<std::size_t> compact();

 private:
  std::vector<Classifier> rules_;
};

struct MatchSet {
  std::vector<std::size_t> members;
};

struct ActionSet {
  Action action = Action::Wear;
  std::vector<std::size_t> members;
};

// Fitness-weighted reward per action; nullopt for actions with no rule.
using PredictionArray = std::array<std::optional<double>, kActionCount>;

// Rules whose premise matches ctx. Never modifies the population; ctx may be
// partial, in which case only premises inside it match.
MatchSet find_matches(const RulePopulation& pop, const ContextVector& ctx);

Classifier cover(const ContextVector& ctx, Action action, const XcsParams& params, Rng& rng,
                 std::int64_t now);

// Matching rules, after covering any action without a matching rule.
MatchSet build_match_set(RulePopulation& pop, const ContextVector& ctx, const XcsParams& params,
                         Rng& rng, std::int64_t now);

// sum over rules proposing a of fitness * numerosity * prediction.
PredictionArray prediction_array(const RulePopulation& pop, const MatchSet& ms);

// Argmax over represented actions; ties go to the lower action ordinal.
std::optional<Action> best_action(const PredictionArray& pa);

// Uniform random action when exploring, otherwise the best action.
Action select_action(const RulePopulation& pop, const MatchSet& ms, bool explore, Rng& rng);

ActionSet form_action_set(const RulePopulation& pop, const MatchSet& ms, Action action);

// Reinforcement update of every member: experience, prediction error (with
// the pre-update prediction), prediction, accuracy, relative accuracy and
// fitness.
void update_action_set(RulePopulation& pop, const ActionSet& as, double reward,
                       const XcsParams& params);

double accuracy(double error, const XcsParams& params);

// Numerosity-weighted mean of (now - ga_timestamp) over the action set.
double mean_time_since_ga(const RulePopulation& pop, const ActionSet& as, std::int64_t now);
bool ga_due(const RulePopulation& pop, const ActionSet& as, std::int64_t now, const XcsParams& params);

// Accurate and experienced enough to absorb offspring.
bool could_subsume(const Classifier& cl, const XcsParams& params);
bool does_subsume(const Classifier& general, const Classifier& specific, const XcsParams& params);

// One GA invocation on the action set. Offspring are matched to ctx, either
// subsumed by a parent or inserted; new rules are appended to as.members.
void run_ga(RulePopulation& pop, ActionSet& as, const ContextVector& ctx, const XcsParams& params,
            Rng& rng, std::int64_t now);

// Shrinks the action set to max_rules_per_action_set total numerosity by
// decrementing the lowest-fitness experienced rule (lowest-fitness overall
// when none is experienced). Compacts the population and remaps as.members.
void delete_excess(RulePopulation& pop, ActionSet& as, const XcsParams& params);

// update -> GA when due -> deletion.
void learn(RulePopulation& pop, ActionSet& as, const ContextVector& ctx, double reward,
           const XcsParams& params, Rng& rng, std::int64_t now);

// "<premise> => <action> | p | eps | F | num | exp"
std::string format_rule(const Classifier& cl);
// Throws std::invalid_argument on malformed lines.
Classifier parse_rule(std::string_view line);
void write_snapshot(std::ostream& out, const RulePopulation& pop);
RulePopulation read_snapshot(std::istream& in);

}  // namespace normsim
