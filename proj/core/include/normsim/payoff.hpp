#pragma once
// Value-indexed payoff matrices, the weighted value aggregation, place
// payoffs, sanction magnitudes and value-derived goals.

#include <array>
#include <vector>

#include "normsim/model.hpp"

namespace normsim {

// Payoff of each action for one value, keyed by a condition attribute read
// from the context (own Preference for freedom, believed Risk for health).
struct ValuePayoffMatrix {
  Value value = Value::Health;
  Attribute condition = Attribute::Risk;
  // entries[action][condition binding]
  std::array<std::vector<double>, kActionCount> entries;

  double payoff(Action a, Binding condition_binding) const;
};

struct PlacePayoffTable {
  // entries[place][action]
  std::array<std::array<double, kActionCount>, kPlaceCount> entries{};

  double payoff(Place p, Action a) const { return entries[index_of(p)][index_of(a)]; }
  static PlacePayoffTable defaults();
};

struct PayoffTables {
  std::array<ValuePayoffMatrix, kValueCount> values;
  PlacePayoffTable places;

  static PayoffTables defaults();
  const ValuePayoffMatrix& matrix(Value v) const { return values[index_of(v)]; }
  // Throws ConfigError when a matrix is malformed.
  void validate() const;
};

// Which values each context attribute speaks to. Used to decide what private
// information is worth disclosing.
struct ValueFactorTable {
  std::array<std::array<bool, kValueCount>, kAttributeCount> related{};

  // Risk -> health, RiskFromAnother -> health, Preference -> freedom.
  static ValueFactorTable defaults();
  bool relates(Attribute a, Value v) const { return related[index_of(a)][index_of(v)]; }
  // Attribute is tied to some value with positive weight in `weights`.
  bool relevant_to(Attribute a, const ValueImportance& weights) const;
};

// sum_i v_i * r_i(action, condition from ctx). Throws ConfigError when a value
// with positive weight cannot resolve its condition column from ctx.
double aggregate_value_payoff(const ValueImportance& weights, const ContextVector& ctx, Action action,
                              const PayoffTables& tables);

// Value payoff plus the place payoff for ctx's Location.
double composite_actor_reward(const ValueImportance& weights, const ContextVector& ctx, Action action,
                              const PayoffTables& tables);

double sanction_magnitude(Circle circle, Decision decision);

// Action maximising the value payoff alone; ties go to WEAR.
Action goal_action(const ValueImportance& weights, const ContextVector& ctx, const PayoffTables& tables);

}  // namespace normsim
