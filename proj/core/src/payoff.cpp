#include "normsim/payoff.hpp"

#include <string>

namespace normsim {

double ValuePayoffMatrix::payoff(Action a, Binding condition_binding) const {
  const auto& row = entries[index_of(a)];
  if (condition_binding >= row.size()) {
    throw ConfigError("payoff matrix for " + std::string(value_name(value)) +
                      " has no column for binding " + std::to_string(condition_binding));
  }
  return row[condition_binding];
}

PlacePayoffTable PlacePayoffTable::defaults() {
  PlacePayoffTable t;
  t.entries[index_of(Place::Home)] = {-0.25, 0.25};
  t.entries[index_of(Place::Office)] = {0.25, -0.25};
  t.entries[index_of(Place::Party)] = {-0.25, 0.25};
  t.entries[index_of(Place::Park)] = {-0.50, 0.50};
  t.entries[index_of(Place::Hospital)] = {0.50, -0.50};
  return t;
}

PayoffTables PayoffTables::defaults() {
  PayoffTables t;
  auto& health = t.values[index_of(Value::Health)];
  health.value = Value::Health;
  health.condition = Attribute::Risk;
  // columns: NONE, RISK
  health.entries[index_of(Action::Wear)] = {0.0, 1.0};
  health.entries[index_of(Action::NotWear)] = {0.0, -1.0};

  auto& freedom = t.values[index_of(Value::Freedom)];
  freedom.value = Value::Freedom;
  freedom.condition = Attribute::Preference;
  // columns: preference WEAR, preference NOT_WEAR
  freedom.entries[index_of(Action::Wear)] = {1.0, -1.0};
  freedom.entries[index_of(Action::NotWear)] = {-1.0, 1.0};

  t.places = PlacePayoffTable::defaults();
  return t;
}

void PayoffTables::validate() const {
  for (Value v : kAllValues) {
    const auto& m = matrix(v);
    if (m.value != v) throw ConfigError("payoff matrices out of order");
    for (Action a : kAllActions) {
      if (m.entries[index_of(a)].size() != domain_size(m.condition)) {
        throw ConfigError("payoff matrix for " + std::string(value_name(v)) + " needs one column per " +
                          std::string(attribute_name(m.condition)) + " binding");
      }
    }
  }
}

ValueFactorTable ValueFactorTable::defaults() {
  ValueFactorTable t;
  t.related[index_of(Attribute::Risk)][index_of(Value::Health)] = true;
  t.related[index_of(Attribute::RiskFromAnother)][index_of(Value::Health)] = true;
  t.related[index_of(Attribute::Preference)][index_of(Value::Freedom)] = true;
  return t;
}

bool ValueFactorTable::relevant_to(Attribute a, const ValueImportance& weights) const {
  for (Value v : kAllValues) {
    if (relates(a, v) && weights.weight(v) > 0.0) return true;
  }
  return false;
}

double aggregate_value_payoff(const ValueImportance& weights, const ContextVector& ctx, Action action,
                              const PayoffTables& tables) {
  double f = 0.0;
  for (Value v : kAllValues) {
    const double w = weights.weight(v);
    if (w == 0.0) continue;
    const auto& m = tables.matrix(v);
    const auto column = ctx.get(m.condition);
    if (!column) {
      throw ConfigError("cannot resolve " + std::string(attribute_name(m.condition)) +
                        " column for value " + std::string(value_name(v)));
    }
    f += w * m.payoff(action, *column);
  }
  return f;
}

double composite_actor_reward(const ValueImportance& weights, const ContextVector& ctx, Action action,
                              const PayoffTables& tables) {
  const auto location = ctx.get(Attribute::Location);
  if (!location) throw ConfigError("context has no Location for the place payoff");
  return aggregate_value_payoff(weights, ctx, action, tables) +
         tables.places.payoff(static_cast<Place>(*location), action);
}

double sanction_magnitude(Circle circle, Decision decision) {
  static constexpr std::array<double, kCircleCount> kMagnitude{1.00, 0.75, 0.50, 0.25};
  const double m = kMagnitude[static_cast<std::size_t>(circle)];
  return decision == Decision::Accept ? m : -m;
}

Action goal_action(const ValueImportance& weights, const ContextVector& ctx, const PayoffTables& tables) {
  const double wear = aggregate_value_payoff(weights, ctx, Action::Wear, tables);
  const double not_wear = aggregate_value_payoff(weights, ctx, Action::NotWear, tables);
  return not_wear > wear ? Action::NotWear : Action::Wear;
}

}  // namespace normsim
