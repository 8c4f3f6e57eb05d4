#include <gtest/gtest.h>

#include "normsim/payoff.hpp"
#include "normsim/world.hpp"
#include "test_support.hpp"

using namespace normsim;

namespace {

ContextVector ctx_of(RiskLevel r, Action pref, Place place = Place::Office) {
  ContextVector c;
  c.set(Attribute::Risk, bind::of(r));
  c.set(Attribute::Preference, bind::of(pref));
  c.set(Attribute::Location, bind::of(place));
  return c;
}

const PayoffTables kTables = PayoffTables::defaults();

}  // namespace

TEST(Payoff, HealthFreakHighRiskWear) {
  const auto w = ValueImportance::make("pandemic", {1.0, 0.0});
  EXPECT_EQ(aggregate_value_payoff(w, ctx_of(RiskLevel::Risk, Action::Wear), Action::Wear, kTables), 1.0);
}

TEST(Payoff, FreedomLovingFollowsOwnPreference) {
  const auto w = ValueImportance::make("pandemic", {0.0, 1.0});
  EXPECT_EQ(aggregate_value_payoff(w, ctx_of(RiskLevel::None, Action::NotWear), Action::NotWear, kTables), 1.0);
}

TEST(Payoff, MixedWeightsCombineLinearly) {
  const auto w = ValueImportance::make("pandemic", {0.3, 0.7});
  EXPECT_NEAR(aggregate_value_payoff(w, ctx_of(RiskLevel::Risk, Action::NotWear), Action::NotWear, kTables), 0.4,
              1e-15);
}

TEST(Payoff, UnresolvableColumnIsConfigError) {
  const auto w = ValueImportance::make("pandemic", {1.0, 0.0});
  ContextVector c;
  c.set(Attribute::Preference, bind::kPrefWear);
  EXPECT_THROW(aggregate_value_payoff(w, c, Action::Wear, kTables), ConfigError);
  // A zero-weight value never needs its column.
  const auto f = ValueImportance::make("pandemic", {0.0, 1.0});
  EXPECT_NO_THROW(aggregate_value_payoff(f, c, Action::Wear, kTables));
}

TEST(Payoff, CompositeRewardAddsPlace) {
  const auto health = ValueImportance::make("pandemic", {1.0, 0.0});
  const auto freedom = ValueImportance::make("pandemic", {0.0, 1.0});
  EXPECT_EQ(composite_actor_reward(health, ctx_of(RiskLevel::Risk, Action::Wear, Place::Hospital), Action::Wear,
                                   kTables),
            1.5);
  EXPECT_EQ(composite_actor_reward(freedom, ctx_of(RiskLevel::None, Action::NotWear, Place::Park), Action::NotWear,
                                   kTables),
            1.5);
  ContextVector home;
  home.set(Attribute::Location, bind::of(Place::Home));
  PayoffTables zeroed = kTables;
  // An agent with no value stake sees only the place term.
  const auto w = ValueImportance::make("pandemic", {0.5, 0.5});
  zeroed.values[0].entries = {std::vector<double>{0, 0}, std::vector<double>{0, 0}};
  zeroed.values[1].entries = {std::vector<double>{0, 0}, std::vector<double>{0, 0}};
  home.set(Attribute::Risk, bind::kRiskNone);
  home.set(Attribute::Preference, bind::kPrefWear);
  EXPECT_EQ(composite_actor_reward(w, home, Action::Wear, zeroed), -0.25);
}

TEST(Payoff, PlaceTableDefaults) {
  const auto& t = kTables.places;
  EXPECT_EQ(t.payoff(Place::Home, Action::Wear), -0.25);
  EXPECT_EQ(t.payoff(Place::Home, Action::NotWear), 0.25);
  EXPECT_EQ(t.payoff(Place::Office, Action::Wear), 0.25);
  EXPECT_EQ(t.payoff(Place::Office, Action::NotWear), -0.25);
  EXPECT_EQ(t.payoff(Place::Party, Action::Wear), -0.25);
  EXPECT_EQ(t.payoff(Place::Party, Action::NotWear), 0.25);
  EXPECT_EQ(t.payoff(Place::Park, Action::Wear), -0.5);
  EXPECT_EQ(t.payoff(Place::Park, Action::NotWear), 0.5);
  EXPECT_EQ(t.payoff(Place::Hospital, Action::Wear), 0.5);
  EXPECT_EQ(t.payoff(Place::Hospital, Action::NotWear), -0.5);
}

TEST(Sanction, CircleMagnitudes) {
  EXPECT_EQ(sanction_magnitude(Circle::Family, Decision::Reject), -1.0);
  EXPECT_EQ(sanction_magnitude(Circle::Stranger, Decision::Accept), 0.25);
  EXPECT_EQ(sanction_magnitude(Circle::Colleague, Decision::Reject), -0.5);
  EXPECT_EQ(sanction_magnitude(Circle::Friend, Decision::Accept), 0.75);
  for (std::size_t c = 0; c < kCircleCount; ++c) {
    const auto circle = static_cast<Circle>(c);
    EXPECT_EQ(sanction_magnitude(circle, Decision::Accept), -sanction_magnitude(circle, Decision::Reject));
  }
}

TEST(Goal, ValueDerived) {
  const auto health = ValueImportance::make("pandemic", {1.0, 0.0});
  const auto freedom = ValueImportance::make("pandemic", {0.0, 1.0});
  EXPECT_EQ(goal_action(health, ctx_of(RiskLevel::Risk, Action::NotWear), kTables), Action::Wear);
  EXPECT_EQ(goal_action(freedom, ctx_of(RiskLevel::Risk, Action::NotWear), kTables), Action::NotWear);
  // 0 vs 0 under no risk: tie goes to WEAR.
  EXPECT_EQ(goal_action(health, ctx_of(RiskLevel::None, Action::NotWear, Place::Park), kTables), Action::Wear);
}

TEST(Property, AggregationIsLinearInWeights) {
  Rng rng(3);
  for (int i = 0; i < 500; ++i) {
    const double h = rng.uniform01();
    const double lambda = rng.uniform01();
    const auto w = ValueImportance::make("pandemic", {h, 1.0 - h});
    const auto ctx = ctx_of(rng.bernoulli(0.5) ? RiskLevel::Risk : RiskLevel::None,
                            rng.bernoulli(0.5) ? Action::Wear : Action::NotWear);
    // Scaled weights no longer sum to 1, so the sum is taken by hand per value.
    for (Action a : kAllActions) {
      const double full = aggregate_value_payoff(w, ctx, a, kTables);
      double scaled = 0.0;
      for (Value v : kAllValues) {
        const auto& m = kTables.matrix(v);
        scaled += lambda * w.weight(v) * m.payoff(a, *ctx.get(m.condition));
      }
      EXPECT_NEAR(scaled, lambda * full, 1e-12);
    }
  }
}

TEST(ValueFactors, DefaultAssociations) {
  const auto t = ValueFactorTable::defaults();
  EXPECT_TRUE(t.relates(Attribute::Risk, Value::Health));
  EXPECT_TRUE(t.relates(Attribute::RiskFromAnother, Value::Health));
  EXPECT_TRUE(t.relates(Attribute::Preference, Value::Freedom));
  EXPECT_FALSE(t.relates(Attribute::Risk, Value::Freedom));
  EXPECT_FALSE(t.relates(Attribute::Location, Value::Health));
  const auto health = ValueImportance::make("pandemic", {1.0, 0.0});
  EXPECT_TRUE(t.relevant_to(Attribute::Risk, health));
  EXPECT_FALSE(t.relevant_to(Attribute::Preference, health));
}

// Independent enumeration oracle for the weighted value payoff: the tables are
// restated here as literals and every (preset, type, risk, preference,
// action) combination is compared exactly.
namespace enumeration {

double health_payoff(bool risky, bool wear) {
  if (!risky) return 0.0;
  return wear ? 1.0 : -1.0;
}

double freedom_payoff(bool prefers_wear, bool wear) { return prefers_wear == wear ? 1.0 : -1.0; }

double weights(bool mixed, bool health_type, bool for_health) {
  if (!mixed) return health_type == for_health ? 1.0 : 0.0;
  return health_type == for_health ? 0.7 : 0.3;
}

}  // namespace enumeration

TEST(Oracle, WeightedPayoffMatchesEnumeration) {
  int cases = 0;
  for (bool mixed : {false, true}) {
    for (AgentType type : {AgentType::Health, AgentType::Freedom}) {
      const auto w = preset_importance(mixed ? ValuePreset::Mixed : ValuePreset::Pure, type, "pandemic");
      const bool health_type = type == AgentType::Health;
      for (bool risky : {false, true}) {
        for (bool prefers_wear : {false, true}) {
          for (bool wear : {false, true}) {
            const double expected =
                enumeration::weights(mixed, health_type, true) * enumeration::health_payoff(risky, wear) +
                enumeration::weights(mixed, health_type, false) * enumeration::freedom_payoff(prefers_wear, wear);
            const auto ctx = ctx_of(risky ? RiskLevel::Risk : RiskLevel::None,
                                    prefers_wear ? Action::Wear : Action::NotWear);
            const double got = aggregate_value_payoff(w, ctx, wear ? Action::Wear : Action::NotWear, kTables);
            EXPECT_EQ(got, expected) << "case " << cases;
            ++cases;
          }
        }
      }
    }
  }
  EXPECT_EQ(cases, 32);
}
