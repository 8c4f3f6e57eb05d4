#include <gtest/gtest.h>

#include "normsim/rationale.hpp"
#include "normsim/world.hpp"
#include "test_support.hpp"

using namespace normsim;
using testing_support::office_context;

namespace {

Classifier rule(std::string_view premise, Action a, double p, double f) {
  Classifier cl;
  cl.premise = parse_context(premise);
  cl.action = a;
  cl.prediction = p;
  cl.fitness = f;
  return cl;
}

AgentProfile profile(AgentType t, ValuePreset preset = ValuePreset::Pure) {
  AgentProfile p;
  p.type = t;
  p.value_importances = {preset_importance(preset, t, "pandemic")};
  return p;
}

ValueImportancePair both(AgentType actor, AgentType observer) {
  const auto a = profile(actor);
  const auto o = profile(observer);
  return get_value_importance("pandemic", a, &o);
}

RulePopulation actor_rules() {
  RulePopulation pop;
  pop.insert(rule("Risk=NONE;InteractWith=COLLEAGUE", Action::NotWear, 1.0, 0.8));
  pop.insert(rule("Preference=NOT_WEAR", Action::NotWear, 0.5, 0.4));
  pop.insert(rule("Location=OFFICE", Action::Wear, 0.2, 0.3));
  return pop;
}

}  // namespace

TEST(Society, Names) {
  EXPECT_EQ(parse_society("Share-All"), SocietyPolicy::ShareAll);
  EXPECT_EQ(parse_society("share_rules"), SocietyPolicy::ShareRules);
  EXPECT_EQ(parse_society("EXANNA"), SocietyPolicy::Exanna);
  EXPECT_FALSE(parse_society("anarchy"));
}

TEST(ValueLookup, HealthFreakPure) {
  const auto actor = profile(AgentType::Health);
  const auto v = get_value_importance("pandemic", actor, nullptr);
  EXPECT_EQ(v.actor.weight(Value::Health), 1.0);
  EXPECT_EQ(v.actor.weight(Value::Freedom), 0.0);
  EXPECT_FALSE(v.observer.has_value());
}

TEST(ValueLookup, MixedFreedomLoving) {
  const auto actor = profile(AgentType::Freedom, ValuePreset::Mixed);
  const auto v = get_value_importance("pandemic", actor, nullptr);
  EXPECT_EQ(v.actor.weight(Value::Freedom), 0.7);
  EXPECT_EQ(v.actor.weight(Value::Health), 0.3);
}

TEST(ValueLookup, MissingClassIsConfigError) {
  const auto actor = profile(AgentType::Health);
  EXPECT_THROW(get_value_importance("normal", actor, nullptr), ConfigError);
}

TEST(Generate, ExannaWithholdsPreferenceBetweenHealthAgents) {
  const auto pop = actor_rules();
  const auto msg = generate_rationale(office_context(), Action::NotWear, SocietyPolicy::Exanna, pop,
                                      both(AgentType::Health, AgentType::Health), DisclosurePolicy{});
  EXPECT_EQ(msg.factors, parse_context("Risk=NONE;InteractWith=COLLEAGUE"));
  EXPECT_EQ(msg.total_private_count, 2);
  EXPECT_EQ(msg.disclosed_private_count, 1);
  EXPECT_DOUBLE_EQ(msg.privacy(), 0.5);
}

TEST(Generate, ShareRulesKeepsTheFullUnion) {
  const auto pop = actor_rules();
  const auto msg = generate_rationale(office_context(), Action::NotWear, SocietyPolicy::ShareRules, pop,
                                      both(AgentType::Health, AgentType::Health), DisclosurePolicy{});
  EXPECT_EQ(msg.factors, parse_context("Risk=NONE;InteractWith=COLLEAGUE;Preference=NOT_WEAR"));
  EXPECT_DOUBLE_EQ(msg.privacy(), 0.0);
}

TEST(Generate, ShareAllDisclosesEverything) {
  const auto pop = actor_rules();
  const auto msg = generate_rationale(office_context(), Action::Wear, SocietyPolicy::ShareAll, pop,
                                      both(AgentType::Freedom, AgentType::Health), DisclosurePolicy{});
  EXPECT_EQ(msg.factors, office_context());
  EXPECT_DOUBLE_EQ(msg.privacy(), 0.0);
}

TEST(Generate, NoPrivateFactorsMeansFullPrivacy) {
  RulePopulation pop;
  pop.insert(rule("InteractWith=COLLEAGUE", Action::NotWear, 1.0, 0.5));
  const auto msg = generate_rationale(office_context(), Action::NotWear, SocietyPolicy::ShareRules, pop,
                                      both(AgentType::Health, AgentType::Health), DisclosurePolicy{});
  EXPECT_EQ(msg.total_private_count, 0);
  EXPECT_DOUBLE_EQ(msg.privacy(), 1.0);
}

TEST(Aggregate, ConflictsResolveToFittestRule) {
  RulePopulation pop;
  pop.insert(rule("Location=OFFICE", Action::Wear, 0, 0.2));
  pop.insert(rule("Location=HOSPITAL;Risk=RISK", Action::Wear, 0, 0.9));
  pop.insert(rule("Location=PARK", Action::Wear, 0, 0.5));
  const auto agg = aggregate_premises(pop, {Action::Wear, {0, 1, 2}});
  EXPECT_EQ(agg, parse_context("Location=HOSPITAL;Risk=RISK"));
}

TEST(Evaluate, ColleagueAcceptsMatchingRationale) {
  // The observer's own rules favour not wearing when there is no risk with a colleague.
  RulePopulation observer;
  observer.insert(rule("Risk=NONE;InteractWith=COLLEAGUE", Action::NotWear, 1.0, 0.9));
  observer.insert(rule("Risk=NONE;InteractWith=COLLEAGUE", Action::Wear, 1.0, 0.1));
  RationaleMessage msg;
  msg.factors = parse_context("Risk=NONE;InteractWith=COLLEAGUE");
  msg.action = Action::NotWear;
  auto observer_beliefs = office_context();
  observer_beliefs.set(Attribute::Preference, bind::kPrefWear);
  const auto ev = evaluate_rationale(msg, Action::NotWear, observer_beliefs, observer, PrivacyTags::defaults());
  EXPECT_EQ(ev.decision, Decision::Accept);
  EXPECT_EQ(ev.from_rationale, Action::NotWear);
  // Only private bindings enter the observer's beliefs.
  EXPECT_EQ(*ev.updated_beliefs.get(Attribute::Risk), bind::kRiskNone);
  EXPECT_EQ(*ev.updated_beliefs.get(Attribute::Preference), bind::kPrefWear);
}

TEST(Evaluate, EmptyPopulationRejects) {
  RationaleMessage msg;
  msg.factors = office_context();
  const auto ev = evaluate_rationale(msg, Action::Wear, office_context(), RulePopulation{}, PrivacyTags::defaults());
  EXPECT_EQ(ev.decision, Decision::Reject);
  EXPECT_FALSE(ev.from_rationale);
  EXPECT_FALSE(ev.from_beliefs);
}

TEST(Evaluate, RejectWhenNoTriggeredGroupSupportsTheAction) {
  // Fitness-weighted: WEAR 0.8*1*1 = 0.8 vs NOT_WEAR 0.3*1*1 = 0.3.
  RulePopulation own;
  own.insert(rule("Location=OFFICE", Action::Wear, 1.0, 0.8));
  own.insert(rule("Risk=NONE", Action::NotWear, 1.0, 0.3));
  RationaleMessage msg;
  msg.factors = parse_context("Risk=NONE;Location=OFFICE");
  const auto ev = evaluate_rationale(msg, Action::NotWear, office_context(), own, PrivacyTags::defaults());
  EXPECT_EQ(ev.from_rationale, Action::Wear);
  EXPECT_EQ(ev.from_beliefs, Action::Wear);
  EXPECT_EQ(ev.decision, Decision::Reject);
}

TEST(Property, DisclosureIsMonotone) {
  Rng rng(99);
  DisclosurePolicy policy;
  for (int i = 0; i < 1000; ++i) {
    const auto beliefs = testing_support::random_context(rng);
    RulePopulation pop;
    const int n = 1 + static_cast<int>(rng.below(8));
    for (int k = 0; k < n; ++k) {
      pop.insert(testing_support::random_rule(rng, testing_support::random_sub_premise(beliefs, rng)));
    }
    const Action a = kAllActions[rng.below(kActionCount)];
    const auto values = both(rng.bernoulli(0.5) ? AgentType::Health : AgentType::Freedom,
                             rng.bernoulli(0.5) ? AgentType::Health : AgentType::Freedom);
    const auto ex = generate_rationale(beliefs, a, SocietyPolicy::Exanna, pop, values, policy);
    const auto sr = generate_rationale(beliefs, a, SocietyPolicy::ShareRules, pop, values, policy);
    const auto sa = generate_rationale(beliefs, a, SocietyPolicy::ShareAll, pop, values, policy);
    EXPECT_TRUE(ex.factors.is_subset_of(sr.factors));
    EXPECT_TRUE(sr.factors.is_subset_of(sa.factors));
    EXPECT_TRUE(sa.factors.is_subset_of(beliefs));
    for (const auto* m : {&ex, &sr, &sa}) {
      EXPECT_LE(m->disclosed_private_count, m->total_private_count);
      EXPECT_GE(m->privacy(), 0.0);
      EXPECT_LE(m->privacy(), 1.0);
    }
    EXPECT_EQ(sa.privacy(), 0.0);
  }
}

TEST(Property, BeliefUpdateIsIdempotent) {
  Rng rng(5);
  const auto tags = PrivacyTags::defaults();
  for (int i = 0; i < 500; ++i) {
    RationaleMessage msg;
    msg.factors = testing_support::random_premise(rng);
    const auto beliefs = testing_support::random_context(rng);
    const auto once = update_beliefs(beliefs, msg, tags);
    EXPECT_EQ(update_beliefs(once, msg, tags), once);
  }
}

TEST(Property, PublicFactorsDoNotMovePrivacy) {
  Rng rng(6);
  const auto tags = PrivacyTags::defaults();
  for (int i = 0; i < 500; ++i) {
    auto factors = testing_support::random_premise(rng);
    const auto before = count_private(factors, tags);
    for (Attribute a : {Attribute::Location, Attribute::InteractWith, Attribute::ObserverAgentType}) {
      factors.erase(a);
    }
    EXPECT_EQ(count_private(factors, tags), before);
  }
}

TEST(Property, EvaluationIsDeterministic) {
  Rng rng(8);
  for (int i = 0; i < 200; ++i) {
    const auto beliefs = testing_support::random_context(rng);
    RulePopulation pop;
    for (int k = 0; k < 6; ++k) {
      pop.insert(testing_support::random_rule(rng, testing_support::random_sub_premise(beliefs, rng)));
    }
    RationaleMessage msg;
    msg.factors = testing_support::random_sub_premise(beliefs, rng);
    const auto a = evaluate_rationale(msg, Action::Wear, beliefs, pop, PrivacyTags::defaults());
    const auto b = evaluate_rationale(msg, Action::Wear, beliefs, pop, PrivacyTags::defaults());
    EXPECT_EQ(a.decision, b.decision);
    EXPECT_EQ(a.from_rationale, b.from_rationale);
  }
}
