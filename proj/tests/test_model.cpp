#include <gtest/gtest.h>

#include "normsim/model.hpp"
#include "normsim/rng.hpp"
#include "test_support.hpp"

using namespace normsim;

TEST(ContextVector, RejectsDuplicateAttributes) {
  EXPECT_THROW((ContextVector{{Attribute::Risk, bind::kRiskNone}, {Attribute::Risk, bind::kRiskRisk}}),
               std::invalid_argument);
}

TEST(ContextVector, RejectsBindingOutsideDomain) {
  EXPECT_THROW(AttributeBinding::make(Attribute::Location, 5), std::invalid_argument);
  EXPECT_THROW(AttributeBinding::make(Attribute::Risk, 2), std::invalid_argument);
  EXPECT_NO_THROW(AttributeBinding::make(Attribute::Location, 4));
}

TEST(ContextVector, TextRoundTrip) {
  const auto ctx = parse_context("Risk=NONE;Preference=NOT_WEAR;InteractWith=COLLEAGUE;Location=OFFICE");
  EXPECT_EQ(to_string(ctx), "InteractWith=COLLEAGUE;Location=OFFICE;Preference=NOT_WEAR;Risk=NONE");
  EXPECT_EQ(parse_context(to_string(ctx)), ctx);
  EXPECT_EQ(to_string(ContextVector{}), "*");
  EXPECT_TRUE(parse_context("*").empty());
  EXPECT_EQ(parse_context("{risk=risk, location=hospital}"),
            (ContextVector{{Attribute::Risk, bind::kRiskRisk}, {Attribute::Location, bind::of(Place::Hospital)}}));
  EXPECT_THROW(parse_context("Risk=LOW"), std::invalid_argument);
  EXPECT_THROW(parse_context("Mood=HAPPY"), std::invalid_argument);
}

TEST(ContextVector, KeysAreDistinct) {
  Rng rng(3);
  for (int i = 0; i < 500; ++i) {
    const auto a = testing_support::random_premise(rng);
    const auto b = testing_support::random_premise(rng);
    EXPECT_EQ(a.key() == b.key(), a == b);
  }
}

TEST(Privacy, DefaultTags) {
  const auto tags = PrivacyTags::defaults();
  EXPECT_TRUE(tags.private_attribute(Attribute::Risk));
  EXPECT_TRUE(tags.private_attribute(Attribute::Preference));
  EXPECT_TRUE(tags.private_attribute(Attribute::RiskFromAnother));
  EXPECT_FALSE(tags.private_attribute(Attribute::Location));
  EXPECT_FALSE(tags.private_attribute(Attribute::InteractWith));
  EXPECT_FALSE(tags.private_attribute(Attribute::ObserverAgentType));
}

TEST(Matches, EmptyPremiseMatchesEverything) {
  EXPECT_TRUE(matches(ContextVector{}, testing_support::office_context()));
}

TEST(Matches, PartialPremiseFromRunningExample) {
  const auto premise = parse_context("Risk=NONE;InteractWith=COLLEAGUE");
  EXPECT_TRUE(matches(premise, testing_support::office_context()));
}

TEST(Matches, BindingMismatch) {
  EXPECT_FALSE(matches(parse_context("Risk=RISK"), testing_support::office_context()));
}

TEST(IsMoreGeneral, StrictSubsetWins) {
  Classifier a{parse_context("Risk=NONE"), Action::NotWear};
  Classifier b{parse_context("Risk=NONE;InteractWith=FRIEND"), Action::NotWear};
  EXPECT_TRUE(is_more_general(a, b));
  EXPECT_FALSE(is_more_general(b, a));
}

TEST(IsMoreGeneral, IdenticalPremisesAreNotStrict) {
  Classifier a{parse_context("Risk=NONE"), Action::Wear};
  EXPECT_FALSE(is_more_general(a, a));
}

TEST(IsMoreGeneral, BindingConflict) {
  Classifier a{parse_context("Risk=NONE"), Action::Wear};
  Classifier b{parse_context("Risk=RISK;InteractWith=FRIEND"), Action::Wear};
  EXPECT_FALSE(is_more_general(a, b));
}

TEST(IsMoreGeneral, DifferentActions) {
  Classifier a{parse_context("Risk=NONE"), Action::Wear};
  Classifier b{parse_context("Risk=NONE;InteractWith=FRIEND"), Action::NotWear};
  EXPECT_FALSE(is_more_general(a, b));
}

TEST(Property, MatchingIsMonotoneUnderGeneralization) {
  Rng rng(11);
  int checked = 0;
  for (int i = 0; i < 20000; ++i) {
    const auto ctx = testing_support::random_context(rng);
    Classifier b{testing_support::random_sub_premise(ctx, rng), Action::Wear};
    Classifier a{testing_support::random_sub_premise(b.premise, rng), Action::Wear};
    // A random (not necessarily matching) context as well.
    const auto other = testing_support::random_context(rng);
    for (const auto& c : {ctx, other}) {
      if (is_more_general(a, b) && matches(b.premise, c)) {
        EXPECT_TRUE(matches(a.premise, c));
        ++checked;
      }
    }
  }
  EXPECT_GT(checked, 1000);
}

TEST(ValueImportance, WeightsMustSumToOne) {
  EXPECT_NO_THROW(ValueImportance::make("pandemic", {0.7, 0.3}));
  EXPECT_THROW(ValueImportance::make("pandemic", {0.7, 0.4}), ConfigError);
  EXPECT_THROW(ValueImportance::make("pandemic", {1.2, -0.2}), ConfigError);
}

TEST(Property, ConstructedImportancesSumToOne) {
  Rng rng(5);
  for (int i = 0; i < 1000; ++i) {
    const double h = rng.uniform01();
    const auto vi = ValueImportance::make("pandemic", {h, 1.0 - h});
    EXPECT_NEAR(vi.weight(Value::Health) + vi.weight(Value::Freedom), 1.0, 1e-9);
  }
}

TEST(AgentProfile, MissingContextClassIsConfigError) {
  AgentProfile p;
  p.value_importances = {ValueImportance::make("pandemic", {1.0, 0.0})};
  EXPECT_EQ(p.importance_for("pandemic").weight(Value::Health), 1.0);
  EXPECT_THROW(p.importance_for("normal"), ConfigError);
}

TEST(Rationale, PrivacyScore) {
  RationaleMessage m;
  m.total_private_count = 2;
  m.disclosed_private_count = 1;
  EXPECT_DOUBLE_EQ(m.privacy(), 0.5);
  m.total_private_count = 0;
  m.disclosed_private_count = 0;
  EXPECT_DOUBLE_EQ(m.privacy(), 1.0);
}

TEST(Rng, StableHashIsFnv1a) {
  // Published FNV-1a 64 test vectors.
  EXPECT_EQ(stable_hash(""), 0xcbf29ce484222325ULL);
  EXPECT_EQ(stable_hash("a"), 0xaf63dc4c8601ec8cULL);
  EXPECT_EQ(stable_hash("foobar"), 0x85944171f73967e8ULL);
}

TEST(Rng, BelowIsInRangeAndUniform) {
  Rng rng(1);
  std::array<int, 5> counts{};
  for (int i = 0; i < 50000; ++i) counts[rng.below(5)] += 1;
  for (int c : counts) EXPECT_NEAR(c / 50000.0, 0.2, 0.01);
}
