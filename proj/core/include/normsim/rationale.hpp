#pragma once
// Rationale generation with value-aligned withholding, rationale evaluation by
// analogous decision, and value-importance lookup.

#include <optional>
#include <string_view>

#include "normsim/model.hpp"
#include "normsim/payoff.hpp"
#include "normsim/xcs.hpp"

namespace normsim {

enum class SocietyPolicy : std::uint8_t { ShareAll, ShareRules, Exanna };

// "share_all", "share_rules", "exanna"
std::string_view society_name(SocietyPolicy p);
// Accepts the names above, '-' for '_', any case.
std::optional<SocietyPolicy> parse_society(std::string_view name);

struct ValueImportancePair {
  ValueImportance actor;
  std::optional<ValueImportance> observer;
};

// Each party's importances for the context class; no observer -> nullopt.
ValueImportancePair get_value_importance(std::string_view context_class, const AgentProfile& actor,
                                         const AgentProfile* observer);

struct DisclosurePolicy {
  PrivacyTags privacy = PrivacyTags::defaults();
  ValueFactorTable factors = ValueFactorTable::defaults();
};

// Attribute-wise union of the action-set premises. Conflicting bindings for
// an attribute resolve to the highest-fitness rule's binding.
ContextVector aggregate_premises(const RulePopulation& pop, const ActionSet& as);

RationaleMessage generate_rationale(const ContextVector& beliefs, Action action, SocietyPolicy policy,
                                    const RulePopulation& rules, const ValueImportancePair& values,
                                    const DisclosurePolicy& disclosure);

// Observer beliefs with every private binding in the rationale applied.
ContextVector update_beliefs(const ContextVector& beliefs, const RationaleMessage& rationale,
                             const PrivacyTags& privacy);

struct Evaluation {
  Decision decision = Decision::Reject;
  ContextVector updated_beliefs;
  // Best action among own rules triggered by the rationale's factors / by
  // the updated beliefs; nullopt when nothing triggered.
  std::optional<Action> from_rationale;
  std::optional<Action> from_beliefs;
};

// Accept iff some triggered rule group's best action is the observed one.
Evaluation evaluate_rationale(const RationaleMessage& rationale, Action observed,
                              const ContextVector& beliefs, const RulePopulation& own,
                              const PrivacyTags& privacy);

}  // namespace normsim
