#include "normsim/rationale.hpp"

#include <algorithm>
#include <cctype>
#include <string>

namespace normsim {

std::string_view society_name(SocietyPolicy p) {
  switch (p) {
    case SocietyPolicy::ShareAll: return "share_all";
    case SocietyPolicy::ShareRules: return "share_rules";
    case SocietyPolicy::Exanna: return "exanna";
  }
  return "unknown";
}

std::optional<SocietyPolicy> parse_society(std::string_view name) {
  std::string norm;
  for (char c : name) norm += c == '-' ? '_' : static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  for (auto p : {SocietyPolicy::ShareAll, SocietyPolicy::ShareRules, SocietyPolicy::Exanna}) {
    if (norm == society_name(p)) return p;
  }
  return std::nullopt;
}

ValueImportancePair get_value_importance(std::string_view context_class, const AgentProfile& actor,
                                         const AgentProfile* observer) {
  ValueImportancePair out{actor.importance_for(context_class), std::nullopt};
  if (observer != nullptr) out.observer = observer->importance_for(context_class);
  return out;
}

ContextVector aggregate_premises(const RulePopulation& pop, const ActionSet& as) {
  ContextVector agg;
  std::array<double, kAttributeCount> owner_fitness{};
  for (std::size_t i : as.members) {
    const Classifier& cl = pop[i];
    for (const auto& b : cl.premise.bindings()) {
      const std::size_t slot = index_of(b.attribute);
      if (!agg.has(b.attribute) || cl.fitness > owner_fitness[slot]) {
        agg.set(b.attribute, b.binding);
        owner_fitness[slot] = cl.fitness;
      }
    }
  }
  return agg;
}

RationaleMessage generate_rationale(const ContextVector& beliefs, Action action, SocietyPolicy policy,
                                    const RulePopulation& rules, const ValueImportancePair& values,
                                    const DisclosurePolicy& disclosure) {
  RationaleMessage msg;
  msg.action = action;

  ContextVector aggregate;
  if (policy == SocietyPolicy::ShareAll) {
    aggregate = beliefs;
  } else {
    aggregate = aggregate_premises(rules, form_action_set(rules, find_matches(rules, beliefs), action));
  }
  msg.total_private_count = static_cast<int>(count_private(aggregate, disclosure.privacy));

  msg.factors = aggregate;
  if (policy == SocietyPolicy::Exanna) {
    for (const auto& b : aggregate.bindings()) {
      if (!disclosure.privacy.private_attribute(b.attribute)) continue;
      const bool actor_cares = disclosure.factors.relevant_to(b.attribute, values.actor);
      const bool observer_cares =
          values.observer && disclosure.factors.relevant_to(b.attribute, *values.observer);
      if (!actor_cares && !observer_cares) msg.factors.erase(b.attribute);
    }
  }
  msg.disclosed_private_count = static_cast<int>(count_private(msg.factors, disclosure.privacy));
  return msg;
}

ContextVector update_beliefs(const ContextVector& beliefs, const RationaleMessage& rationale,
                             const PrivacyTags& privacy) {
  ContextVector updated = beliefs;
  for (const auto& b : rationale.factors.bindings()) {
    if (privacy.private_attribute(b.attribute)) updated.set(b.attribute, b.binding);
  }
  return updated;
}

Evaluation evaluate_rationale(const RationaleMessage& rationale, Action observed,
                              const ContextVector& beliefs, const RulePopulation& own,
                              const PrivacyTags& privacy) {
  Evaluation ev;
  ev.updated_beliefs = update_beliefs(beliefs, rationale, privacy);
  ev.from_rationale = best_action(prediction_array(own, find_matches(own, rationale.factors)));
  ev.from_beliefs = best_action(prediction_array(own, find_matches(own, ev.updated_beliefs)));
  const bool supported = ev.from_rationale == observed || ev.from_beliefs == observed;
  ev.decision = supported ? Decision::Accept : Decision::Reject;
  return ev;
}

}  // namespace normsim
