#include "normsim/world.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numeric>
#include <string>

namespace normsim {
namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw ConfigError(what);
}

bool is_probability(double p) { return p >= 0.0 && p <= 1.0; }

}  // namespace

std::string_view preset_name(ValuePreset p) { return p == ValuePreset::Pure ? "pure" : "mixed"; }

std::optional<ValuePreset> parse_preset(std::string_view name) {
  std::string lower;
  for (char c : name) lower += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (lower == "pure") return ValuePreset::Pure;
  if (lower == "mixed") return ValuePreset::Mixed;
  return std::nullopt;
}

ValueImportance preset_importance(ValuePreset preset, AgentType type, const std::string& context_class) {
  const double major = preset == ValuePreset::Pure ? 1.0 : 0.7;
  const double minor = preset == ValuePreset::Pure ? 0.0 : 0.3;
  if (type == AgentType::Health) return ValueImportance::make(context_class, {major, minor});
  return ValueImportance::make(context_class, {minor, major});
}

void WorldConfig::validate() const {
  require(n_agents >= 2, "world.n_agents must be at least 2");
  require(n_homes >= 1 && n_offices >= 1 && n_parties >= 1, "world needs at least one home, office and party");
  require(n_agents % n_homes == 0, "world.n_agents must be divisible by world.n_homes");
  require(n_agents % n_offices == 0, "world.n_agents must be divisible by world.n_offices");
  require(n_agents % n_parties == 0, "world.n_agents must be divisible by world.n_parties");
  require(steps >= 0, "world.steps must be >= 0");
  require(is_probability(interact_prob), "world.interact_prob must be in [0,1]");
  require(is_probability(native_move_prob), "world.native_move_prob must be in [0,1]");
  for (Place p : kAllPlaces) {
    require(is_probability(risk_prob[index_of(p)]),
            "world.risk_prob." + std::string(place_name(p)) + " must be in [0,1]");
  }
  require(is_probability(risk_from_another_prob), "world.risk_from_another_prob must be in [0,1]");
  require(is_probability(prefer_not_wear_prob), "world.prefer_not_wear_prob must be in [0,1]");
  require(is_probability(health_type_fraction), "world.health_type_fraction must be in [0,1]");
  require(!context_class.empty(), "world.context_class must not be empty");
}

void Scenario::validate() const {
  world.validate();
  xcs.validate();
  payoffs.validate();
  require(norms.norm_threshold >= 0.0 && norms.norm_threshold <= 1.0, "norms.norm_threshold must be in [0,1]");
  require(norms.adoption_threshold >= 0.0 && norms.adoption_threshold <= 1.0,
          "norms.adoption_threshold must be in [0,1]");
  require(norms.min_decisions >= 1, "norms.min_decisions must be >= 1");
  require(norms.window_fraction > 0.0 && norms.window_fraction <= 1.0, "norms.window_fraction must be in (0,1]");
}

PlaceLayout::PlaceLayout(int homes, int offices, int parties) {
  counts_ = {homes, offices, parties, 1, 1};
  int off = 0;
  for (std::size_t i = 0; i < kPlaceCount; ++i) {
    offsets_[i] = off;
    off += counts_[i];
  }
}

Place PlaceLayout::category(int place) const {
  for (std::size_t i = kPlaceCount; i-- > 0;) {
    if (place >= offsets_[i]) return kAllPlaces[i];
  }
  return Place::Home;
}

World::World(Scenario scenario)
    : scenario_(std::move(scenario)),
      layout_(scenario_.world.n_homes, scenario_.world.n_offices, scenario_.world.n_parties),
      rng_(scenario_.world.seed) {
  scenario_.validate();
  const WorldConfig& cfg = scenario_.world;
  const int n = cfg.n_agents;

  const int n_health = static_cast<int>(std::lround(cfg.health_type_fraction * n));
  std::vector<AgentType> types(n, AgentType::Freedom);
  std::fill_n(types.begin(), n_health, AgentType::Health);
  rng_.shuffle(std::span<AgentType>(types));

  // Native places: a shuffled roster cut into equal groups per category.
  auto assign = [&](int groups) {
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    rng_.shuffle(std::span<int>(order));
    std::vector<int> native(n);
    const int per = n / groups;
    for (int k = 0; k < n; ++k) native[order[k]] = k / per;
    return native;
  };
  const auto homes = assign(cfg.n_homes);
  const auto offices = assign(cfg.n_offices);
  const auto parties = assign(cfg.n_parties);

  agents_.resize(n);
  for (int i = 0; i < n; ++i) {
    AgentProfile& p = agents_[i].profile;
    p.id = i;
    p.type = types[i];
    p.value_importances = {preset_importance(scenario_.preset, p.type, cfg.context_class)};
    p.preference = rng_.bernoulli(cfg.prefer_not_wear_prob) ? Action::NotWear : Action::Wear;
    p.home = homes[i];
    p.office = offices[i];
    p.party = parties[i];
    agents_[i].location = layout_.index(Place::Home, p.home);
  }
  risk_.assign(layout_.count(), RiskLevel::None);
}

void World::update_risk() {
  for (int place = 0; place < layout_.count(); ++place) {
    const double p = scenario_.world.risk_prob[index_of(layout_.category(place))];
    risk_[place] = rng_.bernoulli(p) ? RiskLevel::Risk : RiskLevel::None;
  }
}

int World::move_agent(int agent) {
  const Place cat = kAllPlaces[rng_.below(kPlaceCount)];
  const int n = layout_.instances(cat);
  int instance = 0;
  if (n > 1) {
    const AgentProfile& p = agents_[agent].profile;
    const int native = cat == Place::Home ? p.home : cat == Place::Office ? p.office : p.party;
    if (rng_.bernoulli(scenario_.world.native_move_prob)) {
      instance = native;
    } else {
      instance = static_cast<int>(rng_.below(static_cast<std::size_t>(n - 1)));
      if (instance >= native) ++instance;
    }
  }
  agents_[agent].location = layout_.index(cat, instance);
  return agents_[agent].location;
}

void World::move_all() {
  for (int i = 0; i < static_cast<int>(agents_.size()); ++i) move_agent(i);
}

std::vector<std::pair<int, int>> World::pair_interactions() {
  std::vector<std::vector<int>> willing(layout_.count());
  for (int i = 0; i < static_cast<int>(agents_.size()); ++i) {
    if (rng_.bernoulli(scenario_.world.interact_prob)) willing[agents_[i].location].push_back(i);
  }
  std::vector<std::pair<int, int>> pairs;
  for (auto& group : willing) {
    rng_.shuffle(std::span<int>(group));
    for (std::size_t k = 0; k + 1 < group.size(); k += 2) pairs.emplace_back(group[k], group[k + 1]);
  }
  return pairs;
}

Circle World::circle(int a, int b) const {
  const AgentProfile& pa = agents_[a].profile;
  const AgentProfile& pb = agents_[b].profile;
  if (pa.home == pb.home) return Circle::Family;
  if (pa.party == pb.party) return Circle::Friend;
  if (pa.office == pb.office) return Circle::Colleague;
  return Circle::Stranger;
}

ContextVector World::form_beliefs(int agent, std::optional<int> partner) {
  const Agent& self = agents_[agent];
  ContextVector ctx;
  ctx.set(Attribute::Risk, bind::of(risk_[self.location]));
  ctx.set(Attribute::Preference, bind::of(self.profile.preference));
  ctx.set(Attribute::Location, bind::of(layout_.category(self.location)));
  if (partner) {
    ctx.set(Attribute::InteractWith, bind::of(circle(agent, *partner)));
    ctx.set(Attribute::ObserverAgentType, bind::of(agents_[*partner].profile.type));
  } else {
    ctx.set(Attribute::InteractWith, bind::kWithNobody);
    ctx.set(Attribute::ObserverAgentType, bind::kObserverNobody);
  }
  if (scenario_.world.include_risk_from_another) {
    const bool high = partner && rng_.bernoulli(scenario_.world.risk_from_another_prob);
    ctx.set(Attribute::RiskFromAnother, high ? bind::kRiskFromAnotherHigh : bind::kRiskFromAnotherNone);
  }
  return ctx;
}

World::Choice World::decide(int agent, const ContextVector& beliefs) {
  Agent& self = agents_[agent];
  const XcsParams& xp = scenario_.xcs;
  Choice c;
  c.beliefs = beliefs;
  const MatchSet ms = build_match_set(self.rules, beliefs, xp, rng_, step_);
  const bool explore = rng_.bernoulli(xp.explore_prob);
  const Action action = select_action(self.rules, ms, explore, rng_);
  c.action_set = form_action_set(self.rules, ms, action);
  const ValueImportance& weights = self.profile.importance_for(scenario_.world.context_class);
  c.goal = goal_action(weights, beliefs, scenario_.payoffs);
  c.reward = composite_actor_reward(weights, beliefs, action, scenario_.payoffs);
  return c;
}

InteractionResult World::run_interaction(int a, int b) {
  const std::array<int, 2> ids{a, b};
  std::array<Choice, 2> choice;
  for (int i = 0; i < 2; ++i) choice[i] = decide(ids[i], form_beliefs(ids[i], ids[1 - i]));

  InteractionResult out;
  const Circle circ = circle(a, b);
  for (int i = 0; i < 2; ++i) {
    const Agent& self = agents_[ids[i]];
    const auto values = get_value_importance(scenario_.world.context_class, self.profile,
                                             &agents_[ids[1 - i]].profile);
    out.rationales[i] = generate_rationale(choice[i].beliefs, choice[i].action_set.action,
                                           scenario_.world.society, self.rules, values, scenario_.disclosure);
  }
  // sanctions[i] is what agent i receives from its partner.
  for (int i = 0; i < 2; ++i) {
    const int j = 1 - i;
    const Evaluation ev = evaluate_rationale(out.rationales[i], choice[i].action_set.action, choice[j].beliefs,
                                             agents_[ids[j]].rules, scenario_.disclosure.privacy);
    out.sanctions[i] = {ids[j], ids[i], ev.decision, sanction_magnitude(circ, ev.decision), circ};
    out.events.evaluations[j] = ev.decision;
  }
  for (int i = 0; i < 2; ++i) {
    const double sanction = out.sanctions[i].magnitude;
    Agent& self = agents_[ids[i]];
    DecisionEvent& ev = out.events.decisions[i];
    ev = {ids[i], self.profile.type, choice[i].beliefs, choice[i].action_set.action, choice[i].goal,
          choice[i].reward, sanction};
    out.events.privacy[i] = out.rationales[i].privacy();
    learn(self.rules, choice[i].action_set, choice[i].beliefs, choice[i].reward + sanction, scenario_.xcs, rng_,
          step_);
  }
  return out;
}

DecisionEvent World::run_solitary(int agent) {
  Choice c = decide(agent, form_beliefs(agent, std::nullopt));
  Agent& self = agents_[agent];
  DecisionEvent ev{agent, self.profile.type, c.beliefs, c.action_set.action, c.goal, c.reward, std::nullopt};
  learn(self.rules, c.action_set, c.beliefs, c.reward, scenario_.xcs, rng_, step_);
  return ev;
}

void World::advance(RunMetrics& metrics, const TraceSink& trace) {
  metrics.begin_step(step_);
  update_risk();
  move_all();
  const auto pairs = pair_interactions();
  std::vector<bool> busy(agents_.size(), false);
  for (const auto& [a, b] : pairs) {
    busy[a] = busy[b] = true;
    const InteractionResult r = run_interaction(a, b);
    metrics.record_interaction(r.events);
    if (trace) {
      for (int i = 0; i < 2; ++i) {
        const RationaleMessage& m = r.rationales[i];
        trace({step_, r.sanctions[i].to, r.sanctions[i].from, scenario_.world.society, m.action, m.factors,
               m.disclosed_private_count, m.total_private_count, r.sanctions[i].decision});
      }
    }
  }
  if (scenario_.world.solitary_agents_act) {
    for (int i = 0; i < static_cast<int>(agents_.size()); ++i) {
      if (!busy[i]) metrics.record_decision(run_solitary(i));
    }
  }
  ++step_;
}

std::int64_t adoption_window_start(std::int64_t steps, double window_fraction) {
  const auto len = static_cast<std::int64_t>(std::ceil(static_cast<double>(steps) * window_fraction));
  return std::max<std::int64_t>(0, steps - len);
}

SimulationResult run_simulation(const Scenario& scenario, const TraceSink& trace) {
  World world(scenario);
  const WorldConfig& cfg = world.scenario().world;
  RunMetrics metrics(cfg.steps, cfg.n_agents, adoption_window_start(cfg.steps, scenario.norms.window_fraction));
  for (std::int64_t s = 0; s < cfg.steps; ++s) world.advance(metrics, trace);

  SimulationResult out{std::move(metrics), {}, {}};
  out.populations.reserve(world.agents().size());
  for (auto& agent : world.agents()) {
    out.populations.push_back(std::move(agent.rules));
    out.profiles.push_back(agent.profile);
  }
  return out;
}

}  // namespace normsim
