#include "normsim/xcs.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

#include "normsim/format.hpp"

namespace normsim {

void XcsParams::validate() const {
  auto prob = [](double v, const char* name) {
    if (!(v >= 0.0 && v <= 1.0)) throw ConfigError(std::string("xcs.") + name + " must be in [0,1]");
  };
  prob(beta, "beta");
  prob(dont_care_prob, "dont_care_prob");
  prob(mutation_prob, "mutation_prob");
  prob(crossover_prob, "crossover_prob");
  prob(explore_prob, "explore_prob");
  prob(initial_fitness, "initial_fitness");
  prob(offspring_fitness_factor, "offspring_fitness_factor");
  if (!(epsilon0 > 0.0)) throw ConfigError("xcs.epsilon0 must be positive");
  if (!(nu > 0.0)) throw ConfigError("xcs.nu must be positive");
  if (!(alpha > 0.0 && alpha <= 1.0)) throw ConfigError("xcs.alpha must be in (0,1]");
  if (!(fitness_falloff > 0.0 && fitness_falloff <= 1.0)) {
    throw ConfigError("xcs.fitness_falloff must be in (0,1]");
  }
  if (!(initial_error >= 0.0)) throw ConfigError("xcs.initial_error must be >= 0");
  if (ga_threshold < 0) throw ConfigError("xcs.ga_threshold must be >= 0");
  if (deletion_experience_threshold < 0 || subsumption_experience_threshold < 0) {
    throw ConfigError("xcs experience thresholds must be >= 0");
  }
  if (max_rules_per_action_set < 1) throw ConfigError("xcs.max_rules_per_action_set must be >= 1");
}

int RulePopulation::total_numerosity() const {
  int n = 0;
  for (const auto& cl : rules_) n += cl.numerosity;
  return n;
}

std::optional<std::size_t> RulePopulation::find_identical(const ContextVector& premise,
                                                          Action action) const {
  for (std::size_t i = 0; i < rules_.size(); ++i) {
    if (rules_[i].numerosity > 0 && rules_[i].action == action && rules_[i].premise == premise) {
      return i;
    }
  }
  return std::nullopt;
}

std::pair<std::size_t, bool> RulePopulation::insert(Classifier cl) {
  if (auto idx = find_identical(cl.premise, cl.action)) {
    rules_[*idx].numerosity += cl.numerosity;
    return {*idx, false};
  }
  rules_.push_back(std::move(cl));
  return {rules_.size() - 1, true};
}

std::vector<std::size_t> RulePopulation::compact() {
  std::vector<std::size_t> remap(rules_.size(), std::numeric_limits<std::size_t>::max());
  std::size_t out = 0;
  for (std::size_t i = 0; i < rules_.size(); ++i) {
    if (rules_[i].numerosity <= 0) continue;
    if (out != i) rules_[out] = std::move(rules_[i]);
    remap[i] = out++;
  }
  rules_.resize(out);
  return remap;
}

MatchSet find_matches(const RulePopulation& pop, const ContextVector& ctx) {
  MatchSet ms;
  for (std::size_t i = 0; i < pop.size(); ++i) {
    if (matches(pop[i].premise, ctx)) ms.members.push_back(i);
  }
  return ms;
}

Classifier cover(const ContextVector& ctx, Action action, const XcsParams& params, Rng& rng,
                 std::int64_t now) {
  Classifier cl;
  for (const auto& b : ctx.bindings()) {
    if (!rng.bernoulli(params.dont_care_prob)) cl.premise.set(b.attribute, b.binding);
  }
  cl.action = action;
  cl.prediction = params.initial_prediction;
  cl.error = params.initial_error;
  cl.fitness = params.initial_fitness;
  cl.numerosity = 1;
  cl.experience = 0;
  cl.accuracy = accuracy(cl.error, params);
  cl.ga_timestamp = now;
  return cl;
}

MatchSet build_match_set(RulePopulation& pop, const ContextVector& ctx, const XcsParams& params,
                         Rng& rng, std::int64_t now) {
  MatchSet ms = find_matches(pop, ctx);
  std::array<bool, kActionCount> covered{};
  for (std::size_t i : ms.members) covered[index_of(pop[i].action)] = true;
  for (Action a : kAllActions) {
    if (covered[index_of(a)]) continue;
    auto [idx, appended] = pop.insert(cover(ctx, a, params, rng, now));
    // A merge can only hit a rule that already matched, which covering rules out.
    if (appended) ms.members.push_back(idx);
  }
  return ms;
}

PredictionArray prediction_array(const RulePopulation& pop, const MatchSet& ms) {
  PredictionArray pa{};
  for (std::size_t i : ms.members) {
    const Classifier& cl = pop[i];
    auto& slot = pa[index_of(cl.action)];
    slot = slot.value_or(0.0) + cl.fitness * cl.numerosity * cl.prediction;
  }
  return pa;
}

std::optional<Action> best_action(const PredictionArray& pa) {
  std::optional<Action> best;
  double best_value = 0.0;
  for (Action a : kAllActions) {
    const auto& v = pa[index_of(a)];
    if (!v) continue;
    if (!best || *v > best_value) {
      best = a;
      best_value = *v;
    }
  }
  return best;
}

Action select_action(const RulePopulation& pop, const MatchSet& ms, bool explore, Rng& rng) {
  if (explore) return kAllActions[rng.below(kActionCount)];
  auto best = best_action(prediction_array(pop, ms));
  return best.value_or(Action::Wear);
}

ActionSet form_action_set(const RulePopulation& pop, const MatchSet& ms, Action action) {
  ActionSet as;
  as.action = action;
  for (std::size_t i : ms.members) {
    if (pop[i].action == action) as.members.push_back(i);
  }
  return as;
}

double accuracy(double error, const XcsParams& params) {
  if (error < params.epsilon0) return 1.0;
  return params.alpha * std::pow(error / params.epsilon0, -params.nu);
}

void update_action_set(RulePopulation& pop, const ActionSet& as, double reward,
                       const XcsParams& params) {
  if (as.members.empty()) return;
  double accuracy_sum = 0.0;
  for (std::size_t i : as.members) {
    Classifier& cl = pop[i];
    cl.experience += 1;
    cl.error += params.beta * (std::abs(reward - cl.prediction) - cl.error);
    cl.prediction += params.beta * (reward - cl.prediction);
    cl.accuracy = accuracy(cl.error, params);
    accuracy_sum += cl.accuracy;
  }
  for (std::size_t i : as.members) {
    Classifier& cl = pop[i];
    const double relative = cl.accuracy / accuracy_sum;
    cl.fitness += params.beta * (relative - cl.fitness);
  }
}

double mean_time_since_ga(const RulePopulation& pop, const ActionSet& as, std::int64_t now) {
  double weighted = 0.0;
  double count = 0.0;
  for (std::size_t i : as.members) {
    const Classifier& cl = pop[i];
    weighted += static_cast<double>(now - cl.ga_timestamp) * cl.numerosity;
    count += cl.numerosity;
  }
  return count > 0.0 ? weighted / count : 0.0;
}

bool ga_due(const RulePopulation& pop, const ActionSet& as, std::int64_t now, const XcsParams& params) {
  return !as.members.empty() && mean_time_since_ga(pop, as, now) > params.ga_threshold;
}

bool could_subsume(const Classifier& cl, const XcsParams& params) {
  return cl.experience >= params.subsumption_experience_threshold && cl.error < params.epsilon0;
}

bool does_subsume(const Classifier& general, const Classifier& specific, const XcsParams& params) {
  if (general.action != specific.action || !could_subsume(general, params)) return false;
  return general.premise == specific.premise || is_more_general(general, specific);
}

namespace {

std::size_t roulette(const RulePopulation& pop, const ActionSet& as, Rng& rng) {
  double total = 0.0;
  for (std::size_t i : as.members) total += pop[i].fitness;
  if (!(total > 0.0)) return as.members[rng.below(as.members.size())];
  const double pick = rng.uniform01() * total;
  double acc = 0.0;
  for (std::size_t i : as.members) {
    acc += pop[i].fitness;
    if (pick < acc) return i;
  }
  return as.members.back();
}

void mutate(ContextVector& premise, const ContextVector& ctx, const XcsParams& params, Rng& rng) {
  for (const auto& b : ctx.bindings()) {
    if (!rng.bernoulli(params.mutation_prob)) continue;
    if (premise.has(b.attribute)) {
      premise.erase(b.attribute);
    } else {
      premise.set(b.attribute, b.binding);
    }
  }
}

}  // namespace

void run_ga(RulePopulation& pop, ActionSet& as, const ContextVector& ctx, const XcsParams& params,
            Rng& rng, std::int64_t now) {
  if (as.members.empty()) return;
  for (std::size_t i : as.members) pop[i].ga_timestamp = now;

  const std::size_t p1 = roulette(pop, as, rng);
  const std::size_t p2 = roulette(pop, as, rng);

  std::array<Classifier, 2> child{pop[p1], pop[p2]};
  for (auto& c : child) {
    c.numerosity = 1;
    c.experience = 0;
    c.ga_timestamp = now;
  }

  if (rng.bernoulli(params.crossover_prob)) {
    for (Attribute a : kAllAttributes) {
      if (!rng.bernoulli(0.5)) continue;
      const auto b0 = child[0].premise.get(a);
      const auto b1 = child[1].premise.get(a);
      if (b1) child[0].premise.set(a, *b1); else child[0].premise.erase(a);
      if (b0) child[1].premise.set(a, *b0); else child[1].premise.erase(a);
    }
    const double p = (pop[p1].prediction + pop[p2].prediction) / 2.0;
    const double e = (pop[p1].error + pop[p2].error) / 2.0;
    const double f = (pop[p1].fitness + pop[p2].fitness) / 2.0;
    for (auto& c : child) {
      c.prediction = p;
      c.error = e;
      c.fitness = f;
    }
  }

  for (auto& c : child) {
    mutate(c.premise, ctx, params, rng);
    c.fitness *= params.offspring_fitness_factor;
    c.accuracy = accuracy(c.error, params);
  }

  for (auto& c : child) {
    if (does_subsume(pop[p1], c, params)) {
      pop[p1].numerosity += 1;
    } else if (does_subsume(pop[p2], c, params)) {
      pop[p2].numerosity += 1;
    } else {
      auto [idx, appended] = pop.insert(std::move(c));
      const bool in_set = std::find(as.members.begin(), as.members.end(), idx) != as.members.end();
      if (!in_set && matches(pop[idx].premise, ctx)) as.members.push_back(idx);
      (void)appended;
    }
  }
}

void delete_excess(RulePopulation& pop, ActionSet& as, const XcsParams& params) {
  auto set_size = [&] {
    int n = 0;
    for (std::size_t i : as.members) n += pop[i].numerosity;
    return n;
  };
  while (set_size() > params.max_rules_per_action_set) {
    std::optional<std::size_t> victim;
    for (bool require_experience : {true, false}) {
      for (std::size_t i : as.members) {
        const Classifier& cl = pop[i];
        if (cl.numerosity <= 0) continue;
        if (require_experience && cl.experience < params.deletion_experience_threshold) continue;
        if (!victim || cl.fitness < pop[*victim].fitness) victim = i;
      }
      if (victim) break;
    }
    pop[*victim].numerosity -= 1;
    if (pop[*victim].numerosity == 0) {
      as.members.erase(std::find(as.members.begin(), as.members.end(), *victim));
    }
  }
  const auto remap = pop.compact();
  for (auto& i : as.members) i = remap[i];
}

void learn(RulePopulation& pop, ActionSet& as, const ContextVector& ctx, double reward,
           const XcsParams& params, Rng& rng, std::int64_t now) {
  update_action_set(pop, as, reward, params);
  if (ga_due(pop, as, now, params)) run_ga(pop, as, ctx, params, rng, now);
  delete_excess(pop, as, params);
}

std::string format_rule(const Classifier& cl) {
  std::string out = to_string(cl.premise);
  out += " => ";
  out += action_name(cl.action);
  out += " | " + format_double(cl.prediction);
  out += " | " + format_double(cl.error);
  out += " | " + format_double(cl.fitness);
  out += " | " + std::to_string(cl.numerosity);
  out += " | " + std::to_string(cl.experience);
  return out;
}

Classifier parse_rule(std::string_view line) {
  const auto arrow = line.find("=>");
  if (arrow == std::string_view::npos) throw std::invalid_argument("rule line without '=>'");
  Classifier cl;
  cl.premise = parse_context(line.substr(0, arrow));

  std::vector<std::string_view> fields;
  std::string_view rest = line.substr(arrow + 2);
  while (true) {
    const auto bar = rest.find('|');
    fields.push_back(rest.substr(0, bar));
    if (bar == std::string_view::npos) break;
    rest = rest.substr(bar + 1);
  }
  if (fields.size() != 6) throw std::invalid_argument("rule line needs 6 '|'-separated fields");
  const auto action = parse_action(fields[0]);
  if (!action) throw std::invalid_argument("unknown action in rule line");
  cl.action = *action;
  auto num = [&](std::size_t i) {
    auto v = parse_double(fields[i]);
    if (!v) throw std::invalid_argument("bad number in rule line");
    return *v;
  };
  cl.prediction = num(1);
  cl.error = num(2);
  cl.fitness = num(3);
  cl.numerosity = static_cast<int>(num(4));
  cl.experience = static_cast<int>(num(5));
  if (cl.numerosity < 1 || cl.experience < 0) throw std::invalid_argument("bad rule counters");
  return cl;
}

void write_snapshot(std::ostream& out, const RulePopulation& pop) {
  for (const auto& cl : pop.rules()) out << format_rule(cl) << '\n';
}

RulePopulation read_snapshot(std::istream& in) {
  RulePopulation pop;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    pop.rules().push_back(parse_rule(line));
  }
  return pop;
}

}  // namespace normsim
