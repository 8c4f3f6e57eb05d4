#include "normsim/experiment.hpp"

#include <zlib.h>

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <map>
#include <mutex>
#include <nlohmann/json.hpp>
#include <ostream>
#include <set>
#include <sstream>
#include <thread>

#include "normsim/format.hpp"
#include "normsim/stats.hpp"

namespace normsim {
namespace {

using nlohmann::json;
namespace fs = std::filesystem;

std::string lower(std::string_view s) {
  std::string out;
  for (char c : s) out += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

// Strict view over one JSON object: typed getters and an unknown-key check.
class Section {
 public:
  Section(const json& obj, std::string path) : obj_(obj), path_(std::move(path)) {
    if (!obj_.is_object()) throw ConfigError(where() + " must be an object");
  }

  const json* find(const char* key) {
    const auto it = obj_.find(key);
    if (it == obj_.end()) return nullptr;
    used_.insert(key);
    return &*it;
  }

  void get(const char* key, double& out) {
    if (const json* v = find(key)) {
      if (!v->is_number()) throw ConfigError(where(key) + " must be a number");
      out = v->get<double>();
    }
  }
  void get(const char* key, int& out) {
    if (const json* v = find(key)) {
      if (!v->is_number_integer()) throw ConfigError(where(key) + " must be an integer");
      const auto x = v->get<std::int64_t>();
      if (x < INT32_MIN || x > INT32_MAX) throw ConfigError(where(key) + " is out of range");
      out = static_cast<int>(x);
    }
  }
  void get(const char* key, std::int64_t& out) {
    if (const json* v = find(key)) {
      if (!v->is_number_integer()) throw ConfigError(where(key) + " must be an integer");
      out = v->get<std::int64_t>();
    }
  }
  void get(const char* key, std::uint64_t& out) {
    if (const json* v = find(key)) {
      if (!v->is_number_unsigned()) throw ConfigError(where(key) + " must be a non-negative integer");
      out = v->get<std::uint64_t>();
    }
  }
  void get(const char* key, bool& out) {
    if (const json* v = find(key)) {
      if (!v->is_boolean()) throw ConfigError(where(key) + " must be true or false");
      out = v->get<bool>();
    }
  }
  void get(const char* key, std::string& out) {
    if (const json* v = find(key)) {
      if (!v->is_string()) throw ConfigError(where(key) + " must be a string");
      out = v->get<std::string>();
    }
  }

  std::string where(std::string_view key = {}) const {
    if (key.empty()) return path_.empty() ? "config" : path_;
    return path_.empty() ? std::string(key) : path_ + "." + std::string(key);
  }

  void finish() const {
    for (const auto& item : obj_.items()) {
      if (!used_.count(item.key())) throw ConfigError("unknown config key " + where(item.key()));
    }
  }

 private:
  const json& obj_;
  std::string path_;
  std::set<std::string> used_;
};

std::vector<double> number_list(const json& v, const std::string& where) {
  if (!v.is_array()) throw ConfigError(where + " must be an array of numbers");
  std::vector<double> out;
  for (const auto& x : v) {
    if (!x.is_number()) throw ConfigError(where + " must be an array of numbers");
    out.push_back(x.get<double>());
  }
  return out;
}

Attribute attribute_or_throw(std::string_view name, const std::string& where) {
  const auto a = parse_attribute(name);
  if (!a) throw ConfigError(where + ": unknown attribute '" + std::string(name) + "'");
  return *a;
}

void parse_world(const json& j, WorldConfig& w) {
  Section s(j, "world");
  s.get("n_agents", w.n_agents);
  s.get("n_homes", w.n_homes);
  s.get("n_offices", w.n_offices);
  s.get("n_parties", w.n_parties);
  s.get("steps", w.steps);
  s.get("interact_prob", w.interact_prob);
  s.get("native_move_prob", w.native_move_prob);
  if (const json* r = s.find("risk_prob")) {
    Section rs(*r, "world.risk_prob");
    for (Place p : kAllPlaces) rs.get(lower(place_name(p)).c_str(), w.risk_prob[index_of(p)]);
    rs.finish();
  }
  s.get("solitary_agents_act", w.solitary_agents_act);
  s.get("include_risk_from_another", w.include_risk_from_another);
  s.get("risk_from_another_prob", w.risk_from_another_prob);
  s.get("prefer_not_wear_prob", w.prefer_not_wear_prob);
  s.get("health_type_fraction", w.health_type_fraction);
  s.get("context_class", w.context_class);
  s.finish();
}

void parse_xcs(const json& j, XcsParams& x) {
  Section s(j, "xcs");
  s.get("beta", x.beta);
  s.get("dont_care_prob", x.dont_care_prob);
  s.get("epsilon0", x.epsilon0);
  s.get("nu", x.nu);
  s.get("ga_threshold", x.ga_threshold);
  s.get("mutation_prob", x.mutation_prob);
  s.get("crossover_prob", x.crossover_prob);
  s.get("deletion_experience_threshold", x.deletion_experience_threshold);
  s.get("subsumption_experience_threshold", x.subsumption_experience_threshold);
  s.get("fitness_falloff", x.fitness_falloff);
  // alpha follows fitness_falloff unless given explicitly
  x.alpha = x.fitness_falloff;
  s.get("alpha", x.alpha);
  s.get("max_rules_per_action_set", x.max_rules_per_action_set);
  s.get("explore_prob", x.explore_prob);
  s.get("initial_prediction", x.initial_prediction);
  s.get("initial_error", x.initial_error);
  s.get("initial_fitness", x.initial_fitness);
  s.get("offspring_fitness_factor", x.offspring_fitness_factor);
  s.finish();
}

void parse_norms(const json& j, NormCriteria& n) {
  Section s(j, "norms");
  s.get("norm_threshold", n.norm_threshold);
  s.get("adoption_threshold", n.adoption_threshold);
  s.get("min_decisions", n.min_decisions);
  s.get("window_fraction", n.window_fraction);
  s.finish();
}

void parse_payoffs(const json& j, PayoffTables& t) {
  Section s(j, "payoffs");
  if (const json* places = s.find("places")) {
    Section ps(*places, "payoffs.places");
    for (Place p : kAllPlaces) {
      const std::string key = lower(place_name(p));
      if (const json* row = ps.find(key.c_str())) {
        const auto v = number_list(*row, ps.where(key));
        if (v.size() != kActionCount) throw ConfigError(ps.where(key) + " needs [wear, not_wear]");
        t.places.entries[index_of(p)] = {v[0], v[1]};
      }
    }
    ps.finish();
  }
  if (const json* values = s.find("values")) {
    Section vs(*values, "payoffs.values");
    for (Value v : kAllValues) {
      const std::string key(value_name(v));
      const json* m = vs.find(key.c_str());
      if (m == nullptr) continue;
      Section ms(*m, vs.where(key));
      auto& matrix = t.values[index_of(v)];
      std::string condition(attribute_name(matrix.condition));
      ms.get("condition", condition);
      matrix.condition = attribute_or_throw(condition, ms.where("condition"));
      if (const json* row = ms.find("wear")) matrix.entries[index_of(Action::Wear)] = number_list(*row, ms.where("wear"));
      if (const json* row = ms.find("not_wear")) {
        matrix.entries[index_of(Action::NotWear)] = number_list(*row, ms.where("not_wear"));
      }
      ms.finish();
    }
    vs.finish();
  }
  s.finish();
}

void parse_privacy(const json& j, PrivacyTags& tags) {
  Section s(j, "privacy");
  if (const json* list = s.find("private")) {
    if (!list->is_array()) throw ConfigError("privacy.private must be an array of attribute names");
    tags = PrivacyTags{};
    for (const auto& name : *list) {
      if (!name.is_string()) throw ConfigError("privacy.private must be an array of attribute names");
      tags.is_private[index_of(attribute_or_throw(name.get<std::string>(), "privacy.private"))] = true;
    }
  }
  s.finish();
}

void parse_value_factors(const json& j, ValueFactorTable& table) {
  if (!j.is_object()) throw ConfigError("value_factors must be an object");
  table = ValueFactorTable{};
  for (const auto& item : j.items()) {
    const Attribute a = attribute_or_throw(item.key(), "value_factors");
    if (!item.value().is_array()) throw ConfigError("value_factors." + item.key() + " must be an array");
    for (const auto& name : item.value()) {
      const auto v = name.is_string() ? parse_value(name.get<std::string>()) : std::nullopt;
      if (!v) throw ConfigError("value_factors." + item.key() + ": unknown value");
      table.related[index_of(a)][index_of(*v)] = true;
    }
  }
}

void apply_override(json& root, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos || eq == 0) throw ConfigError("override '" + assignment + "' must look like key=value");
  const std::string path = assignment.substr(0, eq);
  const std::string text = assignment.substr(eq + 1);
  json value = json::parse(text, nullptr, false);
  if (value.is_discarded()) value = text;

  json* node = &root;
  std::size_t start = 0;
  while (true) {
    const auto dot = path.find('.', start);
    const std::string key = path.substr(start, dot == std::string::npos ? std::string::npos : dot - start);
    if (key.empty()) throw ConfigError("override '" + assignment + "' has an empty key segment");
    if (!node->is_object()) throw ConfigError("override '" + assignment + "' descends into a non-object");
    if (dot == std::string::npos) {
      (*node)[key] = value;
      return;
    }
    json& child = (*node)[key];
    if (child.is_null()) child = json::object();
    node = &child;
    start = dot + 1;
  }
}

std::string field(double v) { return std::isnan(v) ? std::string() : format_double(v); }

void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create directory " + dir.string() + ": " + ec.message());
}

std::ofstream open_out(const fs::path& file) {
  std::ofstream out(file, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + file.string() + " for writing");
  return out;
}

void close_out(std::ofstream& out, const fs::path& file) {
  out.flush();
  if (!out) throw IoError("write failed for " + file.string());
}

void write_gzip(const fs::path& file, const std::string& data) {
  gzFile gz = gzopen(file.string().c_str(), "wb9");
  if (gz == nullptr) throw IoError("cannot open " + file.string() + " for writing");
  const int n = data.empty() ? 0 : gzwrite(gz, data.data(), static_cast<unsigned>(data.size()));
  const int rc = gzclose(gz);
  if ((!data.empty() && n != static_cast<int>(data.size())) || rc != Z_OK) {
    throw IoError("write failed for " + file.string());
  }
}

RunRecord execute_run(const ExperimentConfig& cfg, SocietyPolicy society, int run_index, int run_id) {
  RunRecord rec;
  rec.run_id = run_id;
  rec.run_index = run_index;
  rec.society = society;
  rec.seed = derive_seed(cfg.base_seed, society, run_index);

  Scenario sc = cfg.scenario;
  sc.world.society = society;
  sc.world.seed = rec.seed;

  const fs::path out_dir(cfg.output_dir);
  const std::string run_name = "run_" + std::to_string(run_index);
  std::ofstream trace_out;
  fs::path trace_file;
  TraceSink sink;
  if (cfg.trace_rationales) {
    const fs::path dir = out_dir / "traces" / std::string(society_name(society));
    ensure_dir(dir);
    trace_file = dir / (run_name + ".csv");
    trace_out = open_out(trace_file);
    trace_out << "step,actor,observer,policy,action,factors,disclosed_private,total_private,decision\n";
    sink = [&trace_out](const TraceRecord& t) {
      trace_out << t.step << ',' << t.actor << ',' << t.observer << ',' << society_name(t.policy) << ','
                << action_name(t.action) << ',' << to_string(t.factors) << ',' << t.disclosed_private << ','
                << t.total_private << ',' << (t.decision == Decision::Accept ? "accept" : "reject") << '\n';
    };
  }

  SimulationResult sim = run_simulation(sc, sink);
  if (cfg.trace_rationales) close_out(trace_out, trace_file);

  rec.summary = sim.metrics.summary();
  rec.steps = sim.metrics.steps();
  rec.norms = detect_norms(sim.populations, sim.metrics.decision_log(), sc.norms);

  if (cfg.write_populations) {
    const fs::path dir = out_dir / "populations" / std::string(society_name(society)) / run_name;
    ensure_dir(dir);
    for (std::size_t i = 0; i < sim.populations.size(); ++i) {
      std::ostringstream text;
      write_snapshot(text, sim.populations[i]);
      write_gzip(dir / ("agent_" + std::to_string(i) + ".txt.gz"), text.str());
    }
  }
  return rec;
}

std::vector<std::vector<std::string>> read_csv(const fs::path& file, std::string_view header) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw IoError("missing " + file.string());
  std::string line;
  if (!std::getline(in, line) || line != header) throw IoError("unexpected header in " + file.string());
  std::vector<std::vector<std::string>> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::size_t start = 0;
    while (true) {
      const auto comma = line.find(',', start);
      cells.push_back(line.substr(start, comma == std::string::npos ? std::string::npos : comma - start));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    rows.push_back(std::move(cells));
  }
  return rows;
}

constexpr std::array<std::string_view, 4> kMetrics{"resolution", "social", "privacy", "flexibility"};

double metric_of(const RunSummary& s, std::string_view metric) {
  if (metric == "resolution") return s.resolution;
  if (metric == "social") return s.social;
  if (metric == "privacy") return s.privacy;
  return s.flexibility;
}

std::string cell_or_dash(const std::string& s) { return s.empty() ? "n/a" : s; }

}  // namespace

void ExperimentConfig::validate() const {
  scenario.validate();
  if (societies.empty()) throw ConfigError("societies must list at least one society");
  std::set<SocietyPolicy> seen;
  for (auto s : societies) {
    if (!seen.insert(s).second) throw ConfigError("society " + std::string(society_name(s)) + " listed twice");
  }
  if (runs_per_society < 1) throw ConfigError("runs_per_society must be >= 1");
  if (output_dir.empty()) throw ConfigError("output_dir must not be empty");
}

ExperimentConfig parse_config(std::string_view json_text, const std::vector<std::string>& overrides) {
  json root = json::parse(json_text, nullptr, false, /*ignore_comments=*/true);
  if (root.is_discarded()) throw ConfigError("config is not valid JSON");
  if (!root.is_object()) throw ConfigError("config must be a JSON object");
  for (const auto& o : overrides) apply_override(root, o);

  ExperimentConfig cfg;
  Section s(root, "");
  if (const json* w = s.find("world")) parse_world(*w, cfg.scenario.world);
  if (const json* x = s.find("xcs")) {
    parse_xcs(*x, cfg.scenario.xcs);
  } else {
    cfg.scenario.xcs.alpha = cfg.scenario.xcs.fitness_falloff;
  }
  if (const json* n = s.find("norms")) parse_norms(*n, cfg.scenario.norms);
  if (const json* p = s.find("payoffs")) parse_payoffs(*p, cfg.scenario.payoffs);
  if (const json* p = s.find("privacy")) parse_privacy(*p, cfg.scenario.disclosure.privacy);
  if (const json* f = s.find("value_factors")) parse_value_factors(*f, cfg.scenario.disclosure.factors);
  if (const json* list = s.find("societies")) {
    if (!list->is_array()) throw ConfigError("societies must be an array of names");
    cfg.societies.clear();
    for (const auto& name : *list) {
      const auto soc = name.is_string() ? parse_society(name.get<std::string>()) : std::nullopt;
      if (!soc) throw ConfigError("societies: unknown society " + name.dump());
      cfg.societies.push_back(*soc);
    }
  }
  s.get("runs_per_society", cfg.runs_per_society);
  std::string preset(preset_name(cfg.scenario.preset));
  s.get("value_importance_preset", preset);
  const auto parsed = parse_preset(preset);
  if (!parsed) throw ConfigError("value_importance_preset '" + preset + "' does not exist (pure, mixed)");
  cfg.scenario.preset = *parsed;
  if (s.find("output_dir") != nullptr) {
    s.get("output_dir", cfg.output_dir);
  } else if (const char* env = std::getenv("SIM_OUTPUT_DIR"); env != nullptr && *env != '\0') {
    cfg.output_dir = env;
  }
  s.get("base_seed", cfg.base_seed);
  s.get("trace_rationales", cfg.trace_rationales);
  s.get("write_populations", cfg.write_populations);
  s.finish();

  cfg.validate();
  return cfg;
}

ExperimentConfig load_config(const fs::path& path, const std::vector<std::string>& overrides) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read config " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  try {
    return parse_config(text.str(), overrides);
  } catch (const ConfigError& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
}

std::uint64_t derive_seed(std::uint64_t base_seed, SocietyPolicy society, int run_index) {
  const std::string key = std::string(society_name(society)) + ":" + std::to_string(run_index);
  return base_seed + stable_hash(key);
}

ExperimentResult run_experiment(const ExperimentConfig& cfg, int jobs) {
  cfg.validate();
  struct Job {
    SocietyPolicy society;
    int run_index;
  };
  std::vector<Job> plan;
  for (auto soc : cfg.societies) {
    for (int k = 0; k < cfg.runs_per_society; ++k) plan.push_back({soc, k});
  }

  ExperimentResult result;
  result.runs.resize(plan.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    while (true) {
      const std::size_t i = next.fetch_add(1);
      if (i >= plan.size()) return;
      try {
        result.runs[i] = execute_run(cfg, plan[i].society, plan[i].run_index, static_cast<int>(i));
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next.store(plan.size());
      }
    }
  };

  const std::size_t n_workers = std::clamp<std::size_t>(static_cast<std::size_t>(std::max(jobs, 1)), 1, plan.size());
  if (n_workers == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < n_workers; ++w) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);
  return result;
}

std::vector<StatsRow> compute_stats(const ExperimentConfig& cfg, const ExperimentResult& result) {
  std::vector<StatsRow> rows;
  auto sample = [&](SocietyPolicy soc, std::string_view metric) {
    std::vector<double> xs;
    for (const auto& r : result.runs) {
      if (r.society == soc) xs.push_back(metric_of(r.summary, metric));
    }
    return xs;
  };
  constexpr double nan = std::numeric_limits<double>::quiet_NaN();
  for (auto metric : kMetrics) {
    for (std::size_t bi = 0; bi < cfg.societies.size(); ++bi) {
      for (std::size_t ai = bi + 1; ai < cfg.societies.size(); ++ai) {
        StatsRow row;
        row.metric = std::string(metric);
        row.society_a = cfg.societies[ai];
        row.society_b = cfg.societies[bi];
        const auto a = sample(row.society_a, metric);
        const auto b = sample(row.society_b, metric);
        row.mean_a = stats::mean(a);
        row.mean_b = stats::mean(b);
        row.sigma_a = a.size() >= 2 ? stats::sample_stddev(a) : nan;
        row.sigma_b = b.size() >= 2 ? stats::sample_stddev(b) : nan;
        if (a.size() >= 2 && b.size() >= 2) {
          const auto w = stats::welch_t_test(a, b);
          row.t = w.t;
          row.p = w.p;
          row.glass_delta = stats::glass_delta(a, b);
          row.cohen_label = std::string(stats::cohen_label(row.glass_delta));
        } else {
          row.t = row.p = row.glass_delta = nan;
        }
        rows.push_back(std::move(row));
      }
    }
  }
  return rows;
}

void write_outputs(const ExperimentConfig& cfg, const ExperimentResult& result) {
  const fs::path dir(cfg.output_dir);
  ensure_dir(dir);

  {
    const fs::path file = dir / "per_step.csv";
    auto out = open_out(file);
    out << kPerStepHeader << '\n';
    for (auto soc : cfg.societies) {
      std::vector<StepRecord> total;
      for (const auto& r : result.runs) {
        if (r.society != soc) continue;
        if (total.size() < r.steps.size()) total.resize(r.steps.size());
        for (std::size_t k = 0; k < r.steps.size(); ++k) total[k] += r.steps[k];
      }
      for (std::size_t k = 0; k < total.size(); ++k) {
        out << k << ',' << society_name(soc) << ',' << field(resolution_pct(total[k])) << ','
            << field(social_mean(total[k])) << ',' << field(privacy_mean(total[k])) << ','
            << field(flexibility_mean(total[k])) << '\n';
      }
    }
    close_out(out, file);
  }

  {
    const fs::path file = dir / "per_run.csv";
    auto out = open_out(file);
    out << kPerRunHeader << '\n';
    for (const auto& r : result.runs) {
      const auto& s = r.summary;
      out << r.run_id << ',' << r.seed << ',' << society_name(r.society) << ',' << field(s.resolution) << ','
          << field(s.social) << ',' << field(s.privacy) << ',' << field(s.flexibility);
      for (const auto* arr : {&s.actor_payoff, &s.observer_payoff, &s.flexibility_by_type}) {
        out << ',' << field((*arr)[index_of(AgentType::Health)]) << ',' << field((*arr)[index_of(AgentType::Freedom)]);
      }
      out << '\n';
    }
    close_out(out, file);
  }

  {
    const fs::path file = dir / "norms.csv";
    auto out = open_out(file);
    out << kNormsHeader << '\n';
    for (auto soc : cfg.societies) {
      std::map<std::pair<std::string, std::string>, double> best;
      for (const auto& r : result.runs) {
        if (r.society != soc) continue;
        for (const auto& n : r.norms) {
          auto key = std::make_pair(to_string(n.rule.premise), std::string(action_name(n.rule.action)));
          auto [it, inserted] = best.try_emplace(std::move(key), n.adoption_fraction);
          if (!inserted) it->second = std::max(it->second, n.adoption_fraction);
        }
      }
      for (const auto& [key, frac] : best) {
        out << society_name(soc) << ',' << key.first << ',' << key.second << ',' << format_double(frac) << '\n';
      }
    }
    close_out(out, file);
  }

  {
    const fs::path file = dir / "stats.csv";
    auto out = open_out(file);
    out << kStatsHeader << '\n';
    for (const auto& row : compute_stats(cfg, result)) {
      out << row.metric << ',' << society_name(row.society_a) << ',' << society_name(row.society_b) << ','
          << field(row.mean_a) << ',' << field(row.mean_b) << ',' << field(row.sigma_a) << ','
          << field(row.sigma_b) << ',' << field(row.t) << ',' << field(row.p) << ',' << field(row.glass_delta)
          << ',' << row.cohen_label << '\n';
    }
    close_out(out, file);
  }
}

std::string render_report(const fs::path& dir) {
  const auto per_run = read_csv(dir / "per_run.csv", kPerRunHeader);
  const auto stats_rows = read_csv(dir / "stats.csv", kStatsHeader);
  const auto norms = read_csv(dir / "norms.csv", kNormsHeader);

  std::vector<std::string> societies;
  std::map<std::string, std::array<std::vector<double>, kMetrics.size()>> samples;
  for (const auto& row : per_run) {
    if (row.size() < 7) throw IoError("malformed row in per_run.csv");
    if (!samples.count(row[2])) societies.push_back(row[2]);
    auto& s = samples[row[2]];
    for (std::size_t m = 0; m < kMetrics.size(); ++m) {
      if (const auto v = parse_double(row[3 + m])) s[m].push_back(*v);
    }
  }

  std::ostringstream md;
  md << "# Experiment report\n\n";
  md << "Source: `" << dir.string() << "` (" << per_run.size() << " runs)\n";
  for (std::size_t m = 0; m < kMetrics.size(); ++m) {
    const std::string_view metric = kMetrics[m];
    md << "\n## " << static_cast<char>(std::toupper(metric[0])) << metric.substr(1) << "\n\n";
    md << "| society | runs | mean | sigma |\n|---|---|---|---|\n";
    for (const auto& soc : societies) {
      const auto& xs = samples[soc][m];
      md << "| " << soc << " | " << xs.size() << " | " << (xs.empty() ? "n/a" : format_double(stats::mean(xs)))
         << " | " << (xs.size() < 2 ? "n/a" : format_double(stats::sample_stddev(xs))) << " |\n";
    }
    bool header = false;
    for (const auto& row : stats_rows) {
      if (row.size() < 11) throw IoError("malformed row in stats.csv");
      if (row[0] != metric) continue;
      if (!header) {
        md << "\n| comparison | t | p | Glass' delta | effect |\n|---|---|---|---|---|\n";
        header = true;
      }
      md << "| " << row[1] << " vs " << row[2] << " | " << cell_or_dash(row[7]) << " | " << cell_or_dash(row[8])
         << " | " << cell_or_dash(row[9]) << " | " << cell_or_dash(row[10]) << " |\n";
    }
  }

  md << "\n## Emerged norms\n\n";
  if (norms.empty()) {
    md << "no norms emerged\n";
  } else {
    for (const auto& row : norms) {
      if (row.size() < 4) throw IoError("malformed row in norms.csv");
      md << "- " << row[0] << ": `{" << row[1] << "} => " << row[2] << "` (adoption " << row[3] << ")\n";
    }
  }
  return md.str();
}

int cmd_run(const fs::path& config_path, const std::vector<std::string>& overrides, int jobs, std::ostream& out,
            std::ostream& err) {
  ExperimentConfig cfg;
  try {
    cfg = load_config(config_path, overrides);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfig;
  }
  try {
    const auto result = run_experiment(cfg, jobs);
    write_outputs(cfg, result);
    out << "wrote " << result.runs.size() << " runs to " << cfg.output_dir << '\n';
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const IoError& e) {
    err << "i/o error: " << e.what() << '\n';
    return kExitIo;
  }
  return kExitOk;
}

int cmd_report(const fs::path& dir, std::ostream& out, std::ostream& err) {
  try {
    out << render_report(dir);
  } catch (const IoError& e) {
    err << "report error: " << e.what() << '\n';
    return kExitConfig;
  }
  return kExitOk;
}

int cmd_validate(const fs::path& config_path, const std::vector<std::string>& overrides, std::ostream& out,
                 std::ostream& err) {
  try {
    const auto cfg = load_config(config_path, overrides);
    out << "config ok: " << cfg.societies.size() << " societies x " << cfg.runs_per_society << " runs, "
        << cfg.scenario.world.n_agents << " agents, " << cfg.scenario.world.steps << " steps, preset "
        << preset_name(cfg.scenario.preset) << '\n';
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfig;
  }
  return kExitOk;
}

}  // namespace normsim
