#pragma once
// Experiment orchestration: JSON config loading with dotted overrides, seeded
// runs per society on a worker pool, CSV and snapshot persistence, summary
// statistics and the Markdown report.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "normsim/metrics.hpp"
#include "normsim/rationale.hpp"
#include "normsim/world.hpp"

namespace normsim {

// Raised when output artifacts cannot be written.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ExperimentConfig {
  // Everything except world.society and world.seed, which are set per run.
  Scenario scenario;
  std::vector<SocietyPolicy> societies{SocietyPolicy::ShareAll, SocietyPolicy::ShareRules, SocietyPolicy::Exanna};
  int runs_per_society = 10;
  std::string output_dir = "sim_output";
  std::uint64_t base_seed = 20240601;
  bool trace_rationales = false;
  bool write_populations = true;

  void validate() const;
};

// Parses JSON text; `overrides` are "dotted.key=value" strings whose value is
// read as JSON when possible and as a plain string otherwise. Unknown keys
// are rejected. Throws ConfigError.
ExperimentConfig parse_config(std::string_view json_text, const std::vector<std::string>& overrides = {});
// Reads and parses a file; SIM_OUTPUT_DIR supplies output_dir when the config
// (after overrides) leaves it unset. Throws ConfigError.
ExperimentConfig load_config(const std::filesystem::path& path, const std::vector<std::string>& overrides = {});

// base_seed + FNV-1a("<society>:<run_index>"), wrapping modulo 2^64.
std::uint64_t derive_seed(std::uint64_t base_seed, SocietyPolicy society, int run_index);

struct RunRecord {
  int run_id = 0;
  int run_index = 0;
  SocietyPolicy society = SocietyPolicy::Exanna;
  std::uint64_t seed = 0;
  RunSummary summary;
  std::vector<StepRecord> steps;
  std::vector<NormResult> norms;
};

struct ExperimentResult {
  std::vector<RunRecord> runs;  // society-major, run index minor
};

// Executes every (society, run) on `jobs` worker threads. When populations or
// traces are enabled the per-run files are written by the worker that owns
// the run (under output_dir). Results come back in run order.
ExperimentResult run_experiment(const ExperimentConfig& cfg, int jobs = 1);

struct StatsRow {
  std::string metric;
  SocietyPolicy society_a = SocietyPolicy::Exanna;
  SocietyPolicy society_b = SocietyPolicy::ShareAll;
  double mean_a = 0.0;
  double mean_b = 0.0;
  double sigma_a = 0.0;
  double sigma_b = 0.0;
  double t = 0.0;
  double p = 1.0;
  double glass_delta = 0.0;  // society_b is the control
  std::string cohen_label;
};

// Per metric, every pair of societies with a listed after b. Two-sided
// Welch p; NaN statistics when a society has fewer than two runs.
std::vector<StatsRow> compute_stats(const ExperimentConfig& cfg, const ExperimentResult& result);

// per_step.csv, per_run.csv, norms.csv and stats.csv. Throws IoError.
void write_outputs(const ExperimentConfig& cfg, const ExperimentResult& result);

inline constexpr std::string_view kPerStepHeader =
    "step,society,resolution_pct,social_mean,privacy_mean,flexibility_mean";
inline constexpr std::string_view kPerRunHeader =
    "run_id,seed,society,resolution,social,privacy,flexibility,actor_payoff_health,actor_payoff_freedom,"
    "observer_payoff_health,observer_payoff_freedom,flexibility_health,flexibility_freedom";
inline constexpr std::string_view kNormsHeader = "society,premise,action,adoption_fraction";
inline constexpr std::string_view kStatsHeader =
    "metric,society_a,society_b,mean_a,mean_b,sigma_a,sigma_b,t,p,glass_delta,cohen_label";

// Exit codes shared by the CLI.
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitIo = 3;

int cmd_run(const std::filesystem::path& config_path, const std::vector<std::string>& overrides, int jobs,
            std::ostream& out, std::ostream& err);
int cmd_report(const std::filesystem::path& dir, std::ostream& out, std::ostream& err);
int cmd_validate(const std::filesystem::path& config_path, const std::vector<std::string>& overrides,
                 std::ostream& out, std::ostream& err);

// Markdown report from the CSVs in `dir`. Throws IoError when one is missing.
std::string render_report(const std::filesystem::path& dir);

}  // namespace normsim
