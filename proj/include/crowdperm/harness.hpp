#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "crowdperm/scenarios.hpp"

// Batch experiment runner: seeded Monte Carlo trials over
// (scenario x estimator x sweep parameter), persisted as CSV.

namespace crowdperm {

enum class EstimatorKind { kMajorityVote, kWanOracle, kObiWan, kLsReference };

std::string estimator_name(EstimatorKind kind);
EstimatorKind estimator_from_name(const std::string& name);

struct ExperimentConfig {
  ScenarioSpec scenario;            // template; the swept field is overridden
  std::string sweep_param = "n";    // one of n, d, p_obs
  std::vector<double> sweep_values; // n and d values must be integral
  std::vector<EstimatorKind> estimators;
  int trials = 20;
  std::uint64_t base_seed = 0;
  std::string output_path;
};

struct TrialResult {
  ScenarioKind scenario;
  std::string sweep_param;
  double sweep_value = 0.0;
  EstimatorKind estimator;
  int trial = 0;
  std::uint64_t seed = 0;
  double qstar_loss = 0.0;
  double hamming = 0.0;
  std::optional<int> k_wan;  // present only for wan_oracle
  double wall_time_seconds = 0.0;
};

struct RunReport {
  std::vector<TrialResult> rows;          // canonical order
  std::vector<std::string> point_errors;  // one message per failed sweep point
};

// Deterministic per-trial seed: a mix of the base seed, the bit pattern of
// the sweep value, and the trial index, so adding sweep points never
// perturbs existing trials.
std::uint64_t trial_seed(std::uint64_t base_seed, double sweep_value,
                         int trial);

// Runs the experiment. Trials execute on a work pool of `threads` workers
// (0 = hardware default); rows come back sorted by (sweep value, estimator
// name, trial) regardless of completion order. When output_path is nonempty
// the CSV is written as sweep points complete; an unwritable path throws.
// Unsatisfiable sweep points are reported in point_errors without aborting
// the others.
RunReport run(const ExperimentConfig& config, int threads = 0);

// CSV persistence. Column order:
// scenario,sweep_param,sweep_value,estimator,trial,seed,qstar_loss,hamming,
// k_wan,wall_time_seconds. k_wan is empty for estimators without a window.
void write_csv_header(std::ostream& out);
void write_csv_row(std::ostream& out, const TrialResult& row);
std::vector<TrialResult> read_csv(std::istream& in);

struct AggregateRow {
  ScenarioKind scenario;
  double sweep_value = 0.0;
  EstimatorKind estimator;
  int count = 0;
  double qstar_mean = 0.0, qstar_stderr = 0.0, qstar_min = 0.0, qstar_max = 0.0;
  double hamming_mean = 0.0, hamming_stderr = 0.0, hamming_min = 0.0,
         hamming_max = 0.0;
};

// Per (scenario, sweep value, estimator): mean, standard error of the mean,
// min and max of each metric. Row order of the input does not matter.
std::vector<AggregateRow> summarize(const std::vector<TrialResult>& rows);

void write_summary(std::ostream& out, const std::vector<AggregateRow>& rows);

// Flat key-value config file ("key = value", '#' comments, lists
// comma-separated). Keys: scenario, n, d, p_obs, truth_mode, truth_seed,
// sweep_param, sweep_values, estimators, trials, base_seed, output.
ExperimentConfig load_config(const std::string& path);

}  // namespace crowdperm
