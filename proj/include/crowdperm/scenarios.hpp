#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "crowdperm/core_model.hpp"

// Ground-truth generators for the benchmark: tiered worker-ability
// configurations exercising the regimes where the estimators separate.

namespace crowdperm {

enum class ScenarioKind {
  kEasy,          // half the workers at 0.9, rest at 0.5
  kFewSmart,      // floor(sqrt(n)) workers at 0.9
  kAdversarial,   // floor(n/4 + sqrt(n)) at 0.9, last n - floor(3n/4) at 0.1
  kPermNotInt,    // 0.9 where (row < sqrt(n) or column < d/2), else 0.5
  kMinimaxLb,     // floor(5 / p_obs) workers at 0.9
  kSuperSparse,   // floor(n/10) workers at 0.9
  kGhoshHard,     // floor(sqrt(n)) perfect workers
  kZhangHard,     // floor(sqrt(n) * ln d) perfect workers
  kMvLowerBound,  // floor(sqrt(n / (2 p_obs))) perfect workers, truth all -1
};

enum class TruthMode { kAllPlusOne, kRandom };

struct ScenarioSpec {
  ScenarioKind kind = ScenarioKind::kEasy;
  int workers = 0;
  int questions = 0;
  double p_obs = 1.0;
  TruthMode truth_mode = TruthMode::kRandom;
  std::uint64_t truth_seed = 0;  // used when truth_mode == kRandom
};

// Builds the ground-truth instance for the given scenario. Deterministic in
// the spec; truth randomness comes only from truth_seed.
//
// Tier boundaries are floored to integer worker counts, and a boundary that
// lands exactly on an integer is included in the upper tier (so kEasy with
// n = 4 has abilities 0.9, 0.9, 0.5, 0.5). Parameter combinations that
// yield an empty ability tier are rejected with std::invalid_argument.
// kMvLowerBound always uses truth all -1, ignoring truth_mode.
TruthInstance build(const ScenarioSpec& spec);

// Name <-> kind mapping used by the config file and CLI
// (easy, few_smart, adversarial, perm_not_int, minimax_lb, super_sparse,
//  ghosh_hard, zhang_hard, mv_lower_bound).
std::string scenario_name(ScenarioKind kind);
ScenarioKind scenario_from_name(const std::string& name);
std::vector<ScenarioKind> all_scenarios();

}  // namespace crowdperm
