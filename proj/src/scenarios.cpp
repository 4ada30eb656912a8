#include "crowdperm/scenarios.hpp"

#include <cmath>
#include <stdexcept>

#include "crowdperm/rng.hpp"

namespace crowdperm {

namespace {

// Number of workers in the top ability tier. Boundaries are floored; a
// boundary landing exactly on an integer is included in the tier.
int tier_size(double boundary) {
  if (!(boundary >= 0.0) || boundary > 1e9) {
    throw std::invalid_argument("ability tier boundary out of range");
  }
  return static_cast<int>(std::floor(boundary + 1e-12));
}

void require_tier(int size, int workers, const std::string& what) {
  if (size < 1 || size >= workers) {
    throw std::invalid_argument("scenario has an empty ability tier: " + what +
                                " came out as " + std::to_string(size) +
                                " of " + std::to_string(workers) + " workers");
  }
}

std::vector<double> two_tier_abilities(int workers, int smart, double high) {
  std::vector<double> abilities(workers, 0.5);
  std::fill_n(abilities.begin(), smart, high);
  return abilities;
}

std::vector<int> make_truth(const ScenarioSpec& spec) {
  std::vector<int> truth(spec.questions, 1);
  if (spec.kind == ScenarioKind::kMvLowerBound) {
    std::fill(truth.begin(), truth.end(), -1);
  } else if (spec.truth_mode == TruthMode::kRandom) {
    for (int j = 0; j < spec.questions; ++j) {
      truth[j] =
          rng::uniform01(spec.truth_seed, static_cast<std::uint64_t>(j)) < 0.5
              ? -1
              : 1;
    }
  }
  return truth;
}

}  // namespace

TruthInstance build(const ScenarioSpec& spec) {
  if (spec.workers <= 0 || spec.questions <= 0) {
    throw std::invalid_argument("scenario dimensions must be positive");
  }
  if (!(spec.p_obs > 0.0 && spec.p_obs <= 1.0)) {
    throw std::invalid_argument("scenario p_obs must lie in (0, 1]");
  }
  const int n = spec.workers;
  const int d = spec.questions;
  const double sqrt_n = std::sqrt(static_cast<double>(n));

  ProbabilityMatrix q = ProbabilityMatrix::constant(1, 1, 0.5);
  switch (spec.kind) {
    case ScenarioKind::kEasy: {
      const int smart = tier_size(n / 2.0);
      require_tier(smart, n, "workers below n/2");
      q = ProbabilityMatrix::from_worker_abilities(
          two_tier_abilities(n, smart, 0.9), d);
      break;
    }
    case ScenarioKind::kFewSmart: {
      const int smart = tier_size(sqrt_n);
      require_tier(smart, n, "workers below sqrt(n)");
      q = ProbabilityMatrix::from_worker_abilities(
          two_tier_abilities(n, smart, 0.9), d);
      break;
    }
    case ScenarioKind::kAdversarial: {
      const int good = tier_size(n / 4.0 + sqrt_n);
      const int bad = n - tier_size(3.0 * n / 4.0);
      if (good < 1 || bad < 1 || good + bad > n) {
        throw std::invalid_argument(
            "adversarial tiers are empty or overlap at n = " +
            std::to_string(n));
      }
      std::vector<double> abilities(n, 0.5);
      std::fill_n(abilities.begin(), good, 0.9);
      std::fill(abilities.end() - bad, abilities.end(), 0.1);
      q = ProbabilityMatrix::from_worker_abilities(abilities, d,
                                                   /*allows_adversarial=*/true);
      break;
    }
    case ScenarioKind::kPermNotInt: {
      const int smart_rows = tier_size(sqrt_n);
      const int easy_cols = tier_size(d / 2.0);
      require_tier(smart_rows, n, "rows below sqrt(n)");
      require_tier(easy_cols, d, "columns below d/2");
      std::vector<double> entries(static_cast<std::size_t>(n) * d);
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < d; ++j) {
          entries[static_cast<std::size_t>(i) * d + j] =
              (i < smart_rows || j < easy_cols) ? 0.9 : 0.5;
        }
      }
      q = ProbabilityMatrix(n, d, std::move(entries));
      break;
    }
    case ScenarioKind::kMinimaxLb: {
      const int smart = tier_size(5.0 / spec.p_obs);
      require_tier(smart, n, "workers below 5/p_obs");
      q = ProbabilityMatrix::from_worker_abilities(
          two_tier_abilities(n, smart, 0.9), d);
      break;
    }
    case ScenarioKind::kSuperSparse: {
      const int smart = tier_size(n / 10.0);
      require_tier(smart, n, "workers below n/10");
      q = ProbabilityMatrix::from_worker_abilities(
          two_tier_abilities(n, smart, 0.9), d);
      break;
    }
    case ScenarioKind::kGhoshHard: {
      const int perfect = tier_size(sqrt_n);
      require_tier(perfect, n, "workers below sqrt(n)");
      q = ProbabilityMatrix::from_worker_abilities(
          two_tier_abilities(n, perfect, 1.0), d);
      break;
    }
    case ScenarioKind::kZhangHard: {
      const int perfect = tier_size(sqrt_n * std::log(static_cast<double>(d)));
      require_tier(perfect, n, "workers below sqrt(n) ln(d)");
      q = ProbabilityMatrix::from_worker_abilities(
          two_tier_abilities(n, perfect, 1.0), d);
      break;
    }
    case ScenarioKind::kMvLowerBound: {
      const int perfect = tier_size(std::sqrt(n / (2.0 * spec.p_obs)));
      require_tier(perfect, n, "workers below sqrt(n / (2 p_obs))");
      q = ProbabilityMatrix::from_worker_abilities(
          two_tier_abilities(n, perfect, 1.0), d);
      break;
    }
  }
  return TruthInstance(std::move(q), make_truth(spec), spec.p_obs);
}

std::string scenario_name(ScenarioKind kind) {
  switch (kind) {
    case ScenarioKind::kEasy: return "easy";
    case ScenarioKind::kFewSmart: return "few_smart";
    case ScenarioKind::kAdversarial: return "adversarial";
    case ScenarioKind::kPermNotInt: return "perm_not_int";
    case ScenarioKind::kMinimaxLb: return "minimax_lb";
    case ScenarioKind::kSuperSparse: return "super_sparse";
    case ScenarioKind::kGhoshHard: return "ghosh_hard";
    case ScenarioKind::kZhangHard: return "zhang_hard";
    case ScenarioKind::kMvLowerBound: return "mv_lower_bound";
  }
  throw std::logic_error("unknown scenario kind");
}

ScenarioKind scenario_from_name(const std::string& name) {
  for (ScenarioKind kind : all_scenarios()) {
    if (scenario_name(kind) == name) return kind;
  }
  throw std::invalid_argument("unknown scenario '" + name + "'");
}

std::vector<ScenarioKind> all_scenarios() {
  return {ScenarioKind::kEasy,        ScenarioKind::kFewSmart,
          ScenarioKind::kAdversarial, ScenarioKind::kPermNotInt,
          ScenarioKind::kMinimaxLb,   ScenarioKind::kSuperSparse,
          ScenarioKind::kGhoshHard,   ScenarioKind::kZhangHard,
          ScenarioKind::kMvLowerBound};
}

}  // namespace crowdperm
