#include "crowdperm/harness.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <map>
#include <mutex>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <tuple>

#include "crowdperm/estimators.hpp"
#include "crowdperm/metrics.hpp"
#include "crowdperm/reference_ls.hpp"
#include "crowdperm/rng.hpp"

namespace crowdperm {

std::string estimator_name(EstimatorKind kind) {
  switch (kind) {
    case EstimatorKind::kMajorityVote: return "mv";
    case EstimatorKind::kWanOracle: return "wan_oracle";
    case EstimatorKind::kObiWan: return "obi_wan";
    case EstimatorKind::kLsReference: return "ls_reference";
  }
  throw std::logic_error("unknown estimator kind");
}

EstimatorKind estimator_from_name(const std::string& name) {
  for (EstimatorKind kind :
       {EstimatorKind::kMajorityVote, EstimatorKind::kWanOracle,
        EstimatorKind::kObiWan, EstimatorKind::kLsReference}) {
    if (estimator_name(kind) == name) return kind;
  }
  throw std::invalid_argument("unknown estimator '" + name + "'");
}

std::uint64_t trial_seed(std::uint64_t base_seed, double sweep_value,
                         int trial) {
  std::uint64_t value_bits = 0;
  static_assert(sizeof(value_bits) == sizeof(sweep_value));
  std::memcpy(&value_bits, &sweep_value, sizeof(value_bits));
  return rng::mix_values(base_seed, value_bits,
                         static_cast<std::uint64_t>(trial));
}

namespace {

std::string format_double(double v) {
  char buffer[64];
  const auto [end, ec] =
      std::to_chars(buffer, buffer + sizeof(buffer), v);
  if (ec != std::errc()) throw std::logic_error("double formatting failed");
  return std::string(buffer, end);
}

ScenarioSpec spec_for_point(const ExperimentConfig& config, double value) {
  ScenarioSpec spec = config.scenario;
  if (config.sweep_param == "n") {
    spec.workers = static_cast<int>(std::llround(value));
  } else if (config.sweep_param == "d") {
    spec.questions = static_cast<int>(std::llround(value));
  } else if (config.sweep_param == "p_obs") {
    spec.p_obs = value;
  } else {
    throw std::invalid_argument("sweep parameter must be n, d or p_obs");
  }
  return spec;
}

// True worker ordering handed to wan_oracle: descending mean ability,
// ties broken by ascending worker index.
WorkerOrdering true_ordering(const ProbabilityMatrix& q) {
  std::vector<double> abilities(q.workers());
  for (int i = 0; i < q.workers(); ++i) {
    abilities[i] = q.worker_ability(i);
  }
  return ordering_from_vector(abilities);
}

struct EstimateOutcome {
  std::vector<int> answers;
  std::optional<int> k_wan;
};

EstimateOutcome run_estimator(EstimatorKind kind, const TruthInstance& instance,
                              const ResponseMatrix& responses,
                              std::uint64_t split_seed) {
  switch (kind) {
    case EstimatorKind::kMajorityVote:
      return {majority_vote(responses), std::nullopt};
    case EstimatorKind::kWanOracle: {
      const WanOutput out =
          wan(responses, true_ordering(instance.q), instance.p_obs);
      return {out.answers, out.k_wan};
    }
    case EstimatorKind::kObiWan:
      return {obi_wan(responses, instance.p_obs, split_seed), std::nullopt};
    case EstimatorKind::kLsReference: {
      const LsSolution solution = least_squares(responses, instance.p_obs);
      return {solution.answers, std::nullopt};
    }
  }
  throw std::logic_error("unknown estimator kind");
}

void validate_config(const ExperimentConfig& config) {
  if (config.trials < 1) {
    throw std::invalid_argument("trials must be at least 1");
  }
  if (config.estimators.empty()) {
    throw std::invalid_argument("at least one estimator is required");
  }
  if (config.sweep_values.empty()) {
    throw std::invalid_argument("sweep needs at least one value");
  }
  if (config.sweep_param != "n" && config.sweep_param != "d" &&
      config.sweep_param != "p_obs") {
    throw std::invalid_argument("sweep parameter must be n, d or p_obs");
  }
  if (config.sweep_param != "p_obs") {
    for (double v : config.sweep_values) {
      if (v != std::floor(v) || v < 1) {
        throw std::invalid_argument("n/d sweep values must be positive integers");
      }
    }
  }
}

}  // namespace

RunReport run(const ExperimentConfig& config, int threads) {
  validate_config(config);
  if (threads <= 0) {
    threads = static_cast<int>(std::thread::hardware_concurrency());
    if (threads <= 0) threads = 1;
  }

  std::ofstream csv;
  if (!config.output_path.empty()) {
    csv.open(config.output_path, std::ios::trunc);
    if (!csv) {
      throw std::runtime_error("cannot write output file '" +
                               config.output_path + "'");
    }
    write_csv_header(csv);
  }

  std::vector<double> values = config.sweep_values;
  std::sort(values.begin(), values.end());

  std::vector<EstimatorKind> estimators = config.estimators;
  std::sort(estimators.begin(), estimators.end(),
            [](EstimatorKind a, EstimatorKind b) {
              return estimator_name(a) < estimator_name(b);
            });

  RunReport report;
  for (double value : values) {
    const ScenarioSpec point_spec = spec_for_point(config, value);

    // One task per trial; each estimator contributes a row unless it fails.
    struct TaskOutput {
      std::vector<TrialResult> rows;
      std::vector<std::string> errors;
    };
    std::vector<TaskOutput> outputs(config.trials);
    std::atomic<int> next_trial{0};
    auto worker = [&]() {
      for (;;) {
        const int trial = next_trial.fetch_add(1);
        if (trial >= config.trials) return;
        TaskOutput& out = outputs[trial];
        const std::uint64_t seed =
            trial_seed(config.base_seed, value, trial);
        try {
          ScenarioSpec spec = point_spec;
          spec.truth_seed = rng::derive_stream(seed, 0);
          const TruthInstance instance = build(spec);
          const ResponseMatrix responses =
              sample_responses(instance, rng::derive_stream(seed, 1));
          const std::uint64_t split_seed = rng::derive_stream(seed, 2);
          for (EstimatorKind kind : estimators) {
            try {
              const auto start = std::chrono::steady_clock::now();
              const EstimateOutcome outcome =
                  run_estimator(kind, instance, responses, split_seed);
              const std::chrono::duration<double> elapsed =
                  std::chrono::steady_clock::now() - start;
              TrialResult row;
              row.scenario = config.scenario.kind;
              row.sweep_param = config.sweep_param;
              row.sweep_value = value;
              row.estimator = kind;
              row.trial = trial;
              row.seed = seed;
              row.qstar_loss =
                  qstar_loss(instance.q, outcome.answers, instance.truth).value;
              row.hamming = hamming(outcome.answers, instance.truth).value;
              row.k_wan = outcome.k_wan;
              row.wall_time_seconds = elapsed.count();
              out.rows.push_back(std::move(row));
            } catch (const std::exception& err) {
              out.errors.push_back(estimator_name(kind) + ": " + err.what());
            }
          }
        } catch (const std::exception& err) {
          out.errors.push_back(std::string("instance: ") + err.what());
        }
      }
    };

    std::vector<std::thread> pool;
    const int pool_size = std::min(threads, config.trials);
    pool.reserve(pool_size);
    for (int t = 0; t < pool_size; ++t) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();

    std::vector<TrialResult> point_rows;
    std::map<std::string, int> error_counts;
    for (const TaskOutput& out : outputs) {
      point_rows.insert(point_rows.end(), out.rows.begin(), out.rows.end());
      for (const std::string& e : out.errors) ++error_counts[e];
    }
    std::sort(point_rows.begin(), point_rows.end(),
              [](const TrialResult& a, const TrialResult& b) {
                return std::make_tuple(estimator_name(a.estimator), a.trial) <
                       std::make_tuple(estimator_name(b.estimator), b.trial);
              });
    for (const auto& [message, count] : error_counts) {
      report.point_errors.push_back(
          config.sweep_param + " = " + format_double(value) + ": " + message +
          " (" + std::to_string(count) + " trials)");
    }
    if (csv.is_open()) {
      for (const TrialResult& row : point_rows) write_csv_row(csv, row);
      csv.flush();
    }
    report.rows.insert(report.rows.end(), point_rows.begin(),
                       point_rows.end());
  }
  return report;
}

void write_csv_header(std::ostream& out) {
  out << "scenario,sweep_param,sweep_value,estimator,trial,seed,qstar_loss,"
         "hamming,k_wan,wall_time_seconds\n";
}

void write_csv_row(std::ostream& out, const TrialResult& row) {
  out << scenario_name(row.scenario) << ',' << row.sweep_param << ','
      << format_double(row.sweep_value) << ',' << estimator_name(row.estimator)
      << ',' << row.trial << ',' << row.seed << ','
      << format_double(row.qstar_loss) << ',' << format_double(row.hamming)
      << ',';
  if (row.k_wan) out << *row.k_wan;
  char wall[32];
  std::snprintf(wall, sizeof(wall), "%.6f", row.wall_time_seconds);
  out << ',' << wall << '\n';
}

namespace {

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> fields;
  std::string::size_type start = 0;
  for (;;) {
    const auto pos = line.find(sep, start);
    if (pos == std::string::npos) {
      fields.push_back(line.substr(start));
      return fields;
    }
    fields.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
}

double parse_double(const std::string& s, const std::string& what) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw std::invalid_argument("cannot parse " + what + " from '" + s + "'");
  }
}

}  // namespace

std::vector<TrialResult> read_csv(std::istream& in) {
  std::vector<TrialResult> rows;
  std::string line;
  if (!std::getline(in, line)) {
    throw std::invalid_argument("empty CSV input");
  }
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const std::vector<std::string> f = split(line, ',');
    if (f.size() != 10) {
      throw std::invalid_argument("malformed CSV row: " + line);
    }
    TrialResult row;
    row.scenario = scenario_from_name(f[0]);
    row.sweep_param = f[1];
    row.sweep_value = parse_double(f[2], "sweep_value");
    row.estimator = estimator_from_name(f[3]);
    row.trial = static_cast<int>(parse_double(f[4], "trial"));
    row.seed = std::stoull(f[5]);
    row.qstar_loss = parse_double(f[6], "qstar_loss");
    row.hamming = parse_double(f[7], "hamming");
    if (!f[8].empty()) row.k_wan = static_cast<int>(parse_double(f[8], "k_wan"));
    row.wall_time_seconds = parse_double(f[9], "wall_time_seconds");
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<AggregateRow> summarize(const std::vector<TrialResult>& rows) {
  if (rows.empty()) {
    throw std::invalid_argument("summarize needs at least one row");
  }
  struct Accumulator {
    int count = 0;
    double q_sum = 0, q_sq = 0, q_min = 0, q_max = 0;
    double h_sum = 0, h_sq = 0, h_min = 0, h_max = 0;
  };
  std::map<std::tuple<std::string, double, std::string>, Accumulator> groups;
  for (const TrialResult& row : rows) {
    auto& acc = groups[{scenario_name(row.scenario), row.sweep_value,
                        estimator_name(row.estimator)}];
    if (acc.count == 0) {
      acc.q_min = acc.q_max = row.qstar_loss;
      acc.h_min = acc.h_max = row.hamming;
    }
    ++acc.count;
    acc.q_sum += row.qstar_loss;
    acc.q_sq += row.qstar_loss * row.qstar_loss;
    acc.q_min = std::min(acc.q_min, row.qstar_loss);
    acc.q_max = std::max(acc.q_max, row.qstar_loss);
    acc.h_sum += row.hamming;
    acc.h_sq += row.hamming * row.hamming;
    acc.h_min = std::min(acc.h_min, row.hamming);
    acc.h_max = std::max(acc.h_max, row.hamming);
  }
  std::vector<AggregateRow> result;
  result.reserve(groups.size());
  for (const auto& [key, acc] : groups) {
    AggregateRow out;
    out.scenario = scenario_from_name(std::get<0>(key));
    out.sweep_value = std::get<1>(key);
    out.estimator = estimator_from_name(std::get<2>(key));
    out.count = acc.count;
    const double inv = 1.0 / acc.count;
    out.qstar_mean = acc.q_sum * inv;
    out.hamming_mean = acc.h_sum * inv;
    auto stderr_of = [&](double sum, double sq, double mean) {
      if (acc.count < 2) return 0.0;
      const double var =
          std::max(0.0, (sq - sum * mean) / (acc.count - 1));
      return std::sqrt(var / acc.count);
    };
    out.qstar_stderr = stderr_of(acc.q_sum, acc.q_sq, out.qstar_mean);
    out.hamming_stderr = stderr_of(acc.h_sum, acc.h_sq, out.hamming_mean);
    out.qstar_min = acc.q_min;
    out.qstar_max = acc.q_max;
    out.hamming_min = acc.h_min;
    out.hamming_max = acc.h_max;
    result.push_back(out);
  }
  return result;
}

void write_summary(std::ostream& out, const std::vector<AggregateRow>& rows) {
  out << "scenario,sweep_value,estimator,count,"
         "qstar_loss_mean,qstar_loss_stderr,qstar_loss_min,qstar_loss_max,"
         "hamming_mean,hamming_stderr,hamming_min,hamming_max\n";
  for (const AggregateRow& row : rows) {
    out << scenario_name(row.scenario) << ',' << format_double(row.sweep_value)
        << ',' << estimator_name(row.estimator) << ',' << row.count << ','
        << format_double(row.qstar_mean) << ','
        << format_double(row.qstar_stderr) << ','
        << format_double(row.qstar_min) << ',' << format_double(row.qstar_max)
        << ',' << format_double(row.hamming_mean) << ','
        << format_double(row.hamming_stderr) << ','
        << format_double(row.hamming_min) << ','
        << format_double(row.hamming_max) << '\n';
  }
}

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

}  // namespace

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot read config file '" + path + "'");
  }
  std::map<std::string, std::string> kv;
  std::string line;
  int line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    const auto comment = line.find('#');
    if (comment != std::string::npos) line = line.substr(0, comment);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument("config line " + std::to_string(line_number) +
                                  " is not 'key = value'");
    }
    kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }

  auto require = [&](const std::string& key) -> const std::string& {
    const auto it = kv.find(key);
    if (it == kv.end()) {
      throw std::invalid_argument("config is missing key '" + key + "'");
    }
    return it->second;
  };
  auto optional = [&](const std::string& key,
                      const std::string& fallback) -> std::string {
    const auto it = kv.find(key);
    return it == kv.end() ? fallback : it->second;
  };

  ExperimentConfig config;
  config.scenario.kind = scenario_from_name(require("scenario"));
  config.scenario.workers =
      static_cast<int>(parse_double(require("n"), "n"));
  config.scenario.questions =
      static_cast<int>(parse_double(require("d"), "d"));
  config.scenario.p_obs = parse_double(optional("p_obs", "1"), "p_obs");
  const std::string truth_mode = optional("truth_mode", "random");
  if (truth_mode == "random") {
    config.scenario.truth_mode = TruthMode::kRandom;
  } else if (truth_mode == "all_plus_one") {
    config.scenario.truth_mode = TruthMode::kAllPlusOne;
  } else {
    throw std::invalid_argument("truth_mode must be random or all_plus_one");
  }
  config.sweep_param = require("sweep_param");
  for (const std::string& field : split(require("sweep_values"), ',')) {
    config.sweep_values.push_back(parse_double(trim(field), "sweep value"));
  }
  for (const std::string& field : split(require("estimators"), ',')) {
    config.estimators.push_back(estimator_from_name(trim(field)));
  }
  config.trials = static_cast<int>(parse_double(require("trials"), "trials"));
  config.base_seed = std::stoull(require("base_seed"));
  config.output_path = optional("output", "");
  return config;
}

}  // namespace crowdperm
