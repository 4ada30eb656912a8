// Benchmark CLI: runs seeded Monte Carlo experiments over the crowd-labeling
// scenarios and aggregates the per-trial CSV output.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "crowdperm/harness.hpp"

namespace {

int run_command(const std::string& config_path, const std::string& out_path,
                int threads) {
  crowdperm::ExperimentConfig config = crowdperm::load_config(config_path);
  if (!out_path.empty()) config.output_path = out_path;
  const crowdperm::RunReport report = crowdperm::run(config, threads);
  std::cerr << report.rows.size() << " rows";
  if (!config.output_path.empty()) {
    std::cerr << " -> " << config.output_path;
  }
  std::cerr << "\n";
  if (config.output_path.empty()) {
    crowdperm::write_csv_header(std::cout);
    for (const crowdperm::TrialResult& row : report.rows) {
      crowdperm::write_csv_row(std::cout, row);
    }
  }
  if (!report.point_errors.empty()) {
    std::cerr << "failed sweep points:\n";
    for (const std::string& message : report.point_errors) {
      std::cerr << "  " << message << "\n";
    }
    return 1;
  }
  return 0;
}

int summarize_command(const std::string& in_path) {
  std::ifstream in(in_path);
  if (!in) {
    std::cerr << "cannot read '" << in_path << "'\n";
    return 1;
  }
  const auto rows = crowdperm::read_csv(in);
  crowdperm::write_summary(std::cout, crowdperm::summarize(rows));
  return 0;
}

void list_scenarios_command() {
  std::cout << "scenario            worker abilities\n";
  const std::vector<std::pair<std::string, std::string>> descriptions = {
      {"easy", "0.9 for the first n/2 workers, 0.5 for the rest"},
      {"few_smart", "0.9 for the first sqrt(n) workers, 0.5 for the rest"},
      {"adversarial",
       "0.9 for the first n/4 + sqrt(n), 0.1 for the last n/4, else 0.5"},
      {"perm_not_int",
       "0.9 where worker < sqrt(n) or question < d/2, else 0.5"},
      {"minimax_lb", "0.9 for the first 5/p_obs workers, 0.5 for the rest"},
      {"super_sparse", "0.9 for the first n/10 workers, 0.5 for the rest"},
      {"ghosh_hard", "1.0 for the first sqrt(n) workers, 0.5 for the rest"},
      {"zhang_hard",
       "1.0 for the first sqrt(n)*ln(d) workers, 0.5 for the rest"},
      {"mv_lower_bound",
       "1.0 for the first sqrt(n/(2 p_obs)) workers, truth all -1"},
  };
  for (const auto& [name, text] : descriptions) {
    std::cout << name << std::string(20 - name.size(), ' ') << text << "\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Monte Carlo benchmark for crowd-labeling estimators"};
  app.require_subcommand(1);

  std::string config_path, out_path, in_path;
  int threads = 0;

  CLI::App* run = app.add_subcommand("run", "run an experiment config");
  run->add_option("--config", config_path, "config file path")->required();
  run->add_option("--out", out_path, "output CSV path (overrides config)");
  run->add_option("--threads", threads,
                  "worker threads, 0 = hardware default");

  CLI::App* summarize =
      app.add_subcommand("summarize", "aggregate a results CSV");
  summarize->add_option("--in", in_path, "results CSV path")->required();

  app.add_subcommand("list-scenarios", "describe the available scenarios");

  CLI11_PARSE(app, argc, argv);

  try {
    if (app.got_subcommand("run")) {
      return run_command(config_path, out_path, threads);
    }
    if (app.got_subcommand("summarize")) {
      return summarize_command(in_path);
    }
    list_scenarios_command();
    return 0;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 1;
  }
}
