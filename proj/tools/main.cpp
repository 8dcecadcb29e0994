#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "narsrl/harness/aggregate.hpp"
#include "narsrl/harness/plot.hpp"
#include "narsrl/harness/runner.hpp"
#include "narsrl/harness/sweep.hpp"

namespace {

int cmd_run(const std::string& config_path) {
  const auto cfg = narsrl::load_experiment_config(config_path);
  const auto result = narsrl::run_experiment(cfg);
  if (result.skipped) {
    std::cout << "skipped: " << result.skip_reason << "\n";
    std::cout << "manifest: " << result.manifest_path << "\n";
    return 0;
  }
  for (const auto& p : result.csv_paths) std::cout << p << "\n";
  std::cout << "manifest: " << result.manifest_path << "\n";
  return 0;
}

int cmd_aggregate(const std::string& dir) {
  const auto series = narsrl::aggregate_dir(dir);
  const auto path = (std::filesystem::path(dir) / "aggregate.csv").string();
  narsrl::write_file_atomic(path, narsrl::aggregate_to_csv(series));
  std::cout << path << "\n";
  return 0;
}

int cmd_plot(const std::vector<std::string>& dirs, const std::string& metric,
             const std::string& out) {
  std::vector<std::pair<std::string, narsrl::AggregateSeries>> series;
  for (const auto& dir : dirs) {
    auto label = std::filesystem::path(dir).filename().string();
    if (label.empty()) label = dir;
    series.emplace_back(label, narsrl::aggregate_dir(dir));
  }
  narsrl::write_file_atomic(out, narsrl::render_plot_svg(series, metric));
  std::cout << out << "\n";
  return 0;
}

int cmd_sweep(const std::string& config_path) {
  const auto spec = narsrl::load_sweep_config(config_path);
  const auto path = narsrl::run_sweep_to_dir(spec);
  std::cout << path << "\n";
  return 0;
}

int cmd_dump(const std::string& config_path, int trial, const std::string& out,
             bool want_qtable) {
  const auto cfg = narsrl::load_experiment_config(config_path);
  if (want_qtable && cfg.agent_kind != narsrl::AgentKind::qlearning)
    throw std::invalid_argument("dump-qtable needs agent type qlearning");
  if (!want_qtable && cfg.agent_kind != narsrl::AgentKind::nars)
    throw std::invalid_argument("dump-memory needs agent type nars");

  auto env = narsrl::make_env(cfg.env);
  auto agent = narsrl::make_trial_agent(cfg, env->spec());
  narsrl::run_trial_loop(cfg, trial, *env, *agent);

  std::ostringstream buf;
  agent->dump(buf);
  if (out == "-") {
    std::cout << buf.str();
  } else {
    narsrl::write_file_atomic(out, buf.str());
    std::cout << out << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"discrete-env agent comparison harness"};
  app.require_subcommand(1);

  std::string config_path, dir, metric, out = "-";
  std::vector<std::string> dirs;
  int trial = 0;

  auto* run = app.add_subcommand("run", "run all trials of one experiment config");
  run->add_option("--config", config_path, "experiment config file")->required();

  auto* agg = app.add_subcommand("aggregate", "mean/std across a run's trial CSVs");
  agg->add_option("--dir", dir, "experiment output dir")->required();

  auto* plot = app.add_subcommand("plot", "render an SVG curve for one metric");
  plot->add_option("--dir", dirs, "experiment output dir (repeat to overlay)")
      ->required();
  plot->add_option("--metric", metric, "one of the aggregate metric names")
      ->required();
  std::string plot_out;
  plot->add_option("--out", plot_out, "output .svg path")->required();

  auto* sweep = app.add_subcommand("sweep", "grid-search q-learning hyperparameters");
  sweep->add_option("--config", config_path, "sweep config file")->required();

  auto* dq = app.add_subcommand("dump-qtable", "train one trial, dump the q-table");
  dq->add_option("--config", config_path, "experiment config file")->required();
  dq->add_option("--trial", trial, "trial index (default 0)");
  dq->add_option("--out", out, "output csv path, - for stdout");

  auto* dm = app.add_subcommand("dump-memory", "train one trial, dump the link memory");
  dm->add_option("--config", config_path, "experiment config file")->required();
  dm->add_option("--trial", trial, "trial index (default 0)");
  dm->add_option("--out", out, "output csv path, - for stdout");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) return cmd_run(config_path);
    if (agg->parsed()) return cmd_aggregate(dir);
    if (plot->parsed()) return cmd_plot(dirs, metric, plot_out);
    if (sweep->parsed()) return cmd_sweep(config_path);
    if (dq->parsed()) return cmd_dump(config_path, trial, out, true);
    if (dm->parsed()) return cmd_dump(config_path, trial, out, false);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
