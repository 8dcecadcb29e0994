#include "narsrl/harness/aggregate.hpp"

#include <cmath>
#include <filesystem>
#include <stdexcept>

#include "narsrl/format.hpp"

namespace narsrl {

const std::vector<std::string>& AggregateSeries::metric_names() {
  static const std::vector<std::string> names = {
      "reward", "episode_return", "success_cum", "random_cum", "nonrandom_cum"};
  return names;
}

namespace {

std::vector<double> metric_series(const std::vector<MetricRow>& rows,
                                  const std::string& name) {
  std::vector<double> out;
  out.reserve(rows.size());
  double carry_reward = 0.0;
  double carry_return = 0.0;
  for (const auto& r : rows) {
    if (r.reward) carry_reward = *r.reward;
    if (r.episode_return) carry_return = *r.episode_return;
    if (name == "reward")
      out.push_back(carry_reward);
    else if (name == "episode_return")
      out.push_back(carry_return);
    else if (name == "success_cum")
      out.push_back(static_cast<double>(r.success_cum));
    else if (name == "random_cum")
      out.push_back(static_cast<double>(r.random_cum));
    else if (name == "nonrandom_cum")
      out.push_back(static_cast<double>(r.nonrandom_cum));
    else
      throw std::invalid_argument("unknown metric: " + name);
  }
  return out;
}

}  // namespace

AggregateSeries aggregate(const std::vector<std::vector<MetricRow>>& trials) {
  if (trials.empty()) throw std::invalid_argument("aggregate: no trials");
  const std::size_t n_steps = trials[0].size();
  if (n_steps == 0) throw std::invalid_argument("aggregate: empty trial");
  for (const auto& t : trials) {
    if (t.size() != n_steps)
      throw std::invalid_argument("aggregate: trials have mismatched step grids");
    for (std::size_t i = 0; i < n_steps; ++i)
      if (t[i].step != trials[0][i].step)
        throw std::invalid_argument("aggregate: trials have mismatched step grids");
  }

  AggregateSeries series;
  series.steps.reserve(n_steps);
  for (const auto& r : trials[0]) series.steps.push_back(r.step);

  const double n = static_cast<double>(trials.size());
  for (const auto& name : AggregateSeries::metric_names()) {
    std::vector<std::vector<double>> per_trial;
    per_trial.reserve(trials.size());
    for (const auto& t : trials) per_trial.push_back(metric_series(t, name));

    std::vector<double> mean(n_steps, 0.0), std_dev(n_steps, 0.0);
    for (std::size_t i = 0; i < n_steps; ++i) {
      double sum = 0.0;
      for (const auto& t : per_trial) sum += t[i];
      mean[i] = sum / n;
      double sq = 0.0;
      for (const auto& t : per_trial) {
        const double d = t[i] - mean[i];
        sq += d * d;
      }
      std_dev[i] = std::sqrt(sq / n);  // population std over the trials
    }
    series.metrics[name] = {std::move(mean), std::move(std_dev)};
  }
  return series;
}

AggregateSeries aggregate_dir(const std::string& dir) {
  std::vector<std::vector<MetricRow>> trials;
  for (int k = 0;; ++k) {
    const auto path =
        std::filesystem::path(dir) / ("trial_" + std::to_string(k) + ".csv");
    if (!std::filesystem::exists(path)) break;
    trials.push_back(metrics_from_csv(read_file(path.string())));
  }
  if (trials.empty())
    throw std::runtime_error("no trial_<k>.csv files in " + dir);
  return aggregate(trials);
}

std::string aggregate_to_csv(const AggregateSeries& series) {
  std::string out = "step";
  for (const auto& name : AggregateSeries::metric_names()) {
    out += ',' + name + "_mean," + name + "_std";
  }
  out += '\n';
  for (std::size_t i = 0; i < series.steps.size(); ++i) {
    out += std::to_string(series.steps[i]);
    for (const auto& name : AggregateSeries::metric_names()) {
      const auto& [mean, std_dev] = series.metrics.at(name);
      out += ',';
      out += format_double(mean[i]);
      out += ',';
      out += format_double(std_dev[i]);
    }
    out += '\n';
  }
  return out;
}

}  // namespace narsrl
