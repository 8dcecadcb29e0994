#pragma once

#include <map>
#include <string>
#include <vector>

#include "narsrl/harness/metrics.hpp"

namespace narsrl {

/// Per-step mean and population standard deviation across trials. Sparse
/// episode-end metrics (reward, episode_return) are carried forward from
/// their last occurrence (0 before the first) so every grid point has a
/// value.
struct AggregateSeries {
  std::vector<long> steps;
  std::map<std::string, std::pair<std::vector<double>, std::vector<double>>>
      metrics;  // name -> (mean, std)

  static const std::vector<std::string>& metric_names();
};

AggregateSeries aggregate(const std::vector<std::vector<MetricRow>>& trials);

/// Loads every trial_<k>.csv in dir (k = 0,1,... contiguous).
AggregateSeries aggregate_dir(const std::string& dir);

std::string aggregate_to_csv(const AggregateSeries& series);

}  // namespace narsrl
