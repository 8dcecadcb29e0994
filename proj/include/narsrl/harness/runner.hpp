#pragma once

#include <string>
#include <vector>

#include "narsrl/harness/agents.hpp"
#include "narsrl/harness/metrics.hpp"

namespace narsrl {

struct TrialResult {
  std::vector<MetricRow> rows;
  bool aborted = false;  // bridge lost mid-trial; rows hold the partial run
  std::string abort_reason;
  std::string ona_banner;  // first line the ona shell printed, if any
};

/// Core step loop over a caller-supplied env and agent (tests inject fakes).
TrialResult run_trial_loop(const ExperimentConfig& cfg, int trial_index,
                           Environment& env, TrialAgent& agent);

/// Builds env + agent from the config and runs one trial.
/// Throws BridgeUnavailable when the ona binary cannot start.
TrialResult run_trial(const ExperimentConfig& cfg, int trial_index);

struct ExperimentResult {
  bool skipped = false;
  std::string skip_reason;
  std::vector<std::string> csv_paths;
  std::string manifest_path;
};

/// Runs all trials, writes trial_<k>.csv files and manifest.json into
/// output_dir. An unavailable ona binary skips the experiment with the
/// reason recorded in the manifest.
ExperimentResult run_experiment(const ExperimentConfig& cfg);

/// Derives the per-episode env seed; exposed so tests can replay resets.
std::uint64_t episode_seed(std::uint64_t trial_seed, long episode);

}  // namespace narsrl
