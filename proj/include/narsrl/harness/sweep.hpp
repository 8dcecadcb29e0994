#pragma once

#include <map>
#include <string>
#include <vector>

#include "narsrl/harness/config.hpp"

namespace narsrl {

struct SweepRow {
  QHyperParams params;
  double score = 0.0;  // mean over envs of per-env normalized final success
  std::map<std::string, double> env_mean_success;  // raw mean final success_cum
};

/// Runs every hyperparameter combination on every env and ranks by score,
/// best first. Per-env normalization divides by the best observed mean (a
/// zero-best env contributes 1.0 to every combination).
std::vector<SweepRow> run_sweep(const SweepSpec& spec);

std::string sweep_ranking_csv(const SweepSpec& spec,
                              const std::vector<SweepRow>& rows);

/// run_sweep + ranking.csv into spec.output_dir; returns the csv path.
std::string run_sweep_to_dir(const SweepSpec& spec);

}  // namespace narsrl
