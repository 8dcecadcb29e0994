#pragma once

#include <optional>
#include <string>
#include <vector>

#include "narsrl/types.hpp"

namespace narsrl {

/// One row per environment step. reward and episode_return are populated only
/// on episode_end rows: reward is the terminal step's reward, episode_return
/// the sum over the whole episode (CliffWalking's -100 teleports do not end
/// the episode, so they show up only in episode_return).
struct MetricRow {
  int trial = 0;
  long step = 0;
  long episode = 0;
  bool episode_end = false;
  std::optional<double> reward;
  std::optional<double> episode_return;
  long success_cum = 0;
  long random_cum = 0;
  long nonrandom_cum = 0;

  bool operator==(const MetricRow&) const = default;
};

inline constexpr const char* kMetricsHeader =
    "trial,step,episode,event,reward,episode_return,success_cum,random_cum,"
    "nonrandom_cum";

std::string metrics_to_csv(const std::vector<MetricRow>& rows);
std::vector<MetricRow> metrics_from_csv(const std::string& text);

/// Write-temp-then-rename so rerun outputs replace files atomically.
void write_file_atomic(const std::string& path, const std::string& content);
std::string read_file(const std::string& path);

}  // namespace narsrl
