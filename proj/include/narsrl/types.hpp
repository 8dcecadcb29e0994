#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace narsrl {

using StateId = int;
using ActionId = int;

/// Result of one environment step. `success` means the task was completely
/// done on this step; it implies `terminated`. `terminated` and `truncated`
/// are never both set by the same step.
struct StepOutcome {
  StateId next_state = 0;
  double reward = 0.0;
  bool terminated = false;
  bool truncated = false;
  bool success = false;
};

/// Static description of an environment. `n_states == 0` means the state
/// space is unbounded and ids are discovered on the fly (FlappyBird).
struct EnvSpec {
  std::string name;
  int n_states = 0;
  int n_actions = 0;
  std::vector<std::string> action_names;
  std::optional<int> truncation_limit;

  void validate() const;
};

struct GridPos {
  int row = 0;
  int col = 0;

  bool operator==(const GridPos&) const = default;
};

}  // namespace narsrl
