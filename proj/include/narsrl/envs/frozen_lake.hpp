#pragma once

#include <string>
#include <vector>

#include "narsrl/env.hpp"

namespace narsrl {

extern const std::vector<std::string> kFrozenLake4x4Map;
extern const std::vector<std::string> kFrozenLake8x8Map;

/// Frozen lake over a rectangular tile map ('S' start, 'F' frozen, 'H' hole,
/// 'G' goal). Reaching the goal pays 1 and terminates with success; holes
/// terminate with 0. In slippery mode the intended move happens with
/// probability 1/3 and each perpendicular move with 1/3. Actions: 0=left,
/// 1=down, 2=right, 3=up.
class FrozenLakeEnv final : public TabularEnv {
 public:
  FrozenLakeEnv(std::vector<std::string> map, bool slippery,
                std::optional<int> truncation);

  const EnvSpec& spec() const override { return spec_; }
  bool slippery() const { return slippery_; }
  int rows() const { return rows_; }
  int cols() const { return cols_; }
  char tile(StateId s) const { return map_[s / cols_][s % cols_]; }

 protected:
  StateId initial_state(Rng&) override { return start_; }
  StepOutcome transition(ActionId action) override;

 private:
  EnvSpec spec_;
  std::vector<std::string> map_;
  int rows_ = 0;
  int cols_ = 0;
  bool slippery_ = false;
  StateId start_ = 0;
};

}  // namespace narsrl
