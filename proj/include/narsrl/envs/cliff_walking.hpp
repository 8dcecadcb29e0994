#pragma once

#include "narsrl/env.hpp"

namespace narsrl {

/// 4x12 cliff grid. Start at (3,0), goal at (3,11); cells (3,1..10) are the
/// cliff. Every move costs -1; walking into the cliff costs -100 and
/// teleports back to the start without ending the episode. Reaching the goal
/// terminates with success. Actions: 0=up, 1=right, 2=down, 3=left.
class CliffWalkingEnv final : public TabularEnv {
 public:
  static constexpr int kRows = 4;
  static constexpr int kCols = 12;
  static constexpr StateId kStart = 3 * kCols + 0;
  static constexpr StateId kGoal = 3 * kCols + 11;

  explicit CliffWalkingEnv(std::optional<int> truncation = std::nullopt);

  const EnvSpec& spec() const override { return spec_; }

 protected:
  StateId initial_state(Rng&) override { return kStart; }
  StepOutcome transition(ActionId action) override;

 private:
  EnvSpec spec_;
};

}  // namespace narsrl
