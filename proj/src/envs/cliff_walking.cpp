#include "narsrl/envs/cliff_walking.hpp"

namespace narsrl {

namespace {
constexpr int kRowDelta[4] = {-1, 0, 1, 0};
constexpr int kColDelta[4] = {0, 1, 0, -1};
}  // namespace

CliffWalkingEnv::CliffWalkingEnv(std::optional<int> truncation) {
  spec_.name = "cliffwalking";
  spec_.n_states = kRows * kCols;
  spec_.n_actions = 4;
  spec_.action_names = {"^up", "^right", "^down", "^left"};
  spec_.truncation_limit = truncation;
  spec_.validate();
}

StepOutcome CliffWalkingEnv::transition(ActionId action) {
  int row = current_state() / kCols;
  int col = current_state() % kCols;
  row = std::min(std::max(row + kRowDelta[action], 0), kRows - 1);
  col = std::min(std::max(col + kColDelta[action], 0), kCols - 1);
  const StateId next = row * kCols + col;

  StepOutcome out;
  if (row == kRows - 1 && col >= 1 && col <= kCols - 2) {
    out.next_state = kStart;  // fell off the cliff
    out.reward = -100.0;
  } else if (next == kGoal) {
    out.next_state = next;
    out.reward = -1.0;
    out.terminated = true;
    out.success = true;
  } else {
    out.next_state = next;
    out.reward = -1.0;
  }
  return out;
}

}  // namespace narsrl
