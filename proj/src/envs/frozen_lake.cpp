#include "narsrl/envs/frozen_lake.hpp"

#include <algorithm>
#include <stdexcept>

namespace narsrl {

const std::vector<std::string> kFrozenLake4x4Map = {"SFFF", "FHFH", "FFFH", "HFFG"};
const std::vector<std::string> kFrozenLake8x8Map = {
    "SFFFFFFF", "FFFFFFFF", "FFFHFFFF", "FFFFFHFF",
    "FFFHFFFF", "FHHFFFHF", "FHFFHFHF", "FFFHFFFG"};

namespace {
// action order: left, down, right, up
constexpr int kRowDelta[4] = {0, 1, 0, -1};
constexpr int kColDelta[4] = {-1, 0, 1, 0};
}  // namespace

FrozenLakeEnv::FrozenLakeEnv(std::vector<std::string> map, bool slippery,
                             std::optional<int> truncation)
    : map_(std::move(map)), slippery_(slippery) {
  if (map_.empty()) throw std::invalid_argument("frozenlake: empty map");
  rows_ = static_cast<int>(map_.size());
  cols_ = static_cast<int>(map_[0].size());
  int starts = 0, goals = 0;
  for (int r = 0; r < rows_; ++r) {
    if (static_cast<int>(map_[r].size()) != cols_)
      throw std::invalid_argument("frozenlake: ragged map rows");
    for (int c = 0; c < cols_; ++c) {
      const char t = map_[r][c];
      if (t == 'S') {
        start_ = r * cols_ + c;
        ++starts;
      } else if (t == 'G') {
        ++goals;
      } else if (t != 'F' && t != 'H') {
        throw std::invalid_argument(std::string("frozenlake: bad tile '") + t + "'");
      }
    }
  }
  if (starts != 1) throw std::invalid_argument("frozenlake: map needs exactly one 'S'");
  if (goals < 1) throw std::invalid_argument("frozenlake: map needs a 'G'");

  spec_.name = "frozenlake" + std::to_string(rows_) + "x" + std::to_string(cols_);
  spec_.n_states = rows_ * cols_;
  spec_.n_actions = 4;
  spec_.action_names = {"^left", "^down", "^right", "^up"};
  spec_.truncation_limit = truncation;
  spec_.validate();
}

StepOutcome FrozenLakeEnv::transition(ActionId action) {
  ActionId move = action;
  if (slippery_) {
    // intended, or either perpendicular, each with probability 1/3
    const int slip = rng().uniform_index(3);  // 0,1,2 -> action-1, action, action+1
    move = (action + slip + 3) % 4;
  }
  int row = current_state() / cols_;
  int col = current_state() % cols_;
  row = std::min(std::max(row + kRowDelta[move], 0), rows_ - 1);
  col = std::min(std::max(col + kColDelta[move], 0), cols_ - 1);

  StepOutcome out;
  out.next_state = row * cols_ + col;
  const char t = map_[row][col];
  if (t == 'G') {
    out.reward = 1.0;
    out.terminated = true;
    out.success = true;
  } else if (t == 'H') {
    out.terminated = true;
  }
  return out;
}

}  // namespace narsrl
