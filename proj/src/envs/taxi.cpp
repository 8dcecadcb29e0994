#include "narsrl/envs/taxi.hpp"

#include <algorithm>

namespace narsrl {

namespace {
// Standard taxi map without the outer border; cell c sits at 2*c, the
// barrier east of it at 2*c+1.
constexpr const char* kMap[5] = {
    "R: | : :G",
    " : | : : ",
    " : : : : ",
    " | : | : ",
    "Y| : |B: ",
};
}  // namespace

TaxiEnv::TaxiEnv(std::optional<int> truncation) {
  spec_.name = "taxi";
  spec_.n_states = 500;
  spec_.n_actions = 6;
  spec_.action_names = {"^south", "^north", "^east", "^west", "^pickup", "^dropoff"};
  spec_.truncation_limit = truncation;
  spec_.validate();
}

StateId TaxiEnv::encode(int row, int col, int passenger, int dest) {
  return ((row * kGridSize + col) * 5 + passenger) * 4 + dest;
}

void TaxiEnv::decode(StateId s, int& row, int& col, int& passenger, int& dest) {
  dest = s % 4;
  s /= 4;
  passenger = s % 5;
  s /= 5;
  col = s % kGridSize;
  row = s / kGridSize;
}

bool TaxiEnv::wall_east_of(int row, int col) {
  if (col >= kGridSize - 1) return true;
  return kMap[row][2 * col + 1] == '|';
}

StateId TaxiEnv::initial_state(Rng& rng) {
  // 25 taxi positions x 12 (passenger, destination) pairs with pass != dest,
  // all equally likely.
  const int idx = rng.uniform_index(25 * 12);
  const int pos = idx / 12;
  const int pd = idx % 12;
  const int passenger = pd / 3;
  int dest = pd % 3;
  if (dest >= passenger) ++dest;
  return encode(pos / kGridSize, pos % kGridSize, passenger, dest);
}

StepOutcome TaxiEnv::transition(ActionId action) {
  int row, col, passenger, dest;
  decode(current_state(), row, col, passenger, dest);

  StepOutcome out;
  out.reward = -1.0;
  switch (action) {
    case 0:  // south
      row = std::min(row + 1, kGridSize - 1);
      break;
    case 1:  // north
      row = std::max(row - 1, 0);
      break;
    case 2:  // east
      if (!wall_east_of(row, col)) ++col;
      break;
    case 3:  // west
      if (col > 0 && !wall_east_of(row, col - 1)) --col;
      break;
    case 4:  // pickup
      if (passenger < 4 && kLandmarks[passenger] == GridPos{row, col})
        passenger = 4;
      else
        out.reward = -10.0;
      break;
    case 5:  // dropoff
      if (passenger == 4 && kLandmarks[dest] == GridPos{row, col}) {
        passenger = dest;
        out.reward = 20.0;
        out.terminated = true;
        out.success = true;
      } else if (passenger == 4) {
        // wrong landmark: passenger gets out anyway
        bool at_landmark = false;
        for (int i = 0; i < 4; ++i) {
          if (kLandmarks[i] == GridPos{row, col}) {
            passenger = i;
            at_landmark = true;
            break;
          }
        }
        if (!at_landmark) out.reward = -10.0;
      } else {
        out.reward = -10.0;
      }
      break;
  }
  out.next_state = encode(row, col, passenger, dest);
  return out;
}

}  // namespace narsrl
