#pragma once

#include <array>

#include "narsrl/env.hpp"

namespace narsrl {

/// 5x5 taxi grid with four landmarks R(0,0), G(0,4), Y(4,0), B(4,3) and the
/// standard wall layout. State encoding ((row*5+col)*5+passenger)*4+dest,
/// passenger 0..3 = at landmark, 4 = in taxi. Moves cost -1; illegal pickup
/// or dropoff costs -10; dropping the passenger at the destination pays +20
/// and terminates with success. Actions: 0=south, 1=north, 2=east, 3=west,
/// 4=pickup, 5=dropoff.
class TaxiEnv final : public TabularEnv {
 public:
  static constexpr int kGridSize = 5;
  static constexpr std::array<GridPos, 4> kLandmarks = {
      GridPos{0, 0}, GridPos{0, 4}, GridPos{4, 0}, GridPos{4, 3}};

  explicit TaxiEnv(std::optional<int> truncation = 200);

  const EnvSpec& spec() const override { return spec_; }

  static StateId encode(int row, int col, int passenger, int dest);
  static void decode(StateId s, int& row, int& col, int& passenger, int& dest);

  /// True when a wall blocks moving east from (row, col).
  static bool wall_east_of(int row, int col);

 protected:
  StateId initial_state(Rng& rng) override;
  StepOutcome transition(ActionId action) override;

 private:
  EnvSpec spec_;
};

}  // namespace narsrl
