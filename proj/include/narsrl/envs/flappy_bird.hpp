#pragma once

#include <utility>

#include "narsrl/env.hpp"

namespace narsrl {

/// Physics constants, all in screen-fraction units per tick. The defaults
/// give a playable bird: a pipe arrives every spacing/scroll ticks and the
/// hole center is drawn per pipe from the episode seed.
struct FlappyConfig {
  double gravity = 0.05;
  double flap_velocity = -0.4;
  double scroll_speed = 0.05;
  double gap_half_height = 0.15;
  double pipe_spacing = 1.5;
  double hole_margin = 0.05;
  int pipes_to_pass = 10;
  bool signed_state_mapping = false;
  std::optional<int> truncation;

  void validate() const;
};

struct FlappyPhysState {
  double bird_y = 0.5;
  double bird_vy = 0.0;
  double pipe_x = 0.0;
  double hole_y = 0.5;
};

/// O1 = horizontal distance to the next pipe, O2 = bird_y - hole_y.
std::pair<double, double> flappy_observe(const FlappyPhysState& phys);

/// "round(100*O1)_round(1000*O2)" with half-away-from-zero rounding,
/// e.g. (1.38, -0.004) -> "138_-4".
std::string flappy_token_ona(double o1, double o2);

/// |round(100*O1)| + |round(1000*O2)|; collapses the sign of O2, so distinct
/// observations can share an id. Kept as the default mapping on purpose.
StateId flappy_state_q(double o1, double o2);

/// Collision-free alternative: keeps the O2 sign by interleaving the two
/// rounded components into one non-negative id.
StateId flappy_state_q_signed(double o1, double o2);

/// Minimal tick physics: gravity pulls down (y grows downward), flapping sets
/// the velocity to flap_velocity, pipes scroll left at constant speed.
/// Hitting the screen edge or the pipe wall terminates with reward -1;
/// passing a pipe pays +1; passing pipes_to_pass pipes terminates with
/// success. Actions: 0=idle, 1=flap.
class FlappyBirdEnv final : public Environment {
 public:
  explicit FlappyBirdEnv(FlappyConfig config = {});

  const EnvSpec& spec() const override { return spec_; }
  StateId reset(std::uint64_t seed) override;
  StepOutcome step(ActionId action) override;
  StateId current_state() const override { return state_id_; }
  std::string state_token() const override;
  bool episode_over() const override { return finished_; }

  const FlappyPhysState& phys() const { return phys_; }
  int pipes_passed() const { return pipes_passed_; }

 private:
  StateId map_state() const;
  double draw_hole();

  FlappyConfig config_;
  EnvSpec spec_;
  FlappyPhysState phys_;
  Rng rng_{0};
  StateId state_id_ = 0;
  int pipes_passed_ = 0;
  int episode_steps_ = 0;
  bool finished_ = true;
};

}  // namespace narsrl
