#include "narsrl/envs/flappy_bird.hpp"

#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace narsrl {

void FlappyConfig::validate() const {
  if (!(gravity > 0.0)) throw std::invalid_argument("flappy: gravity must be positive");
  if (!(flap_velocity < 0.0)) throw std::invalid_argument("flappy: flap_velocity must be negative (up)");
  if (!(scroll_speed > 0.0)) throw std::invalid_argument("flappy: scroll_speed must be positive");
  if (!(gap_half_height > 0.0) || gap_half_height >= 0.5)
    throw std::invalid_argument("flappy: gap_half_height must be in (0, 0.5)");
  if (!(pipe_spacing > 0.0)) throw std::invalid_argument("flappy: pipe_spacing must be positive");
  if (hole_margin < 0.0) throw std::invalid_argument("flappy: hole_margin must be non-negative");
  if (gap_half_height + hole_margin >= 0.5)
    throw std::invalid_argument("flappy: gap_half_height + hole_margin leaves no room for the hole center");
  if (pipes_to_pass <= 0) throw std::invalid_argument("flappy: pipes_to_pass must be positive");
  if (truncation && *truncation <= 0) throw std::invalid_argument("flappy: truncation must be positive");
}

std::pair<double, double> flappy_observe(const FlappyPhysState& phys) {
  return {phys.pipe_x, phys.bird_y - phys.hole_y};
}

std::string flappy_token_ona(double o1, double o2) {
  // llround rounds halves away from zero, which pins e.g. -0.0045 -> -5.
  const long long a = std::llround(100.0 * o1);
  const long long b = std::llround(1000.0 * o2);
  return std::to_string(a) + "_" + std::to_string(b);
}

StateId flappy_state_q(double o1, double o2) {
  const long long a = std::llabs(std::llround(100.0 * o1));
  const long long b = std::llabs(std::llround(1000.0 * o2));
  return static_cast<StateId>(a + b);
}

namespace {

long long zigzag(long long v) { return v >= 0 ? 2 * v : -2 * v - 1; }

}  // namespace

StateId flappy_state_q_signed(double o1, double o2) {
  const long long a = zigzag(std::llround(100.0 * o1));
  const long long b = zigzag(std::llround(1000.0 * o2));
  return static_cast<StateId>((a + b) * (a + b + 1) / 2 + b);
}

FlappyBirdEnv::FlappyBirdEnv(FlappyConfig config) : config_(config) {
  config_.validate();
  spec_.name = "flappybird";
  spec_.n_states = 0;  // open-ended; ids come from the observation mapping
  spec_.n_actions = 2;
  spec_.action_names = {"^idle", "^flap"};
  spec_.truncation_limit = config_.truncation;
  spec_.validate();
}

double FlappyBirdEnv::draw_hole() {
  const double lo = config_.gap_half_height + config_.hole_margin;
  const double hi = 1.0 - config_.gap_half_height - config_.hole_margin;
  return lo + rng_.uniform01() * (hi - lo);
}

StateId FlappyBirdEnv::map_state() const {
  const auto [o1, o2] = flappy_observe(phys_);
  return config_.signed_state_mapping ? flappy_state_q_signed(o1, o2)
                                      : flappy_state_q(o1, o2);
}

std::string FlappyBirdEnv::state_token() const {
  const auto [o1, o2] = flappy_observe(phys_);
  return flappy_token_ona(o1, o2);
}

StateId FlappyBirdEnv::reset(std::uint64_t seed) {
  rng_ = Rng(seed);
  phys_ = FlappyPhysState{};
  phys_.pipe_x = config_.pipe_spacing;
  phys_.hole_y = draw_hole();
  pipes_passed_ = 0;
  episode_steps_ = 0;
  finished_ = false;
  state_id_ = map_state();
  return state_id_;
}

StepOutcome FlappyBirdEnv::step(ActionId action) {
  if (finished_) throw std::logic_error("flappy: step() after episode end; call reset()");
  if (action < 0 || action >= spec_.n_actions)
    throw std::out_of_range("flappy: action out of range: " + std::to_string(action));

  if (action == 1) phys_.bird_vy = config_.flap_velocity;
  phys_.bird_vy += config_.gravity;
  phys_.bird_y += phys_.bird_vy;
  phys_.pipe_x -= config_.scroll_speed;
  // Accumulated subtraction can land a hair below zero right at the pipe
  // plane; O1 must stay non-negative.
  if (phys_.pipe_x < 1e-9) phys_.pipe_x = 0.0;

  StepOutcome out;
  if (phys_.bird_y < 0.0 || phys_.bird_y > 1.0) {
    out.reward = -1.0;
    out.terminated = true;
  } else if (phys_.pipe_x == 0.0) {
    // Bird is at the pipe plane: either through the gap or into the wall.
    if (std::abs(phys_.bird_y - phys_.hole_y) > config_.gap_half_height) {
      out.reward = -1.0;
      out.terminated = true;
    } else {
      out.reward = 1.0;
      ++pipes_passed_;
      if (pipes_passed_ >= config_.pipes_to_pass) {
        out.terminated = true;
        out.success = true;
      } else {
        phys_.pipe_x += config_.pipe_spacing;
        phys_.hole_y = draw_hole();
      }
    }
  }

  ++episode_steps_;
  if (!out.terminated && config_.truncation && episode_steps_ >= *config_.truncation)
    out.truncated = true;
  finished_ = out.terminated || out.truncated;
  state_id_ = map_state();
  out.next_state = state_id_;
  return out;
}

}  // namespace narsrl
