#pragma once

#include <cstdint>
#include <memory>
#include <string>

#include "narsrl/rng.hpp"
#include "narsrl/types.hpp"

namespace narsrl {

/// Discrete, seed-deterministic episodic environment. One instance is owned
/// by one trial; instances never share state and may be moved between threads
/// while idle. Stepping a finished episode throws std::logic_error instead of
/// silently resetting.
class Environment {
 public:
  virtual ~Environment() = default;

  virtual const EnvSpec& spec() const = 0;

  /// Puts the environment in its initial configuration. All randomness of the
  /// episode derives from `seed` only.
  virtual StateId reset(std::uint64_t seed) = 0;

  virtual StepOutcome step(ActionId action) = 0;

  virtual StateId current_state() const = 0;

  /// Token for the current state as sent to NARS-style agents. Tabular
  /// environments use the decimal state id; FlappyBird uses the observation
  /// token, which keeps sign information the id mapping collapses.
  virtual std::string state_token() const = 0;

  virtual bool episode_over() const = 0;
};

/// Shared machinery for the table-based environments: state bookkeeping,
/// per-episode step counting, truncation, and the finished-episode guard.
class TabularEnv : public Environment {
 public:
  StateId reset(std::uint64_t seed) final;
  StepOutcome step(ActionId action) final;
  StateId current_state() const final { return state_; }
  std::string state_token() const final { return std::to_string(state_); }
  bool episode_over() const final { return finished_; }

  /// Testing hook: teleports to `s` mid-episode and clears the finished flag.
  /// Step counting restarts so sampling loops do not hit truncation.
  void set_state(StateId s);

 protected:
  /// Initial state draw; tabular envs with a fixed start ignore the rng.
  virtual StateId initial_state(Rng& rng) = 0;

  /// One transition from the current state. Must not mark truncation; the
  /// base class applies the step limit. May consult rng() for stochastic
  /// dynamics.
  virtual StepOutcome transition(ActionId action) = 0;

  Rng& rng() { return rng_; }

 private:
  Rng rng_{0};
  StateId state_ = 0;
  int episode_steps_ = 0;
  bool finished_ = true;
};

}  // namespace narsrl
