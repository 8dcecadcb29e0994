#include "narsrl/env.hpp"

#include <stdexcept>

namespace narsrl {

void EnvSpec::validate() const {
  if (n_actions < 2) throw std::invalid_argument("EnvSpec: n_actions must be >= 2");
  if (static_cast<int>(action_names.size()) != n_actions)
    throw std::invalid_argument("EnvSpec: action_names must have n_actions entries");
  for (std::size_t i = 0; i < action_names.size(); ++i)
    for (std::size_t j = i + 1; j < action_names.size(); ++j)
      if (action_names[i] == action_names[j])
        throw std::invalid_argument("EnvSpec: duplicate action name " + action_names[i]);
  if (n_states < 0) throw std::invalid_argument("EnvSpec: n_states must be >= 0");
  if (truncation_limit && *truncation_limit <= 0)
    throw std::invalid_argument("EnvSpec: truncation_limit must be positive");
}

StateId TabularEnv::reset(std::uint64_t seed) {
  rng_ = Rng(seed);
  episode_steps_ = 0;
  finished_ = false;
  state_ = initial_state(rng_);
  return state_;
}

StepOutcome TabularEnv::step(ActionId action) {
  if (finished_)
    throw std::logic_error(spec().name + ": step() on a finished episode");
  if (action < 0 || action >= spec().n_actions)
    throw std::out_of_range(spec().name + ": action out of range");

  StepOutcome out = transition(action);
  ++episode_steps_;
  const auto& limit = spec().truncation_limit;
  if (!out.terminated && limit && episode_steps_ >= *limit) out.truncated = true;
  finished_ = out.terminated || out.truncated;
  state_ = out.next_state;
  return out;
}

void TabularEnv::set_state(StateId s) {
  if (s < 0 || s >= spec().n_states)
    throw std::out_of_range(spec().name + ": state out of range");
  state_ = s;
  episode_steps_ = 0;
  finished_ = false;
}

}  // namespace narsrl
