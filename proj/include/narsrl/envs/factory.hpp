#pragma once

#include <memory>
#include <string>
#include <vector>

#include "narsrl/env.hpp"
#include "narsrl/envs/flappy_bird.hpp"

namespace narsrl {

/// Env selection as read from the [env] config section. `map` rows override
/// the builtin layout for frozen lake variants; `truncation` overrides the
/// env default (0 disables truncation entirely).
struct EnvOptions {
  std::string name;
  std::vector<std::string> map;
  bool slippery = false;
  std::optional<int> truncation;
  FlappyConfig flappy;

  static const std::vector<std::string>& known_names();
};

std::unique_ptr<Environment> make_env(const EnvOptions& opts);

}  // namespace narsrl
