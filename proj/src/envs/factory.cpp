#include "narsrl/envs/factory.hpp"

#include <stdexcept>

#include "narsrl/envs/cliff_walking.hpp"
#include "narsrl/envs/frozen_lake.hpp"
#include "narsrl/envs/taxi.hpp"

namespace narsrl {

const std::vector<std::string>& EnvOptions::known_names() {
  static const std::vector<std::string> names = {
      "cliffwalking", "taxi", "frozenlake4x4", "frozenlake8x8", "frozenlake",
      "flappybird"};
  return names;
}

namespace {

std::optional<int> resolve_truncation(const EnvOptions& opts,
                                      std::optional<int> fallback) {
  if (!opts.truncation) return fallback;
  if (*opts.truncation == 0) return std::nullopt;
  return opts.truncation;
}

}  // namespace

std::unique_ptr<Environment> make_env(const EnvOptions& opts) {
  if (opts.name == "cliffwalking") {
    if (!opts.map.empty()) throw std::invalid_argument("cliffwalking takes no map");
    return std::make_unique<CliffWalkingEnv>(resolve_truncation(opts, std::nullopt));
  }
  if (opts.name == "taxi") {
    if (!opts.map.empty()) throw std::invalid_argument("taxi takes no map");
    return std::make_unique<TaxiEnv>(resolve_truncation(opts, 200));
  }
  if (opts.name == "frozenlake4x4")
    return std::make_unique<FrozenLakeEnv>(
        opts.map.empty() ? kFrozenLake4x4Map : opts.map, opts.slippery,
        resolve_truncation(opts, 100));
  if (opts.name == "frozenlake8x8")
    return std::make_unique<FrozenLakeEnv>(
        opts.map.empty() ? kFrozenLake8x8Map : opts.map, opts.slippery,
        resolve_truncation(opts, 200));
  if (opts.name == "frozenlake") {
    if (opts.map.empty())
      throw std::invalid_argument("frozenlake with no builtin size needs map rows");
    return std::make_unique<FrozenLakeEnv>(opts.map, opts.slippery,
                                           resolve_truncation(opts, std::nullopt));
  }
  if (opts.name == "flappybird") {
    if (!opts.map.empty()) throw std::invalid_argument("flappybird takes no map");
    FlappyConfig cfg = opts.flappy;
    cfg.truncation = resolve_truncation(opts, cfg.truncation);
    return std::make_unique<FlappyBirdEnv>(cfg);
  }
  throw std::invalid_argument("unknown env name: " + opts.name);
}

}  // namespace narsrl
