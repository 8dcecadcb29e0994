#include "narsrl/harness/runner.hpp"

#include <filesystem>

#include "json.hpp"
#include "narsrl/format.hpp"

namespace narsrl {

std::uint64_t episode_seed(std::uint64_t trial_seed, long episode) {
  return mix_seed(mix_seed(trial_seed, 0), static_cast<std::uint64_t>(episode));
}

TrialResult run_trial_loop(const ExperimentConfig& cfg, int trial_index,
                           Environment& env, TrialAgent& agent) {
  const std::uint64_t trial_seed = cfg.base_seed + static_cast<std::uint64_t>(trial_index);
  Rng agent_rng(mix_seed(trial_seed, 1));
  Rng fallback_rng(mix_seed(trial_seed, 2));
  auto* reward_sink = dynamic_cast<RewardConsumer*>(&agent);

  TrialResult result;
  result.rows.reserve(static_cast<std::size_t>(cfg.steps));

  long episode = 0;
  long success_cum = 0, random_cum = 0, nonrandom_cum = 0;
  double ep_return = 0.0;

  StateId state = env.reset(episode_seed(trial_seed, episode));
  std::string token = env.state_token();
  agent.episode_start(state, token);

  for (long t = 0; t < cfg.steps; ++t) {
    ActionId action = 0;
    bool random_action = false;
    try {
      const Decision d = agent.decide(state, token, agent_rng);
      if (const auto* c = std::get_if<Chosen>(&d)) {
        action = c->op;
      } else if (const auto* b = std::get_if<Babble>(&d)) {
        action = b->op;
        random_action = true;
      } else {
        action = fallback_rng.uniform_index(env.spec().n_actions);
        random_action = true;
      }

      const StepOutcome out = env.step(action);
      if (reward_sink) reward_sink->reward(out.reward);
      const std::string next_token = env.state_token();
      agent.transition(state, action, out.next_state, next_token, out.terminated,
                       out.truncated, out.success);

      ep_return += out.reward;
      if (out.success) ++success_cum;
      if (random_action)
        ++random_cum;
      else
        ++nonrandom_cum;

      MetricRow row;
      row.trial = trial_index;
      row.step = t;
      row.episode = episode;
      row.success_cum = success_cum;
      row.random_cum = random_cum;
      row.nonrandom_cum = nonrandom_cum;
      if (out.terminated || out.truncated) {
        row.episode_end = true;
        row.reward = out.reward;
        row.episode_return = ep_return;
        agent.episode_end();
        ++episode;
        ep_return = 0.0;
        state = env.reset(episode_seed(trial_seed, episode));
        token = env.state_token();
        agent.episode_start(state, token);
      } else {
        state = out.next_state;
        token = next_token;
      }
      result.rows.push_back(row);
    } catch (const BridgeLost& lost) {
      result.aborted = true;
      result.abort_reason = lost.what();
      break;
    }
  }

  if (const auto* ona = dynamic_cast<const OnaTrialAgent*>(&agent)) {
    for (const auto& entry : ona->bridge().wire_log())
      if (entry.dir == WireEntry::Dir::received) {
        result.ona_banner = entry.line;
        break;
      }
  }
  return result;
}

TrialResult run_trial(const ExperimentConfig& cfg, int trial_index) {
  auto env = make_env(cfg.env);
  auto agent = make_trial_agent(cfg, env->spec());
  return run_trial_loop(cfg, trial_index, *env, *agent);
}

namespace {

nlohmann::ordered_json config_json(const ExperimentConfig& cfg) {
  nlohmann::ordered_json j;
  j["env"]["name"] = cfg.env.name;
  if (!cfg.env.map.empty()) j["env"]["map"] = cfg.env.map;
  if (cfg.env.name.rfind("frozenlake", 0) == 0)
    j["env"]["slippery"] = cfg.env.slippery;
  if (cfg.env.truncation) j["env"]["truncation"] = *cfg.env.truncation;
  if (cfg.env.name == "flappybird") {
    const auto& f = cfg.env.flappy;
    j["env"]["gravity"] = f.gravity;
    j["env"]["flap_velocity"] = f.flap_velocity;
    j["env"]["scroll_speed"] = f.scroll_speed;
    j["env"]["gap_half_height"] = f.gap_half_height;
    j["env"]["pipe_spacing"] = f.pipe_spacing;
    j["env"]["hole_margin"] = f.hole_margin;
    j["env"]["pipes_to_pass"] = f.pipes_to_pass;
    j["env"]["signed_state_mapping"] = f.signed_state_mapping;
  }
  j["agent"]["type"] = to_string(cfg.agent_kind);
  switch (cfg.agent_kind) {
    case AgentKind::qlearning:
      j["agent"]["alpha"] = cfg.q.alpha;
      j["agent"]["gamma"] = cfg.q.gamma;
      j["agent"]["eps_max"] = cfg.q.eps_max;
      j["agent"]["eps_min"] = cfg.q.eps_min;
      j["agent"]["decay"] = cfg.q.decay;
      break;
    case AgentKind::nars:
      j["agent"]["k"] = cfg.nars.k;
      j["agent"]["motorbabbling"] = cfg.nars.motorbabbling;
      j["agent"]["decision_threshold"] = cfg.nars.decision_threshold;
      j["agent"]["max_chain_depth"] = cfg.nars.max_chain_depth;
      j["agent"]["capacity"] = cfg.nars.capacity;
      j["agent"]["anticipation_window"] = cfg.nars.anticipation_window;
      break;
    case AgentKind::ona:
      j["agent"]["binary_path"] = cfg.ona.binary_path;
      j["agent"]["startup_args"] = cfg.ona.startup_args;
      if (cfg.ona.motorbabbling) j["agent"]["motorbabbling"] = *cfg.ona.motorbabbling;
      j["agent"]["read_timeout_ms"] = cfg.ona.read_timeout_ms;
      j["agent"]["goal_reissue_steps"] = cfg.ona.goal_reissue_steps;
      break;
  }
  j["experiment"]["trials"] = cfg.trials;
  j["experiment"]["steps"] = cfg.steps;
  j["experiment"]["base_seed"] = cfg.base_seed;
  j["experiment"]["output_dir"] = cfg.output_dir;
  return j;
}

}  // namespace

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  std::filesystem::create_directories(cfg.output_dir);

  ExperimentResult result;
  std::vector<TrialResult> trials;
  std::string banner;
  for (int k = 0; k < cfg.trials; ++k) {
    try {
      trials.push_back(run_trial(cfg, k));
      if (banner.empty()) banner = trials.back().ona_banner;
    } catch (const BridgeUnavailable& e) {
      result.skipped = true;
      result.skip_reason = e.what();
      trials.clear();
      break;
    }
  }

  nlohmann::ordered_json manifest;
  manifest["version"] = "0.1.0";
  manifest["config"] = config_json(cfg);
  if (!result.skipped) {
    auto seeds = nlohmann::ordered_json::array();
    for (int k = 0; k < cfg.trials; ++k)
      seeds.push_back(cfg.base_seed + static_cast<std::uint64_t>(k));
    manifest["trial_seeds"] = seeds;
  }
  if (cfg.agent_kind == AgentKind::ona && !banner.empty())
    manifest["ona_banner"] = banner;
  manifest["skipped"] = result.skipped;
  if (result.skipped) manifest["skip_reason"] = result.skip_reason;

  auto aborted = nlohmann::ordered_json::object();
  for (std::size_t k = 0; k < trials.size(); ++k)
    if (trials[k].aborted)
      aborted[std::to_string(k)] = trials[k].abort_reason;
  if (!aborted.empty()) manifest["aborted_trials"] = aborted;

  if (!result.skipped) {
    for (std::size_t k = 0; k < trials.size(); ++k) {
      const std::string path =
          (std::filesystem::path(cfg.output_dir) / ("trial_" + std::to_string(k) + ".csv"))
              .string();
      write_file_atomic(path, metrics_to_csv(trials[k].rows));
      result.csv_paths.push_back(path);
    }
  }
  result.manifest_path =
      (std::filesystem::path(cfg.output_dir) / "manifest.json").string();
  write_file_atomic(result.manifest_path, manifest.dump(2) + "\n");
  return result;
}

}  // namespace narsrl
