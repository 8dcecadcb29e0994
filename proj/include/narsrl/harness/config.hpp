#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "narsrl/envs/factory.hpp"
#include "narsrl/nars_agent.hpp"
#include "narsrl/ona.hpp"
#include "narsrl/qlearning.hpp"

namespace narsrl {

/// Sections and their key/value pairs in file order. Duplicate sections or
/// keys are rejected so configs stay unambiguous.
struct IniDoc {
  using Section = std::vector<std::pair<std::string, std::string>>;
  std::vector<std::pair<std::string, Section>> sections;

  const Section* find(const std::string& name) const;
};

IniDoc parse_ini(const std::string& text);

enum class AgentKind { qlearning, nars, ona };
std::string to_string(AgentKind kind);

struct ExperimentConfig {
  EnvOptions env;
  AgentKind agent_kind = AgentKind::qlearning;
  QHyperParams q;
  NarsConfig nars;
  OnaProcessConfig ona;  // op_names filled from the env at run time
  int trials = 10;
  long steps = 100000;
  std::uint64_t base_seed = 0;
  std::string output_dir;

  void validate() const;
};

/// Parses the [env]/[agent]/[experiment] sections; any key that is not a
/// field of the selected env/agent is an error. An unset ona binary_path
/// falls back to $NARS_RL_ONA_BIN.
ExperimentConfig parse_experiment_config(const std::string& text);
ExperimentConfig load_experiment_config(const std::string& path);

/// Hyperparameter grid for the sweep tool: every combination of the listed
/// q-learning values is run on every env.
struct SweepSpec {
  std::vector<std::string> env_names;
  std::vector<double> alpha;
  std::vector<double> gamma;
  std::vector<double> eps_max;
  std::vector<double> eps_min;
  std::vector<double> decay;
  int trials = 3;
  long steps = 10000;
  std::uint64_t base_seed = 0;
  std::string output_dir;

  void validate() const;
};

SweepSpec parse_sweep_config(const std::string& text);
SweepSpec load_sweep_config(const std::string& path);

}  // namespace narsrl
