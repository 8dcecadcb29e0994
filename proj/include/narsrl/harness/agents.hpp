#pragma once

#include <memory>
#include <ostream>
#include <string>
#include <unordered_map>

#include "narsrl/env.hpp"
#include "narsrl/harness/config.hpp"

namespace narsrl {

/// Only agents that learn from the numeric reward implement this; the runner
/// routes rewards exclusively through it, so a nars/ona agent cannot see them
/// by construction.
class RewardConsumer {
 public:
  virtual ~RewardConsumer() = default;
  virtual void reward(double r) = 0;
};

class TrialAgent {
 public:
  virtual ~TrialAgent() = default;

  virtual Decision decide(StateId state, const std::string& token, Rng& rng) = 0;

  /// Called after every env step with the action that actually ran,
  /// fallback and babble actions included.
  virtual void transition(StateId state, ActionId action, StateId next,
                          const std::string& next_token, bool terminated,
                          bool truncated, bool success) = 0;

  virtual void episode_start(StateId state, const std::string& token) = 0;
  virtual void episode_end() = 0;

  /// Inspection CSV (q-table or link memory); throws for agents without one.
  virtual void dump(std::ostream& out) const = 0;
};

class QTrialAgent final : public TrialAgent, public RewardConsumer {
 public:
  QTrialAgent(const QHyperParams& params, int n_actions);

  Decision decide(StateId state, const std::string& token, Rng& rng) override;
  void reward(double r) override { pending_reward_ = r; }
  void transition(StateId state, ActionId action, StateId next,
                  const std::string& next_token, bool terminated, bool truncated,
                  bool success) override;
  void episode_start(StateId state, const std::string& token) override {}
  void episode_end() override { ++episodes_; }
  void dump(std::ostream& out) const override;

  const QTable& table() const { return table_; }
  long episodes() const { return episodes_; }

 private:
  QHyperParams params_;
  QTable table_;
  long episodes_ = 0;
  double pending_reward_ = 0.0;
};

/// Feeds the in-process sensorimotor learner. States are interned from the
/// env's tokens so it sees exactly the event vocabulary the ona bridge sends
/// (for flappybird that differs from the q-learner's state mapping).
class NarsTrialAgent final : public TrialAgent {
 public:
  NarsTrialAgent(const NarsConfig& config, int n_actions);

  Decision decide(StateId state, const std::string& token, Rng& rng) override;
  void transition(StateId state, ActionId action, StateId next,
                  const std::string& next_token, bool terminated, bool truncated,
                  bool success) override;
  void episode_start(StateId state, const std::string& token) override;
  void episode_end() override;
  void dump(std::ostream& out) const override;

  const NarsAgent& agent() const { return agent_; }

 private:
  StateId intern(const std::string& token);

  NarsAgent agent_;
  std::unordered_map<std::string, StateId> token_ids_;
  StateId cur_ = 0;
  long step_ = 0;
};

class OnaTrialAgent final : public TrialAgent {
 public:
  explicit OnaTrialAgent(std::unique_ptr<OnaBridge> bridge);

  Decision decide(StateId state, const std::string& token, Rng& rng) override;
  void transition(StateId state, ActionId action, StateId next,
                  const std::string& next_token, bool terminated, bool truncated,
                  bool success) override;
  void episode_start(StateId state, const std::string& token) override;
  void episode_end() override {}
  void dump(std::ostream& out) const override;

  const OnaBridge& bridge() const { return *bridge_; }

 private:
  std::unique_ptr<OnaBridge> bridge_;
};

/// Builds the configured agent. Throws BridgeUnavailable when the ona binary
/// cannot be started; the caller records the reason and skips.
std::unique_ptr<TrialAgent> make_trial_agent(const ExperimentConfig& cfg,
                                             const EnvSpec& spec);

}  // namespace narsrl
