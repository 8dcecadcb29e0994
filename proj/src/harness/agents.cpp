#include "narsrl/harness/agents.hpp"

#include <stdexcept>

#include "narsrl/format.hpp"

namespace narsrl {

QTrialAgent::QTrialAgent(const QHyperParams& params, int n_actions)
    : params_(params), table_(n_actions) {
  params_.validate();
}

Decision QTrialAgent::decide(StateId state, const std::string& token, Rng& rng) {
  const double eps = epsilon_at(params_, episodes_);
  const auto [action, was_random] = select_action(table_, state, eps, rng);
  if (was_random) return Babble{action};
  return Chosen{action};
}

void QTrialAgent::transition(StateId state, ActionId action, StateId next,
                             const std::string& next_token, bool terminated,
                             bool truncated, bool success) {
  // Bootstraps across truncation: only env-ruled termination stops the chain.
  q_update(table_, state, action, pending_reward_, next, terminated, params_);
}

void QTrialAgent::dump(std::ostream& out) const {
  out << "state,action,value\n";
  for (const StateId s : table_.states())
    for (ActionId a = 0; a < table_.n_actions(); ++a)
      out << s << ',' << a << ',' << format_double(table_.value(s, a)) << '\n';
}

NarsTrialAgent::NarsTrialAgent(const NarsConfig& config, int n_actions)
    : agent_(n_actions, config) {}

StateId NarsTrialAgent::intern(const std::string& token) {
  const auto it = token_ids_.find(token);
  if (it != token_ids_.end()) return it->second;
  const StateId id = static_cast<StateId>(token_ids_.size());
  token_ids_.emplace(token, id);
  return id;
}

Decision NarsTrialAgent::decide(StateId state, const std::string& token, Rng& rng) {
  cur_ = intern(token);
  return agent_.decide(cur_, rng);
}

void NarsTrialAgent::transition(StateId state, ActionId action, StateId next,
                                const std::string& next_token, bool terminated,
                                bool truncated, bool success) {
  agent_.note_executed(cur_, action, step_);
  if (success) agent_.process_goal_event(step_);
  agent_.observe(intern(next_token), step_ + 1);
  ++step_;
}

void NarsTrialAgent::episode_start(StateId state, const std::string& token) {
  cur_ = intern(token);
  agent_.observe(cur_, step_);
}

void NarsTrialAgent::episode_end() { agent_.end_episode(); }

void NarsTrialAgent::dump(std::ostream& out) const {
  // Inverse of the interning map, to print the env's own tokens.
  std::vector<const std::string*> names(token_ids_.size(), nullptr);
  for (const auto& [token, id] : token_ids_) names[id] = &token;
  auto name_of = [&](StateId s) -> std::string {
    if (s == kGoalPost) return "G";
    if (s >= 0 && s < static_cast<StateId>(names.size()) && names[s]) return *names[s];
    return std::to_string(s);
  };
  out << "pre,op,post,w_pos,w_total,frequency,confidence\n";
  for (const auto& link : agent_.links()) {
    const auto t = nal::truth_of(link.evidence, agent_.config().k);
    out << name_of(link.pre) << ',' << link.op << ',' << name_of(link.post) << ','
        << format_double(link.evidence.w_pos) << ','
        << format_double(link.evidence.w_total) << ','
        << format_double(t.frequency) << ',' << format_double(t.confidence)
        << '\n';
  }
}

OnaTrialAgent::OnaTrialAgent(std::unique_ptr<OnaBridge> bridge)
    : bridge_(std::move(bridge)) {}

Decision OnaTrialAgent::decide(StateId state, const std::string& token, Rng& rng) {
  return bridge_->step_exchange(token, /*goal_reached=*/false);
}

void OnaTrialAgent::transition(StateId state, ActionId action, StateId next,
                               const std::string& next_token, bool terminated,
                               bool truncated, bool success) {
  // Sent now, not on the next exchange: the goal event must sit between this
  // step's execution and the next state event for temporal credit to land.
  if (success) bridge_->notify_goal();
}

void OnaTrialAgent::episode_start(StateId state, const std::string& token) {
  bridge_->begin_episode();
}

void OnaTrialAgent::dump(std::ostream& out) const {
  throw std::logic_error("the ona bridge has no inspectable memory dump");
}

std::unique_ptr<TrialAgent> make_trial_agent(const ExperimentConfig& cfg,
                                             const EnvSpec& spec) {
  switch (cfg.agent_kind) {
    case AgentKind::qlearning:
      return std::make_unique<QTrialAgent>(cfg.q, spec.n_actions);
    case AgentKind::nars:
      return std::make_unique<NarsTrialAgent>(cfg.nars, spec.n_actions);
    case AgentKind::ona: {
      OnaProcessConfig ona = cfg.ona;
      ona.op_names = spec.action_names;
      return std::make_unique<OnaTrialAgent>(OnaBridge::start(ona));
    }
  }
  throw std::logic_error("unreachable agent kind");
}

}  // namespace narsrl
