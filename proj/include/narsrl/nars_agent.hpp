#pragma once

#include <optional>
#include <unordered_map>
#include <variant>
#include <vector>

#include "narsrl/nal.hpp"
#include "narsrl/rng.hpp"
#include "narsrl/types.hpp"

namespace narsrl {

struct NarsConfig {
  double k = 1.0;
  double motorbabbling = 0.2;
  double decision_threshold = 0.501;
  int max_chain_depth = 5;
  int capacity = 10000;
  int anticipation_window = 1;

  void validate() const;
};

/// "(pre &/ op) =/> post" with evidence counters. post is a StateId, or
/// kGoalPost for the goal symbol G.
struct TemporalLink {
  StateId pre = 0;
  ActionId op = 0;
  StateId post = 0;
  nal::Evidence evidence;
  long last_used_step = 0;
};

inline constexpr StateId kGoalPost = -1;

struct Chosen {
  ActionId op;
};
struct Babble {
  ActionId op;
};
struct NoSuggestion {};
using Decision = std::variant<Chosen, Babble, NoSuggestion>;

/// Sensorimotor learner over temporal links. The harness owns the action
/// loop: it reports every executed action back via note_executed (babbled and
/// random-fallback actions included), so credit assignment sees the same
/// stream a motorbabbling reasoner would.
class NarsAgent {
 public:
  NarsAgent(int n_actions, NarsConfig config = {});

  const NarsConfig& config() const { return config_; }
  int n_actions() const { return n_actions_; }

  /// Feeds the next sensed state. Settles the previous execution: positive
  /// evidence to (s_prev, op, state), anticipation-failure negatives to the
  /// other consequents recorded for (s_prev, op).
  void observe(StateId state, long step);

  /// Records that `op` ran in `state` (tracked separately from decide so the
  /// harness fallback path feeds the same bookkeeping).
  void note_executed(StateId state, ActionId op, long step);

  /// Goal achieved: credit the execution that caused it.
  void process_goal_event(long step);

  /// Picks the op whose best chain to G clears the decision threshold;
  /// otherwise babbles with probability motorbabbling, else abstains.
  Decision decide(StateId state, Rng& rng);

  void end_episode();

  const std::vector<TemporalLink>& links() const { return links_; }
  const TemporalLink* find_link(StateId pre, ActionId op, StateId post) const;

  /// Best-chain desire expectation for executing op in state; 0.5 when no
  /// chain to G exists (maximal uncertainty, never clears the threshold).
  double desire_expectation(StateId state, ActionId op) const;

 private:
  struct PendingExec {
    StateId state;
    ActionId op;
    long step;
  };

  TemporalLink& link_at(StateId pre, ActionId op, StateId post);
  void bump(TemporalLink& link, const nal::Evidence& delta, long step);
  void evict_if_needed();
  void rebuild_index();
  /// Best ≤(max_chain_depth-1)-hop chain truth from each state to G.
  std::unordered_map<StateId, nal::TruthValue> chain_table() const;

  int n_actions_;
  NarsConfig config_;
  std::vector<TemporalLink> links_;
  std::unordered_map<long long, std::size_t> index_;  // key(pre,op,post) -> slot
  std::optional<PendingExec> pending_;
  std::optional<PendingExec> last_exec_;
  bool goal_credited_ = false;
  long episode_ = 0;
  long last_exec_episode_ = -1;
};

}  // namespace narsrl
