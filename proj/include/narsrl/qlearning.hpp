#pragma once

#include <unordered_map>
#include <vector>

#include "narsrl/rng.hpp"
#include "narsrl/types.hpp"

namespace narsrl {

struct QHyperParams {
  double alpha = 0.7;
  double gamma = 0.618;
  double eps_max = 1.0;
  double eps_min = 0.01;
  double decay = 0.01;

  void validate() const;
};

double epsilon_at(const QHyperParams& params, long episode_counter);

/// Dense per-state action values, rows created lazily (zero-filled) so the
/// state axis can grow for envs without a fixed state count.
class QTable {
 public:
  explicit QTable(int n_actions);

  int n_actions() const { return n_actions_; }
  std::size_t n_rows() const { return rows_.size(); }

  double value(StateId s, ActionId a) const;
  void set_value(StateId s, ActionId a, double v);
  double max_value(StateId s) const;

  /// Visited states in first-visit order, for dumps and greedy extraction.
  std::vector<StateId> states() const;

 private:
  std::vector<double>& row(StateId s);
  const std::vector<double>* find_row(StateId s) const;

  int n_actions_;
  std::unordered_map<StateId, std::vector<double>> rows_;
  std::vector<StateId> order_;
};

/// Epsilon-greedy draw; greedy ties break uniformly at random. was_random is
/// true only for the epsilon branch.
struct ActionChoice {
  ActionId action = 0;
  bool was_random = false;
};
ActionChoice select_action(const QTable& table, StateId state, double eps, Rng& rng);

void q_update(QTable& table, StateId s, ActionId a, double r, StateId s_next,
              bool terminal, const QHyperParams& params);

/// Deterministic argmax (lowest index wins ties). Evaluation only.
ActionId greedy_action(const QTable& table, StateId state);

}  // namespace narsrl
