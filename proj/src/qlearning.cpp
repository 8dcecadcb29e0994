#include "narsrl/qlearning.hpp"

#include <cmath>
#include <stdexcept>

namespace narsrl {

void QHyperParams::validate() const {
  if (!(alpha > 0.0) || alpha > 1.0)
    throw std::invalid_argument("alpha must be in (0,1]");
  if (!(gamma > 0.0) || gamma > 1.0)
    throw std::invalid_argument("gamma must be in (0,1]");
  if (eps_min < 0.0 || eps_max > 1.0 || eps_min > eps_max)
    throw std::invalid_argument("need 0 <= eps_min <= eps_max <= 1");
  if (decay < 0.0) throw std::invalid_argument("decay must be non-negative");
}

double epsilon_at(const QHyperParams& params, long episode_counter) {
  if (episode_counter < 0) throw std::invalid_argument("episode_counter < 0");
  return params.eps_min + (params.eps_max - params.eps_min) *
                              std::exp(-params.decay * static_cast<double>(episode_counter));
}

QTable::QTable(int n_actions) : n_actions_(n_actions) {
  if (n_actions < 2) throw std::invalid_argument("QTable needs >= 2 actions");
}

std::vector<double>& QTable::row(StateId s) {
  auto it = rows_.find(s);
  if (it == rows_.end()) {
    it = rows_.emplace(s, std::vector<double>(n_actions_, 0.0)).first;
    order_.push_back(s);
  }
  return it->second;
}

const std::vector<double>* QTable::find_row(StateId s) const {
  auto it = rows_.find(s);
  return it == rows_.end() ? nullptr : &it->second;
}

double QTable::value(StateId s, ActionId a) const {
  if (a < 0 || a >= n_actions_) throw std::out_of_range("action out of range");
  const auto* r = find_row(s);
  return r ? (*r)[a] : 0.0;
}

void QTable::set_value(StateId s, ActionId a, double v) {
  if (a < 0 || a >= n_actions_) throw std::out_of_range("action out of range");
  row(s)[a] = v;
}

double QTable::max_value(StateId s) const {
  const auto* r = find_row(s);
  if (!r) return 0.0;
  double best = (*r)[0];
  for (int a = 1; a < n_actions_; ++a)
    if ((*r)[a] > best) best = (*r)[a];
  return best;
}

std::vector<StateId> QTable::states() const { return order_; }

ActionChoice select_action(const QTable& table, StateId state, double eps, Rng& rng) {
  if (eps < 0.0 || eps > 1.0) throw std::invalid_argument("eps must be in [0,1]");
  const int n = table.n_actions();
  if (rng.bernoulli(eps)) return {rng.uniform_index(n), true};

  double best = table.value(state, 0);
  int ties = 1;
  ActionId pick = 0;
  for (ActionId a = 1; a < n; ++a) {
    const double v = table.value(state, a);
    if (v > best) {
      best = v;
      ties = 1;
      pick = a;
    } else if (v == best) {
      // Reservoir draw keeps each tied argmax equally likely in one pass.
      ++ties;
      if (rng.uniform_index(ties) == 0) pick = a;
    }
  }
  return {pick, false};
}

void q_update(QTable& table, StateId s, ActionId a, double r, StateId s_next,
              bool terminal, const QHyperParams& params) {
  const double current = table.value(s, a);
  const double target = terminal ? r : r + params.gamma * table.max_value(s_next);
  table.set_value(s, a, current + params.alpha * (target - current));
}

ActionId greedy_action(const QTable& table, StateId state) {
  ActionId pick = 0;
  double best = table.value(state, 0);
  for (ActionId a = 1; a < table.n_actions(); ++a) {
    const double v = table.value(state, a);
    if (v > best) {
      best = v;
      pick = a;
    }
  }
  return pick;
}

}  // namespace narsrl
