#include "narsrl/nars_agent.hpp"

#include <algorithm>
#include <stdexcept>

namespace narsrl {

void NarsConfig::validate() const {
  if (!(k > 0.0)) throw std::invalid_argument("k must be positive");
  if (motorbabbling < 0.0 || motorbabbling > 1.0)
    throw std::invalid_argument("motorbabbling must be in [0,1]");
  if (decision_threshold < 0.0 || decision_threshold > 1.0)
    throw std::invalid_argument("decision_threshold must be in [0,1]");
  if (max_chain_depth < 1) throw std::invalid_argument("max_chain_depth must be >= 1");
  if (capacity < 1) throw std::invalid_argument("capacity must be >= 1");
  if (anticipation_window < 1)
    throw std::invalid_argument("anticipation_window must be >= 1");
}

namespace {

// pre < 2^28, op < 2^7, post >= -1: disjoint bit fields.
long long link_key(StateId pre, ActionId op, StateId post) {
  return (static_cast<long long>(pre) << 35) |
         (static_cast<long long>(post + 1) << 7) | op;
}

}  // namespace

NarsAgent::NarsAgent(int n_actions, NarsConfig config)
    : n_actions_(n_actions), config_(config) {
  if (n_actions < 2) throw std::invalid_argument("NarsAgent needs >= 2 actions");
  config_.validate();
}

const TemporalLink* NarsAgent::find_link(StateId pre, ActionId op, StateId post) const {
  const auto it = index_.find(link_key(pre, op, post));
  return it == index_.end() ? nullptr : &links_[it->second];
}

TemporalLink& NarsAgent::link_at(StateId pre, ActionId op, StateId post) {
  const long long key = link_key(pre, op, post);
  auto it = index_.find(key);
  if (it == index_.end()) {
    links_.push_back(TemporalLink{pre, op, post, {}, 0});
    it = index_.emplace(key, links_.size() - 1).first;
  }
  return links_[it->second];
}

void NarsAgent::bump(TemporalLink& link, const nal::Evidence& delta, long step) {
  link.evidence = nal::revise(link.evidence, delta);
  link.last_used_step = step;
}

void NarsAgent::observe(StateId state, long step) {
  if (pending_ && step > pending_->step &&
      step - pending_->step <= config_.anticipation_window) {
    const PendingExec exec = *pending_;
    bump(link_at(exec.state, exec.op, state), {1.0, 1.0}, step);
    for (auto& link : links_) {
      if (link.pre != exec.state || link.op != exec.op || link.post == state)
        continue;
      // A credited goal event already confirmed the G anticipation.
      if (link.post == kGoalPost && goal_credited_) continue;
      bump(link, {0.0, 1.0}, step);
    }
    evict_if_needed();
  }
  pending_.reset();
  goal_credited_ = false;
}

void NarsAgent::note_executed(StateId state, ActionId op, long step) {
  if (op < 0 || op >= n_actions_)
    throw std::out_of_range("note_executed: op out of range");
  pending_ = PendingExec{state, op, step};
  last_exec_ = pending_;
  last_exec_episode_ = episode_;
  goal_credited_ = false;
}

void NarsAgent::process_goal_event(long step) {
  if (!last_exec_ || last_exec_episode_ != episode_) return;
  bump(link_at(last_exec_->state, last_exec_->op, kGoalPost), {1.0, 1.0}, step);
  goal_credited_ = true;
  evict_if_needed();
}

std::unordered_map<StateId, nal::TruthValue> NarsAgent::chain_table() const {
  std::unordered_map<StateId, nal::TruthValue> best;
  for (int d = 1; d < config_.max_chain_depth; ++d) {
    auto next = best;
    for (const auto& link : links_) {
      const nal::TruthValue t = nal::truth_of(link.evidence, config_.k);
      std::optional<nal::TruthValue> cand;
      if (link.post == kGoalPost) {
        cand = t;
      } else if (const auto it = best.find(link.post); it != best.end()) {
        cand = nal::deduction(t, it->second);
      }
      if (!cand) continue;
      const auto cur = next.find(link.pre);
      if (cur == next.end() ||
          nal::expectation(*cand) > nal::expectation(cur->second)) {
        next[link.pre] = *cand;
      }
    }
    best = std::move(next);
  }
  return best;
}

double NarsAgent::desire_expectation(StateId state, ActionId op) const {
  const auto table = chain_table();
  double best = 0.5;
  bool any = false;
  for (const auto& link : links_) {
    if (link.pre != state || link.op != op) continue;
    const nal::TruthValue t = nal::truth_of(link.evidence, config_.k);
    std::optional<nal::TruthValue> chain;
    if (link.post == kGoalPost) {
      chain = t;
    } else if (const auto it = table.find(link.post); it != table.end()) {
      chain = nal::deduction(t, it->second);
    }
    if (!chain) continue;
    const double e = nal::expectation(*chain);
    if (!any || e > best) best = e;
    any = true;
  }
  return any ? best : 0.5;
}

Decision NarsAgent::decide(StateId state, Rng& rng) {
  const auto table = chain_table();
  std::vector<double> desire(n_actions_, 0.5);
  for (const auto& link : links_) {
    if (link.pre != state) continue;
    const nal::TruthValue t = nal::truth_of(link.evidence, config_.k);
    std::optional<nal::TruthValue> chain;
    if (link.post == kGoalPost) {
      chain = t;
    } else if (const auto it = table.find(link.post); it != table.end()) {
      chain = nal::deduction(t, it->second);
    }
    if (!chain) continue;
    desire[link.op] = std::max(desire[link.op], nal::expectation(*chain));
  }

  ActionId best_op = 0;
  for (ActionId op = 1; op < n_actions_; ++op)
    if (desire[op] > desire[best_op]) best_op = op;

  if (desire[best_op] > config_.decision_threshold) return Chosen{best_op};
  if (config_.motorbabbling > 0.0 && rng.bernoulli(config_.motorbabbling))
    return Babble{rng.uniform_index(n_actions_)};
  return NoSuggestion{};
}

void NarsAgent::end_episode() {
  pending_.reset();
  goal_credited_ = false;
  ++episode_;
}

void NarsAgent::evict_if_needed() {
  if (static_cast<int>(links_.size()) <= config_.capacity) return;
  while (static_cast<int>(links_.size()) > config_.capacity) {
    std::size_t worst = 0;
    for (std::size_t i = 1; i < links_.size(); ++i) {
      const auto& a = links_[i];
      const auto& b = links_[worst];
      // confidence orders the same way as w_total for a fixed k
      if (a.evidence.w_total < b.evidence.w_total ||
          (a.evidence.w_total == b.evidence.w_total &&
           a.last_used_step < b.last_used_step))
        worst = i;
    }
    links_.erase(links_.begin() + static_cast<std::ptrdiff_t>(worst));
  }
  rebuild_index();
}

void NarsAgent::rebuild_index() {
  index_.clear();
  for (std::size_t i = 0; i < links_.size(); ++i)
    index_[link_key(links_[i].pre, links_[i].op, links_[i].post)] = i;
}

}  // namespace narsrl
